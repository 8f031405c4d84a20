"""Geometry of the model spaces M^n_k for k <= 0 and n = 2, 3.

Points of M^n_0 are Cartesian coordinates in R^n.  Points of M^n_k with
k < 0 live on the upper sheet of the hyperboloid Q(x, x) = 1/k in R^{n+1},
where Q(x, y) = -x0*y0 + x1*y1 + ... is the Minkowski form.  With this
choice geodesics, circles, horocycles and hypercycles all have closed forms.

Most formulas are written once in terms of the generalized trigonometric
functions ``sn``, ``cs`` and ``md`` of a curvature parameter, so there is no
separate Euclidean and hyperbolic code path.  The coordinate-level helpers
(``coord_*``) broadcast over leading array axes and are used by the batched
verification suites; the point-level API wraps them with validation.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleError, InvalidInputError, NumericalDomainError

EPS_MODEL = 1e-9
EPS_TEST = 1e-6
ACOSH_CLAMP = 1e-12

_SERIES_CUTOFF = 1e-3


# ---------------------------------------------------------------------------
# generalized trigonometry


def sn(K, x):
    """Generalized sine: solution of f'' + K f = 0, f(0) = 0, f'(0) = 1."""
    x = np.asarray(x, dtype=float)
    z = K * x * x
    with np.errstate(invalid="ignore", over="ignore"):
        if K > 0:
            r = np.sqrt(K)
            exact = np.sin(r * x) / r
        elif K < 0:
            r = np.sqrt(-K)
            exact = np.sinh(r * x) / r
        else:
            return x.copy() if x.ndim else float(x)
    series = x * (1 - z / 6 * (1 - z / 20 * (1 - z / 42)))
    out = np.where(np.abs(z) < _SERIES_CUTOFF, series, exact)
    return out if out.ndim else float(out)


def cs(K, x):
    """Generalized cosine, the derivative of ``sn``."""
    x = np.asarray(x, dtype=float)
    z = K * x * x
    with np.errstate(over="ignore"):
        if K > 0:
            exact = np.cos(np.sqrt(K) * x)
        elif K < 0:
            exact = np.cosh(np.sqrt(-K) * x)
        else:
            return np.ones_like(x) if x.ndim else 1.0
    series = 1 - z / 2 * (1 - z / 12 * (1 - z / 30))
    out = np.where(np.abs(z) < _SERIES_CUTOFF, series, exact)
    return out if out.ndim else float(out)


def sn_var(K, x):
    """``sn`` with an elementwise curvature array K."""
    K, x = np.broadcast_arrays(np.asarray(K, dtype=float), np.asarray(x, dtype=float))
    z = K * x * x
    r = np.sqrt(np.abs(K))
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        exact = np.where(K > 0, np.sin(r * x), np.sinh(r * x)) / r
    series = x * (1 - z / 6 * (1 - z / 20 * (1 - z / 42)))
    return np.where(np.abs(z) < _SERIES_CUTOFF, series, exact)


def md(K, x):
    """(1 - cs(K, x)) / K, computed without cancellation (x^2/2 at K = 0)."""
    s = sn(K, np.asarray(x, dtype=float) / 2)
    return 2 * s * s


def asn(k, y):
    """Inverse of ``sn(k, .)`` for k <= 0 on y >= 0."""
    if k > 0:
        raise InvalidInputError("asn is only defined here for k <= 0")
    y = np.asarray(y, dtype=float)
    if k == 0:
        return y.copy() if y.ndim else float(y)
    r = np.sqrt(-k)
    z = k * y * y
    series = y * (1 + z / 6 * (1 + 9 * z / 20))
    out = np.where(np.abs(z) < _SERIES_CUTOFF, series, np.arcsinh(r * y) / r)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# coordinate-level helpers


def check_curvature(k):
    k = float(k)
    if not np.isfinite(k) or k > 0:
        raise InvalidInputError(f"curvature must be finite and <= 0, got {k}")
    return k


def inner(k, x, y):
    """Ambient bilinear form: Minkowski for k < 0, Euclidean dot for k = 0."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = np.sum(x * y, axis=-1)
    if k < 0:
        d = d - 2 * x[..., 0] * y[..., 0]
    return d


def ambient_dim(k, n):
    return n + 1 if k < 0 else n


def basepoint(k, n=2):
    p = np.zeros(ambient_dim(k, n))
    if k < 0:
        p[0] = 1 / np.sqrt(-k)
    return p


def base_frame(k, n=2):
    """Orthonormal tangent basis at ``basepoint(k, n)`` (rows)."""
    off = 1 if k < 0 else 0
    return np.eye(ambient_dim(k, n))[off:]


def project_point(k, x):
    """Nearest-point retraction onto the model: identity for k = 0."""
    x = np.asarray(x, dtype=float)
    if k == 0:
        return x
    q = k * inner(k, x, x)
    x = x / np.sqrt(np.abs(q))[..., None]
    return np.where((x[..., :1] < 0), -x, x)


def project_tangent(k, p, v):
    """Component of v tangent to the model at p."""
    if k == 0:
        return np.asarray(v, dtype=float)
    return v - (k * inner(k, p, v))[..., None] * p


def coord_dist(k, x, y, check=True):
    """Distance via the chord norm: sn_k(d/2) = |x - y|_Q / 2.

    Equivalent to acosh(k Q(x, y)) / sqrt(-k) but free of the cancellation
    near d = 0.  Chord norms with acosh argument below 1 - ACOSH_CLAMP are a
    numerical-domain error; the thin band above is clamped to distance 0.
    """
    diff = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    q = inner(k, diff, diff)
    if np.any(q < 0):
        # k Q(x, y) = 1 - k q / 2
        arg_defect = -k * q / 2
        if check and np.any(arg_defect < -ACOSH_CLAMP):
            raise NumericalDomainError("acosh argument below 1: points are not on the model")
        q = np.maximum(q, 0.0)
    return 2 * asn(k, np.sqrt(q) / 2)


def coord_exp(k, p, v, t):
    """Unit-speed geodesic from p with unit initial velocity v, at time t."""
    t = np.asarray(t, dtype=float)
    return _col(cs(k, t)) * p + _col(sn(k, t)) * v


def coord_transport_tangent(k, p, v, t):
    """Velocity of ``coord_exp(k, p, v, .)`` at time t."""
    t = np.asarray(t, dtype=float)
    return -k * _col(sn(k, t)) * p + _col(cs(k, t)) * v


def _col(a):
    a = np.asarray(a, dtype=float)
    return a[..., None] if a.ndim else float(a)


def coord_direction(k, o, p):
    """Unit tangent at o pointing to p, and the distance |op|."""
    d = coord_dist(k, o, p)
    w = project_tangent(k, o, np.asarray(p, dtype=float) - (np.asarray(o, dtype=float) if k == 0 else 0.0))
    nrm = np.sqrt(np.maximum(inner(k, w, w), 0.0))
    return w / np.asarray(nrm)[..., None], d


def coord_angle(k, p, o, q):
    """Angle at o between the geodesics op and oq."""
    up, _ = coord_direction(k, o, p)
    uq, _ = coord_direction(k, o, q)
    c = inner(k, up, uq)
    perp = uq - np.asarray(c)[..., None] * up
    s = np.sqrt(np.maximum(inner(k, perp, perp), 0.0))
    return np.arctan2(s, c)


def coord_geodesic_point(k, p, q, s):
    """Point at fraction s of the way along the geodesic pq."""
    return geodesic_interp(k, p, q, np.asarray(s, dtype=float)[..., None])[..., 0, :]


def geodesic_interp(k, P, Q, fr):
    """Points at fractions fr (m,) along the geodesics P[...] to Q[...]; shape (..., m, D).

    Written as a combination of both endpoints, which stays on the model
    to roundoff even for long hyperbolic segments.
    """
    P, Q = np.asarray(P, dtype=float), np.asarray(Q, dtype=float)
    fr = np.asarray(fr, dtype=float)
    if k == 0:
        return P[..., None, :] + fr[..., :, None] * (Q - P)[..., None, :]
    d = np.asarray(coord_dist(k, P, Q, check=False))[..., None]
    sd = sn(k, d)
    safe = np.where(sd > 0, sd, 1.0)
    wp = np.where(sd > 0, sn(k, d * (1 - fr)) / safe, 1 - fr)
    wq = np.where(sd > 0, sn(k, d * fr) / safe, fr)
    return wp[..., None] * P[..., None, :] + wq[..., None] * Q[..., None, :]


def left_normal(k, p, t):
    """Rotate a unit tangent t at p of M^2_k by +pi/2."""
    t = np.asarray(t, dtype=float)
    if k == 0:
        return np.stack([-t[..., 1], t[..., 0]], axis=-1)
    ph = np.asarray(p, dtype=float) * np.sqrt(-k)
    c = np.cross(ph, t)
    c[..., 0] = -c[..., 0]
    return c


def orientation(k, a, b, c):
    """Signed area-like determinant: positive iff a, b, c turn left in M^2_k."""
    a, b, c = (np.asarray(z, dtype=float) for z in (a, b, c))
    if k == 0:
        u = b - a
        w = c - a
        return u[..., 0] * w[..., 1] - u[..., 1] * w[..., 0]
    return np.einsum("...i,...i->...", np.cross(b - a, c - a), a) * (-k) ** 1.5


def rotate_tangent(t, n, phi):
    """Rotate the orthonormal pair (t, n) by phi; returns the new pair."""
    c, s = np.cos(phi), np.sin(phi)
    return c * t + s * n, -s * t + c * n


# ---------------------------------------------------------------------------
# comparison trigonometry


def half_angle_terms(k, x, y, z):
    """(sin^2, cos^2) of half the angle opposite x in a triangle with sides x, y, z."""
    x, y, z = (np.asarray(w, dtype=float) for w in (x, y, z))
    den = sn(k, y) * sn(k, z)
    s2 = sn(k, (x + y - z) / 2) * sn(k, (x - y + z) / 2) / den
    c2 = sn(k, (x + y + z) / 2) * sn(k, (y + z - x) / 2) / den
    return np.maximum(s2, 0.0), np.maximum(c2, 0.0)


def opposite_angle(k, x, y, z):
    """Angle between sides y and z of the M^2_k triangle with sides x, y, z."""
    s2, c2 = half_angle_terms(k, x, y, z)
    return 2 * np.arctan2(np.sqrt(s2), np.sqrt(c2))


def side_from_angle(k, a, b, gamma):
    """Length of the side opposite angle gamma between sides a and b."""
    m = md(k, np.asarray(a) - np.asarray(b)) + 2 * sn(k, a) * sn(k, b) * np.sin(np.asarray(gamma) / 2) ** 2
    return 2 * asn(k, np.sqrt(np.maximum(m, 0.0) / 2))


def triangle_area(k, a, b, c):
    """Area of the M^2_k triangle with the given side lengths (l'Huilier)."""
    a, b, c = (np.asarray(w, dtype=float) for w in (a, b, c))
    if k == 0:
        # Kahan's stable Heron
        x = np.sort(np.stack(np.broadcast_arrays(a, b, c)), axis=0)[::-1]
        a, b, c = x[0], x[1], x[2]
        p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
        return 0.25 * np.sqrt(np.maximum(p, 0.0))
    r = np.sqrt(-k)
    a, b, c = r * a, r * b, r * c
    s = (a + b + c) / 2
    prod = np.tanh(s / 2) * np.tanh((s - a) / 2) * np.tanh((s - b) / 2) * np.tanh((s - c) / 2)
    return 4 * np.arctan(np.sqrt(np.maximum(prod, 0.0))) / (-k)


# ---------------------------------------------------------------------------
# point-level API


@dataclass(frozen=True, eq=False)
class SpacePoint:
    k: float
    coords: np.ndarray

    def __post_init__(self):
        k = check_curvature(self.k)
        x = np.array(self.coords, dtype=float).reshape(-1)
        if not np.all(np.isfinite(x)):
            raise InvalidInputError("point coordinates must be finite")
        if k < 0:
            if x.size < 3:
                raise InvalidInputError("hyperboloid points need at least 3 coordinates")
            scale = abs(1 / k) + float(x @ x)
            if abs(inner(k, x, x) - 1 / k) > EPS_MODEL * scale or x[0] <= 0:
                raise InvalidInputError("point is not on the upper hyperboloid sheet Q(x, x) = 1/k")
        x.flags.writeable = False
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coords", x)

    @property
    def dim(self):
        return self.coords.size - (1 if self.k < 0 else 0)

    @classmethod
    def base(cls, k, n=2):
        return cls(k, basepoint(k, n))

    def __eq__(self, other):
        return (isinstance(other, SpacePoint) and self.k == other.k
                and np.array_equal(self.coords, other.coords))

    __hash__ = object.__hash__

    def __repr__(self):
        return f"SpacePoint(k={self.k!r}, coords={self.coords.tolist()!r})"


@dataclass(frozen=True, eq=False)
class TangentVec:
    base: SpacePoint
    v: np.ndarray

    def __post_init__(self):
        v = np.array(self.v, dtype=float).reshape(-1)
        if v.shape != self.base.coords.shape:
            raise InvalidInputError("tangent vector dimension does not match its base point")
        k = self.base.k
        if k < 0:
            scale = 1 + float(np.abs(v) @ np.abs(self.base.coords))
            if abs(inner(k, self.base.coords, v)) > EPS_MODEL * scale:
                raise InvalidInputError("vector is not tangent to the hyperboloid at its base")
        v.flags.writeable = False
        object.__setattr__(self, "v", v)

    @property
    def norm(self):
        return float(np.sqrt(max(inner(self.base.k, self.v, self.v), 0.0)))


def _same_space(*pts):
    k, n = pts[0].k, pts[0].coords.size
    for p in pts[1:]:
        if p.k != k or p.coords.size != n:
            raise InvalidInputError("points live in different model spaces")
    return k


def dist(p, q):
    k = _same_space(p, q)
    return float(coord_dist(k, p.coords, q.coords))


def exp_map(p, v, t):
    if not isinstance(v, TangentVec):
        v = TangentVec(p, v)
    if v.base is not p and v.base != p:
        raise InvalidInputError("tangent vector is based at a different point")
    if abs(v.norm - 1) > EPS_MODEL:
        raise InvalidInputError(f"exp_map expects a unit vector, got norm {v.norm}")
    t = float(t)
    if t < 0:
        raise InvalidInputError("exp_map expects t >= 0")
    x = coord_exp(p.k, p.coords, v.v, t)
    return SpacePoint(p.k, project_point(p.k, x))


def direction(o, p):
    """Unit tangent at o towards p."""
    k = _same_space(o, p)
    if o == p or dist(o, p) == 0:
        raise InvalidInputError("direction between coincident points")
    u, _ = coord_direction(k, o.coords, p.coords)
    return TangentVec(o, project_tangent(k, o.coords, u))


def angle(p, o, q):
    k = _same_space(p, o, q)
    if dist(p, o) == 0 or dist(q, o) == 0:
        raise InvalidInputError("angle undefined at a coincident vertex")
    return float(coord_angle(k, p.coords, o.coords, q.coords))


def geodesic_point(p, q, s):
    k = _same_space(p, q)
    if dist(p, q) == 0:
        return p
    return SpacePoint(k, project_point(k, coord_geodesic_point(k, p.coords, q.coords, s)))


@dataclass(frozen=True)
class ComparisonTriangle:
    """Triangle in M^2_k with |P0P1| = a, |P1P2| = b, |P2P0| = c.

    ``angles[i]`` is the angle at ``vertices[i]``; the angle at P1 is the one
    opposite c.
    """

    k: float
    sides: tuple
    vertices: tuple
    angles: tuple

    @property
    def area(self):
        return float(triangle_area(self.k, *self.sides))


def comparison_triangle(a, b, c, k, tol=EPS_MODEL):
    k = check_curvature(k)
    a, b, c = float(a), float(b), float(c)
    if min(a, b, c) <= 0:
        raise InfeasibleError("comparison triangle sides must be positive")
    longest = max(a, b, c)
    if 2 * longest > a + b + c + tol * max(1.0, longest):
        raise InfeasibleError(f"sides ({a}, {b}, {c}) violate the triangle inequality")
    th0 = float(opposite_angle(k, b, a, c))
    th1 = float(opposite_angle(k, c, a, b))
    th2 = float(opposite_angle(k, a, b, c))
    o = basepoint(k, 2)
    e1, e2 = base_frame(k, 2)
    p1 = coord_exp(k, o, e1, a)
    p2 = coord_exp(k, o, np.cos(th0) * e1 + np.sin(th0) * e2, c)
    verts = tuple(SpacePoint(k, project_point(k, x)) for x in (o, p1, p2))
    return ComparisonTriangle(k, (a, b, c), verts, (th0, th1, th2))


@dataclass
class ThinReport:
    k_space: float
    k_ref: float
    max_excess: float
    worst: tuple
    samples: int
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.max_excess <= self.tol


def thin_triangle_check(a, b, c, k_ref, samples=9, tol=EPS_MODEL):
    """Compare point-pair distances on a geodesic triangle with its M^2_{k_ref} comparison.

    For every pair of sides with a common vertex, points at fractions s, t of
    the way along them are compared; the report carries the largest excess
    |x y|_space - |x' y'|_comparison.
    """
    k = _same_space(a, b, c)
    k_ref = check_curvature(k_ref)
    if k > k_ref:
        raise InvalidInputError("thin-triangle check needs the space curvature k' <= k_ref")
    X = [a.coords, b.coords, c.coords]
    d01, d12, d20 = (float(coord_dist(k, X[i], X[j])) for i, j in ((0, 1), (1, 2), (2, 0)))
    if min(d01, d12, d20) <= 0:
        raise InvalidInputError("thin-triangle check needs three distinct vertices")
    tri = comparison_triangle(d01, d12, d20, k_ref, tol=1e-9)
    Y = [v.coords for v in tri.vertices]
    fr = np.linspace(0, 1, samples)
    worst, where = -np.inf, None
    for apex in range(3):
        i, j = (apex + 1) % 3, (apex + 2) % 3
        ps = _geodesic_samples(k, X[apex], X[i], fr)
        qs = _geodesic_samples(k, X[apex], X[j], fr)
        ps_ = _geodesic_samples(k_ref, Y[apex], Y[i], fr)
        qs_ = _geodesic_samples(k_ref, Y[apex], Y[j], fr)
        D = coord_dist(k, ps[:, None, :], qs[None, :, :], check=False)
        D_ = coord_dist(k_ref, ps_[:, None, :], qs_[None, :, :], check=False)
        ex = D - D_
        idx = np.unravel_index(np.argmax(ex), ex.shape)
        if ex[idx] > worst:
            worst, where = float(ex[idx]), (apex, float(fr[idx[0]]), float(fr[idx[1]]))
    return ThinReport(k, k_ref, worst, where, 3 * samples * samples, tol)


def _geodesic_samples(k, p, q, fr):
    return geodesic_interp(k, p, q, fr)


def _batch_samples(k, P, Q, fr):
    return geodesic_interp(k, P, Q, fr)


def thin_excess_batch(k, k_ref, X, samples=9):
    """Largest thin-triangle excess for each of B triangles X (B, 3, D) in M^2_k.

    Same quantity as ``thin_triangle_check(...).max_excess``, computed for
    the whole batch at once.  Degenerate triangles are not rejected here.
    """
    k, k_ref = check_curvature(k), check_curvature(k_ref)
    X = np.asarray(X, dtype=float)
    a = coord_dist(k, X[:, 0], X[:, 1])
    b = coord_dist(k, X[:, 1], X[:, 2])
    c = coord_dist(k, X[:, 2], X[:, 0])
    th0 = opposite_angle(k_ref, b, a, c)
    o = basepoint(k_ref, 2)
    e1, e2 = base_frame(k_ref, 2)
    B = len(X)
    Y = np.empty((B, 3, len(o)))
    Y[:, 0] = o
    Y[:, 1] = coord_exp(k_ref, o, np.broadcast_to(e1, (B, len(o))), a)
    Y[:, 2] = coord_exp(k_ref, o, np.cos(th0)[:, None] * e1 + np.sin(th0)[:, None] * e2, c)
    fr = np.linspace(0, 1, samples)
    worst = np.full(B, -np.inf)
    for apex in range(3):
        i, j = (apex + 1) % 3, (apex + 2) % 3
        ps = _batch_samples(k, X[:, apex], X[:, i], fr)
        qs = _batch_samples(k, X[:, apex], X[:, j], fr)
        ps_ = _batch_samples(k_ref, Y[:, apex], Y[:, i], fr)
        qs_ = _batch_samples(k_ref, Y[:, apex], Y[:, j], fr)
        D = coord_dist(k, ps[:, :, None], qs[:, None, :], check=False)
        D_ = coord_dist(k_ref, ps_[:, :, None], qs_[:, None, :], check=False)
        worst = np.maximum(worst, (D - D_).reshape(B, -1).max(axis=1))
    return worst


# ---------------------------------------------------------------------------
# constant-curvature curves


def curve_class(k, c):
    if c < 0:
        raise InvalidInputError("constant curvature must be >= 0")
    if k == 0:
        return "line" if c == 0 else "circle"
    if c == 0:
        return "geodesic"
    crit = np.sqrt(-k)
    if np.isclose(c, crit, rtol=1e-12, atol=0):
        return "horocycle"
    return "hypercycle" if c < crit else "circle"


@dataclass(frozen=True)
class ConstCurve:
    """Unit-speed curve of constant geodesic curvature in M^2_k.

    ``turn`` is +1 if the curve bends to the left of its anchor tangent and
    -1 otherwise; ``c`` is the unsigned curvature.
    """

    k: float
    c: float
    anchor: SpacePoint
    tangent: TangentVec
    turn: int = 1

    @property
    def kind(self):
        return curve_class(self.k, self.c)

    @property
    def closure_length(self):
        K = self.c ** 2 + self.k
        return 2 * np.pi / np.sqrt(K) if K > 0 else np.inf

    def frame(self, t):
        """(point, tangent, left normal) coordinates at arc length t."""
        return const_curve_frame(self.k, self.turn * self.c, self.anchor.coords, self.tangent.v,
                                 left_normal(self.k, self.anchor.coords, self.tangent.v), t)

    def point(self, t):
        return SpacePoint(self.k, project_point(self.k, self.frame(t)[0]))


def const_curve_frame(k, kappa, g0, t0, n0, t):
    """Closed-form Frenet frame of a constant signed-curvature curve.

    With K = kappa^2 + k the moving frame (g, T, N) solves a constant-coefficient
    linear system whose flow is expressed with sn_K and md_K.
    """
    K = kappa * kappa + k
    t = np.asarray(t, dtype=float)[..., None]
    s, m, c = sn(K, t), md(K, t), cs(K, t)
    g = g0 * (1 - k * m) + t0 * s + kappa * m * n0
    T = -k * s * g0 + c * t0 + kappa * s * n0
    N = k * kappa * m * g0 - kappa * s * t0 + (1 - kappa * kappa * m) * n0
    return g, T, N


def chord_and_wrap(k, c, L):
    """Chord of a constant-curvature arc of length L, and whether it wraps past closure."""
    k = check_curvature(k)
    if L <= 0:
        raise InvalidInputError("arc length must be positive")
    if c < 0:
        raise InvalidInputError("curvature must be >= 0")
    K = c * c + k
    wrapped = bool(K > 0 and L * np.sqrt(K) > 2 * np.pi)
    chord = 2 * asn(k, np.abs(sn(K, L / 2)))
    return float(min(chord, L)), wrapped


def const_curve_chord(k, c, L):
    """Chord of a unit-speed arc of constant curvature c and length L in M^2_k."""
    return chord_and_wrap(k, c, L)[0]


def circumscribed_curvature(p1, p2, p3):
    """Constant-curvature curve of M^2_k through three points, traversed p1 -> p2 -> p3.

    For k < 0 the curve is the intersection of the hyperboloid with the affine
    plane through the three points; its curvature follows in closed form from
    the plane's offset and the causal character of its normal.
    """
    k = _same_space(p1, p2, p3)
    if p1.dim != 2:
        raise InvalidInputError("circumscribed_curvature works in M^2_k")
    x1, x2, x3 = p1.coords, p2.coords, p3.coords
    if min(coord_dist(k, x1, x2), coord_dist(k, x2, x3), coord_dist(k, x1, x3)) <= 0:
        raise InvalidInputError("circumscribed curve needs three distinct points")
    c, t = _circumscribe(k, x1, x2, x3)
    turn = 1 if orientation(k, x1, x2, x3) >= 0 else -1
    tv = TangentVec(p1, project_tangent(k, x1, t))
    return c, ConstCurve(k, c, p1, tv, turn)


def _circumscribe(k, x1, x2, x3):
    a, b = x1 - x2, x3 - x2
    if k == 0:
        cr = a[0] * b[1] - a[1] * b[0]
        la, lb, lc = np.linalg.norm(a), np.linalg.norm(b), np.linalg.norm(x3 - x1)
        c = 2 * abs(cr) / (la * lb * lc)
        if c <= 1e-14 / max(la, lb):
            return 0.0, (x2 - x1) / la
        # centre in the plane, then the tangent at x1 is perpendicular to x1 - centre
        d = 2 * cr
        a2, b2 = a @ a, b @ b
        ctr = x2 + np.array([b[1] * a2 - a[1] * b2, a[0] * b2 - b[0] * a2]) / d
        r = x1 - ctr
        t = np.array([-r[1], r[0]])
        t /= np.linalg.norm(t)
        if t @ (x2 - x1) < 0:
            t = -t
        return float(c), t
    s = np.sqrt(-k)
    y1, y2, y3 = s * x1, s * x2, s * x3
    m = np.cross(y1 - y2, y3 - y2)
    h = float(m @ y2)
    qn = float(-m[0] ** 2 + m[1] ** 2 + m[2] ** 2)
    den = h * h + qn
    if den <= 0:
        if den < -1e-10 * (m @ m):
            raise NumericalDomainError("plane through the points misses the hyperboloid")
        den = 1e-300
    c1 = abs(h) / np.sqrt(den)
    n = m.copy()
    n[0] = -n[0]
    t = np.cross(y1, n)
    t[0] = -t[0]
    t = project_tangent(-1.0, y1, t)
    t /= np.sqrt(inner(-1.0, t, t))
    u, _ = coord_direction(-1.0, y1, y2)
    if inner(-1.0, t, u) < 0:
        t = -t
    if abs(h) <= 1e-14 * np.linalg.norm(m) * np.linalg.norm(y2):
        c1 = 0.0
    return float(s * c1), t
