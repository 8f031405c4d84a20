"""Comparison theorems: arm lemma, Schur's bow lemma, majorization, rigidity.

Every operation recomputes its hypotheses from the data it is given.  The
lemmas are false outside their hypotheses, so a caller's assurance is never
taken on trust.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from . import model_space as ms
from .curves import (
    PolyCurve,
    SmoothCurve,
    as_kappa,
    chord_convexity_check,
    convexity_arrays,
    integrate_batch,
    signed_turns,
    turtle_vertices,
)
from .errors import (
    AccuracyError,
    ConvexificationFailure,
    HypothesisViolation,
    InfeasibleError,
    InvalidInputError,
)
from .model_space import EPS_MODEL, EPS_TEST


# ---------------------------------------------------------------------------
# geometry helpers


def klein(k, V):
    """Projective chart in which geodesics of M^2_k are straight lines."""
    V = np.asarray(V, dtype=float)
    if k == 0:
        return V
    return V[..., 1:] / V[..., :1]


def _cross2(u, w):
    return u[..., 0] * w[..., 1] - u[..., 1] * w[..., 0]


def self_intersections(poly):
    """Pairs (i, j) of non-adjacent edges of ``poly`` that cross."""
    P = klein(poly.k, poly.vertices)
    if poly.closed:
        P = np.vstack([P, P[:1]])
    m = P.shape[0] - 1
    hits = []
    for i in range(m):
        a, b = P[i], P[i + 1]
        for j in range(i + 2, m):
            if poly.closed and i == 0 and j == m - 1:
                continue
            c, d = P[j], P[j + 1]
            d1 = _cross2(b - a, c - a)
            d2 = _cross2(b - a, d - a)
            d3 = _cross2(d - c, a - c)
            d4 = _cross2(d - c, b - c)
            if d1 * d2 < 0 and d3 * d4 < 0:
                hits.append((i, j))
    return hits


def chord(poly):
    return float(ms.coord_dist(poly.k, poly.vertices[0], poly.vertices[-1]))


# ---------------------------------------------------------------------------
# Cauchy's arm lemma


@dataclass(frozen=True, eq=False)
class ArmLemmaInstance:
    gamma1: PolyCurve
    gamma2: PolyCurve
    flags: dict = field(init=False)

    def __post_init__(self):
        g1, g2 = self.gamma1, self.gamma2
        if g1.closed or g2.closed:
            raise InvalidInputError("arm-lemma curves are open polygons")
        if g1.k != g2.k:
            raise InvalidInputError("both arms must live in the same M^2_k")
        object.__setattr__(self, "flags", arm_flags(g1.k, g1.vertices[None], g2.vertices[None],
                                                    g1.edge_lengths[None], g2.edge_lengths[None]))


_ARM_FLAGS = ("chord_convex_1", "chord_convex_2", "edge_lengths_equal", "angle_dominance")


def arm_flags(k, V1, V2, L1=None, L2=None, tol=1e-9):
    """Hypothesis flags of a batch of arm pairs with vertices (B, m+1, d)."""
    V1 = np.asarray(V1, dtype=float)
    V2 = np.asarray(V2, dtype=float)
    if V1.shape != V2.shape:
        return {"chord_convex_1": None, "chord_convex_2": None,
                "edge_lengths_equal": np.zeros(V1.shape[0], bool), "angle_dominance": None}
    if L1 is None:
        L1 = ms.coord_dist(k, V1[:, :-1], V1[:, 1:], check=False)
        L2 = ms.coord_dist(k, V2[:, :-1], V2[:, 1:], check=False)
    c1 = convexity_arrays(k, V1, tol)[0]
    c2 = convexity_arrays(k, V2, tol)[0]
    # hyperboloid coordinates lose absolute precision far from the basepoint
    far = 1 + abs(k) * np.max(np.sum(V1 * V1, axis=-1), axis=1) if k < 0 else 1.0
    eq = np.all(np.abs(L1 - L2) <= EPS_MODEL * np.maximum(1.0, np.abs(L1)) * np.reshape(far, (-1, 1)), axis=1)
    if V1.shape[1] > 2:
        a1 = ms.coord_angle(k, V1[:, :-2], V1[:, 1:-1], V1[:, 2:])
        a2 = ms.coord_angle(k, V2[:, :-2], V2[:, 1:-1], V2[:, 2:])
        dom = np.all(a2 >= a1 - tol, axis=1)
    else:
        dom = np.ones(V1.shape[0], bool)
    return {"chord_convex_1": c1, "chord_convex_2": c2, "edge_lengths_equal": eq, "angle_dominance": dom}


def _flag_value(v):
    return bool(np.all(v)) if v is not None else False


@dataclass(frozen=True)
class ArmVerdict:
    d1: float
    d2: float
    passed: bool

    @property
    def chords(self):
        return self.d1, self.d2

    @property
    def margin(self):
        return self.d2 - self.d1


def arm_compare(inst, tol=EPS_TEST):
    for name in _ARM_FLAGS:
        if not _flag_value(inst.flags[name]):
            raise HypothesisViolation(name)
    d1, d2 = chord(inst.gamma1), chord(inst.gamma2)
    return ArmVerdict(d1, d2, d2 >= d1 - tol)


def arm_open(poly, i, theta_new, tol=1e-12):
    """Rotate the sub-arm beyond interior vertex i rigidly so its angle becomes theta_new.

    The returned polygon keeps all edge lengths and all other angles.  Its
    ``meta`` records the chords before and after, whether the chord grew, and
    any self-intersections (allowed, but recorded).
    """
    if poly.closed:
        raise InvalidInputError("arm_open acts on open polygons")
    m = poly.n_vertices
    if not 1 <= i <= m - 2:
        raise InvalidInputError(f"vertex {i} is not an interior vertex")
    theta_old = float(poly.angles[i - 1])
    if theta_new < theta_old - tol or theta_new > np.pi + tol:
        raise InvalidInputError(f"new angle {theta_new} must lie in [{theta_old}, pi]")
    if not chord_convexity_check(poly).verdict:
        raise HypothesisViolation("chord_convex")
    before = chord(poly)
    if abs(theta_new - theta_old) <= tol:
        return PolyCurve(poly.k, poly.vertices, meta={"chord_before": before, "chord_after": before,
                                                      "chord_monotone": True, "self_intersections": []})
    k = poly.k
    turns = signed_turns(poly)
    sign = np.sign(turns[i - 1]) or 1.0
    turns = turns.copy()
    turns[i - 1] = sign * (np.pi - min(theta_new, np.pi))
    V = poly.vertices
    t0, _ = ms.coord_direction(k, V[0], V[1])
    W = turtle_vertices(k, [poly.edge_lengths], [turns], start=(V[0], t0))[0]
    W[: i + 1] = V[: i + 1]
    out = PolyCurve(k, W)
    after = chord(out)
    meta = {"chord_before": before, "chord_after": after, "chord_monotone": after >= before - EPS_MODEL,
            "self_intersections": self_intersections(out)}
    return PolyCurve(k, out.vertices, meta=meta)


# ---------------------------------------------------------------------------
# Schur's comparison theorem


@dataclass(frozen=True, eq=False)
class SchurInstance:
    """gamma1 lives in M^2_{k_ref}; gamma2 in M^{n_amb}_{k_amb}.

    For n_amb = 3, ``frame2`` = (point, T0, N0) in ambient coordinates fixes
    the totally geodesic slice spanned by T0 and N0 where gamma2 lives.
    """

    kappa1: object
    kappa2: object
    k_ref: float
    k_amb: float
    ell: float
    n_amb: int = 2
    frame2: tuple = None
    flags: dict = field(init=False)

    def __post_init__(self):
        k_ref = ms.check_curvature(self.k_ref)
        k_amb = ms.check_curvature(self.k_amb)
        if self.n_amb not in (2, 3):
            raise InvalidInputError("ambient dimension must be 2 or 3")
        if self.ell <= 0:
            raise InvalidInputError("length must be positive")
        if self.frame2 is None:
            object.__setattr__(self, "frame2", default_frame(k_amb, self.n_amb))
        else:
            object.__setattr__(self, "frame2", _check_frame(k_amb, self.n_amb, self.frame2))
        t = np.linspace(0, self.ell, 1001)
        k1 = np.asarray(as_kappa(self.kappa1)(t)) * np.ones_like(t)
        k2 = np.asarray(as_kappa(self.kappa2)(t)) * np.ones_like(t)
        flags = {"curvature_order": k_amb <= k_ref,
                 "kappa_dominance": bool(np.all(np.abs(k2) <= k1 + EPS_MODEL))}
        object.__setattr__(self, "flags", flags)


def default_frame(k, n):
    E = ms.base_frame(k, n)
    return ms.basepoint(k, n), E[0], E[1]


def _check_frame(k, n, frame):
    p, T, N = (np.asarray(x, dtype=float) for x in frame)
    if p.size != ms.ambient_dim(k, n):
        raise InvalidInputError("slice frame has the wrong ambient dimension")
    ms.SpacePoint(k, p)
    G = np.array([[ms.inner(k, a, b) for b in (T, N)] for a in (T, N)])
    tang = [abs(ms.inner(k, p, v)) if k < 0 else 0.0 for v in (T, N)]
    if np.max(np.abs(G - np.eye(2))) > EPS_MODEL or max(tang) > EPS_MODEL:
        raise InvalidInputError("slice frame must be orthonormal and tangent at its point")
    return p, T, N


@dataclass(frozen=True)
class SchurVerdict:
    d1: float
    d2: float
    passed: bool
    retreat: float = 0.0

    @property
    def margin(self):
        return self.d2 - self.d1


def _retreat_steps(n):
    return min(1000, max(1, n // 10))


def schur_compare(inst, N=10_000, tol=EPS_TEST):
    """Integrate both curves with N steps and compare their chords.

    If gamma1 fails chord-convexity only within the last stretch of length
    1000 steps (tangency to the chord line at an end), both curves are
    shortened to [0, l - eps] and compared there.
    """
    from .curves import integrate_curvature_curve

    for name, ok in inst.flags.items():
        if not ok:
            raise HypothesisViolation(name)
    step = inst.ell / N
    g1 = integrate_curvature_curve(inst.k_ref, inst.kappa1, inst.ell, step=step, tol=tol)
    p, T, Nv = inst.frame2
    P2 = ms.SpacePoint(inst.k_amb, p)
    g2 = integrate_curvature_curve(inst.k_amb, inst.kappa2, inst.ell,
                                   frame=(P2, ms.TangentVec(P2, T), Nv), step=step, tol=tol)
    cert = chord_convexity_check(g1)
    end = g1.t.size - 1
    retreat = 0.0
    if not cert.verdict:
        r = _retreat_steps(end)
        w = cert.witness
        near_end = w is not None and (w <= r or w >= end - r)
        if not near_end:
            raise HypothesisViolation("chord_convex_1")
        end -= r
        short = PolyCurve(g1.k, g1.points[: end + 1])
        if not chord_convexity_check(short).verdict:
            raise HypothesisViolation("chord_convex_1")
        retreat = float(g1.t[-1] - g1.t[end])
    d1 = float(ms.coord_dist(g1.k, g1.points[0], g1.points[end]))
    d2 = float(ms.coord_dist(g2.k, g2.points[0], g2.points[end]))
    return SchurVerdict(d1, d2, d2 >= d1 - tol, retreat)


def schur_batch(k_ref, k_amb, kappa1_fn, kappa2_fn, ell, frame2, n_steps, tol=EPS_TEST):
    """Vectorized Schur comparison over B instances.

    kappa*_fn map a (B,) array of parameters to (B,) curvatures, ``ell`` is
    (B,), and ``frame2`` is (B, 3, d2).  Returns (d1, d2, gamma1 chord-convex).
    Instances failing convexity must be re-run through :func:`schur_compare`.
    """
    B = len(ell)
    Y1 = np.tile(np.stack(default_frame(k_ref, 2)), (B, 1, 1))
    P1, Y1f, def1 = integrate_batch(k_ref, kappa1_fn, Y1, ell, n_steps, keep=True)
    _, Y2f, def2 = integrate_batch(k_amb, kappa2_fn, frame2, ell, n_steps, keep=False)
    if max(def1, def2) > tol:
        raise AccuracyError(max(def1, def2), tol)
    pts = np.swapaxes(P1, 0, 1)
    convex = convexity_arrays(k_ref, pts)[0]
    d1 = ms.coord_dist(k_ref, P1[0], P1[-1])
    d2 = ms.coord_dist(k_amb, frame2[:, 0], Y2f[:, 0])
    return d1, d2, convex


# ---------------------------------------------------------------------------
# majorization of closed polygons


def check_metric(D, tol=EPS_MODEL):
    D = np.asarray(D, dtype=float)
    m = D.shape[0]
    if D.ndim != 2 or D.shape[1] != m or m < 3:
        raise InvalidInputError("need a square distance matrix of at least 3 points")
    if np.max(np.abs(D - D.T)) > tol * max(1.0, np.max(D)) or np.any(np.abs(np.diag(D)) > tol):
        raise InfeasibleError("distance matrix must be symmetric with zero diagonal")
    for i in range(m):
        excess = D[i][:, None] - D[i][None, :] - D
        # excess[j, l] = D[i, j] - D[i, l] - D[j, l] > 0 breaks the triangle inequality
        j, l = np.unravel_index(np.argmax(excess), excess.shape)
        if excess[j, l] > tol * max(1.0, D[i, j]):
            raise InfeasibleError(f"triangle inequality fails for triple ({i}, {j}, {l})")
    return D


@dataclass(frozen=True, eq=False)
class FanDevelopment:
    poly: PolyCurve
    vertex_map: list
    apex_angles: np.ndarray
    distances: np.ndarray


def fan_development(distances, k):
    """Lay the comparison triangles (p0, p_i, p_{i+1}) in M^2_k as a fan about p0."""
    k = ms.check_curvature(k)
    D = check_metric(distances)
    m = D.shape[0]
    alpha = np.array([float(ms.opposite_angle(k, D[i, i + 1], D[0, i], D[0, i + 1])) for i in range(1, m - 1)])
    o = ms.basepoint(k)
    e1, e2 = ms.base_frame(k)
    phi = np.concatenate([[0.0], np.cumsum(alpha)])
    dirs = np.cos(phi)[:, None] * e1 + np.sin(phi)[:, None] * e2
    V = np.vstack([o, ms.coord_exp(k, o, dirs, D[0, 1:])])
    return FanDevelopment(PolyCurve(k, V, closed=True), list(range(m)), alpha, D)


@dataclass(frozen=True, eq=False)
class MajorizationResult:
    majorant: PolyCurve
    vertex_map: list
    max_expansion: float
    log: list
    gauss_bonnet_residual: float
    edge_error: float

    @property
    def steps(self):
        return len(self.log)


class _Glued:
    """A convex polygon C with a triangle D glued along the chord A-B.

    Boundary labels run 0..j in order; D owns the arc A -> d -> B (wrapping
    through j and 0), C owns B..A.  Coordinates X hold the current embedding.
    """

    def __init__(self, k, D, X, j):
        self.k, self.D, self.X, self.j = k, D, X, j
        self.A, self.d, self.B = j - 1, j, 0

    # chain length along D's boundary or C's boundary between labels
    def arc(self, a, b):
        D, j = self.D, self.j
        s, i = 0.0, a
        while i != b:
            n = (i + 1) % (j + 1)
            s += D[i, n]
            i = n
        return s

    def corners(self, reverse=False):
        """Labels of C from B to A (or A to B) that are gluing endpoints or genuine corners."""
        labels = list(range(self.B, self.A + 1))
        if reverse:
            labels = labels[::-1]
        if len(labels) < 3:
            return labels
        P = self.X[labels]
        ang = ms.coord_angle(self.k, P[:-2], P[1:-1], P[2:])
        inner = [lab for lab, a in zip(labels[1:-1], ang) if a < np.pi - 1e-10]
        return [labels[0]] + inner + [labels[-1]]

    def sides(self):
        a = self.arc(self.A, self.d)
        b = self.arc(self.d, self.B)
        c = float(ms.coord_dist(self.k, self.X[self.A], self.X[self.B]))
        return a, b, c

    def endpoint_angles(self):
        a, b, c = self.sides()
        k, X = self.k, self.X
        fwd, back = self.corners(), self.corners(reverse=True)
        cB = ms.coord_angle(k, X[self.A], X[self.B], X[fwd[1]]) if len(fwd) > 2 else 0.0
        cA = ms.coord_angle(k, X[self.B], X[self.A], X[back[1]]) if len(back) > 2 else 0.0
        return (float(ms.opposite_angle(k, b, a, c)) + cA, float(ms.opposite_angle(k, a, b, c)) + cB)

    def fix(self, at_b, log, step, tol):
        """Straighten the reflex gluing endpoint, merging fan triangles from the other one."""
        k, X = self.k, self.X
        cs = self.corners(reverse=not at_b)
        apex = self.A if at_b else self.B
        # the side of D through the reflex point and the side touching the apex
        a, b, c = self.sides()
        near, far = (b, a) if at_b else (a, b)
        merged = 0
        for i in range(len(cs) - 2):
            ci, cn = cs[i], cs[i + 1]
            ang_d = float(ms.opposite_angle(k, far, near, c))
            ang_c = float(ms.coord_angle(k, X[apex], X[ci], X[cn]))
            if ang_d + ang_c <= np.pi + tol:
                break
            near += self.arc(ci, cn) if at_b else self.arc(cn, ci)
            c = float(ms.coord_dist(k, X[apex], X[cn]))
            if near > far + c + EPS_MODEL * (near + far + c):
                raise ConvexificationFailure([ci])
            log.append({"step": step, "apex": int(apex), "straightened": int(ci),
                        "angle_sum": ang_d + ang_c})
            merged += 1
            if at_b:
                self.B = cn
            else:
                self.A = cn
        if merged == 0:
            raise ConvexificationFailure([self.B if at_b else self.A])
        self.embed_d()

    def embed_d(self):
        k, X = self.k, self.X
        a, b, c = self.sides()
        A, B, d = self.A, self.B, self.d
        u, _ = ms.coord_direction(k, X[B], X[A])
        n = ms.left_normal(k, X[B], u)
        inner = [i for i in range(B + 1, A)]
        s = 1.0
        if inner:
            probe = np.sign(ms.orientation(k, X[B], X[A], np.array([X[i] for i in inner])))
            s = probe[np.argmax(np.abs(probe))] if np.any(probe) else 1.0
        th = float(ms.opposite_angle(k, a, b, c))
        dirn = np.cos(th) * u - s * np.sin(th) * n
        X[d] = ms.project_point(k, ms.coord_exp(k, X[B], dirn, b))
        # chain points of D's sides
        i = (d + 1) % (self.j + 1)
        while i != B:
            X[i] = ms.project_point(k, ms.coord_geodesic_point(k, X[d], X[B], self.arc(d, i) / b))
            i = (i + 1) % (self.j + 1)
        i = A + 1
        while i != d:
            X[i] = ms.project_point(k, ms.coord_geodesic_point(k, X[A], X[d], self.arc(A, i) / a))
            i += 1


def _polygon_area(k, V):
    o = V[0]
    area = 0.0
    for a, b in zip(V[1:-1], V[2:]):
        area += float(ms.triangle_area(k, ms.coord_dist(k, o, a), ms.coord_dist(k, a, b), ms.coord_dist(k, b, o)))
    return area


def polygon_gauss_bonnet(poly):
    """|total turning + k Area - 2 pi| for a closed convex polygon."""
    turning = float(np.sum(np.pi - poly.angles))
    return abs(turning + poly.k * _polygon_area(poly.k, poly.vertices) - 2 * np.pi)


def convexify_majorant(dev, max_steps=None, tol=1e-12):
    """Convex closed polygon in M^2_k majorizing the polygon behind ``dev``.

    Comparison triangles (p0, p_{j-1}, p_j) are glued one at a time onto the
    convex polygon built so far.  A reflex vertex at either end of the gluing
    chord is straightened by Alexandrov's lemma: the fan triangles around the
    opposite end are merged one by one, the more reflex end first.  Every
    straightening is logged; with a convex fan the log stays empty and the
    result is the fan development itself.
    """
    D = dev.distances
    k = dev.poly.k
    m = D.shape[0]
    max_steps = max_steps or 4 * m * m
    X = np.zeros((m, ms.ambient_dim(k, 2)))
    X[0] = ms.basepoint(k)
    X[1] = ms.coord_exp(k, X[0], ms.base_frame(k)[0], D[0, 1])
    log = []
    for j in range(2, m):
        g = _Glued(k, D, X, j)
        g.embed_d()
        while True:
            ang_a, ang_b = g.endpoint_angles()
            if max(ang_a, ang_b) <= np.pi + tol:
                break
            if len(log) >= max_steps:
                raise ConvexificationFailure([g.A, g.B])
            g.fix(ang_b >= ang_a, log, j, tol)
        _check_partial(k, X[: j + 1], D[: j + 1, : j + 1])
    maj = PolyCurve(k, X, closed=True)
    if maj.turning_signs(tol=0.0).sum() < 0:
        maj = PolyCurve(k, X[::-1], closed=True)
        maj = PolyCurve(k, np.roll(maj.vertices, 1, axis=0), closed=True)
        order = [0] + list(range(m - 1, 0, -1))
    else:
        order = list(range(m))
    cert = convexity_arrays(k, maj.vertices[None], 1e-9)
    if not cert[0][0]:
        raise ConvexificationFailure(np.nonzero(cert[2][0] < 0)[0].tolist())
    Dm = ms.coord_dist(k, maj.vertices[:, None], maj.vertices[None, :], check=False)
    Dorig = D[np.ix_(order, order)]
    iu = np.triu_indices(m, 1)
    max_exp = float(np.max(Dorig[iu] - Dm[iu]))
    edge_err = float(np.max(np.abs(maj.edge_lengths - np.diag(np.roll(Dorig, -1, axis=1)))))
    return MajorizationResult(maj, order, max_exp, log, polygon_gauss_bonnet(maj), edge_err)


def _check_partial(k, X, D):
    Dm = ms.coord_dist(k, X[:, None], X[None, :], check=False)
    bad = D - Dm
    if np.max(bad) > EPS_TEST:
        i, j = np.unravel_index(np.argmax(bad), bad.shape)
        raise ConvexificationFailure([int(i), int(j)])


# ---------------------------------------------------------------------------
# closed convex curves


def _closed_curve_checks(curve, tol):
    if not isinstance(curve, SmoothCurve):
        raise InvalidInputError("expected a SmoothCurve")
    gap = float(ms.coord_dist(curve.k, curve.points[0], curve.points[-1]))
    if gap > tol * max(1.0, curve.length):
        raise HypothesisViolation("closed")
    if not chord_convexity_check(curve).verdict:
        raise HypothesisViolation("convex")


def curve_total_curvature(curve):
    """Trapezoid rule for the integral of kappa over the sample grid."""
    kap = np.asarray(as_kappa(curve.kappa)(curve.t), dtype=float) * np.ones_like(curve.t)
    return float(trapezoid(kap, curve.t))


def enclosed_area(curve):
    """Area of a closed convex curve: fan of comparison triangles about an interior point.

    Each chord is corrected by the thin circular segment between it and the
    arc, kappa h^3 / 12 to leading order.
    """
    k, P = curve.k, curve.points[:-1]
    o = ms.project_point(k, P.mean(axis=0))
    a, b = P, np.roll(P, -1, axis=0)
    ra, rb = ms.coord_dist(k, o, a, check=False), ms.coord_dist(k, o, b, check=False)
    h = ms.coord_dist(k, a, b, check=False)
    tri = ms.triangle_area(k, ra, h, rb) * np.sign(ms.orientation(k, o, a, b))
    tm = (curve.t[:-1] + curve.t[1:]) / 2
    kap = np.asarray(as_kappa(curve.kappa)(tm), dtype=float) * np.ones_like(tm)
    seg = kap * h ** 3 / 12
    return float(abs(np.sum(tri)) + np.sum(seg) * np.sign(np.sum(tri)))


def gauss_bonnet_curve(curve, tol=EPS_TEST):
    """|integral of kappa + k Area - 2 pi| for a closed convex curve."""
    _closed_curve_checks(curve, tol)
    return abs(curve_total_curvature(curve) + curve.k * enclosed_area(curve) - 2 * np.pi)


@dataclass(frozen=True)
class RigidityReport:
    kappa_violations: int
    gauss_bonnet: tuple
    max_kappa_diff: float
    length_diff: float
    congruent: bool
    majorization_margin: float


def convex_rigidity_check(gamma1, gamma2, grid=64, tol=EPS_TEST):
    """Rigidity of closed convex curves where gamma1 majorizes gamma2 pointwise in distance."""
    for g in (gamma1, gamma2):
        _closed_curve_checks(g, tol)
    if gamma1.k != gamma2.k:
        raise InvalidInputError("both curves must live in the same M^2_k")
    k = gamma1.k
    dl = abs(gamma1.length - gamma2.length)
    if dl > tol * max(1.0, gamma1.length):
        raise HypothesisViolation("equal_length")
    s = np.linspace(0, gamma1.length, grid, endpoint=False)
    P1 = np.array([gamma1.frame_at(x)[0] for x in s])
    P2 = np.array([gamma2.frame_at(x * gamma2.length / gamma1.length)[0] for x in s])
    D1 = ms.coord_dist(k, P1[:, None], P1[None, :], check=False)
    D2 = ms.coord_dist(k, P2[:, None], P2[None, :], check=False)
    margin = float(np.min(D1 - D2))
    if margin < -tol:
        raise HypothesisViolation("majorization")
    t = gamma1.t
    k1 = np.asarray(as_kappa(gamma1.kappa)(t), dtype=float) * np.ones_like(t)
    k2 = np.asarray(as_kappa(gamma2.kappa)(t * gamma2.length / gamma1.length), dtype=float) * np.ones_like(t)
    viol = int(np.sum(k1 > k2 + tol))
    diff = float(np.max(np.abs(k1 - k2)))
    gb = (gauss_bonnet_curve(gamma1, tol), gauss_bonnet_curve(gamma2, tol))
    return RigidityReport(viol, gb, diff, dl, diff <= tol and dl <= tol, margin)
