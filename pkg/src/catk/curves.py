"""Smooth and polygonal curves in model spaces.

Smooth curves are built by integrating the Frenet system of a prescribed
geodesic curvature in ambient model coordinates,

    g' = T,   T' = -k g + kappa N,   N' = -kappa T,

with classical RK4 and a per-step retraction of (g, T, N) back onto the
model.  The same integrator runs batched over many curves at once.
"""

from dataclasses import dataclass, field

import numpy as np

from . import model_space as ms
from .errors import AccuracyError, InvalidInputError, NumericalDomainError, ResolutionError
from .model_space import EPS_TEST, SpacePoint, TangentVec


# ---------------------------------------------------------------------------
# curvature functions


@dataclass(frozen=True)
class Kappa:
    """Prescribed curvature function of arc length.

    kind is one of ``constant`` (value), ``linear`` (a + b t), ``sinusoidal``
    (offset + sum amps[i] sin(freqs[i] t + phases[i])) or ``samples``
    (piecewise linear through (t, values)).
    """

    kind: str
    params: dict

    def __post_init__(self):
        if self.kind not in ("constant", "linear", "sinusoidal", "samples"):
            raise InvalidInputError(f"unknown curvature function type {self.kind!r}")

    @classmethod
    def constant(cls, value):
        return cls("constant", {"value": float(value)})

    @classmethod
    def linear(cls, a, b):
        return cls("linear", {"a": float(a), "b": float(b)})

    @classmethod
    def sinusoidal(cls, offset, amps, freqs, phases):
        return cls("sinusoidal", {"offset": float(offset), "amps": [float(x) for x in amps],
                                  "freqs": [float(x) for x in freqs], "phases": [float(x) for x in phases]})

    @classmethod
    def samples(cls, t, values):
        return cls("samples", {"t": [float(x) for x in t], "values": [float(x) for x in values]})

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        p = self.params
        if self.kind == "constant":
            out = np.full_like(t, p["value"])
        elif self.kind == "linear":
            out = p["a"] + p["b"] * t
        elif self.kind == "sinusoidal":
            out = np.full_like(t, p["offset"])
            for a, w, ph in zip(p["amps"], p["freqs"], p["phases"]):
                out = out + a * np.sin(w * t + ph)
        else:
            out = np.interp(t, p["t"], p["values"])
        return out if out.ndim else float(out)

    def to_dict(self):
        if self.kind == "samples":
            return {"type": "samples", "samples": {"t": self.params["t"], "values": self.params["values"]}}
        return {"type": self.kind, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, d):
        kind = d["type"]
        if kind == "samples":
            s = d["samples"]
            return cls.samples(s["t"], s["values"])
        return cls(kind, dict(d.get("params", {})))


def as_kappa(kappa):
    if isinstance(kappa, Kappa):
        return kappa
    if callable(kappa):
        return kappa
    return Kappa.constant(kappa)


# ---------------------------------------------------------------------------
# batched integrator


def _frenet_rhs(k, kap, Y):
    g, T, N = Y[:, 0], Y[:, 1], Y[:, 2]
    kc = kap[:, None]
    return np.stack([T, -k * g + kc * N, -kc * T], axis=1)


def _retract(k, Y):
    g = ms.project_point(k, Y[:, 0])
    T = ms.project_tangent(k, g, Y[:, 1])
    T = T / np.sqrt(ms.inner(k, T, T))[:, None]
    N = ms.project_tangent(k, g, Y[:, 2])
    N = N - ms.inner(k, N, T)[:, None] * T
    N = N / np.sqrt(ms.inner(k, N, N))[:, None]
    return np.stack([g, T, N], axis=1)


def _defect(k, Y):
    g, T, N = Y[:, 0], Y[:, 1], Y[:, 2]
    d = np.abs(ms.inner(k, T, T) - 1) + np.abs(ms.inner(k, N, N) - 1) + np.abs(ms.inner(k, T, N))
    if k < 0:
        d = d + np.abs(k * ms.inner(k, g, g) - 1) + np.abs(ms.inner(k, g, T)) + np.abs(ms.inner(k, g, N))
    return d


def rk4_step(k, kappa_fn, t, Y, h):
    """One RK4 step of the Frenet system for a batch; h may vary per curve."""
    h = np.broadcast_to(np.asarray(h, dtype=float), (Y.shape[0],))
    hc = h[:, None, None]
    k1 = _frenet_rhs(k, kappa_fn(t), Y)
    k2 = _frenet_rhs(k, kappa_fn(t + h / 2), Y + hc / 2 * k1)
    k3 = _frenet_rhs(k, kappa_fn(t + h / 2), Y + hc / 2 * k2)
    k4 = _frenet_rhs(k, kappa_fn(t + h), Y + hc * k3)
    return Y + hc / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def integrate_batch(k, kappa_fn, Y0, ell, n, keep=True):
    """Integrate a batch of frames Y0 (B, 3, d) over lengths ell (B,) in n steps.

    ``kappa_fn`` maps a (B,) array of arc-length parameters to curvatures.
    Returns (points, final frames, max pre-retraction defect); ``points`` has
    shape (n + 1, B, d) when keep is true, else None.
    """
    Y = _retract(k, np.array(Y0, dtype=float))
    B = Y.shape[0]
    ell = np.broadcast_to(np.asarray(ell, dtype=float), (B,))
    h = ell / n
    pts = np.empty((n + 1, B, Y.shape[2])) if keep else None
    if keep:
        pts[0] = Y[:, 0]
    defect = 0.0
    for i in range(n):
        Y = rk4_step(k, kappa_fn, i * h, Y, h)
        defect = max(defect, float(np.max(_defect(k, Y))))
        Y = _retract(k, Y)
        if keep:
            pts[i + 1] = Y[:, 0]
    return pts, Y, defect


# ---------------------------------------------------------------------------
# smooth curves


@dataclass(frozen=True, eq=False)
class SmoothCurve:
    k: float
    length: float
    t: np.ndarray
    points: np.ndarray
    tangents: np.ndarray
    normals: np.ndarray
    kappa: object
    drift: float
    defect: float

    @property
    def step(self):
        return self.length / (self.t.size - 1)

    @property
    def dim(self):
        return self.points.shape[1] - (1 if self.k < 0 else 0)

    def frame_at(self, s):
        """(point, tangent, normal) at arc length s, by a partial RK4 step."""
        s = float(s)
        if s < -1e-12 or s > self.length + 1e-12:
            raise InvalidInputError(f"parameter {s} outside [0, {self.length}]")
        s = min(max(s, 0.0), self.length)
        i = min(int(np.floor(s / self.step)), self.t.size - 1)
        dt = s - self.t[i]
        Y = np.stack([self.points[i], self.tangents[i], self.normals[i]])[None]
        if abs(dt) > 0:
            fn = _batch_kappa(self.kappa)
            Y = _retract(self.k, rk4_step(self.k, fn, np.array([self.t[i]]), Y, dt))
        return Y[0, 0], Y[0, 1], Y[0, 2]

    def at(self, s):
        return SpacePoint(self.k, self.frame_at(s)[0])

    def sample_table(self):
        """Rows of (t, coords..., tangent...) for CSV dumps."""
        return np.column_stack([self.t, self.points, self.tangents])


def _batch_kappa(kappa):
    kappa = as_kappa(kappa)
    return lambda t: np.asarray(kappa(t), dtype=float) * np.ones_like(t)


def integrate_curvature_curve(k, kappa, ell, frame=None, step=None, tol=EPS_TEST):
    """Unit-speed curve with prescribed geodesic curvature ``kappa``.

    ``frame`` is (SpacePoint, TangentVec) in M^2_k, or (SpacePoint, TangentVec,
    TangentVec) giving the initial normal explicitly (needed in M^3_k, where
    the curve then stays in the totally geodesic slice spanned by T and N).
    """
    k = ms.check_curvature(k)
    ell = float(ell)
    if ell <= 0:
        raise InvalidInputError("curve length must be positive")
    if step is None:
        step = ell / 1e4
    if step > ell / 100 * (1 + 1e-12):
        raise InvalidInputError("integration step must be at most length/100")
    kappa = as_kappa(kappa)
    if frame is None:
        frame = (SpacePoint.base(k, 2), TangentVec(SpacePoint.base(k, 2), ms.base_frame(k, 2)[0]))
    p, tv = frame[0], frame[1]
    if len(frame) > 2:
        nv = frame[2].v if isinstance(frame[2], TangentVec) else np.asarray(frame[2], dtype=float)
    else:
        if p.dim != 2:
            raise InvalidInputError("an explicit normal is needed for curves in M^3_k")
        nv = ms.left_normal(k, p.coords, tv.v)
    n = int(np.ceil(ell / step - 1e-9))
    fn = _batch_kappa(kappa)
    Y0 = _retract(k, np.stack([p.coords, tv.v, nv])[None])[0]
    h = ell / n
    P = _rk4_prefix(k, fn, h, n)
    raw = np.einsum("nij,jd->nid", P, Y0)
    defect = float(np.max(_defect(k, raw)))
    frames = _retract(k, raw)
    t = np.linspace(0, ell, n + 1)
    drift = unit_speed_drift(k, frames[:, 0], t, kappa)
    if drift > tol:
        raise AccuracyError(drift, tol)
    return SmoothCurve(k, ell, t, frames[:, 0].copy(), frames[:, 1].copy(), frames[:, 2].copy(),
                       kappa, drift, defect)


def _frenet_matrix(k, kap):
    A = np.zeros(kap.shape + (3, 3))
    A[..., 0, 1] = 1.0
    A[..., 1, 0] = -k
    A[..., 1, 2] = kap
    A[..., 2, 1] = -kap
    return A


def _rk4_prefix(k, fn, h, n):
    """Frame propagators from 0 to every step, shape (n + 1, 3, 3).

    The Frenet system is linear in the frame, so each RK4 step is a 3x3
    matrix built from the curvature at the step's nodes; the running
    products come from a doubling scan instead of a Python loop.
    """
    t = h * np.arange(n)
    A1, A2, A3 = (_frenet_matrix(k, fn(t + c * h)) for c in (0.0, 0.5, 1.0))
    eye = np.eye(3)
    K1 = A1
    K2 = A2 @ (eye + h / 2 * K1)
    K3 = A2 @ (eye + h / 2 * K2)
    K4 = A3 @ (eye + h * K3)
    P = np.empty((n + 1, 3, 3))
    P[0] = eye
    P[1:] = eye + h / 6 * (K1 + 2 * K2 + 2 * K3 + K4)
    shift = 1
    while shift <= n:
        P[shift + 1:] = P[shift + 1:] @ P[1:n + 1 - shift]
        shift *= 2
    return P


def unit_speed_drift(k, pts, t, kappa):
    """Max relative mismatch between sample chords and constant-curvature arc chords."""
    dt = np.diff(t)
    d = ms.coord_dist(k, pts[:-1], pts[1:], check=False)
    kap = np.asarray(as_kappa(kappa)((t[:-1] + t[1:]) / 2), dtype=float) * np.ones_like(dt)
    expected = 2 * ms.asn(k, np.abs(ms.sn_var(kap * kap + k, dt / 2)))
    return float(np.max(np.abs(d - expected) / dt))


# ---------------------------------------------------------------------------
# polygonal curves


@dataclass(frozen=True, eq=False)
class PolyCurve:
    k: float
    vertices: np.ndarray
    closed: bool = False
    meta: dict = field(default_factory=dict, compare=False)
    edge_lengths: np.ndarray = field(init=False)
    angles: np.ndarray = field(init=False)

    def __post_init__(self):
        k = ms.check_curvature(self.k)
        V = np.array(self.vertices, dtype=float)
        if V.ndim != 2 or V.shape[0] < 2:
            raise InvalidInputError("a polygonal curve needs at least two vertices")
        if k < 0:
            V = ms.project_point(k, V)
        nxt = np.roll(V, -1, axis=0) if self.closed else V[1:]
        cur = V if self.closed else V[:-1]
        L = ms.coord_dist(k, cur, nxt, check=False)
        if np.any(L <= 0):
            raise InvalidInputError("consecutive polygon vertices must be distinct")
        if self.closed:
            ang = ms.coord_angle(k, np.roll(V, 1, axis=0), V, np.roll(V, -1, axis=0))
        else:
            ang = ms.coord_angle(k, V[:-2], V[1:-1], V[2:]) if V.shape[0] > 2 else np.zeros(0)
        for name, val in (("k", k), ("vertices", V), ("edge_lengths", L), ("angles", np.asarray(ang))):
            if isinstance(val, np.ndarray):
                val.flags.writeable = False
            object.__setattr__(self, name, val)

    @property
    def n_vertices(self):
        return self.vertices.shape[0]

    def point(self, i):
        return SpacePoint(self.k, self.vertices[i])

    def turning_signs(self, tol=1e-9):
        V = self.vertices
        if self.closed:
            a, b, c = np.roll(V, 1, axis=0), V, np.roll(V, -1, axis=0)
        else:
            a, b, c = V[:-2], V[1:-1], V[2:]
        return _turn_signs(self.k, a, b, c, tol)


def _turn_signs(k, a, b, c, tol):
    o = ms.orientation(k, a, b, c)
    scale = np.sqrt(np.maximum(ms.inner(k, b - a, b - a), 0)) * np.sqrt(np.maximum(ms.inner(k, c - b, c - b), 0))
    r = o / np.where(scale > 0, scale, 1.0)
    return np.where(r > tol, 1, np.where(r < -tol, -1, 0))


def turtle_vertices(k, lengths, turns, start=None):
    """Vertices of open polygons from edge lengths (B, m) and signed turns (B, m-1).

    Turns are exterior angles at the interior vertices, positive to the left.
    Each polygon starts at the basepoint heading along the first basis vector
    unless ``start`` = (point, tangent) is given.  Returns (B, m + 1, d).
    """
    k = ms.check_curvature(k)
    L = np.atleast_2d(np.asarray(lengths, dtype=float))
    tau = np.asarray(turns, dtype=float).reshape(L.shape[0], L.shape[1] - 1)
    B, m = L.shape
    if start is None:
        p = np.tile(ms.basepoint(k), (B, 1))
        t = np.tile(ms.base_frame(k)[0], (B, 1))
    else:
        p = np.broadcast_to(np.asarray(start[0], dtype=float), (B, ms.ambient_dim(k, 2))).copy()
        t = np.broadcast_to(np.asarray(start[1], dtype=float), p.shape).copy()
    out = np.empty((B, m + 1, p.shape[1]))
    out[:, 0] = p
    for j in range(m):
        lj = L[:, j]
        p, t = ms.coord_exp(k, p, t, lj), ms.coord_transport_tangent(k, p, t, lj)
        p = ms.project_point(k, p)
        t = ms.project_tangent(k, p, t)
        t = t / np.sqrt(ms.inner(k, t, t))[:, None]
        out[:, j + 1] = p
        if j < m - 1:
            n = ms.left_normal(k, p, t)
            c, s_ = np.cos(tau[:, j])[:, None], np.sin(tau[:, j])[:, None]
            t = c * t + s_ * n
    return out


def polygon_from_turns(k, lengths, turns, start=None):
    return PolyCurve(k, turtle_vertices(k, [lengths], [turns], start)[0])


def signed_turns(poly):
    """Signed exterior angles at the interior vertices of an open polygon."""
    s = poly.turning_signs(tol=0.0)
    return np.where(s == 0, 1, s) * (np.pi - poly.angles)


def inscribe_polygon(curve, N):
    if N < 2:
        raise InvalidInputError("inscribed polygon needs N >= 2")
    if curve.length / N < curve.step * (1 - 1e-9):
        raise ResolutionError(f"N = {N} edges exceed the sample resolution of the curve")
    verts = np.array([curve.frame_at(j * curve.length / N)[0] for j in range(N + 1)])
    return PolyCurve(curve.k, verts)


# ---------------------------------------------------------------------------
# chord-convexity


@dataclass(frozen=True)
class ChordConvexityCert:
    verdict: bool
    witness: object
    turning_signs: list
    reason: str = ""

    def __post_init__(self):
        if not self.verdict and self.witness is None:
            raise ValueError("a failed certificate needs a witness")


def _points_of(curve):
    if isinstance(curve, PolyCurve):
        return curve.k, curve.vertices, curve.closed
    if isinstance(curve, SmoothCurve):
        return curve.k, curve.points, False
    raise InvalidInputError("expected a PolyCurve or SmoothCurve")


def convexity_arrays(k, pts, tol=1e-9):
    """Convexity of the closed polygon through pts (B, m, d) batched.

    Returns (verdict (B,), first failing index (B,), turning signs (B, m)).
    A closed polygon passes when its turning is one-signed at every vertex
    and the polar angle seen from vertex 0 is monotone, which rules out
    polygons that wind more than once.
    """
    P = np.asarray(pts, dtype=float)
    a, b, c = np.roll(P, 1, axis=1), P, np.roll(P, -1, axis=1)
    sg = _turn_signs(k, a, b, c, tol)
    pos = np.any(sg > 0, axis=1)
    neg = np.any(sg < 0, axis=1)
    S = np.where(pos, 1, np.where(neg, -1, 0))
    bad = (sg == -S[:, None]) & (S[:, None] != 0)
    # polar angles around vertex 0, signed by the turning orientation
    o = P[:, :1]
    u1 = P[:, 1:2]
    rest = P[:, 1:]
    cosang = ms.coord_angle(k, np.broadcast_to(u1, rest.shape), np.broadcast_to(o, rest.shape), rest)
    side = _turn_signs(k, np.broadcast_to(u1, rest.shape), np.broadcast_to(o, rest.shape), rest, tol)
    Sx = np.where(S == 0, 1, S)[:, None]
    # a vertex straight across from vertex 0 sits at polar angle pi, not -pi
    polar = np.where(side * Sx > 0, -cosang, cosang)
    mono_bad = np.zeros_like(bad)
    mono_bad[:, 2:] = np.diff(polar, axis=1) < -1e-9
    neg_polar = np.zeros_like(bad)
    neg_polar[:, 1:] = polar < -1e-9
    fail = bad | mono_bad | neg_polar
    verdict = ~np.any(fail, axis=1)
    first = np.where(verdict, -1, np.argmax(fail, axis=1))
    return verdict, first, sg


def chord_convexity_check(curve, tol=1e-9):
    k, P, closed = _points_of(curve)
    if k != 0 and P.shape[1] != 3 or k == 0 and P.shape[1] != 2:
        raise InvalidInputError("chord-convexity is defined for curves in M^2_k")
    seg = ms.coord_dist(k, P[:-1], P[1:], check=False)
    total = float(np.sum(seg))
    if total <= 0:
        raise InvalidInputError("zero-length curve")
    if not closed and ms.coord_dist(k, P[0], P[-1]) <= 1e-9 * total:
        closed = True
        P = P[:-1]
    verdict, first, sg = convexity_arrays(k, P[None], tol)
    signs = sg[0].tolist()
    if not closed:
        # interior-vertex signs are the ones reported for open curves
        signs = signs[1:-1]
    if verdict[0]:
        return ChordConvexityCert(True, None, signs)
    i = int(first[0])
    reason = "turning sign flip" if sg[0][i] != 0 else "winding or side violation"
    return ChordConvexityCert(False, i, signs, reason)


# ---------------------------------------------------------------------------
# curvature estimators


def _window(curve, t, h):
    if h <= 0 or t - h < -1e-12 or t + h > curve.length + 1e-12:
        raise InvalidInputError(f"window [{t - h}, {t + h}] outside [0, {curve.length}]")
    if h < curve.step * (1 - 1e-9):
        raise InvalidInputError("window below the sample resolution of the curve")


def osc_curvature_estimate(curve, t, h):
    """Curvature of the constant-curvature curve through gamma(t - h), gamma(t), gamma(t + h)."""
    _window(curve, t, h)
    pts = [SpacePoint(curve.k, curve.frame_at(s)[0]) for s in (t - h, t, t + h)]
    return ms.circumscribed_curvature(*pts)[0]


def curvature_from_chord(k, chord, L, iters=80):
    """c >= 0 with const_curve_chord(k, c, L) = chord, by bisection."""
    if chord > L * (1 + 1e-9):
        raise NumericalDomainError(f"chord {chord} exceeds arc length {L}")
    if chord >= L * (1 - 1e-15):
        return 0.0
    c_cap = np.sqrt((2 * np.pi / L) ** 2 - k)
    hi = min(1.0, c_cap)
    while hi < c_cap and ms.const_curve_chord(k, hi, L) > chord:
        hi = min(2 * hi, c_cap)
    lo = 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if ms.const_curve_chord(k, mid, L) > chord:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def chord_curvature_estimate(curve, t, h):
    """Curvature of the constant-curvature arc of length 2h with the same chord as gamma on [t-h, t+h]."""
    _window(curve, t, h)
    d = float(ms.coord_dist(curve.k, curve.frame_at(t - h)[0], curve.frame_at(t + h)[0]))
    return curvature_from_chord(curve.k, d, 2 * h)


def curve_chord(curve):
    k, P, closed = _points_of(curve)
    if closed:
        return 0.0
    return float(ms.coord_dist(k, P[0], P[-1]))


def curve_length(curve):
    if isinstance(curve, SmoothCurve):
        return float(np.sum(np.diff(curve.t)))
    return float(np.sum(curve.edge_lengths))
