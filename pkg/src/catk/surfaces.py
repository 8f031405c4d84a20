"""Parametric surfaces in M^3_k and their curvature integrals.

Closed surfaces of genus 0 are charts over the unit sphere, omega -> X(omega).
Geometry at a node is always evaluated in a rotated spherical chart that
puts the node on the equator, so poles need no special handling.  Integrals
use Gauss-Legendre nodes in cos(theta) and the periodic trapezoid rule in phi.
"""

from dataclasses import dataclass

import numpy as np

from . import model_space as ms
from .errors import (
    BoundaryError,
    HypothesisViolation,
    ImmersionFailure,
    InvalidInputError,
    TopologyError,
    TransversalityError,
)
from .model_space import EPS_TEST

H_FD = 1e-3
H_EXACT = 1e-3  # stencil step for derivatives of I on closed-form charts
H_METRIC_FD = 5e-3  # floor for that step when I itself comes from differences


# ---------------------------------------------------------------------------
# sphere parametrization


def omega(a, b):
    sa, ca, sb, cb = np.sin(a), np.cos(a), np.sin(b), np.cos(b)
    return np.stack(np.broadcast_arrays(sa * cb, sa * sb, ca), axis=-1)


def omega_jet(a, b):
    """omega and its first and second partials in (a, b)."""
    sa, ca, sb, cb = np.sin(a), np.cos(a), np.sin(b), np.cos(b)
    z = np.zeros_like(sa * sb)
    w = np.stack(np.broadcast_arrays(sa * cb, sa * sb, ca), axis=-1)
    wa = np.stack(np.broadcast_arrays(ca * cb, ca * sb, -sa), axis=-1)
    wb = np.stack(np.broadcast_arrays(-sa * sb, sa * cb, z), axis=-1)
    wab = np.stack(np.broadcast_arrays(-ca * sb, ca * cb, z), axis=-1)
    wbb = np.stack(np.broadcast_arrays(-sa * cb, -sa * sb, z), axis=-1)
    return w, wa, wb, -w, wab, wbb


def equator_rotation(theta, phi):
    """Rotations R (P, 3, 3) with R e_x = omega(theta, phi), R e_y = phi-hat."""
    w = omega(theta, phi)
    e_phi = np.stack([-np.sin(phi), np.cos(phi), np.zeros_like(phi)], axis=-1)
    return np.stack([w, e_phi, np.cross(w, e_phi)], axis=-1)


class Nodes:
    """Evaluation nodes: chart parameters plus, for sphere charts, local rotations."""

    def __init__(self, u, v, R=None):
        self.u = np.atleast_1d(np.asarray(u, dtype=float))
        self.v = np.atleast_1d(np.asarray(v, dtype=float))
        self.R = R

    def __len__(self):
        return self.u.size


# ---------------------------------------------------------------------------
# surfaces


class ParamSurface:
    """A chart (u, v) -> M^3_k with derivatives.

    Subclasses implement ``_point(nodes, a, b)`` (the chart at offsets a, b
    from each node) and optionally ``_exact(nodes, a, b)`` returning the
    closed-form jet (X, Xa, Xb, Xaa, Xab, Xbb).  Without it, derivatives are
    central differences with step ``h_fd``.
    """

    closed = False
    genus = None
    spherical = False

    def __init__(self, k, h_fd=H_FD, orientation=1, name="chart", params=None):
        self.k = ms.check_curvature(k)
        if h_fd <= 0:
            raise InvalidInputError("finite-difference step must be positive")
        if orientation not in (1, -1):
            raise InvalidInputError("orientation must be +1 or -1")
        self.h_fd = float(h_fd)
        self.orientation = orientation
        self.name = name
        self.params = dict(params or {})

    # -- to be provided -----------------------------------------------------
    def _point(self, nodes, a, b):
        raise NotImplementedError

    def _exact(self, nodes, a, b):
        return None

    def outward_reference(self, X):
        """A point that the outward normal points away from, or None."""
        return None

    domain = ((-np.inf, np.inf), (-np.inf, np.inf))
    periodic = (False, False)

    @property
    def exact(self):
        return type(self)._exact is not ParamSurface._exact

    # -- nodes ----------------------------------------------------------------
    def nodes(self, u, v):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        v = np.atleast_1d(np.asarray(v, dtype=float))
        u, v = np.broadcast_arrays(u, v)
        return Nodes(u.ravel(), v.ravel())

    def check_stencil(self, nodes, reach):
        for x, (lo, hi), per in zip((nodes.u, nodes.v), self.domain, self.periodic):
            if not per and (np.any(x - reach < lo) or np.any(x + reach > hi)):
                raise BoundaryError("difference stencil leaves the chart domain")

    def point(self, u, v):
        nd = self.nodes(u, v)
        return self._point(nd, np.zeros(len(nd)), np.zeros(len(nd)))

    # -- jets -----------------------------------------------------------------
    def jet(self, nodes, a=0.0, b=0.0):
        n = len(nodes)
        a = np.broadcast_to(np.asarray(a, dtype=float), (n,))
        b = np.broadcast_to(np.asarray(b, dtype=float), (n,))
        ex = self._exact(nodes, a, b)
        if ex is not None:
            return ex
        return _fd_jet(lambda da, db: self._point(nodes, a + da, b + db), self.h_fd)

    def first_jet(self, nodes, a=0.0, b=0.0):
        n = len(nodes)
        a = np.broadcast_to(np.asarray(a, dtype=float), (n,))
        b = np.broadcast_to(np.asarray(b, dtype=float), (n,))
        ex = self._exact(nodes, a, b)
        if ex is not None:
            return ex[:3]
        return _fd_jet(lambda da, db: self._point(nodes, a + da, b + db), self.h_fd, first=True)

    def normal(self, X, Xa, Xb):
        k = self.k
        if k == 0:
            n = np.cross(Xa, Xb)
        else:
            n = _cross4(X, Xa, Xb)
            n[..., 0] = -n[..., 0]
        nn = np.sqrt(np.abs(ms.inner(k, n, n)))
        n = n / nn[..., None]
        ref = self.outward_reference(X)
        if ref is not None:
            s = np.sign(ms.inner(k, n, X - ref))
            n = n * np.where(s == 0, 1.0, s)[..., None]
        return n * self.orientation


def _fd_jet(Y, h, first=False):
    """Jet of a chart from 4th-order central differences with step h."""
    y0 = Y(0.0, 0.0)
    ya = [Y(i * h, 0.0) for i in (-2, -1, 1, 2)]
    yb = [Y(0.0, i * h) for i in (-2, -1, 1, 2)]
    d1 = lambda m2, m1, p1, p2: (m2 - 8 * m1 + 8 * p1 - p2) / (12 * h)
    Xa, Xb = d1(*ya), d1(*yb)
    if first:
        return y0, Xa, Xb
    d2 = lambda m2, m1, p1, p2: (-m2 + 16 * m1 - 30 * y0 + 16 * p1 - p2) / (12 * h * h)
    w = {-2: 1.0, -1: -8.0, 1: 8.0, 2: -1.0}
    Xab = sum(w[i] * w[j] * Y(i * h, j * h) for i in w for j in w) / (144 * h * h)
    return y0, Xa, Xb, d2(*ya), Xab, d2(*yb)


def _cross4(x, y, z):
    """Vector Euclidean-orthogonal to x, y, z in R^4 (generalized cross product)."""
    M = np.stack([x, y, z], axis=-2)
    cols = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]
    return np.stack([(-1) ** i * np.linalg.det(M[..., c]) for i, c in enumerate(cols)], axis=-1)


class SphericalSurface(ParamSurface):
    """A closed genus-0 surface given by an embedding of the unit sphere."""

    closed = True
    genus = 0
    spherical = True
    domain = ((0.0, np.pi), (0.0, 2 * np.pi))
    periodic = (True, True)

    def __init__(self, k, center=None, **kw):
        super().__init__(k, **kw)
        self.center = ms.basepoint(self.k, 3) if center is None else np.asarray(center, dtype=float)

    def embed(self, w):
        """Ambient coordinates for unit vectors w (..., 3)."""
        raise NotImplementedError

    def level(self, x):
        """Negative inside, zero on, positive outside; increasing along rays from the center."""
        raise NotImplementedError

    def outward_reference(self, X):
        return self.center

    def nodes(self, theta, phi):
        nd = super().nodes(theta, phi)
        nd.R = equator_rotation(nd.u, nd.v)
        return nd

    def _local_omega(self, nodes, a, b):
        return np.einsum("pij,pj->pi", nodes.R, omega(np.pi / 2 + a, b))

    def _point(self, nodes, a, b):
        return self.embed(self._local_omega(nodes, a, b))


class LinearSphereChart(SphericalSurface):
    """X = c0 + M omega: geodesic spheres (any k) and Euclidean ellipsoids, closed form."""

    def __init__(self, k, c0, M, center=None, **kw):
        super().__init__(k, center=center if center is not None else c0 if k == 0 else None, **kw)
        self.c0 = np.asarray(c0, dtype=float)
        self.M = np.asarray(M, dtype=float)
        self._pinv = np.linalg.pinv(self.M)

    def embed(self, w):
        return self.c0 + w @ self.M.T

    def _exact(self, nodes, a, b):
        jets = omega_jet(np.pi / 2 + a, b)
        RM = np.einsum("ij,pjk->pik", self.M, nodes.R)
        out = [np.einsum("pik,pk->pi", RM, j) for j in jets]
        out[0] = out[0] + self.c0
        return tuple(out)

    def level(self, x):
        return np.linalg.norm((np.asarray(x) - self.c0) @ self._pinv.T, axis=-1) - 1


class RadialGraph(SphericalSurface):
    """X = exp_o(rho(omega) omega) about the basepoint o, with differenced derivatives."""

    def __init__(self, k, rho, **kw):
        super().__init__(k, **kw)
        self.rho = rho

    def embed(self, w):
        r = self.rho(w)
        if np.any(r <= 0):
            raise ImmersionFailure(None, None, 0.0)
        return _radial(self.k, w, r)

    def level(self, x):
        x = np.asarray(x, dtype=float)
        o = ms.basepoint(self.k, 3)
        d = ms.coord_dist(self.k, o, x, check=False)
        sp = x[..., 1:] if self.k < 0 else x
        nrm = np.linalg.norm(sp, axis=-1, keepdims=True)
        w = np.where(nrm > 0, sp / np.where(nrm > 0, nrm, 1), np.eye(3)[0])
        # the center is inside whatever the radius function does
        return np.where(nrm[..., 0] > 0, d - self.rho(w), -1.0)


def _radial(k, w, r):
    r = np.asarray(r, dtype=float)
    if k == 0:
        return w * r[..., None]
    o = ms.basepoint(k, 3)
    sp = np.concatenate([np.zeros(w.shape[:-1] + (1,)), w], axis=-1)
    return ms.cs(k, r)[..., None] * o + ms.sn(k, r)[..., None] * sp


class UVChart(ParamSurface):
    """A general chart given by a vectorized function f(u, v) -> coordinates."""

    def __init__(self, k, f, domain, periodic=(False, False), closed=False, genus=None, exact=None, **kw):
        super().__init__(k, **kw)
        self.f = f
        self.domain = domain
        self.periodic = periodic
        self.closed = closed
        self.genus = genus
        self._exact_fn = exact

    def _point(self, nodes, a, b):
        return self.f(nodes.u + a, nodes.v + b)

    def _exact(self, nodes, a, b):
        if self._exact_fn is None:
            return None
        return self._exact_fn(nodes.u + a, nodes.v + b)

    @property
    def exact(self):
        return self._exact_fn is not None


# ---------------------------------------------------------------------------
# fundamental forms and curvature


@dataclass(frozen=True, eq=False)
class FundForms:
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    e: np.ndarray
    f: np.ndarray
    g: np.ndarray
    N: np.ndarray
    X: np.ndarray

    @property
    def I(self):
        return np.stack([np.stack([self.E, self.F], -1), np.stack([self.F, self.G], -1)], -2)

    @property
    def II(self):
        return np.stack([np.stack([self.e, self.f], -1), np.stack([self.f, self.g], -1)], -2)

    @property
    def det_I(self):
        return self.E * self.G - self.F ** 2

    @property
    def GK(self):
        return (self.e * self.g - self.f ** 2) / self.det_I

    @property
    def mean(self):
        return (self.e * self.G - 2 * self.f * self.F + self.g * self.E) / (2 * self.det_I)

    @property
    def principal(self):
        # shape operator I^{-1} II; its discriminant is written without cancellation
        W = self.det_I
        s11 = (self.G * self.e - self.F * self.f) / W
        s12 = (self.G * self.f - self.F * self.g) / W
        s21 = (self.E * self.f - self.F * self.e) / W
        s22 = (self.E * self.g - self.F * self.f) / W
        r = np.sqrt(np.maximum((s11 - s22) ** 2 + 4 * s12 * s21, 0.0)) / 2
        H = (s11 + s22) / 2
        return np.stack([H - r, H + r], axis=-1)


def _forms_from_jet(S, nodes, jet, tol=1e-12):
    k = S.k
    X, Xa, Xb, Xaa, Xab, Xbb = jet
    E, F, G = ms.inner(k, Xa, Xa), ms.inner(k, Xa, Xb), ms.inner(k, Xb, Xb)
    det = E * G - F * F
    bad = det <= tol * np.maximum(E * G, 1e-300)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ImmersionFailure(float(nodes.u[i]), float(nodes.v[i]), float(det[i]))
    N = S.normal(X, Xa, Xb)
    e, f, g = -ms.inner(k, Xaa, N), -ms.inner(k, Xab, N), -ms.inner(k, Xbb, N)
    return FundForms(E, F, G, e, f, g, N, X)


def fundamental_forms(S, u, v):
    """First and second fundamental forms at chart parameters (u, v), vectorized.

    For sphere charts the forms are expressed in the local equatorial chart
    at each node; the scalars derived from them are chart independent.
    """
    nd = S.nodes(u, v)
    return _forms_from_jet(S, nd, S.jet(nd))


# 4th-order stencils
_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12


def _metric_stencil(S, nd, h, offs):
    """E, F, G on a square stencil of offsets (in units of h); arrays (P, s, s)."""
    A, B = np.meshgrid(offs * h, offs * h, indexing="ij")
    out = []
    for da, db in zip(A.ravel(), B.ravel()):
        _, Xa, Xb = S.first_jet(nd, da, db)
        out.append((ms.inner(S.k, Xa, Xa), ms.inner(S.k, Xa, Xb), ms.inner(S.k, Xb, Xb)))
    s = offs.size
    return [np.stack([o[i] for o in out], axis=-1).reshape(-1, s, s) for i in range(3)]


def _metric_derivatives(S, nd, h):
    """I and its first and second partials at the nodes (4th-order differences)."""
    offs = np.arange(-2.0, 3.0)
    E, F, G = _metric_stencil(S, nd, h, offs)
    d = {}
    for name, M in (("E", E), ("F", F), ("G", G)):
        d[name] = M[:, 2, 2]
        d[name + "u"] = M[:, :, 2] @ _D1 / h
        d[name + "v"] = M[:, 2, :] @ _D1 / h
        d[name + "uu"] = M[:, :, 2] @ _D2 / h ** 2
        d[name + "vv"] = M[:, 2, :] @ _D2 / h ** 2
        d[name + "uv"] = np.einsum("pij,i,j->p", M, _D1, _D1) / h ** 2
    return d


def _stencil_step(S):
    return H_EXACT if S.exact else max(S.h_fd, H_METRIC_FD)


def intrinsic_curvature(S, u, v):
    """Gaussian curvature of the induced metric by Brioschi's formula."""
    nd = S.nodes(u, v)
    h = _stencil_step(S)
    if not S.spherical:
        S.check_stencil(nd, 2 * h + S.h_fd)
    d = _metric_derivatives(S, nd, h)
    return _brioschi(d)


def _brioschi(d):
    E, F, G = d["E"], d["F"], d["G"]
    a11 = -d["Evv"] / 2 + d["Fuv"] - d["Guu"] / 2
    M1 = np.stack([
        np.stack([a11, d["Eu"] / 2, d["Fu"] - d["Ev"] / 2], -1),
        np.stack([d["Fv"] - d["Gu"] / 2, E, F], -1),
        np.stack([d["Gv"] / 2, F, G], -1)], -2)
    M2 = np.stack([
        np.stack([np.zeros_like(E), d["Ev"] / 2, d["Gu"] / 2], -1),
        np.stack([d["Ev"] / 2, E, F], -1),
        np.stack([d["Gu"] / 2, F, G], -1)], -2)
    return (np.linalg.det(M1) - np.linalg.det(M2)) / (E * G - F * F) ** 2


def gauss_equation_residual(S, u, v):
    """|GK - (K_intrinsic - k)| at the nodes."""
    ff = fundamental_forms(S, u, v)
    return np.abs(ff.GK - (intrinsic_curvature(S, u, v) - S.k))


def _christoffel(d):
    E, F, G = d["E"], d["F"], d["G"]
    W2 = 2 * (E * G - F * F)
    return {
        "111": (G * d["Eu"] - 2 * F * d["Fu"] + F * d["Ev"]) / W2,
        "211": (2 * E * d["Fu"] - E * d["Ev"] - F * d["Eu"]) / W2,
        "112": (G * d["Ev"] - F * d["Gu"]) / W2,
        "212": (E * d["Gu"] - F * d["Ev"]) / W2,
        "122": (2 * G * d["Fv"] - G * d["Gu"] - F * d["Gv"]) / W2,
        "222": (E * d["Gv"] - 2 * F * d["Fv"] + F * d["Gu"]) / W2,
    }


def codazzi_residual(S, u, v, h=None):
    """Norm of the Codazzi-Mainardi defect at the nodes.

    Partials of II and I are central differences with step h (default
    ``h_fd``), so the residual converges at second order in h.
    """
    h = S.h_fd if h is None else h
    nd = S.nodes(u, v)
    if not S.spherical:
        S.check_stencil(nd, 2 * h)
    II = {}
    for key, (da, db) in {"0": (0, 0), "a+": (h, 0), "a-": (-h, 0), "b+": (0, h), "b-": (0, -h)}.items():
        ff = _forms_from_jet(S, nd, S.jet(nd, da, db))
        II[key] = ff
    c = II["0"]
    d = {"E": c.E, "F": c.F, "G": c.G}
    for name in "EFG":
        d[name + "u"] = (getattr(II["a+"], name) - getattr(II["a-"], name)) / (2 * h)
        d[name + "v"] = (getattr(II["b+"], name) - getattr(II["b-"], name)) / (2 * h)
    ev = (II["b+"].e - II["b-"].e) / (2 * h)
    fu = (II["a+"].f - II["a-"].f) / (2 * h)
    fv = (II["b+"].f - II["b-"].f) / (2 * h)
    gu = (II["a+"].g - II["a-"].g) / (2 * h)
    Gm = _christoffel(d)
    e, f, g = c.e, c.f, c.g
    r1 = ev - fu - (e * Gm["112"] + f * (Gm["212"] - Gm["111"]) - g * Gm["211"])
    r2 = fv - gu - (e * Gm["122"] + f * (Gm["222"] - Gm["112"]) - g * Gm["212"])
    return np.sqrt(r1 * r1 + r2 * r2)


@dataclass(frozen=True, eq=False)
class CurvatureField:
    u: np.ndarray
    v: np.ndarray
    GK: np.ndarray
    K: np.ndarray
    principal: np.ndarray
    area_element: np.ndarray


def curvature_field(S, u, v, intrinsic=True):
    """GK, intrinsic curvature, principal curvatures and area element at nodes.

    For sphere charts the area element is relative to the round unit sphere.
    """
    ff = fundamental_forms(S, u, v)
    K = intrinsic_curvature(S, u, v) if intrinsic else np.full_like(ff.E, np.nan)
    nd = S.nodes(u, v)
    return CurvatureField(nd.u, nd.v, ff.GK, K, ff.principal, np.sqrt(ff.det_I))


# ---------------------------------------------------------------------------
# built-in charts


def geodesic_sphere(k, r, center=None, **kw):
    """Geodesic sphere of radius r; about the basepoint unless k = 0 and a center is given."""
    if r <= 0:
        raise InvalidInputError("sphere radius must be positive")
    k = ms.check_curvature(k)
    if k == 0:
        c = np.zeros(3) if center is None else np.asarray(center, dtype=float)
        return LinearSphereChart(0, c, r * np.eye(3), name="sphere", params={"r": r}, **kw)
    if center is not None:
        raise InvalidInputError("hyperbolic spheres are centered at the basepoint")
    M = ms.sn(k, r) * np.vstack([np.zeros(3), np.eye(3)])
    return LinearSphereChart(k, ms.cs(k, r) * ms.basepoint(k, 3), M, name="sphere", params={"r": r}, **kw)


def ellipsoid(a, b, c, **kw):
    """Euclidean ellipsoid diag(a, b, c) omega with closed-form derivatives."""
    if min(a, b, c) <= 0:
        raise InvalidInputError("semi-axes must be positive")
    return LinearSphereChart(0, np.zeros(3), np.diag([a, b, c]), name="ellipsoid",
                             params={"a": a, "b": b, "c": c}, **kw)


def ellipsoid_radial(k, a, b, c, **kw):
    """Radial graph over geodesic directions with the ellipsoid's radius function."""
    ax = np.array([a, b, c], dtype=float)
    if np.any(ax <= 0):
        raise InvalidInputError("semi-axes must be positive")
    rho = lambda w: 1 / np.sqrt(np.sum((w / ax) ** 2, axis=-1))
    return RadialGraph(k, rho, name="ellipsoid_radial", params={"a": a, "b": b, "c": c}, **kw)


def dumbbell(k=0.0, waist=0.6, **kw):
    """Peanut-shaped genus-0 radial graph rho = 1 + waist cos(2 theta); nonconvex."""
    if not 0 <= waist < 1:
        raise InvalidInputError("waist parameter must lie in [0, 1)")
    # cos(2 theta) = 2 z^2 - 1 keeps rho smooth through the poles
    rho = lambda w: 1 + waist * (2 * w[..., 2] ** 2 - 1)
    return RadialGraph(k, rho, name="dumbbell", params={"waist": waist}, **kw)


def sampled_radial(k, theta, phi, rho, **kw):
    """Radial graph through radius samples on a (theta, phi) grid (spherical spline)."""
    from scipy.interpolate import RectSphereBivariateSpline

    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    vals = np.asarray(rho, dtype=float)
    if vals.shape != (theta.size, phi.size) or np.any(vals <= 0):
        raise InvalidInputError("rho samples must be positive with shape (len(theta), len(phi))")
    spl = RectSphereBivariateSpline(theta, phi, vals)

    def rfun(w):
        th = np.arccos(np.clip(w[..., 2], -1, 1))
        ph = np.mod(np.arctan2(w[..., 1], w[..., 0]), 2 * np.pi)
        return spl.ev(th.ravel(), ph.ravel()).reshape(th.shape)

    return RadialGraph(k, rfun, name="samples", params={"n_theta": theta.size, "n_phi": phi.size}, **kw)


def plane(k=0.0, half_width=1.0, **kw):
    """Totally geodesic plane through the basepoint, in geodesic-Cartesian coordinates."""
    k = ms.check_curvature(k)
    o = ms.basepoint(k, 3)
    e1, e2, e3 = ms.base_frame(k, 3)

    def f(u, v):
        c = ms.cs(k, v)[..., None] * (ms.cs(k, u)[..., None] * o + ms.sn(k, u)[..., None] * e1)
        return c + ms.sn(k, v)[..., None] * e2

    w = float(half_width)
    return UVChart(k, f, ((-w, w), (-w, w)), name="plane", params={"half_width": w}, **kw)


def torus(R=2.0, r=1.0, **kw):
    """Torus of revolution in M^3_0 (curvature of both signs)."""
    if not 0 < r < R:
        raise InvalidInputError("torus radii need 0 < r < R")

    def f(u, v):
        s = R + r * np.cos(v)
        return np.stack([s * np.cos(u), s * np.sin(u), r * np.sin(v)], axis=-1)

    S = UVChart(0, f, ((0, 2 * np.pi), (0, 2 * np.pi)), periodic=(True, True), closed=True, genus=1,
                name="torus", params={"R": R, "r": r}, **kw)
    return S


BUILTINS = {
    "sphere": lambda k, p, kw: geodesic_sphere(k, p.get("r", 1.0), p.get("center"), **kw),
    "ellipsoid": lambda k, p, kw: ellipsoid(p["a"], p["b"], p["c"], **kw) if k == 0
    else ellipsoid_radial(k, p["a"], p["b"], p["c"], **kw),
    "ellipsoid_radial": lambda k, p, kw: ellipsoid_radial(k, p["a"], p["b"], p["c"], **kw),
    "dumbbell": lambda k, p, kw: dumbbell(k, p.get("waist", 0.6), **kw),
    "plane": lambda k, p, kw: plane(k, p.get("half_width", 1.0), **kw),
    "torus": lambda k, p, kw: torus(p.get("R", 2.0), p.get("r", 1.0), **kw) if k == 0
    else _bad("torus chart is only built in for k = 0"),
}


def _bad(msg):
    raise InvalidInputError(msg)


def surface_from_spec(spec):
    """Surface from {k, chart: {builtin | samples, params}, h_fd, orientation}."""
    k = spec.get("k", 0.0)
    chart = spec["chart"]
    kw = {"h_fd": spec.get("h_fd", H_FD)}
    ori = spec.get("orientation", "outward")
    kw["orientation"] = {"outward": 1, "inward": -1, 1: 1, -1: -1}.get(ori)
    if kw["orientation"] is None:
        raise InvalidInputError(f"unknown orientation {ori!r}")
    params = chart.get("params", {})
    if "samples" in chart:
        s = chart["samples"]
        return sampled_radial(k, s["theta"], s["phi"], s["rho"], **kw)
    name = chart.get("builtin")
    if name not in BUILTINS:
        raise InvalidInputError(f"unknown built-in chart {name!r}")
    return BUILTINS[name](k, params, kw)


# ---------------------------------------------------------------------------
# curvature integrals


@dataclass(frozen=True)
class IntegralReport:
    area: float
    G: float
    G_tilde: float
    gap: float
    quad_error: float
    grid: tuple
    min_GK: float

    def to_dict(self):
        return {"area": self.area, "G": self.G, "G_tilde": self.G_tilde, "gap": self.gap,
                "quad_error": self.quad_error, "grid": list(self.grid), "min_GK": self.min_GK}


def sphere_grid(m, n):
    """Gauss-Legendre nodes in cos(theta) times uniform phi, with area weights on S^2."""
    x, w = np.polynomial.legendre.leggauss(m)
    theta = np.arccos(x)
    phi = 2 * np.pi * np.arange(n) / n
    T, P = np.meshgrid(theta, phi, indexing="ij")
    W = np.outer(w, np.full(n, 2 * np.pi / n))
    return T, P, W


def _integrals(S, m, n, chunk=16384):
    T, P, W = sphere_grid(m, n)
    T, P, W = T.ravel(), P.ravel(), W.ravel()
    area = G = Gt = 0.0
    mn = np.inf
    for s in range(0, T.size, chunk):
        ff = fundamental_forms(S, T[s:s + chunk], P[s:s + chunk])
        dA = np.sqrt(ff.det_I) * W[s:s + chunk]
        gk = ff.GK
        area += float(np.sum(dA))
        G += float(np.sum(gk * dA))
        Gt += float(np.sum(np.abs(gk) * dA))
        mn = min(mn, float(np.min(gk)))
    return area, G, Gt, mn


def curvature_integrals(S, grid=(128, 128)):
    """Area, total and total absolute Gauss-Kronecker curvature, and the tightness gap."""
    if not (S.closed and S.spherical and S.genus == 0):
        raise TopologyError("curvature integrals need a closed genus-0 sphere chart")
    m, n = (int(g) for g in grid)
    if m < 4 or n < 4:
        raise InvalidInputError("grid too coarse")
    area, G, Gt, mn = _integrals(S, m, n)
    a2, G2, Gt2, _ = _integrals(S, max(m // 2, 2), max(n // 2, 2))
    err = max(abs(area - a2), abs(G - G2), abs(Gt - Gt2))
    gap = Gt - (4 * np.pi - S.k * area)
    return IntegralReport(area, G, Gt, gap, err, (m, n), mn)


# ---------------------------------------------------------------------------
# parallel surfaces


class ParallelSurface(ParamSurface):
    """exp_X(eps N) over a base surface, with differenced derivatives."""

    def __init__(self, base, eps):
        super().__init__(base.k, h_fd=base.h_fd, orientation=1, name=f"parallel({base.name})",
                         params={"eps": eps, **base.params})
        self.base, self.eps = base, float(eps)
        self.closed, self.genus, self.spherical = base.closed, base.genus, base.spherical
        self.domain, self.periodic = base.domain, base.periodic
        self.center = getattr(base, "center", None)

    def nodes(self, u, v):
        return self.base.nodes(u, v)

    def outward_reference(self, X):
        return self.center

    def _point(self, nodes, a, b):
        X, Xa, Xb = self.base.first_jet(nodes, a, b)
        N = self.base.normal(X, Xa, Xb)
        k, e = self.k, self.eps
        return ms.project_point(k, ms.cs(k, e) * X + ms.sn(k, e) * N)

    def level(self, x):
        raise NotImplementedError("parallel surfaces have no implicit form here")


def check_convex(S, grid=(32, 32), tol=EPS_TEST):
    """II positive semidefinite with respect to the outward normal on a grid."""
    T, P, _ = sphere_grid(*grid) if S.spherical else (*np.meshgrid(
        np.linspace(*S.domain[0], grid[0]), np.linspace(*S.domain[1], grid[1]), indexing="ij"), None)
    pc = fundamental_forms(S, T.ravel(), P.ravel()).principal
    return bool(np.min(pc) >= -tol)


def parallel_surface(S, eps, check_grid=(32, 32)):
    if eps < 0:
        raise InvalidInputError("only outer parallels (eps >= 0) are supported")
    if not check_convex(S, check_grid):
        raise HypothesisViolation("convex")
    if eps == 0:
        return S
    P = ParallelSurface(S, eps)
    T, Ph, _ = sphere_grid(*check_grid)
    fundamental_forms(P, T.ravel(), Ph.ravel())  # raises on immersion failure
    return P


@dataclass(frozen=True)
class SweepTable:
    rows: list
    G_monotone: bool
    area_monotone: bool


def parallel_sweep(S, eps_list, grid=(128, 128), tol=None):
    rows = []
    for eps in sorted(float(e) for e in eps_list):
        rep = curvature_integrals(parallel_surface(S, eps), grid)
        rows.append({"eps": eps, "area": rep.area, "G": rep.G, "G_tilde": rep.G_tilde, "quad_error": rep.quad_error})
    slack = lambda r1, r2, key: (tol if tol is not None else max(r1["quad_error"], r2["quad_error"], 1e-9))
    g_ok = all(b["G"] >= a["G"] - slack(a, b, "G") for a, b in zip(rows, rows[1:]))
    a_ok = all(b["area"] >= a["area"] - slack(a, b, "area") for a, b in zip(rows, rows[1:]))
    return SweepTable(rows, g_ok, a_ok)


# ---------------------------------------------------------------------------
# planar sections


@dataclass(frozen=True, eq=False)
class Slice:
    """Totally geodesic plane through ``point`` spanned by tangent vectors e1, e2."""

    k: float
    point: np.ndarray
    e1: np.ndarray
    e2: np.ndarray

    def __post_init__(self):
        k = ms.check_curvature(self.k)
        p = np.asarray(self.point, dtype=float)
        ms.SpacePoint(k, p)
        if p.size != ms.ambient_dim(k, 3):
            raise InvalidInputError("slice point must lie in M^3_k")
        e1 = ms.project_tangent(k, p, np.asarray(self.e1, dtype=float))
        e1 = e1 / np.sqrt(ms.inner(k, e1, e1))
        e2 = ms.project_tangent(k, p, np.asarray(self.e2, dtype=float))
        e2 = e2 - ms.inner(k, e2, e1) * e1
        n2 = ms.inner(k, e2, e2)
        if n2 <= 1e-24:
            raise InvalidInputError("slice vectors are parallel")
        for name, val in (("k", k), ("point", p), ("e1", e1), ("e2", e2 / np.sqrt(n2))):
            object.__setattr__(self, name, val)

    def nearest(self, x):
        """Closest point of the slice to x."""
        k, p = self.k, self.point
        x = np.asarray(x, dtype=float)
        if k == 0:
            d = x - p
            return p + (d @ self.e1) * self.e1 + (d @ self.e2) * self.e2
        y = k * ms.inner(k, x, p) * p + ms.inner(k, x, self.e1) * self.e1 + ms.inner(k, x, self.e2) * self.e2
        return ms.project_point(k, y)

    def frame_at(self, c):
        k = self.k
        f1 = ms.project_tangent(k, c, self.e1)
        f1 = f1 / np.sqrt(ms.inner(k, f1, f1))
        f2 = ms.project_tangent(k, c, self.e2)
        f2 = f2 - ms.inner(k, f2, f1) * f1
        return f1, f2 / np.sqrt(ms.inner(k, f2, f2))


@dataclass(frozen=True, eq=False)
class SectionResult:
    psi: np.ndarray
    points: np.ndarray
    points2d: np.ndarray
    kappa_slice: np.ndarray
    kappa_ambient: np.ndarray

    @property
    def max_diff(self):
        return float(np.max(np.abs(np.abs(self.kappa_slice) - self.kappa_ambient)))


def _ray_root(F, rmax0=1.0, tol=1e-14):
    from scipy.optimize import brentq

    lo, hi = 0.0, rmax0
    f_hi = F(hi)
    while f_hi <= 0:
        lo, hi = hi, 2 * hi
        if hi > 1e3:
            raise TransversalityError("section ray does not leave the surface")
        f_hi = F(hi)
    return brentq(F, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200)


def _accel_normal_2d(k, c, c1, c2):
    """Signed geodesic curvature in M^2_k from a point and its first two parameter derivatives."""
    speed2 = ms.inner(k, c1, c1)
    t = c1 / np.sqrt(speed2)[..., None]
    nu = ms.left_normal(k, c, t)
    return ms.inner(k, c2, nu) / speed2


def _accel_norm(k, c, c1, c2):
    """Unsigned geodesic curvature in M^n_k (covariant acceleration normal to the velocity)."""
    speed2 = ms.inner(k, c1, c1)
    a = c2 - (k * ms.inner(k, c, c2))[..., None] * c if k < 0 else c2
    a = a - (ms.inner(k, a, c1) / speed2)[..., None] * c1
    return np.sqrt(np.maximum(ms.inner(k, a, a), 0.0)) / speed2


def planar_section(S, sl, samples=64, h=1e-3):
    """Intersect a star-shaped sphere chart with a totally geodesic slice.

    The section is traced by rays in the slice from the foot of the surface
    center, ``rho(psi)`` found by root bracketing.  Curvature is measured twice
    from 4th-order differences in psi: in the slice, as a curve in M^2_k, and
    in the ambient M^3_k.
    """
    if not getattr(S, "spherical", False):
        raise InvalidInputError("planar sections need a star-shaped sphere chart")
    k = S.k
    if sl.k != k:
        raise InvalidInputError("slice and surface must share the curvature")
    c = sl.nearest(S.center)
    if S.level(c) >= 0:
        raise TransversalityError("slice misses the interior of the surface")
    f1, f2 = sl.frame_at(c)
    o2 = ms.basepoint(k, 2)
    E1, E2 = ms.base_frame(k, 2)

    def amb(psi, r):
        d = np.cos(psi)[..., None] * f1 + np.sin(psi)[..., None] * f2
        return ms.coord_exp(k, c, d, r)

    def flat(psi, r):
        d = np.cos(psi)[..., None] * E1 + np.sin(psi)[..., None] * E2
        return ms.coord_exp(k, o2, d, r)

    def rho(psi):
        F = lambda r: float(S.level(amb(psi, r)))
        r = _ray_root(F)
        dr = 1e-6 * max(r, 1.0)
        slope = (F(r + dr) - F(r - dr)) / (2 * dr)
        if slope < 1e-6:
            raise TransversalityError(f"section contour degenerates at psi = {psi}")
        return r

    psi = 2 * np.pi * np.arange(samples) / samples
    offs = np.array([-2, -1, 0, 1, 2]) * h
    P = psi[:, None] + offs[None, :]
    R = np.vectorize(rho)(P)
    pts3 = amb(P, R)
    pts2 = flat(P, R)
    w1 = np.array([1, -8, 0, 8, -1]) / (12 * h)
    w2 = np.array([-1, 16, -30, 16, -1]) / (12 * h * h)
    d1 = lambda X: np.einsum("s,psd->pd", w1, X)
    d2 = lambda X: np.einsum("s,psd->pd", w2, X)
    ks = _accel_normal_2d(k, pts2[:, 2], d1(pts2), d2(pts2))
    ka = _accel_norm(k, pts3[:, 2], d1(pts3), d2(pts3))
    return SectionResult(psi, pts3[:, 2], pts2[:, 2], ks, ka)
