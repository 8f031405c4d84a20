import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catk import model_space as ms
from catk.curves import (Kappa, PolyCurve, chord_convexity_check, chord_curvature_estimate, curve_chord,
                         curve_length, curvature_from_chord, inscribe_polygon, integrate_curvature_curve,
                         osc_curvature_estimate, polygon_from_turns, signed_turns, turtle_vertices)
from catk.errors import AccuracyError, InvalidInputError, NumericalDomainError, ResolutionError


def close_gap(c):
    return float(ms.coord_dist(c.k, c.points[0], c.points[-1]))


# -- curvature functions -----------------------------------------------------

def test_kappa_kinds_and_roundtrip():
    ks = [Kappa.constant(0.7), Kappa.linear(0.2, 0.5), Kappa.sinusoidal(1, [0.3], [2], [0.1]),
          Kappa.samples([0, 1, 2], [0, 1, 0])]
    t = np.linspace(0, 2, 9)
    for k in ks:
        again = Kappa.from_dict(k.to_dict())
        assert np.allclose(again(t), k(t))
    assert ks[1](2.0) == pytest.approx(1.2)
    assert ks[3](1.5) == pytest.approx(0.5)
    with pytest.raises(InvalidInputError):
        Kappa("cubic", {})


# -- integration -------------------------------------------------------------

def test_geodesic_endpoint():
    c = integrate_curvature_curve(0, 0.0, 2.0)
    assert curve_chord(c) == pytest.approx(2, abs=1e-12)
    assert curve_length(c) == pytest.approx(2)


def test_circles_close():
    c = integrate_curvature_curve(0, 1.0, 2 * np.pi)
    assert close_gap(c) <= 1e-6
    h = integrate_curvature_curve(-1, 1 / np.tanh(1), 2 * np.pi * np.sinh(1))
    assert close_gap(h) <= 1e-6
    assert h.drift <= 1e-9


def test_constant_curvature_matches_closed_form():
    for k, c in ((0, 0.8), (-1, 0.5), (-1, 1.0), (-2, 3.0)):
        curve = integrate_curvature_curve(k, c, 2.5)
        assert curve_chord(curve) == pytest.approx(ms.const_curve_chord(k, c, 2.5), abs=1e-10)
        g, _, _ = ms.const_curve_frame(k, c, curve.points[0], curve.tangents[0], curve.normals[0], 2.5)
        assert np.allclose(g, curve.points[-1], atol=1e-10)


def test_curve_in_three_space_stays_in_slice():
    k = -1.0
    o = ms.SpacePoint.base(k, 3)
    E = ms.base_frame(k, 3)
    c = integrate_curvature_curve(k, Kappa.linear(0.3, 0.4), 2.0,
                                  frame=(o, ms.TangentVec(o, E[0]), ms.TangentVec(o, E[1])))
    assert np.allclose(c.points[:, 3], 0, atol=1e-14)
    with pytest.raises(InvalidInputError):
        integrate_curvature_curve(k, 1.0, 1.0, frame=(o, ms.TangentVec(o, E[0])))


def test_integration_step_validation():
    with pytest.raises(InvalidInputError):
        integrate_curvature_curve(0, 1.0, 1.0, step=0.5)
    with pytest.raises(InvalidInputError):
        integrate_curvature_curve(0, 1.0, -1.0)


def test_drift_guard():
    # an absurdly oscillating curvature on a coarse step breaks the accuracy contract
    with pytest.raises(AccuracyError):
        integrate_curvature_curve(0, Kappa.sinusoidal(0, [50.0], [400.0], [0]), 1.0, step=0.01)


def test_frame_at_partial_step():
    c = integrate_curvature_curve(-1, 0.5, 3.0, step=0.01)
    g, T, _ = c.frame_at(1.2345)
    cc = ms.const_curve_frame(-1, 0.5, c.points[0], c.tangents[0], c.normals[0], 1.2345)
    assert np.allclose(g, cc[0], atol=1e-10)
    assert np.allclose(T, cc[1], atol=1e-9)
    with pytest.raises(InvalidInputError):
        c.frame_at(3.5)


# -- polygons ----------------------------------------------------------------

def test_inscribe_examples():
    g = integrate_curvature_curve(-1, 0.0, 2.0)
    P = inscribe_polygon(g, 5)
    assert np.allclose(P.angles, np.pi, atol=1e-7)
    c = integrate_curvature_curve(0, 1.0, 2 * np.pi)
    hexa = inscribe_polygon(c, 6)
    assert np.allclose(hexa.edge_lengths, 1.0, atol=1e-10)
    two = inscribe_polygon(c, 2)
    assert two.n_vertices == 3
    with pytest.raises(ResolutionError):
        inscribe_polygon(integrate_curvature_curve(0, 1.0, 1.0, step=0.01), 1000)


def test_turtle_reproduces_turns():
    k = -1.0
    L = np.array([0.5, 1.0, 0.7, 1.2])
    tau = np.array([0.4, -0.3, 1.1])
    P = polygon_from_turns(k, L, tau)
    assert np.allclose(P.edge_lengths, L, atol=1e-12)
    assert np.allclose(signed_turns(P), tau, atol=1e-10)
    V = turtle_vertices(0, [[1, 1]], [[np.pi / 2]])[0]
    assert np.allclose(V, [[0, 0], [1, 0], [1, 1]], atol=1e-15)


def test_polycurve_validation():
    with pytest.raises(InvalidInputError):
        PolyCurve(0, [[0, 0], [0, 0], [1, 0]])
    with pytest.raises(InvalidInputError):
        PolyCurve(0, [[0, 0]])


# -- chord-convexity ---------------------------------------------------------

def test_convexity_examples():
    semi = integrate_curvature_curve(0, 1.0, np.pi, step=np.pi / 500)
    assert chord_convexity_check(semi).verdict
    cert = chord_convexity_check(PolyCurve(0, [[0, 0], [1, 0], [2, 1], [3, 1]]))
    assert not cert.verdict and cert.witness is not None
    assert 1 in cert.turning_signs and -1 in cert.turning_signs
    arc = integrate_curvature_curve(-1, 1 / np.tanh(1), 0.8 * 2 * np.pi * np.sinh(1), step=0.01)
    assert chord_convexity_check(arc).verdict


def test_convexity_rejects_double_winding():
    c = integrate_curvature_curve(0, 1.0, 3.5 * np.pi, step=0.01)
    assert not chord_convexity_check(c).verdict


def test_convexity_brute_force_hyperbolic_arc():
    # every sample lies on one side of each chord-polygon edge
    arc = integrate_curvature_curve(-1, 1.5, 3.0, step=0.01)
    P = np.vstack([arc.points[::10], arc.points[-1:]])
    m = len(P)
    for i in range(m):
        a, b = P[i], P[(i + 1) % m]
        o = ms.orientation(-1, a, b, P)
        assert np.all(o >= -1e-12) or np.all(o <= 1e-12)
    assert chord_convexity_check(arc).verdict


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(0.05, 1.0), min_size=2, max_size=6), st.floats(0.1, 0.95),
       st.sampled_from([0.0, -1.0]))
def test_small_total_turning_is_convex(turn_weights, frac, k):
    w = np.array(turn_weights)
    tau = frac * np.pi * w / w.sum()
    P = polygon_from_turns(k, np.ones(len(w) + 1), tau)
    assert chord_convexity_check(P).verdict


# -- estimators --------------------------------------------------------------

def test_estimators_exact_on_constant_curvature():
    for k, c in ((0, 1.0), (-1, 2.0), (-1, 0.4)):
        curve = integrate_curvature_curve(k, c, 3.0, step=1e-3)
        for h in (0.4, 0.1, 0.01):
            assert osc_curvature_estimate(curve, 1.5, h) == pytest.approx(c, abs=1e-6)
            assert chord_curvature_estimate(curve, 1.5, h) == pytest.approx(c, abs=1e-6)
    g = integrate_curvature_curve(-1, 0.0, 2.0)
    assert osc_curvature_estimate(g, 1.0, 0.5) == pytest.approx(0, abs=1e-7)
    assert chord_curvature_estimate(g, 1.0, 0.5) == pytest.approx(0, abs=1e-7)


def test_estimators_converge_on_linear_curvature():
    c = integrate_curvature_curve(0, Kappa.linear(0, 1), 2.0, step=2e-4)
    hs = [0.2, 0.1, 0.05]
    ea = [abs(osc_curvature_estimate(c, 1.0, h) - 1) for h in hs]
    eb = [abs(chord_curvature_estimate(c, 1.0, h) - 1) for h in hs]
    assert ea[0] > ea[1] > ea[2]
    assert eb[0] > eb[1] > eb[2]


def test_estimator_windows():
    c = integrate_curvature_curve(0, 1.0, 1.0, step=0.01)
    with pytest.raises(InvalidInputError):
        osc_curvature_estimate(c, 0.1, 0.2)
    with pytest.raises(InvalidInputError):
        chord_curvature_estimate(c, 0.5, 0.001)
    with pytest.raises(NumericalDomainError):
        curvature_from_chord(0, 2.0, 1.0)


def test_chord_examples():
    assert curve_chord(integrate_curvature_curve(0, 1.0, np.pi, step=np.pi / 1000)) == pytest.approx(2, abs=1e-10)
    closed = PolyCurve(0, [[0, 0], [1, 0], [0, 1]], closed=True)
    assert curve_chord(closed) == 0.0
