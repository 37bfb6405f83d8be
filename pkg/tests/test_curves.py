import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcbie.curves import (
    curvature,
    divided_diff,
    from_parametrization,
    geo_taylor,
    make_arc,
    make_curve,
    make_perturbed,
    make_segment,
)
from arcbie.parametrix import fit_slope

X512 = np.cos(np.pi * (np.arange(512) + 0.5) / 512)

CURVES = [
    make_segment(),
    make_arc(math.pi / 2),
    make_arc(1.0, 2.5),
    make_perturbed(),
    make_perturbed({"amplitude": 0.2, "frequency": 1.5}),
]


@pytest.mark.parametrize("c", CURVES, ids=lambda c: f"{c.id}-{c.params}")
def test_constant_speed(c):
    speed = np.linalg.norm(c.dr(X512), axis=-1)
    assert np.max(np.abs(speed - c.L / 2)) <= 1e-10


def test_curvature_examples():
    x = np.linspace(-0.9, 0.9, 7)
    assert np.allclose(curvature(make_segment(), x), 0)
    assert np.allclose(np.abs(make_arc(math.pi / 2).kappa(x)), 1.0)
    assert np.allclose(make_arc(1.0, 2.0).kappa(x), 0.5)


def test_arc_length_and_normal():
    c = make_arc(math.pi / 2)
    assert c.L == pytest.approx(math.pi / 2)
    x = np.linspace(-1, 1, 9)
    assert np.allclose(np.sum(c.tangent(x) * c.normal(x), axis=-1), 0)
    assert np.allclose(np.linalg.norm(c.normal(x), axis=-1), 1)


def test_perturbed_curve_endpoints_and_length():
    c = make_perturbed({"amplitude": 0.1, "frequency": 1})
    ends = c.r(np.array([-1.0, 1.0]))
    assert np.allclose(ends, [[-1, 0], [1, 0]], atol=1e-10)
    # arclength of (t, 0.1 sin(pi t)) by dense quadrature
    t, w = np.polynomial.legendre.leggauss(200)
    L = np.sum(w * np.sqrt(1 + (0.1 * math.pi * np.cos(math.pi * t)) ** 2))
    assert c.L == pytest.approx(L, rel=1e-12)


def test_from_parametrization_of_a_segment_is_exact():
    c = from_parametrization(
        lambda t: np.stack([np.asarray(t, float), 0 * np.asarray(t, float)], -1),
        lambda t: np.stack([np.ones_like(np.asarray(t, float)), 0 * np.asarray(t, float)], -1),
        name="line",
    )
    assert c.L == pytest.approx(2.0)
    assert np.allclose(c.r(X512)[:, 0], X512, atol=1e-12)


def test_unknown_curve():
    with pytest.raises(ValueError):
        make_curve("spiral", {})
    with pytest.raises(ValueError):
        make_arc(0.0)


def test_geo_taylor_segment():
    g = geo_taylor(make_segment(), 0.3)
    assert np.allclose(g.coeffs, [0, 0, 1, 0, 0, 0, 0], atol=1e-14)


def test_geo_taylor_unit_arc_quartic():
    c = make_arc(math.pi / 2)
    g = geo_taylor(c, 0.7)
    assert g.coeffs[2] == c.L**2 / 4
    assert g.coeffs[3] == 0.0
    assert g.coeffs[4] == pytest.approx(-(c.L**4) / 192, rel=1e-12)


@pytest.mark.parametrize("c", CURVES[1:], ids=lambda c: f"{c.id}-{c.params}")
def test_geo_taylor_residual_order(c):
    # sampling oracle: |r(x) - r(x+h)|^2 minus the expansion is O(h^7)
    # (O(h^8) on a circle, where the distance is even in h)
    x = 0.2
    g = geo_taylor(c, math.acos(x), order=6)
    hs = np.array([0.02, 0.04, 0.08, 0.16])
    err = [abs(np.sum((c.r(x) - c.r(x + h)) ** 2) - g(h)) for h in hs]
    slope, _ = fit_slope(hs, err)
    assert slope >= 6.4


@settings(max_examples=50, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1))
def test_divided_diff_symmetric(x, y):
    for c in CURVES[:4]:
        assert np.allclose(divided_diff(c, x, y), divided_diff(c, y, x), atol=1e-13)


def test_divided_diff_limits_and_switch():
    c = make_arc(math.pi / 2)
    x = 0.3
    q0 = divided_diff(c, x, x)
    assert np.linalg.norm(q0) == pytest.approx(c.L / 2)
    # the two branches agree across the switch
    a = divided_diff(c, x, x + 0.99e-4)
    b = divided_diff(c, x, x + 1.01e-4)
    assert np.allclose(a, b, atol=1e-8)
