import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from arcbie import chebyshev as cb

C = np.polynomial.chebyshev

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def complex_coeffs(max_deg=64):
    return st.integers(0, max_deg).flatmap(
        lambda n: st.tuples(arrays(float, n + 1, elements=finite), arrays(float, n + 1, elements=finite)).map(
            lambda ab: ab[0] + 1j * ab[1]
        )
    )


def U_to_T_oracle(c):
    # U_n in first-kind coefficients by sampling and refitting
    x = np.cos(np.pi * (np.arange(200) + 0.5) / 200)
    vals = cb.eval_U(cb.ChebCoeffsU(c), x)
    return C.chebfit(x, vals, len(c) - 1)


# transforms -----------------------------------------------------------------


def test_transform_of_constant_and_x():
    x = cb.cheb_nodes(16)
    assert np.allclose(cb.cheb_transform_T(np.ones_like(x)).coeffs, np.eye(17)[0], atol=1e-15)
    assert np.allclose(cb.cheb_transform_T(x).coeffs, np.eye(17)[1], atol=1e-15)


def test_transform_of_T2_matches_least_squares():
    x = cb.cheb_nodes(16)
    f = 2 * x**2 - 1
    ls = np.linalg.lstsq(C.chebvander(x, 16), f, rcond=None)[0]
    got = cb.cheb_transform_T(f).coeffs
    assert np.allclose(got, ls, atol=1e-13)
    assert np.allclose(got, np.eye(17)[2], atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(complex_coeffs(40))
def test_T_transform_round_trip(c):
    u = cb.ChebCoeffsT(c)
    M = max(2 * u.N, 4)
    back = cb.cheb_transform_T(cb.inverse_transform_T(u, M), u.N)
    assert np.allclose(back.coeffs, c, atol=1e-12 * max(1, np.max(np.abs(c))))


@settings(max_examples=40, deadline=None)
@given(complex_coeffs(40))
def test_U_transform_round_trip(c):
    v = cb.ChebCoeffsU(c)
    M = max(2 * v.N + 4, 8)
    back = cb.cheb_transform_U(cb.inverse_transform_U(v, M), v.N)
    assert np.allclose(back.coeffs, c, atol=1e-12 * max(1, np.max(np.abs(c))))


def test_transform_refuses_too_small_grid():
    with pytest.raises(ValueError):
        cb.cheb_transform_T(np.ones(5), N=10)


# norms ----------------------------------------------------------------------


def test_norm_examples():
    assert cb.norm_Ts(cb.ChebCoeffsT([1.0]), 3.7) == pytest.approx(1.0)
    assert cb.norm_Ts(cb.ChebCoeffsT.basis(2), 1) == pytest.approx(np.sqrt(5 / 2), rel=1e-14)
    assert cb.norm_Ts(cb.ChebCoeffsT([1.0, 1.0]), 0) == pytest.approx(np.sqrt(3 / 2), rel=1e-14)
    assert cb.norm_Us(cb.ChebCoeffsU([1.0]), 0) == pytest.approx(np.sqrt(1 / 2), rel=1e-14)
    assert cb.norm_Us(cb.ChebCoeffsU([0.0]), 0) == 0
    assert cb.norm_Us(cb.ChebCoeffsU.basis(1), 2) == pytest.approx(np.sqrt(2), rel=1e-14)


def test_T0_norm_matches_weighted_quadrature():
    # (1/pi) int |1 + x|^2 / omega dx via Gauss-Chebyshev
    x, w = np.polynomial.chebyshev.chebgauss(50)
    q = np.sum(w * (1 + x) ** 2) / np.pi
    assert q == pytest.approx(1.5, rel=1e-14)


@settings(max_examples=30, deadline=None)
@given(complex_coeffs(32))
def test_norms_match_quadrature(c):
    x, w = np.polynomial.chebyshev.chebgauss(80)
    u = cb.ChebCoeffsT(c)
    qT = np.sum(w * np.abs(u(x)) ** 2) / np.pi
    assert cb.norm_Ts(u, 0) ** 2 == pytest.approx(qT, rel=1e-10, abs=1e-12)
    # second kind: (1/pi) int |v|^2 omega dx, Gauss on theta
    th = np.pi * (np.arange(200) + 0.5) / 200
    v = cb.ChebCoeffsU(c)
    qU = np.mean(np.abs(v(np.cos(th))) ** 2 * np.sin(th) ** 2)
    assert cb.norm_Us(v, 0) ** 2 == pytest.approx(qU, rel=1e-10, abs=1e-12)


# Fourier maps -----------------------------------------------------------------


def test_map_examples():
    th = np.linspace(0, 2 * np.pi, 17)
    assert np.allclose(cb.map_C(cb.ChebCoeffsT.basis(3))(th), np.cos(3 * th))
    assert np.allclose(cb.map_S(cb.ChebCoeffsU.basis(0))(th), np.sin(th))


@settings(max_examples=30, deadline=None)
@given(complex_coeffs(64))
def test_isometry(c):
    u = cb.ChebCoeffsT(c)
    v = cb.ChebCoeffsU(c)
    assert cb.map_C(u).norm() == pytest.approx(cb.norm_Ts(u, 0), rel=1e-12, abs=1e-14)
    assert cb.map_S(v).norm() == pytest.approx(cb.norm_Us(v, 0), rel=1e-12, abs=1e-14)
    assert len(cb.map_C(u).cos_coeffs) == len(c)


# coefficient maps -------------------------------------------------------------


def test_embed_I_examples():
    I = cb.embed_I_matrix(6, 4)
    assert np.allclose(I[:, 0], [1, 0, 0, 0, 0, 0])
    assert np.allclose(I[:, 1], [0, 0.5, 0, 0, 0, 0])
    assert np.allclose(I[:, 2], [-0.5, 0, 0.5, 0, 0, 0])


def test_embed_J_examples():
    J = cb.embed_J_matrix(5, 4)
    assert np.allclose(J[:, 0], [1, 0, 0, 0, 0])
    assert np.allclose(J[:, 2], [1, 0, 2, 0, 0])


def test_diff_and_wdw_examples():
    D = cb.diff_matrix(4, 5)
    assert np.allclose(D[:, 1], [1, 0, 0, 0])
    assert np.allclose(D[:, 0], 0)
    assert np.allclose(D[:, 3], [0, 0, 3, 0])
    W = cb.wdw_matrix(3, 2)
    assert np.allclose(W[:, 0], [0, -1, 0])


def test_multiplication_examples():
    assert np.allclose(cb.mul_x_T(cb.ChebCoeffsT([1.0])).coeffs, [0, 1])
    w2U0 = cb.mul_omega2_U_to_T(cb.ChebCoeffsU([1.0])).coeffs
    assert np.allclose(w2U0[:3], [0.5, 0, -0.5])


def test_omega2_U1_in_U_basis_matches_oracle():
    x = np.cos(np.pi * (np.arange(32) + 0.5) / 32)
    got = cb.mul_omega2_U_to_U(cb.ChebCoeffsU.basis(1))(x)
    want = (1 - x**2) * 2 * x
    assert np.max(np.abs(got - want)) <= 1e-12
    assert np.allclose(cb.mul_omega2_U_to_U(cb.ChebCoeffsU.basis(1)).coeffs[:4], [0, 0.5, 0, -0.25])


def test_x2_U0_uses_reflected_index():
    # x^2 U_0 = (U_0 + U_2)/4
    v = cb.mul_x_U(cb.mul_x_U(cb.ChebCoeffsU([1.0])))
    assert np.allclose(v.coeffs[:3], [0.25, 0, 0.25])


@settings(max_examples=30, deadline=None)
@given(complex_coeffs(64))
def test_round_trips(c):
    u = cb.ChebCoeffsT(c)
    v = cb.ChebCoeffsU(c)
    s = max(1.0, np.max(np.abs(c)))
    assert np.max(np.abs(cb.embed_J(cb.embed_I(u)).coeffs[: len(c)] - c)) <= 1e-12 * s
    assert np.max(np.abs(cb.embed_I(cb.embed_J(v)).coeffs[: len(c)] - c)) <= 1e-12 * s


@settings(max_examples=30, deadline=None)
@given(complex_coeffs(64), complex_coeffs(64))
def test_duality(a, b):
    u, v = cb.ChebCoeffsT(a), cb.ChebCoeffsU(b)
    lhs = cb.pair_U(cb.diff_T_to_U(u), v)
    rhs = -cb.pair_T(u, cb.wdw_U_to_T(v))
    scale = max(1.0, np.sum(np.abs(a)) * np.sum(np.abs(b)) * len(a))
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_factorization_is_n_squared():
    n = 40
    # -(omega d_x)^2 T_n = n^2 T_n
    A = -cb.wdw_matrix(n, n) @ cb.diff_matrix(n, n)
    assert np.allclose(A, np.diag(np.arange(n) ** 2), atol=1e-11)


MAPS = [
    ("I", cb.embed_I, "T", lambda x, f, c: f),
    ("J", cb.embed_J, "U", lambda x, f, c: f),
    ("xT", cb.mul_x_T, "T", lambda x, f, c: x * f),
    ("xU", cb.mul_x_U, "U", lambda x, f, c: x * f),
    ("w2T", cb.mul_omega2_T_to_T, "T", lambda x, f, c: (1 - x**2) * f),
    ("w2UT", cb.mul_omega2_U_to_T, "U", lambda x, f, c: (1 - x**2) * f),
    ("w2UU", cb.mul_omega2_U_to_U, "U", lambda x, f, c: (1 - x**2) * f),
    ("diff", cb.diff_T_to_U, "T", lambda x, f, c: C.chebval(x, C.chebder(c))),
]


@pytest.mark.parametrize("name,fn,kind,oracle", MAPS, ids=[m[0] for m in MAPS])
def test_oracle_equivalence(name, fn, kind, oracle):
    rng = np.random.default_rng(7)
    c = rng.standard_normal(33)
    x = np.cos(np.pi * (np.arange(101) + 0.5) / 101)
    if kind == "T":
        arg = cb.ChebCoeffsT(c)
        f = C.chebval(x, c)
        cT = c
    else:
        arg = cb.ChebCoeffsU(c)
        f = cb.eval_U(arg, x)
        cT = U_to_T_oracle(c)
    got = fn(arg)(x)
    want = oracle(x, f, cT)
    assert np.max(np.abs(got - want)) <= 1e-11 * max(1, np.max(np.abs(want)))


def test_wdw_oracle():
    rng = np.random.default_rng(3)
    c = rng.standard_normal(33)
    v = cb.ChebCoeffsU(c)
    x = np.cos(np.pi * (np.arange(101) + 0.5) / 101)
    cT = U_to_T_oracle(c)
    want = (1 - x**2) * C.chebval(x, C.chebder(cT)) - x * v(x)
    assert np.max(np.abs(cb.wdw_U_to_T(v)(x) - want)) <= 1e-10


# mul_smooth -----------------------------------------------------------------


def test_mul_smooth_identity_and_x():
    u = cb.ChebCoeffsT([0.0, 1.0])
    one = cb.mul_smooth(u, lambda x: np.ones_like(x))
    assert np.allclose(one.coeffs[:2], [0, 1]) and np.allclose(one.coeffs[2:], 0)
    xx = cb.mul_smooth(u, lambda x: x)
    assert np.allclose(xx.coeffs[:3], [0.5, 0, 0.5], atol=1e-14)


def test_mul_smooth_omega2_matches_exact_map():
    v = cb.ChebCoeffsU.basis(0, 4)
    got = cb.mul_smooth(v, lambda x: 1 - x**2)
    want = cb.mul_omega2_U_to_U(v)
    n = min(got.N, want.N) + 1
    assert np.allclose(got.coeffs[:n], want.coeffs[:n], atol=1e-14)


def test_mul_smooth_warns_on_aliasing():
    u = cb.ChebCoeffsT.basis(0, 8)
    with pytest.warns(cb.AliasingWarning):
        cb.mul_smooth(u, lambda x: np.abs(x))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        cb.mul_smooth(u, lambda x: x**3)
