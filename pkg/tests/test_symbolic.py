import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcbie import chebyshev as cb
from arcbie.assembly import assemble_S
from arcbie.curves import make_arc, make_segment
from arcbie.experiments import symbol_action
from arcbie.parametrix import fit_slope
from arcbie.symbolic import (
    InsufficientDepth,
    PSymbol,
    TrigPoly,
    extract_pair,
    integral_symbol,
    kernel_taylor,
    pair_to_symbol,
    sigma_D,
    sigma_S,
    sigma_V,
    sym_compose,
    sym_N1,
    sym_N2,
    sym_sqrt,
)
from arcbie.symbolic.geometry import log_multiplier_symbol
from arcbie.symbolic.printing import format_poly, format_symbol, symbol_terms, symbol_to_json
from arcbie.symbolic.ring import LEN, I, K, S, Cc, atom, kappa
from arcbie.symbolic.theorems import compare_published, published_coefficients, sigma_N, verify_theorems

XI = PSymbol.xi


# ring ------------------------------------------------------------------------


def test_normal_form():
    assert S * S == 1 - Cc * Cc
    assert I * I == TrigPoly.const(-1)
    assert (S**3).max_degree("s") == 1


def test_derivatives():
    assert S.diff_theta() == Cc
    assert Cc.diff_theta() == -S
    assert kappa(0).diff_theta() == -S * kappa(1)
    assert atom("Km").diff_theta() == atom("Km'")
    assert (K * LEN).diff_theta().is_zero()
    assert kappa(2).diff_x() == kappa(3)


monos = st.sampled_from([S, Cc, I, K, LEN, kappa(0), kappa(1), TrigPoly.const(1)])
polys = st.lists(st.tuples(st.integers(-3, 3), st.lists(monos, min_size=0, max_size=3)), min_size=1, max_size=4).map(
    lambda terms: sum(
        (Fraction(c) * math.prod(ms, start=TrigPoly.const(1)) for c, ms in terms),
        TrigPoly(),
    )
)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_leibniz_and_ring_laws(p, q):
    assert (p * q).diff_theta() == p.diff_theta() * q + p * q.diff_theta()
    assert p * q == q * p
    assert (p + q) - q == p
    p0, p1 = p.split_s()
    assert p0 + S * p1 == p
    r, j = p.split_I()
    assert r + I * j == p


@settings(max_examples=40, deadline=None)
@given(polys, st.floats(0.1, 3.0))
def test_evaluate_matches_numeric_theta_derivative(p, th):
    vals = {"theta": th, "k": 1.3, "L": 0.7}
    # curvature atoms as functions of x = cos(theta): kappa(x) = x^3 + x
    kap = [lambda x: x**3 + x, lambda x: 3 * x**2 + 1, lambda x: 6 * x]

    def at(t):
        v = dict(vals, theta=t)
        v.update({f"kappa{i}": kap[i](math.cos(t)) for i in range(3)})
        return v

    h = 1e-6
    num = (p.evaluate(at(th + h)) - p.evaluate(at(th - h))) / (2 * h)
    assert p.diff_theta().evaluate(at(th)) == pytest.approx(num, abs=1e-6)


# composition -------------------------------------------------------------------


def test_compose_examples():
    assert sym_compose(XI(1), XI(1)).equals(XI(2))
    m = atom("Km")
    got = sym_compose(XI(2), PSymbol.mult(m))
    want = PSymbol({2: m, 1: -2 * I * m.diff_theta(), 0: -m.diff_theta(2)})
    assert got.equals(want)


def test_compose_leibniz_oracle():
    # -(d/dtheta)^2 (m u) with u = e^{i xi theta}: coefficients of u
    m = atom("Km")
    got = sym_compose(PSymbol({2: TrigPoly.const(1)}), PSymbol.mult(m))
    leib = {2: m, 1: 2 * m.diff_theta() * (-I), 0: -m.diff_theta(2)}
    for p, c in leib.items():
        assert got[p] == c


small_syms = st.lists(st.tuples(st.integers(0, 2), polys), min_size=1, max_size=3).map(
    lambda ts: PSymbol({p: c for p, c in ts})
)


@settings(max_examples=25, deadline=None)
@given(small_syms, small_syms, small_syms)
def test_associativity(a, b, c):
    assert sym_compose(sym_compose(a, b), c).equals(sym_compose(a, sym_compose(b, c)))


@settings(max_examples=25, deadline=None)
@given(small_syms, small_syms)
def test_orders_and_commutator(a, b):
    if not a.terms or not b.terms:
        return
    ab = sym_compose(a, b)
    ba = sym_compose(b, a)
    if ab.terms:
        assert ab.lead <= a.lead + b.lead
    comm = ab - ba
    if comm.terms:
        assert comm.lead <= a.lead + b.lead - 1


def test_truncated_compose_depth():
    s = sigma_S(4)
    with pytest.raises(InsufficientDepth):
        sym_compose(XI(2), s, J=10)
    with pytest.raises(InsufficientDepth):
        s[-9]
    with pytest.raises(InsufficientDepth):
        sym_compose(PSymbol({-1: TrigPoly.const(1)}), PSymbol({-1: TrigPoly.const(1)}))


# square root -----------------------------------------------------------------------


def test_sqrt_examples():
    assert sym_sqrt(XI(2), J=6).equals(XI(1))
    D = sigma_D(True)
    tau = sym_sqrt(D, J=6)
    assert tau[1] == TrigPoly.const(1)
    assert tau[0].is_zero()
    assert tau[-1] == -(K * K * LEN * LEN * S * S) / 8
    # tau # tau = a to the validity bound
    tt = sym_compose(tau, tau)
    assert tt.lo == -3 and tt.equals(D.truncate(-3))
    with pytest.raises(ValueError):
        sym_sqrt(PSymbol({2: -S}))


def test_sqrt_parametrix_order():
    tau = sym_sqrt(sigma_D(True), 6)
    r = sym_compose(tau, sigma_S(6)) - PSymbol.mult(Fraction(1, 2))
    assert r.lead <= -4


# kernel symbols ------------------------------------------------------------------


def test_integral_symbol_trivial_kernel():
    s = integral_symbol(log_multiplier_symbol(), kernel_taylor(6, helmholtz=False), 6)
    assert s.equals(PSymbol({-1: TrigPoly.const(Fraction(1, 2))}))


def test_laplace_single_layer_is_half_over_xi_for_any_curve():
    assert sigma_S(6, helmholtz=False).equals(PSymbol({-1: TrigPoly.const(Fraction(1, 2))}))


def test_published_coefficients_reproduced():
    pub = published_coefficients()
    got = {"S": sigma_S(6), "N1": sym_N1(sigma_S(6)), "V": sigma_V(6), "N2": sym_N2(sigma_V(6))}
    for name, table in pub.items():
        for order, coeff in table.items():
            if (name, order) == ("S", -5):
                continue
            assert got[name][order] == coeff, (name, order)


def test_N2_of_half_over_xi():
    half = PSymbol({-1: TrigPoly.const(Fraction(1, 2))}, lo=-4)
    n2 = sym_N2(half)
    pub = published_coefficients()["N2"]
    assert n2[-1] == pub[-1] and n2[-2] == pub[-2]


def test_xi_minus5_difference_is_reported():
    row = [c for c in compare_published(6) if (c.symbol, c.order) == ("S", -5)][0]
    assert not row.asserted and not row.match
    assert "printed - computed" in row.note
    ours = sigma_S(6)[-5]
    k2L2 = K * K * LEN * LEN
    want = k2L2 * (S * S * Fraction(7, 16) - Fraction(3, 16)) + k2L2 * k2L2 * S**4 * Fraction(3, 256) + k2L2 * LEN * LEN * kappa(0) ** 2 * S**4 / 64
    assert ours == want


@pytest.mark.parametrize("curve,k", [(make_segment(), 5.0), (make_arc(math.pi / 2), 1.0)], ids=["segment", "arc"])
def test_xi_minus5_numeric_discrimination(curve, k):
    # adding the correct xi^-5 term to the action must steepen the residual
    N = 256
    Smat = assemble_S(curve, k, N).entries
    s = sigma_S(6)
    base = {p: v for p, v in s.terms.items() if p >= -4}
    ns = [8, 16, 32, 64]

    def slope(sym):
        vals = [cb.norm_Ts(cb.ChebCoeffsT(Smat[:, n] - symbol_action(sym, n, curve, k, N)), 0) for n in ns]
        return fit_slope(ns, vals)[0]

    ours = slope(PSymbol({**base, -5: s[-5]}))
    printed = slope(PSymbol({**base, -5: published_coefficients()["S"][-5]}))
    assert ours <= -6.0
    assert printed >= -5.6


def test_theorem_orders():
    rep = verify_theorems(6)
    assert [c.passed for c in rep["checks"]] == [True] * 4
    assert [c.leading_order for c in rep["optimality"]] == [-2, -2, 0]


def test_sigma_N_leading_terms():
    n = sigma_N(6)
    assert n[1] == TrigPoly.const(Fraction(1, 2))
    assert n[0].is_zero()


# pairs ------------------------------------------------------------------------------


def test_extract_pair_examples():
    pr = extract_pair(PSymbol({-1: TrigPoly.const(Fraction(1, 2))}))
    assert pr == {-1: (TrigPoly.const(Fraction(1, 2)), TrigPoly())}
    k2L2 = K * K * LEN * LEN
    omega2 = 1 - Cc * Cc
    pS = extract_pair(sigma_S(6).truncate(-4))
    assert pS[-1][0] == TrigPoly.const(Fraction(1, 2))
    assert pS[-3][0] == k2L2 * omega2 / 16
    assert pS[-4] == (TrigPoly(), k2L2 * Cc * Fraction(3, 16))
    pN = extract_pair(sym_N1(sigma_S(6)).truncate(-2))
    assert pN[1][0] == TrigPoly.const(Fraction(1, 2))
    assert pN[-1][0] == k2L2 * omega2 / 16
    assert pN[-2] == (TrigPoly(), k2L2 * Cc / 16)


def test_extract_pair_round_trip():
    for sym in (sigma_S(6), sym_N1(sigma_S(6)), sigma_N(6), sym_sqrt(sigma_D(True), 6)):
        back = pair_to_symbol(extract_pair(sym), sym.lo)
        assert back.equals(sym)


def test_extract_pair_rejects_unsplittable():
    with pytest.raises(ValueError):
        extract_pair(PSymbol({0: I}))


def test_pair_action_matches_assembled_S():
    # the two-term pair evaluates to the leading column behaviour of S
    c = make_segment()
    N = 128
    Smat = assemble_S(c, 0.0, N).entries
    act = symbol_action(PSymbol({-1: TrigPoly.const(Fraction(1, 2))}), 10, c, 0.0, N)
    assert np.allclose(act, Smat[:, 10], atol=1e-13)


# printing ---------------------------------------------------------------------------


def test_printing():
    s = sigma_S(4)
    txt = format_symbol(s)
    assert "ξ⁻¹" in txt and txt.endswith("O(ξ⁻⁶)")
    assert format_symbol(s, ascii=True).isascii()
    assert format_poly(I * K * K * Fraction(3, 16), ascii=True) == "3/16*i*k^2"
    terms = symbol_terms(s)
    assert terms[0] == {"order": -1, "coefficient": "1/2"}
    assert '"remainder_order": -6' in symbol_to_json(s)
