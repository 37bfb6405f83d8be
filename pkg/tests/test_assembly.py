import math

import numpy as np
import pytest
from scipy.integrate import quad

from arcbie import chebyshev as cb
from arcbie.assembly import (
    assemble_all,
    assemble_N,
    assemble_S,
    assemble_V,
    build_D1,
    build_D2,
    dump_matrix,
    field_eval,
    kappa_eff,
    load_matrix,
    log_multiplier,
    rhs_dirichlet,
    rhs_neumann,
)
from arcbie.curves import make_arc, make_perturbed, make_segment
from arcbie.special import F1_ZERO, green_G

SEG = make_segment()
ARC = make_arc(math.pi / 2)
PERT = make_perturbed()


def test_log_multiplier_values():
    assert log_multiplier(0) == pytest.approx(0.34657359, abs=1e-8)
    assert log_multiplier(1) == 0.5
    assert log_multiplier(10) == 0.05


def test_laplace_segment_diagonals():
    ops = assemble_all(SEG, 0.0, 64)
    n = np.arange(64)
    sigma = np.where(n == 0, math.log(2) / 2, 0.5 / np.maximum(n, 1))
    assert np.allclose(ops["S"].entries, np.diag(sigma), rtol=1e-12, atol=1e-13)
    assert np.allclose(ops["N"].entries, np.diag((n + 1) / 2), atol=1e-11)


def test_segment_V_equals_S_and_small_k_limit():
    S = assemble_S(SEG, 1e-7, 32).entries
    V = assemble_V(SEG, 1e-7, 32).entries
    assert np.array_equal(S, V)
    # k -> 0: the kernels differ by the constant -ln(k)/2pi + F1(0), seen by T_0 only
    d = S - assemble_S(SEG, 0.0, 32).entries
    assert d[0, 0] == pytest.approx(math.pi * (-math.log(1e-7) / (2 * math.pi) + F1_ZERO), rel=1e-10)
    d[0, 0] = 0
    assert np.max(np.abs(d)) < 1e-12


@pytest.mark.parametrize("curve", [SEG, ARC, PERT], ids=lambda c: c.id)
@pytest.mark.parametrize("k", [0.0, 3.0])
def test_pairing_symmetry(curve, k):
    ops = assemble_all(curve, k, 32)
    wT, wU = cb.weights_T(32), cb.weights_U(32)
    for name, w in (("S", wT), ("V", wT), ("N", wU)):
        A = w[:, None] * ops[name].entries
        assert np.max(np.abs(A - A.T)) <= 1e-10 * np.max(np.abs(A))


@pytest.mark.parametrize("curve", [ARC, PERT], ids=lambda c: c.id)
def test_quadrature_converged(curve):
    a = assemble_all(curve, 3.0, 32, 128)
    b = assemble_all(curve, 3.0, 32, 256)
    for name in "SVN":
        assert np.max(np.abs(a[name].entries - b[name].entries)) < 1e-12


def _S_oracle(curve, k, m, x):
    # (S T_m)(x) = int_0^pi G_k(|r(x) - r(cos t)|) cos(m t) dt, split at the singularity
    t0 = math.acos(x)

    def f(t, part):
        d = np.linalg.norm(curve.r(x) - curve.r(math.cos(t)))
        g = green_G(k, max(d, 1e-300)) if k else -math.log(max(d, 1e-300)) / (2 * math.pi)
        return (np.real(g) if part == 0 else np.imag(g)) * math.cos(m * t)

    out = 0j
    for lo, hi in ((0, t0), (t0, math.pi)):
        re = quad(f, lo, hi, args=(0,), limit=200, epsabs=1e-13)[0]
        im = quad(f, lo, hi, args=(1,), limit=200, epsabs=1e-13)[0]
        out += re + 1j * im
    return out


@pytest.mark.parametrize("curve,k", [(ARC, 3.0), (PERT, 2.0), (SEG, 4.0)], ids=["arc", "perturbed", "segment"])
def test_S_against_adaptive_quadrature(curve, k):
    S = assemble_S(curve, k, 32).entries
    for m in (0, 3):
        col = cb.ChebCoeffsT(S[:, m])
        for x in (-0.7, 0.1, 0.55):
            assert col(x) == pytest.approx(_S_oracle(curve, k, m, x), abs=1e-9)


def test_N_factorisation_matches_direct_composition():
    # N = -d/dx S (omega d/dx omega) - ke^2 I V omega^2 with a generous inner size
    N, big = 24, 40
    ops_big = assemble_all(ARC, 2.0, big)
    S, V = ops_big["S"].entries, ops_big["V"].entries
    ke = kappa_eff(ARC, 2.0)
    ref = -cb.diff_matrix(big, big) @ S @ cb.wdw_matrix(big, big) - ke**2 * cb.embed_I_matrix(big, big) @ V @ cb.omega2_U_to_T_matrix(big, big)
    got = assemble_N(ARC, 2.0, N).entries
    assert np.allclose(got, ref[:N, :N], atol=1e-9)


def test_refuses_aliasing_grid():
    with pytest.raises(ValueError):
        assemble_S(SEG, 1.0, 32, 100)
    with pytest.raises(ValueError):
        assemble_S(SEG, 1.0, 4)


def test_tangential_operators_at_k0():
    D1 = build_D1(ARC, 0.0, 10).entries
    D2 = build_D2(ARC, 0.0, 10).entries
    assert np.allclose(D1, np.diag(np.arange(10) ** 2))
    assert np.allclose(D2, np.diag(np.arange(1, 11) ** 2))


def test_tangential_correction_uses_effective_wavenumber():
    k = 3.0
    D1 = build_D1(ARC, k, 12).entries
    ke = k * ARC.L / 2
    assert np.allclose(D1, np.diag(np.arange(12) ** 2) - ke**2 * cb.omega2_T_matrix(12, 12))
    assert np.allclose(build_D1(ARC, k, 12, correction=False).entries, np.diag(np.arange(12) ** 2))


def test_rhs():
    d = (math.cos(0.3), math.sin(0.3))
    assert np.allclose(rhs_dirichlet(ARC, 0.0, d, 16).coeffs, -np.eye(16)[0])
    assert np.allclose(rhs_neumann(ARC, 0.0, d, 16).coeffs, 0)
    b = rhs_dirichlet(SEG, 2.0, (1.0, 0.0), 32)
    x = np.linspace(-1, 1, 7)
    assert np.allclose(b(x), -np.exp(2j * x), atol=1e-13)
    with pytest.raises(ValueError):
        rhs_dirichlet(SEG, 1.0, (1.0, 1.0), 16)


def test_field_eval_mean_value():
    dens = cb.ChebCoeffsT([1.0])
    center = np.array([0.2, 1.5])
    r = 0.5
    t = 2 * np.pi * np.arange(64) / 64
    ring = center + r * np.stack([np.cos(t), np.sin(t)], -1)
    u_ring = field_eval(SEG, 0.0, dens, ring)
    u_c = field_eval(SEG, 0.0, dens, center)[0]
    assert abs(np.mean(u_ring) - u_c) <= 1e-6


def test_field_eval_far_growth_and_zero_density():
    dens = cb.ChebCoeffsT([1.0])
    pts = np.array([[0.0, h] for h in (2.0, 4.0, 8.0, 16.0)])
    u = field_eval(SEG, 0.0, dens, pts).real
    # log-potential growth: monotonically decreasing
    assert np.all(np.diff(u) < 0)
    # exact: -(1/2) ln((h + sqrt(h^2 + 1)) / 2) on the axis
    h = pts[:, 1]
    assert np.allclose(u, -0.5 * np.log((h + np.sqrt(h**2 + 1)) / 2), atol=1e-12)
    assert np.allclose(field_eval(ARC, 2.0, cb.ChebCoeffsT([0.0]), pts), 0)
    with pytest.raises(ValueError):
        field_eval(SEG, 1.0, dens, [[0.0, 0.0]])


def test_dump_round_trip(tmp_path):
    op = assemble_all(ARC, 2.0, 16)["N"]
    p = tmp_path / "N.csv"
    dump_matrix(op, p)
    back = load_matrix(p)
    assert np.array_equal(back.entries, op.entries)
    assert (back.basis_in, back.basis_out, back.k, back.curve_id) == ("U", "U", 2.0, "arc")
    lines = p.read_text().splitlines()
    assert lines[0].startswith("# basis_in=U basis_out=U")
    assert lines[1] == "# rows=16 cols=16"
    assert len(lines[2].split(",")) == 32
