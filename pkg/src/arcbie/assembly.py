"""Spectral assembly of the weighted layer potentials on an open arc.

Everything is pulled back to ``x in [-1, 1]`` and then to the torus through
``x = cos(theta)``.  With the ``1/omega`` weight and the constant speed
``L/2`` the single layer becomes

    (S u)(cos t) = int_0^pi G(|r(cos t) - r(cos s)|) u(cos s) ds,

and ``-(1/2pi) ln|cos t - cos s| = g(t - s) + g(t + s)`` with
``g(t) = -(1/2pi) ln|sqrt(2) sin(t/2)|``.  Writing the kernel as
``-(1/2pi) ln|x - y| a(x, y) + F2(x, y)`` with ``a``, ``F2`` smooth, the log
part is a periodic convolution with ``g``, integrated exactly on
trigonometric interpolants through the Fourier multipliers of ``g``.  The
smooth part uses the trapezoid rule.

The hypersingular operator is never discretized directly.  It is composed
from ``S``, ``V`` and exact coefficient maps:

    N = -d/dx S (omega d/dx omega) - (kL/2)^2 J->U(V omega^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import chebyshev as cb
from .curves import Curve, divided_diff
from .special import F1, bessel_J0

__all__ = [
    "OperatorMat",
    "log_multiplier",
    "kappa_eff",
    "assemble_S",
    "assemble_V",
    "assemble_N",
    "assemble_all",
    "build_D1",
    "build_D2",
    "rhs_dirichlet",
    "rhs_neumann",
    "field_eval",
    "dump_matrix",
    "load_matrix",
]


@dataclass(frozen=True)
class OperatorMat:
    """Dense matrix of an operator between Chebyshev bases.

    Column ``m`` holds the coefficients of the image of the ``m``-th basis
    function (``T_m`` or ``U_m``).
    """

    entries: np.ndarray
    basis_in: str
    basis_out: str
    k: float = 0.0
    curve_id: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.basis_in not in ("T", "U") or self.basis_out not in ("T", "U"):
            raise ValueError("bases are 'T' or 'U'")

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def N(self) -> int:
        return self.entries.shape[1]

    def crop(self, n: int) -> "OperatorMat":
        """Leading ``n x n`` block (finite section)."""
        return replace(self, entries=self.entries[:n, :n].copy())

    def with_entries(self, entries: np.ndarray, **kw) -> "OperatorMat":
        return replace(self, entries=entries, **kw)

    def weights_in(self) -> np.ndarray:
        n = self.entries.shape[1]
        return cb.weights_T(n) if self.basis_in == "T" else cb.weights_U(n)

    def __matmul__(self, other):
        if isinstance(other, OperatorMat):
            if other.basis_out != self.basis_in:
                raise ValueError("basis mismatch in composition")
            return replace(self, entries=self.entries @ other.entries, basis_in=other.basis_in)
        return self.entries @ other


def log_multiplier(n) -> np.ndarray | float:
    """Fourier multiplier of ``g(t) = -(1/2pi) ln|sqrt(2) sin(t/2)|``.

    ``int_{-pi}^{pi} g(t - s) e^{ins} ds = m(n) e^{int}`` with ``m(0) = ln2/2``
    and ``m(n) = 1/(2|n|)``.
    """
    n = np.abs(np.asarray(n))
    with np.errstate(divide="ignore"):
        out = np.where(n == 0, math.log(2.0) / 2, 0.5 / np.maximum(n, 1))
    return float(out) if out.ndim == 0 else out


def kappa_eff(curve: Curve, k: float) -> float:
    """Wavenumber seen on ``[-1, 1]``: ``k L / 2``."""
    return k * curve.L / 2.0


def _check_sizes(N: int, M: int):
    if N < 8:
        raise ValueError("truncation N must be at least 8")
    if M < 4 * N:
        raise ValueError(f"quadrature size M={M} < 4N={4 * N} would alias")
    if M % 2:
        raise ValueError("quadrature size M must be even")


def _kernel_parts(curve: Curve, k: float, M: int, normals: bool):
    """Smooth factors ``a`` and ``F2`` on targets ``0..M/2`` x sources ``0..M-1``."""
    theta = 2 * np.pi * np.arange(M) / M
    x = np.cos(theta)
    xt = x[: M // 2 + 1]
    X, Y = np.meshgrid(xt, x, indexing="ij")
    q = divided_diff(curve, X, Y)
    qn = np.linalg.norm(q, axis=-1)
    logq = np.log(qn)
    if k == 0:
        a = np.ones_like(X)
        F2 = -logq / (2 * np.pi)
    else:
        rho = np.abs(X - Y) * qn
        a = bessel_J0(k * rho)
        F2 = -(math.log(k) + logq) * a / (2 * np.pi) + F1((k * rho) ** 2)
    if normals:
        nt = curve.normal(xt)
        ns = curve.normal(x)
        nn = nt @ ns.T
        a = a * nn
        F2 = F2 * nn
    return a, F2


def _nystrom(curve: Curve, k: float, n: int, M: int, normals: bool) -> np.ndarray:
    """Matrix (``n x n``, first-kind basis) of the weighted single-layer type operator."""
    a, F2 = _kernel_parts(curve, k, M, normals)
    c = np.fft.irfft(log_multiplier(np.arange(M // 2 + 1)), M)
    i = np.arange(M // 2 + 1)[:, None]
    j = np.arange(M)[None, :]
    K = c[(i - j) % M] * a + (np.pi / M) * F2
    theta = 2 * np.pi * np.arange(M) / M
    E = np.cos(np.outer(theta, np.arange(n)))
    vals = K @ E
    # cosine projection on the half grid (trapezoid on the full circle)
    th = theta[: M // 2 + 1]
    w = np.full(M // 2 + 1, 2.0)
    w[0] = w[-1] = 1.0
    eps = np.full(n, 2.0)
    eps[0] = 1.0
    P = (eps[:, None] / M) * np.cos(np.outer(np.arange(n), th)) * w[None, :]
    return P @ vals


def assemble_S(curve: Curve, k: float, N: int, M: int | None = None) -> OperatorMat:
    """Weighted single layer ``S_{k,omega}`` in the basis ``T_0..T_{N-1}``."""
    M = 4 * N if M is None else M
    _check_sizes(N, M)
    A = _nystrom(curve, k, N, M, normals=False)
    return OperatorMat(A, "T", "T", k, curve.id, {"M": M, "op": "S"})


def assemble_V(curve: Curve, k: float, N: int, M: int | None = None) -> OperatorMat:
    """``V_k``: the single-layer kernel times ``n(x).n(y)``, first-kind basis."""
    M = 4 * N if M is None else M
    _check_sizes(N, M)
    if curve.id == "segment":
        A = _nystrom(curve, k, N, M, normals=False)
    else:
        A = _nystrom(curve, k, N, M, normals=True)
    return OperatorMat(A, "T", "T", k, curve.id, {"M": M, "op": "V"})


def _compose_N(S: np.ndarray, V: np.ndarray, ke: float, N: int) -> np.ndarray:
    # S, V are (N+2) x (N+2) blocks in the T basis; every map below is the
    # exact finite section needed for the U_0..U_{N-1} block of N
    Dx = cb.diff_matrix(N, N + 1)
    Wdw = cb.wdw_matrix(N + 1, N)
    I = cb.embed_I_matrix(N, N + 2)
    W2 = cb.omega2_U_to_T_matrix(N + 2, N)
    out = -Dx @ S[: N + 1, : N + 1] @ Wdw
    if ke != 0:
        out = out - ke**2 * (I @ V @ W2)
    return out


def assemble_N(curve: Curve, k: float, N: int, M: int | None = None) -> OperatorMat:
    """Weighted hypersingular ``N_{k,omega}`` in the basis ``U_0..U_{N-1}``.

    Uses ``-d/dx S (omega d/dx omega) - (kL/2)^2 I V omega^2``; the factors
    ``2/L`` of the tangential derivative and ``L/2`` of the weight cancel in
    the first term and leave ``(L/2)^2`` in the second.
    """
    return assemble_all(curve, k, N, M)["N"]


def assemble_all(curve: Curve, k: float, N: int, M: int | None = None) -> dict[str, OperatorMat]:
    """``S``, ``V`` (``N x N``, T basis) and ``N`` (``N x N``, U basis) in one pass."""
    M = 4 * N if M is None else M
    _check_sizes(N, M)
    S = _nystrom(curve, k, N + 2, M, normals=False)
    V = S if curve.id == "segment" else _nystrom(curve, k, N + 2, M, normals=True)
    Nm = _compose_N(S, V, kappa_eff(curve, k), N)
    meta = {"M": M}
    return {
        "S": OperatorMat(S[:N, :N].copy(), "T", "T", k, curve.id, {**meta, "op": "S"}),
        "V": OperatorMat(V[:N, :N].copy(), "T", "T", k, curve.id, {**meta, "op": "V"}),
        "N": OperatorMat(Nm, "U", "U", k, curve.id, {**meta, "op": "N"}),
    }


def build_D1(curve: Curve, k: float, N: int, correction: bool = True) -> OperatorMat:
    """``-(omega d/dx)^2 - (kL/2)^2 omega^2`` on ``T_0..T_{N-1}``.

    ``correction=False`` drops the ``omega^2`` term (pure Laplace part).
    """
    n = np.arange(N)
    A = np.diag(n.astype(float) ** 2)
    ke = kappa_eff(curve, k)
    if correction and ke:
        A = A - ke**2 * cb.omega2_T_matrix(N, N)
    return OperatorMat(A.astype(complex), "T", "T", k, curve.id, {"op": "D1"})


def build_D2(curve: Curve, k: float, N: int, correction: bool = True) -> OperatorMat:
    """``-(d/dx omega)^2 - (kL/2)^2 omega^2`` on ``U_0..U_{N-1}``."""
    n = np.arange(N)
    A = np.diag((n + 1.0) ** 2)
    ke = kappa_eff(curve, k)
    if correction and ke:
        A = A - ke**2 * cb.omega2_U_matrix(N, N)
    return OperatorMat(A.astype(complex), "U", "U", k, curve.id, {"op": "D2"})


def _plane_wave(curve: Curve, k: float, direction, x):
    d = np.asarray(direction, dtype=float)
    if abs(np.linalg.norm(d) - 1) > 1e-12:
        raise ValueError("incidence direction must be a unit vector")
    return d, np.exp(1j * k * (curve.r(x) @ d))


def rhs_dirichlet(curve: Curve, k: float, direction, N: int, M: int | None = None) -> cb.ChebCoeffsT:
    """First-kind coefficients of ``-exp(i k d.r(x))``."""
    M = 4 * N if M is None else M
    x = cb.cheb_nodes(M)
    _, u = _plane_wave(curve, k, direction, x)
    return cb.cheb_transform_T(-u, N - 1)


def rhs_neumann(curve: Curve, k: float, direction, N: int, M: int | None = None) -> cb.ChebCoeffsU:
    """Second-kind coefficients of ``-i k (d.n(x)) exp(i k d.r(x))``."""
    M = 4 * N if M is None else M
    x = cb.cheb_nodes(M)
    d, u = _plane_wave(curve, k, direction, x)
    g = -1j * k * (curve.normal(x) @ d) * u
    return cb.cheb_transform_U(g, N - 1)


def field_eval(curve: Curve, k: float, density: cb.ChebCoeffsT, points, M: int | None = None) -> np.ndarray:
    """Single-layer field ``int G_k(z - y) (alpha / omega_Gamma)(y) dsigma_y``.

    After ``y = r(cos s)`` the weight cancels and the periodic trapezoid rule
    on ``2M`` points is spectrally accurate away from the arc.
    """
    from .special import green_G

    pts = np.atleast_2d(np.asarray(points, dtype=float))
    M = max(4 * (density.N + 1), 256) if M is None else M
    s = 2 * np.pi * np.arange(2 * M) / (2 * M)
    y = curve.r(np.cos(s))
    dens = cb.eval_T(density, np.cos(s))
    dist = np.linalg.norm(pts[:, None, :] - y[None, :, :], axis=-1)
    if np.min(dist) < 1e-3:
        raise ValueError("evaluation point closer than 1e-3 to the arc")
    G = green_G(k, dist)
    return (np.pi / (2 * M)) * (G @ dens)


def dump_matrix(op: OperatorMat, path) -> None:
    """Write a matrix as CSV: ``#`` header lines, then one row per line as
    ``re,im`` pairs in column order."""
    A = op.entries
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# basis_in={op.basis_in} basis_out={op.basis_out} k={op.k!r} curve={op.curve_id}\n")
        fh.write(f"# rows={A.shape[0]} cols={A.shape[1]}\n")
        for row in A:
            pairs = np.empty(2 * row.size)
            pairs[0::2] = row.real
            pairs[1::2] = row.imag
            fh.write(",".join(f"{v:.17e}" for v in pairs) + "\n")


def load_matrix(path) -> OperatorMat:
    """Inverse of :func:`dump_matrix`."""
    meta = {}
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                for tok in line[1:].split():
                    key, val = tok.split("=", 1)
                    meta[key] = val
            elif line.strip():
                v = np.array([float(t) for t in line.split(",")])
                rows.append(v[0::2] + 1j * v[1::2])
    A = np.array(rows)
    return OperatorMat(A, meta["basis_in"], meta["basis_out"], float(meta["k"]), meta.get("curve", ""))
