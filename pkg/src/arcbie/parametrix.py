"""Square roots of the tangential operators and the parametrix preconditioners.

``D1`` and ``D2`` are self-adjoint for the Chebyshev-weighted inner products
(``diag(1, 1/2, ...)`` on first-kind coefficients and ``diag(1/2, ...)`` on
second-kind ones), so a symmetric eigendecomposition of the similarity
transform ``W^{1/2} A W^{-1/2}`` gives a weighted-orthonormal eigenbasis.
Functions of the operator act on the eigenvalues, with the principal branch
``sqrt(-r) = i sqrt(r)`` on the negative part of the spectrum.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import chebyshev as cb
from .assembly import OperatorMat, build_D1, build_D2
from .curves import Curve

__all__ = [
    "EigFactorization",
    "ProbeResult",
    "NearSingularWarning",
    "weighted_eig",
    "principal_sqrt",
    "apply_function",
    "build_P1",
    "build_P2",
    "dyadic_range",
    "order_probe",
    "fit_slope",
]


class NearSingularWarning(UserWarning):
    """An eigenvalue of ``D2`` is close to zero; a shift was applied."""


@dataclass(frozen=True)
class EigFactorization:
    """``A = V diag(eigenvalues) V^H W`` with ``V^H W V = I``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    weight: str
    template: OperatorMat

    @property
    def weights(self) -> np.ndarray:
        n = len(self.eigenvalues)
        return cb.weights_T(n) if self.weight == "T" else cb.weights_U(n)

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T * self.weights[None, :]


def weighted_eig(A: OperatorMat, tol: float = 1e-8) -> EigFactorization:
    """Eigendecomposition of an operator self-adjoint in its weighted inner product.

    Raises
    ------
    ValueError
        If ``W A`` is not Hermitian to relative tolerance ``tol``, or the
        input and output bases differ.
    """
    if A.basis_in != A.basis_out:
        raise ValueError("eigendecomposition needs an endomorphism")
    n = A.entries.shape[0]
    w = cb.weights_T(n) if A.basis_in == "T" else cb.weights_U(n)
    WA = w[:, None] * A.entries
    scale = max(np.linalg.norm(WA), 1e-300)
    if np.linalg.norm(WA - WA.conj().T) > tol * scale:
        raise ValueError("operator is not self-adjoint in the weighted inner product")
    sw = np.sqrt(w)
    B = sw[:, None] * A.entries / sw[None, :]
    B = 0.5 * (B + B.conj().T)
    if np.allclose(B.imag, 0.0):
        B = B.real
    lam, Q = np.linalg.eigh(B)
    V = Q / sw[:, None]
    return EigFactorization(lam, V, A.basis_in, A)


def apply_function(F: EigFactorization, values: np.ndarray) -> OperatorMat:
    """Operator ``V diag(values) V^H W`` for precomputed eigenvalue images."""
    V = F.eigenvectors
    A = (V * values) @ V.conj().T * F.weights[None, :]
    return F.template.with_entries(A.astype(complex))


def _principal_root(lam: np.ndarray) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    return np.where(lam >= 0, np.sqrt(np.abs(lam)), 1j * np.sqrt(np.abs(lam)))


def principal_sqrt(F: EigFactorization) -> OperatorMat:
    """Principal square root: ``sqrt(lam)`` for ``lam >= 0``, ``i sqrt(-lam)`` otherwise."""
    return apply_function(F, _principal_root(F.eigenvalues))


def build_P1(curve: Curve, k: float, N: int, margin: int = 2, correction: bool = True) -> OperatorMat:
    """``sqrt(D1)`` computed on ``margin * N`` modes and cropped to ``N``."""
    F = weighted_eig(build_D1(curve, k, margin * N, correction))
    P = principal_sqrt(F)
    return P.with_entries(P.entries[:N, :N].copy(), meta={"op": "P1"})


def build_P2(curve: Curve, k: float, N: int, margin: int = 2, correction: bool = True) -> OperatorMat:
    """``D2^{-1/2}`` computed on ``margin * N`` modes and cropped to ``N``.

    Warns
    -----
    NearSingularWarning
        If an eigenvalue of ``D2`` lies within ``1e-8`` of zero; the spectrum
        is then shifted by ``1e-6 ||D2||``.
    """
    D2 = build_D2(curve, k, margin * N, correction)
    F = weighted_eig(D2)
    lam = F.eigenvalues.copy()
    close = np.abs(lam) < 1e-8
    if np.any(close):
        shift = 1e-6 * np.linalg.norm(D2.entries, 2)
        warnings.warn(
            f"D2 has eigenvalue {lam[close][0]:.3e} near zero; shifting by {shift:.3e}",
            NearSingularWarning,
            stacklevel=2,
        )
        lam = lam + shift
    P = apply_function(F, 1.0 / _principal_root(lam))
    return P.with_entries(P.entries[:N, :N].copy(), meta={"op": "P2"})


# ---------------------------------------------------------------------------
# Order probes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeResult:
    """Log-log fit of ``||A phi_n||`` against ``n``."""

    slope: float
    r2: float
    ns: np.ndarray
    values: np.ndarray

    @property
    def reliable(self) -> bool:
        return self.r2 >= 0.9


def fit_slope(ns, values) -> tuple[float, float]:
    """Least-squares slope of ``log(values)`` against ``log(ns)`` and its R^2.

    Raises
    ------
    ValueError
        With fewer than 4 points or any nonpositive value.
    """
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    if ns.size < 4:
        raise ValueError("slope fit needs at least 4 points")
    if np.any(values <= 0) or np.any(ns <= 0):
        raise ValueError("slope fit needs positive data")
    X = np.log(ns)
    Y = np.log(values)
    slope, intercept = np.polyfit(X, Y, 1)
    resid = Y - (slope * X + intercept)
    ss_tot = np.sum((Y - Y.mean()) ** 2)
    r2 = 1.0 if ss_tot == 0 else 1.0 - np.sum(resid**2) / ss_tot
    return float(slope), float(r2)


def dyadic_range(N: int, lo: int = 8) -> np.ndarray:
    """Dyadic indices ``lo, 2 lo, ...`` up to ``N/4``."""
    out = []
    n = lo
    while n <= N // 4:
        out.append(n)
        n *= 2
    return np.array(out, dtype=int)


def order_probe(A: OperatorMat, ns=None, norm_s: float = 0.0) -> ProbeResult:
    """Fit the decay rate of ``||A phi_n||`` over basis functions.

    For the first-kind basis ``phi_n = T_n``; for the second kind
    ``phi_n = U_{n-1}`` so that ``n`` is the frequency in both cases.

    Parameters
    ----------
    A : OperatorMat
    ns : sequence of int, optional
        Frequencies to probe; default dyadic in ``[8, N/4]``.
    norm_s : float
        Sobolev index of the output norm.
    """
    N = A.entries.shape[1]
    ns = dyadic_range(N) if ns is None else np.asarray(ns, dtype=int)
    if np.any(ns > N // 4 + 1):
        raise ValueError("probe frequencies must stay below N/4")
    idx = ns if A.basis_in == "T" else ns - 1
    vals = []
    for j in idx:
        col = A.entries[:, j]
        if A.basis_out == "T":
            vals.append(cb.norm_Ts(cb.ChebCoeffsT(col), norm_s))
        else:
            vals.append(cb.norm_Us(cb.ChebCoeffsU(col), norm_s))
    vals = np.array(vals)
    slope, r2 = fit_slope(ns, vals)
    return ProbeResult(slope, r2, ns, vals)
