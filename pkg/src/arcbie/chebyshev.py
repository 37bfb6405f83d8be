"""Chebyshev coefficient spaces of first and second kind.

Functions on [-1, 1] are stored by their coefficients in the bases
``T_n`` (first kind) and ``U_n`` (second kind).  Under ``x = cos(theta)``
the two bases become the cosine family ``cos(n theta)`` and the sine family
``sin((n + 1) theta)``; all transforms below go through that change of
variables, so they reduce to discrete cosine/sine transforms.

Every coefficient-level operator used elsewhere in the package lives here:
differentiation ``d/dx : T -> U``, the weighted derivative
``omega d/dx omega : U -> T``, multiplication by ``x`` and ``omega^2``, and the
identifications ``I : T -> U`` and ``J : U -> T``.  Each one is available both
as a function on coefficient objects and as a dense matrix builder, and the
two are built from the same formulas.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
import scipy.fft

__all__ = [
    "ChebCoeffsT",
    "ChebCoeffsU",
    "FourierEven",
    "FourierOdd",
    "AliasingWarning",
    "cheb_nodes",
    "cheb_transform_T",
    "cheb_transform_U",
    "inverse_transform_T",
    "inverse_transform_U",
    "eval_T",
    "eval_U",
    "norm_Ts",
    "norm_Us",
    "pair_T",
    "pair_U",
    "map_C",
    "map_S",
    "embed_I",
    "embed_J",
    "diff_T_to_U",
    "wdw_U_to_T",
    "mul_x_T",
    "mul_x_U",
    "mul_omega2_T_to_T",
    "mul_omega2_U_to_T",
    "mul_omega2_U_to_U",
    "mul_smooth",
    "weights_T",
    "weights_U",
    "diff_matrix",
    "wdw_matrix",
    "embed_I_matrix",
    "embed_J_matrix",
    "mul_x_T_matrix",
    "mul_x_U_matrix",
    "omega2_T_matrix",
    "omega2_U_to_T_matrix",
    "omega2_U_matrix",
]


class AliasingWarning(UserWarning):
    """Product coefficients did not decay before the end of the grid."""


def _as_coeffs(values) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(values, dtype=complex))
    if arr.ndim != 1:
        raise ValueError("coefficient vectors must be one-dimensional")
    return arr.copy()


@dataclass(frozen=True)
class ChebCoeffsT:
    """Coefficients of ``u = sum_n coeffs[n] T_n``."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))

    @property
    def N(self) -> int:
        """Truncation degree."""
        return len(self.coeffs) - 1

    @classmethod
    def basis(cls, n: int, N: int | None = None) -> "ChebCoeffsT":
        N = n if N is None else N
        c = np.zeros(N + 1, dtype=complex)
        c[n] = 1.0
        return cls(c)

    def padded(self, N: int) -> "ChebCoeffsT":
        """Zero-pad (or truncate) to degree ``N``."""
        return ChebCoeffsT(_resize(self.coeffs, N + 1))

    def __call__(self, x):
        return eval_T(self, x)

    def __add__(self, other: "ChebCoeffsT") -> "ChebCoeffsT":
        n = max(self.N, other.N)
        return ChebCoeffsT(_resize(self.coeffs, n + 1) + _resize(other.coeffs, n + 1))

    def __sub__(self, other: "ChebCoeffsT") -> "ChebCoeffsT":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "ChebCoeffsT":
        return ChebCoeffsT(scalar * self.coeffs)


@dataclass(frozen=True)
class ChebCoeffsU:
    """Coefficients of ``v = sum_n coeffs[n] U_n``."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def basis(cls, n: int, N: int | None = None) -> "ChebCoeffsU":
        N = n if N is None else N
        c = np.zeros(N + 1, dtype=complex)
        c[n] = 1.0
        return cls(c)

    def padded(self, N: int) -> "ChebCoeffsU":
        return ChebCoeffsU(_resize(self.coeffs, N + 1))

    def __call__(self, x):
        return eval_U(self, x)

    def __add__(self, other: "ChebCoeffsU") -> "ChebCoeffsU":
        n = max(self.N, other.N)
        return ChebCoeffsU(_resize(self.coeffs, n + 1) + _resize(other.coeffs, n + 1))

    def __sub__(self, other: "ChebCoeffsU") -> "ChebCoeffsU":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "ChebCoeffsU":
        return ChebCoeffsU(scalar * self.coeffs)


@dataclass(frozen=True)
class FourierEven:
    """Cosine coefficients: ``f(theta) = sum_n cos_coeffs[n] cos(n theta)``."""

    cos_coeffs: np.ndarray

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        n = np.arange(len(self.cos_coeffs))
        return np.cos(np.multiply.outer(theta, n)) @ self.cos_coeffs

    def norm(self) -> float:
        """Norm in L^2_per with the normalized measure d theta / 2 pi."""
        c = np.abs(self.cos_coeffs) ** 2
        return float(np.sqrt(c[0] + 0.5 * c[1:].sum()))


@dataclass(frozen=True)
class FourierOdd:
    """Sine coefficients: ``f(theta) = sum_n sin_coeffs[n] sin((n+1) theta)``."""

    sin_coeffs: np.ndarray

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        n = np.arange(1, len(self.sin_coeffs) + 1)
        return np.sin(np.multiply.outer(theta, n)) @ self.sin_coeffs

    def norm(self) -> float:
        return float(np.sqrt(0.5 * (np.abs(self.sin_coeffs) ** 2).sum()))


ChebCoeffs = Union[ChebCoeffsT, ChebCoeffsU]


def _resize(c: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=complex)
    m = min(n, len(c))
    out[:m] = c[:m]
    return out


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------


def cheb_nodes(M: int) -> np.ndarray:
    """Cosine grid ``x_j = cos(pi j / M)``, ``j = 0..M`` (from +1 down to -1)."""
    if M < 1:
        raise ValueError("grid needs M >= 1")
    return np.cos(np.pi * np.arange(M + 1) / M)


def _dct1(values: np.ndarray) -> np.ndarray:
    # scipy's real transforms do not take complex input
    if np.iscomplexobj(values):
        return scipy.fft.dct(values.real, type=1) + 1j * scipy.fft.dct(values.imag, type=1)
    return scipy.fft.dct(values, type=1).astype(complex)


def _dst1(values: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(values):
        return scipy.fft.dst(values.real, type=1) + 1j * scipy.fft.dst(values.imag, type=1)
    return scipy.fft.dst(values, type=1).astype(complex)


def cheb_transform_T(samples, N: int | None = None) -> ChebCoeffsT:
    """First-kind coefficients from values on :func:`cheb_nodes`.

    ``samples`` has length ``M + 1``; the result is exact for polynomials of
    degree at most ``M`` and is returned up to degree ``N`` (default ``M``).
    """
    f = np.asarray(samples)
    if f.size == 0:
        raise ValueError("empty sample set")
    M = f.size - 1
    if M == 0:
        c = f.astype(complex)
    else:
        c = _dct1(f) / M
        c[0] /= 2
        c[-1] /= 2
    if N is not None:
        if N > M:
            raise ValueError(f"need M >= N (got M={M}, N={N})")
        c = c[: N + 1]
    return ChebCoeffsT(c)


def inverse_transform_T(u: ChebCoeffsT, M: int) -> np.ndarray:
    """Values of ``u`` on the ``M + 1`` point cosine grid."""
    if u.N > M:
        raise ValueError(f"grid too coarse for degree {u.N} (M={M})")
    c = _resize(u.coeffs, M + 1)
    if M == 0:
        return c
    c[1:-1] /= 2
    return _dct1(c)


def cheb_transform_U(samples, N: int | None = None) -> ChebCoeffsU:
    """Second-kind coefficients from values on :func:`cheb_nodes`.

    Only the interior nodes are used (``sin(theta)`` vanishes at the ends).
    Exact for polynomials of degree at most ``M - 2``.
    """
    f = np.asarray(samples)
    if f.size == 0:
        raise ValueError("empty sample set")
    M = f.size - 1
    if M < 2:
        raise ValueError("second-kind transform needs M >= 2")
    theta = np.pi * np.arange(1, M) / M
    g = np.sin(theta) * f[1:-1]
    c = _dst1(g) / M
    if N is not None:
        if N > M - 2:
            raise ValueError(f"need M >= N + 2 (got M={M}, N={N})")
        c = c[: N + 1]
    return ChebCoeffsU(c)


def inverse_transform_U(v: ChebCoeffsU, M: int) -> np.ndarray:
    """Values of ``v`` on the cosine grid, endpoints included."""
    if v.N > M - 2:
        raise ValueError(f"grid too coarse for degree {v.N} (M={M})")
    c = _resize(v.coeffs, M - 1) / 2
    g = _dst1(c)
    theta = np.pi * np.arange(1, M) / M
    out = np.empty(M + 1, dtype=complex)
    out[1:-1] = g / np.sin(theta)
    n = np.arange(v.N + 1)
    # U_n(1) = n + 1, U_n(-1) = (-1)^n (n + 1)
    out[0] = np.sum(v.coeffs * (n + 1))
    out[-1] = np.sum(v.coeffs * (n + 1) * (-1.0) ** n)
    return out


def eval_T(u: ChebCoeffsT, x) -> np.ndarray:
    """Pointwise evaluation by Clenshaw recurrence."""
    return np.polynomial.chebyshev.chebval(np.asarray(x, dtype=float), u.coeffs)


def eval_U(v: ChebCoeffsU, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    b1 = np.zeros_like(x, dtype=complex)
    b2 = np.zeros_like(x, dtype=complex)
    for c in v.coeffs[::-1]:
        b1, b2 = c + 2 * x * b1 - b2, b1
    return b1


# ---------------------------------------------------------------------------
# Norms, pairings, isometries
# ---------------------------------------------------------------------------


def weights_T(n: int) -> np.ndarray:
    """Diagonal of the T^0 Gram matrix: ``(1, 1/2, 1/2, ...)``."""
    w = np.full(n, 0.5)
    if n:
        w[0] = 1.0
    return w


def weights_U(n: int) -> np.ndarray:
    return np.full(n, 0.5)


def norm_Ts(u: ChebCoeffsT, s: float) -> float:
    """``sqrt(|u_0|^2 + 1/2 sum_{n>=1} (1+n^2)^s |u_n|^2)``."""
    n = np.arange(u.N + 1)
    a = np.abs(u.coeffs) ** 2 * (1.0 + n**2) ** s
    return float(np.sqrt(a[0] + 0.5 * a[1:].sum()))


def norm_Us(v: ChebCoeffsU, s: float) -> float:
    n = np.arange(v.N + 1)
    return float(np.sqrt(0.5 * np.sum((1.0 + n**2) ** s * np.abs(v.coeffs) ** 2)))


def pair_T(u: ChebCoeffsT, v: ChebCoeffsT) -> complex:
    """Bilinear pairing ``<u, v>_{1/omega} = (1/pi) int u v / omega``."""
    n = max(u.N, v.N) + 1
    return complex(np.sum(weights_T(n) * _resize(u.coeffs, n) * _resize(v.coeffs, n)))


def pair_U(u: ChebCoeffsU, v: ChebCoeffsU) -> complex:
    """Bilinear pairing ``<u, v>_omega = (1/pi) int u v omega``."""
    n = max(u.N, v.N) + 1
    return complex(0.5 * np.sum(_resize(u.coeffs, n) * _resize(v.coeffs, n)))


def map_C(u: ChebCoeffsT) -> FourierEven:
    """``T_n -> cos(n theta)``."""
    return FourierEven(u.coeffs.copy())


def map_S(v: ChebCoeffsU) -> FourierOdd:
    """``U_n -> sin((n+1) theta)``."""
    return FourierOdd(v.coeffs.copy())


# ---------------------------------------------------------------------------
# Matrices of the exact coefficient maps.  ``m`` is the number of output
# coefficients, ``n`` the number of input coefficients; entries that would
# fall outside the block are dropped (finite section of the infinite matrix).
# ---------------------------------------------------------------------------


def embed_I_matrix(m: int, n: int) -> np.ndarray:
    """T -> U identification: ``T_0 = U_0``, ``T_1 = U_1/2``, ``T_j = (U_j - U_{j-2})/2``."""
    A = np.zeros((m, n))
    for j in range(n):
        if j == 0:
            if m > 0:
                A[0, 0] = 1.0
        elif j == 1:
            if m > 1:
                A[1, 1] = 0.5
        else:
            if j < m:
                A[j, j] = 0.5
            A[j - 2, j] = -0.5 if j - 2 < m else 0.0
    return A


def embed_J_matrix(m: int, n: int) -> np.ndarray:
    """U -> T identification, from ``U_{2p} = 2 sum T_{2j} - 1`` and ``U_{2p+1} = 2 sum T_{2j+1}``."""
    A = np.zeros((m, n))
    for j in range(n):
        for i in range(j % 2, min(j, m - 1) + 1, 2):
            A[i, j] = 1.0 if i == 0 else 2.0
    return A


def diff_matrix(m: int, n: int) -> np.ndarray:
    """``d/dx : T -> U``, ``d/dx T_j = j U_{j-1}``."""
    A = np.zeros((m, n))
    for j in range(1, n):
        if j - 1 < m:
            A[j - 1, j] = j
    return A


def wdw_matrix(m: int, n: int) -> np.ndarray:
    """``omega d/dx omega : U -> T``, ``U_j -> -(j+1) T_{j+1}``."""
    A = np.zeros((m, n))
    for j in range(n):
        if j + 1 < m:
            A[j + 1, j] = -(j + 1)
    return A


def mul_x_T_matrix(m: int, n: int) -> np.ndarray:
    A = np.zeros((m, n))
    for j in range(n):
        if j == 0:
            if m > 1:
                A[1, 0] = 1.0
            continue
        if j + 1 < m:
            A[j + 1, j] = 0.5
        if j - 1 < m:
            A[j - 1, j] = 0.5
    return A


def mul_x_U_matrix(m: int, n: int) -> np.ndarray:
    """``x U_j = (U_{j+1} + U_{j-1}) / 2`` with ``U_{-1} = 0``."""
    A = np.zeros((m, n))
    for j in range(n):
        if j + 1 < m:
            A[j + 1, j] = 0.5
        if 1 <= j and j - 1 < m:
            A[j - 1, j] = 0.5
    return A


def omega2_T_matrix(m: int, n: int) -> np.ndarray:
    """Multiplication by ``omega^2 = 1 - x^2`` in the first-kind basis."""
    A = np.zeros((m, n))
    for j in range(n):
        # x^2 T_j = (T_{j+2} + 2 T_j + T_{|j-2|}) / 4, with x^2 T_0 = (T_0 + T_2)/2
        if j == 0:
            terms = {0: 0.5, 2: 0.5}
        elif j == 1:
            terms = {1: 0.75, 3: 0.25}
        else:
            terms = {j - 2: 0.25, j: 0.5, j + 2: 0.25}
        for i, c in terms.items():
            if i < m:
                A[i, j] -= c
        if j < m:
            A[j, j] += 1.0
    return A


def omega2_U_to_T_matrix(m: int, n: int) -> np.ndarray:
    """``omega^2 U_j = (T_j - T_{j+2}) / 2``."""
    A = np.zeros((m, n))
    for j in range(n):
        if j < m:
            A[j, j] = 0.5
        if j + 2 < m:
            A[j + 2, j] = -0.5
    return A


def omega2_U_matrix(m: int, n: int) -> np.ndarray:
    """Multiplication by ``omega^2`` within the second-kind basis.

    ``x^2 U_j = (U_{j+2} + 2 U_j + U_{j-2}) / 4`` needs ``U_{-1} = 0`` and
    ``U_{-2} = -U_0``, so ``x^2 U_0 = (U_0 + U_2) / 4``.
    """
    A = np.zeros((m, n))
    for j in range(n):
        if j == 0:
            terms = {0: 0.25, 2: 0.25}
        elif j == 1:
            terms = {1: 0.5, 3: 0.25}
        else:
            terms = {j - 2: 0.25, j: 0.5, j + 2: 0.25}
        for i, c in terms.items():
            if i < m:
                A[i, j] -= c
        if j < m:
            A[j, j] += 1.0
    return A


# ---------------------------------------------------------------------------
# Coefficient-object versions.  Output degrees are chosen so that nothing is
# truncated.
# ---------------------------------------------------------------------------


def embed_I(u: ChebCoeffsT) -> ChebCoeffsU:
    n = u.N + 1
    return ChebCoeffsU(embed_I_matrix(n, n) @ u.coeffs)


def embed_J(v: ChebCoeffsU) -> ChebCoeffsT:
    n = v.N + 1
    return ChebCoeffsT(embed_J_matrix(n, n) @ v.coeffs)


def diff_T_to_U(u: ChebCoeffsT) -> ChebCoeffsU:
    n = u.N + 1
    return ChebCoeffsU(diff_matrix(max(n - 1, 1), n) @ u.coeffs)


def wdw_U_to_T(v: ChebCoeffsU) -> ChebCoeffsT:
    n = v.N + 1
    return ChebCoeffsT(wdw_matrix(n + 1, n) @ v.coeffs)


def mul_x_T(u: ChebCoeffsT) -> ChebCoeffsT:
    n = u.N + 1
    return ChebCoeffsT(mul_x_T_matrix(n + 1, n) @ u.coeffs)


def mul_x_U(v: ChebCoeffsU) -> ChebCoeffsU:
    n = v.N + 1
    return ChebCoeffsU(mul_x_U_matrix(n + 1, n) @ v.coeffs)


def mul_omega2_T_to_T(u: ChebCoeffsT) -> ChebCoeffsT:
    n = u.N + 1
    return ChebCoeffsT(omega2_T_matrix(n + 2, n) @ u.coeffs)


def mul_omega2_U_to_T(v: ChebCoeffsU) -> ChebCoeffsT:
    n = v.N + 1
    return ChebCoeffsT(omega2_U_to_T_matrix(n + 2, n) @ v.coeffs)


def mul_omega2_U_to_U(v: ChebCoeffsU) -> ChebCoeffsU:
    n = v.N + 1
    return ChebCoeffsU(omega2_U_matrix(n + 2, n) @ v.coeffs)


def mul_smooth(
    u: ChebCoeffs,
    f: Callable[[np.ndarray], np.ndarray] | np.ndarray,
    oversample: int = 2,
    degree: int | None = None,
) -> ChebCoeffs:
    """Multiply by a smooth function through the cosine grid.

    Parameters
    ----------
    u : ChebCoeffsT or ChebCoeffsU
        Input coefficients; the output has the same type.
    f : callable or array
        Either ``f(x)`` or its samples on ``cheb_nodes(M)``.  When samples are
        given, ``M`` is read off their length.
    oversample : int
        Grid size is ``M = oversample * max(N, 8)`` when ``f`` is callable.
    degree : int, optional
        Output truncation degree, default ``M // oversample + N``... capped
        by what the grid resolves.

    Warns
    -----
    AliasingWarning
        If the product still has non-negligible coefficients near the top of
        the grid, i.e. it is not resolved.
    """
    if oversample < 2:
        raise ValueError("oversampling factor must be at least 2")
    is_T = isinstance(u, ChebCoeffsT)
    if callable(f):
        M = oversample * max(u.N + 2, 8)
        fx = np.asarray(f(cheb_nodes(M)), dtype=complex)
        fx = np.broadcast_to(fx, (M + 1,))
    else:
        fx = np.asarray(f, dtype=complex)
        M = fx.size - 1
        if M < oversample * max(u.N, 1):
            raise ValueError("samples of f must be oversampled at least 2x w.r.t. u")
    top = M if is_T else M - 2
    if degree is None:
        degree = min(top, 2 * u.N + 2)
    degree = min(degree, top)
    if is_T:
        prod = inverse_transform_T(u, M) * fx
        c = cheb_transform_T(prod).coeffs
    else:
        prod = inverse_transform_U(u, M) * fx
        c = cheb_transform_U(prod).coeffs
    tail = c[(3 * len(c)) // 4 :]
    if np.max(np.abs(tail), initial=0.0) > 1e-12 * max(np.max(np.abs(c)), 1e-300):
        warnings.warn(
            "product is not resolved on the grid; coefficients are aliased",
            AliasingWarning,
            stacklevel=2,
        )
    return (ChebCoeffsT if is_T else ChebCoeffsU)(c[: degree + 1])
