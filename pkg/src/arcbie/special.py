"""Bessel/Hankel kernels and the smooth remainder of the Hankel log split.

The Helmholtz Green function splits as

    (i/4) H0(z) = -(1/2pi) ln(z) J0(z) + F1(z^2),

with ``F1`` entire in ``w = z^2``.  ``F1`` is summed from its own power series
near the origin, where the direct formula cancels catastrophically, and from
the direct formula further out.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.special as sp

__all__ = [
    "bessel_J0",
    "bessel_Y0",
    "hankel_H0",
    "F1",
    "F1_ZERO",
    "green_G",
]

EULER_GAMMA = 0.57721566490153286061
F1_ZERO = 0.25j + (math.log(2.0) - EULER_GAMMA) / (2 * math.pi)

# |w| = z^2 at which the series hands over to the direct formula
_SERIES_LIMIT = 16.0
_SERIES_TERMS = 40


def bessel_J0(z):
    """Bessel function of the first kind, order zero, for real ``z >= 0``."""
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("J0 is evaluated on nonnegative arguments only")
    return sp.j0(z)


def bessel_Y0(z):
    """Bessel function of the second kind, order zero, for ``z > 0``."""
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise ValueError("Y0 is singular at z = 0 and undefined for z < 0")
    return sp.y0(z)


def hankel_H0(z):
    """Hankel function ``H0^(1)(z) = J0(z) + i Y0(z)`` for ``z > 0``."""
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise ValueError("H0 is singular at z = 0")
    return sp.hankel1(0, z)


def _series_coeffs(nterms: int) -> np.ndarray:
    """Taylor coefficients of ``F1`` in powers of ``w/4``."""
    c = np.empty(nterms, dtype=complex)
    base = 0.25j + (math.log(2.0) - EULER_GAMMA) / (2 * math.pi)
    harmonic = 0.0
    fact2 = 1.0
    for m in range(nterms):
        if m:
            harmonic += 1.0 / m
            fact2 *= m * m
        sign = (-1.0) ** m
        # J0 part times the constant, plus the digamma part of Y0
        c[m] = sign * base / fact2 + sign * harmonic / (2 * math.pi * fact2)
    return c


_COEFFS = _series_coeffs(_SERIES_TERMS)


def F1(w):
    """Smooth remainder ``F1(w)`` with ``w = z^2``.

    Parameters
    ----------
    w : array_like
        Nonnegative real or complex values with ``|w| <= 2500``.

    Returns
    -------
    ndarray of complex
    """
    w = np.asarray(w)
    scalar = w.ndim == 0
    w = np.atleast_1d(w).astype(complex)
    out = np.empty(w.shape, dtype=complex)
    small = np.abs(w) <= _SERIES_LIMIT
    if np.any(small):
        t = w[small] / 4.0
        acc = np.zeros(t.shape, dtype=complex)
        for c in _COEFFS[::-1]:
            acc = acc * t + c
        out[small] = acc
    big = ~small
    if np.any(big):
        if np.any(np.abs(w[big].imag) > 0) or np.any(w[big].real < 0):
            raise ValueError("direct formula implemented for nonnegative real w only")
        z = np.sqrt(w[big].real)
        out[big] = 0.25j * sp.hankel1(0, z) + np.log(z) * sp.j0(z) / (2 * math.pi)
    return out[0] if scalar else out


def green_G(k: float, z):
    """Free-space Green function of ``-Delta - k^2`` in the plane.

    ``k = 0`` gives ``-ln(z) / 2pi``; ``k > 0`` gives ``(i/4) H0(kz)``.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise ValueError("Green function is singular at z = 0")
    if k < 0:
        raise ValueError("wavenumber must be nonnegative")
    if k == 0:
        return -np.log(z) / (2 * math.pi)
    return 0.25j * sp.hankel1(0, k * z)
