"""Constant-speed parametrizations of smooth open arcs.

A curve is a map ``r : [-1, 1] -> R^2`` with ``|r'(x)| = L/2``.  Built-in
curves have closed-form derivatives of every order.  General curves given by
an arbitrary regular parametrization are reparametrized by arclength and
stored as a Chebyshev interpolant, so their derivatives also come from one
series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import chebyshev as C

__all__ = [
    "Curve",
    "GeoTaylor",
    "make_segment",
    "make_arc",
    "make_perturbed",
    "make_curve",
    "from_parametrization",
    "curvature",
    "divided_diff",
    "geo_taylor",
    "DIVIDED_DIFF_SWITCH",
]

DIVIDED_DIFF_SWITCH = 1e-4

DerivFn = Callable[[np.ndarray, int], np.ndarray]


def _rot90(v: np.ndarray) -> np.ndarray:
    return np.stack([-v[..., 1], v[..., 0]], axis=-1)


@dataclass(frozen=True)
class Curve:
    """Constant-speed open arc.

    Attributes
    ----------
    id : str
        Name used in reports.
    L : float
        Total length.
    deriv : callable
        ``deriv(x, m)`` returns the ``m``-th derivative of ``r`` at ``x``,
        shape ``x.shape + (2,)``.
    params : dict
        Construction parameters, kept for reports.
    """

    id: str
    L: float
    deriv: DerivFn = field(repr=False)
    params: dict = field(default_factory=dict)

    def derivative(self, x, m: int = 0) -> np.ndarray:
        return self.deriv(np.asarray(x, dtype=float), m)

    def r(self, x) -> np.ndarray:
        return self.derivative(x, 0)

    def dr(self, x) -> np.ndarray:
        return self.derivative(x, 1)

    def d2r(self, x) -> np.ndarray:
        return self.derivative(x, 2)

    def d3r(self, x) -> np.ndarray:
        return self.derivative(x, 3)

    def d4r(self, x) -> np.ndarray:
        return self.derivative(x, 4)

    def tangent(self, x) -> np.ndarray:
        d = self.dr(x)
        return d / np.linalg.norm(d, axis=-1, keepdims=True)

    def normal(self, x) -> np.ndarray:
        """Unit normal, the tangent rotated by +90 degrees."""
        return _rot90(self.tangent(x))

    def kappa(self, x) -> np.ndarray:
        return curvature(self, x)


@dataclass(frozen=True)
class GeoTaylor:
    """Expansion ``|r(x) - r(y)|^2 = sum_p coeffs[p] (y - x)^p`` at a point.

    ``coeffs[0]`` and ``coeffs[1]`` are zero; ``coeffs[2] = L^2/4``.
    """

    x: float
    coeffs: np.ndarray

    def __call__(self, h):
        return np.polynomial.polynomial.polyval(np.asarray(h, dtype=float), self.coeffs)


# ---------------------------------------------------------------------------
# Built-in curves
# ---------------------------------------------------------------------------


def make_segment() -> Curve:
    """The reference segment ``r(x) = (x, 0)``, ``L = 2``."""

    def deriv(x, m):
        out = np.zeros(np.shape(x) + (2,))
        if m == 0:
            out[..., 0] = x
        elif m == 1:
            out[..., 0] = 1.0
        return out

    return Curve("segment", 2.0, deriv, {})


def make_arc(opening: float, radius: float = 1.0) -> Curve:
    """Circular arc of given opening angle and radius, centered on the y-axis.

    ``r(x) = radius * (sin(a x), -cos(a x))`` with ``a = opening / 2``, so
    the curvature is ``+1/radius`` with the +90 degree normal convention.
    """
    if not (0.0 < opening < 2 * math.pi):
        raise ValueError("arc opening must lie in (0, 2 pi)")
    if radius <= 0:
        raise ValueError("radius must be positive")
    a = opening / 2.0

    def deriv(x, m):
        # d^m/dx^m of (sin, -cos)(a x) is a^m (sin, -cos)(a x + m pi/2)
        ph = a * x + m * math.pi / 2
        out = np.empty(np.shape(x) + (2,))
        out[..., 0] = np.sin(ph)
        out[..., 1] = -np.cos(ph)
        return radius * a**m * out

    return Curve("arc", radius * opening, deriv, {"opening": opening, "radius": radius})


def from_parametrization(
    r0: Callable[[np.ndarray], np.ndarray],
    dr0: Callable[[np.ndarray], np.ndarray],
    name: str = "custom",
    degree: int | None = None,
    params: dict | None = None,
) -> Curve:
    """Reparametrize an arbitrary regular arc to constant speed.

    Arclength ``s(t) = int_{-1}^t |r0'|`` is the antiderivative of a
    Chebyshev interpolant of the speed (Clenshaw-Curtis quadrature).  The
    arclength parameter is inverted at Chebyshev points by Newton's method,
    and the composite ``r0(t(x))`` is interpolated by a degree ``degree``
    Chebyshev series.

    Parameters
    ----------
    r0, dr0 : callable
        The original parametrization on ``[-1, 1]`` and its derivative,
        vectorized, returning shape ``(..., 2)``.
    degree : int, optional
        Interpolation degree.  By default it is chosen adaptively: doubled
        from 32 until the trailing coefficients fall below ``1e-14`` of the
        largest (capped at 1024).  Overshooting the degree costs accuracy in
        the higher derivatives near the endpoints.
    """
    if degree is None:
        d = 32
        while True:
            curve = from_parametrization(r0, dr0, name, d, params)
            tail = max(np.max(np.abs(curve._coef[i][-4:])) for i in range(2))
            if tail < 1e-14 * np.max(np.abs(curve._coef)) or d >= 1024:
                return curve
            d *= 2

    def speed(t):
        return np.linalg.norm(dr0(np.asarray(t, dtype=float)), axis=-1)

    sc = C.chebinterpolate(speed, 4 * degree)
    if np.min(speed(np.linspace(-1, 1, 2049))) <= 0:
        raise ValueError("parametrization is not regular")
    arc = C.chebint(sc, lbnd=-1.0)
    L = float(C.chebval(1.0, arc))
    nodes = np.cos(np.pi * (np.arange(degree + 1) + 0.5) / (degree + 1))
    target = (nodes + 1.0) * L / 2.0
    ts = nodes.copy()
    for _ in range(100):
        step = (C.chebval(ts, arc) - target) / speed(ts)
        ts = np.clip(ts - step, -1.0, 1.0)
        if np.max(np.abs(step)) < 1e-15:
            break
    pts = np.asarray(r0(ts))
    coef = np.stack([C.chebfit(nodes, pts[:, d], degree) for d in range(2)], axis=0)
    tables = [coef]
    for _ in range(8):
        tables.append(np.stack([C.chebder(tables[-1][d]) for d in range(2)], axis=0))

    def deriv(x, m):
        if m >= len(tables):
            raise ValueError("derivative order too high for interpolated curve")
        c = tables[m]
        return np.stack([C.chebval(x, c[0]), C.chebval(x, c[1])], axis=-1)

    curve = Curve(name, L, deriv, dict(params or {}))
    object.__setattr__(curve, "_coef", coef)
    return curve


def make_perturbed(params: dict | None = None) -> Curve:
    """Sinusoidally perturbed segment ``(t, amplitude sin(pi frequency t))``.

    Parameters
    ----------
    params : dict
        ``amplitude`` (default 0.1) and ``frequency`` (default 1.0).
    """
    params = dict(params or {})
    a = float(params.get("amplitude", 0.1))
    f = float(params.get("frequency", 1.0))
    w = math.pi * f

    def r0(t):
        t = np.asarray(t, dtype=float)
        return np.stack([t, a * np.sin(w * t)], axis=-1)

    def dr0(t):
        t = np.asarray(t, dtype=float)
        return np.stack([np.ones_like(t), a * w * np.cos(w * t)], axis=-1)

    return from_parametrization(r0, dr0, name="perturbed", params={"amplitude": a, "frequency": f})


def make_curve(name: str, params: dict | None = None) -> Curve:
    """Build a curve from its config name."""
    params = dict(params or {})
    if name == "segment":
        return make_segment()
    if name == "arc":
        return make_arc(float(params.get("opening", math.pi / 2)), float(params.get("radius", 1.0)))
    if name == "perturbed":
        return make_perturbed(params)
    raise ValueError(f"unknown curve {name!r}")


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------


def curvature(c: Curve, x) -> np.ndarray:
    """Signed curvature ``det(r', r'') / |r'|^3``."""
    d1 = c.dr(x)
    d2 = c.d2r(x)
    det = d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]
    return det / np.linalg.norm(d1, axis=-1) ** 3


def divided_diff(c: Curve, x, y) -> np.ndarray:
    """Vector ``q`` with ``r(x) - r(y) = (x - y) q``, stable near the diagonal.

    Far from the diagonal this is the plain quotient.  For
    ``|x - y| < DIVIDED_DIFF_SWITCH`` the symmetric expansion about the
    midpoint ``m`` is used: ``q = r'(m) + (h^2/6) r'''(m) + O(h^4)`` with
    ``h = (x - y)/2``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    d = x - y
    near = np.abs(d) < DIVIDED_DIFF_SWITCH
    q = np.empty(x.shape + (2,))
    far = ~near
    if np.any(far):
        q[far] = (c.r(x[far]) - c.r(y[far])) / d[far][..., None]
    if np.any(near):
        m = 0.5 * (x[near] + y[near])
        h = 0.5 * d[near]
        q[near] = c.dr(m) + (h**2 / 6.0)[..., None] * c.d3r(m)
    return q


def geo_taylor(c: Curve, theta: float, order: int = 6) -> GeoTaylor:
    """Taylor coefficients of ``|r(x) - r(x + h)|^2`` in ``h`` at ``x = cos(theta)``.

    The coefficient of ``h^p`` is ``sum_{a+b=p, a,b>=1} r^(a).r^(b) / (a! b!)``.
    """
    if order > 6:
        raise ValueError("order must be at most 6")
    x = math.cos(theta)
    ders = [c.derivative(np.asarray(x), a) for a in range(order + 1)]
    coeffs = np.zeros(order + 1)
    for p in range(2, order + 1):
        acc = 0.0
        for a in range(1, p):
            b = p - a
            acc += float(np.dot(ders[a], ders[b])) / (math.factorial(a) * math.factorial(b))
        coeffs[p] = acc
    # exact by the constant-speed assumption
    coeffs[2] = c.L**2 / 4.0
    if order >= 3:
        coeffs[3] = 0.0
    return GeoTaylor(x, coeffs)
