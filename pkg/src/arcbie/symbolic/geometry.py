"""Taylor data of the layer-potential kernels for a generic curve.

With constant speed ``v = L/2`` the Frenet frame gives
``r^(m)(x) = v (alpha_m tau + beta_m n)`` where ``(alpha_1, beta_1) = (1, 0)``
and

    (alpha, beta)' = (alpha' - v kappa beta, beta' + v kappa alpha),

``'`` being ``d/dx`` (curvature atoms ``kappa_i -> kappa_{i+1}``).  The same
recursion started from ``(0, 1)`` gives the derivatives of the normal.  These
produce ``|r(x) - r(x+h)|^2`` and ``n(x).n(x+h)`` as power series in ``h``;
substituting ``h = cos(theta + eps) - cos(theta)`` yields the kernel Taylor
data in the torus variable, from which the symbols follow.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .ring import LEN, K, TrigPoly, kappa, Cc, S
from .symbol import PSymbol

__all__ = [
    "Series",
    "frenet_coefficients",
    "dist2_series_h",
    "normal_dot_series_h",
    "h_of_eps",
    "kernel_taylor",
    "integral_symbol",
    "sigma_S",
    "sigma_V",
    "log_multiplier_symbol",
]


class Series:
    """Truncated power series with TrigPoly coefficients."""

    def __init__(self, coeffs, order: int):
        cs = [TrigPoly.coerce(c) for c in coeffs][: order + 1]
        cs += [TrigPoly() for _ in range(order + 1 - len(cs))]
        self.coeffs = cs
        self.order = order

    def __add__(self, other: "Series") -> "Series":
        return Series([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def scale(self, f) -> "Series":
        return Series([c * f for c in self.coeffs], self.order)

    def __mul__(self, other: "Series") -> "Series":
        out = [TrigPoly() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j].iadd(a * b)
        return Series(out, self.order)

    def compose(self, inner: "Series") -> "Series":
        """``self(inner(eps))`` for ``inner`` with zero constant term."""
        if not inner.coeffs[0].is_zero():
            raise ValueError("inner series must vanish at 0")
        out = Series([self.coeffs[0]], self.order)
        power = Series([1], self.order)
        for c in self.coeffs[1:]:
            power = power * inner
            if not c.is_zero():
                out = out + power.scale(c)
        return out


def frenet_coefficients(n: int, start=(1, 0)) -> list[tuple[TrigPoly, TrigPoly]]:
    """``(alpha_m, beta_m)`` for ``m = start index .. start index + n - 1``."""
    v = LEN / 2
    a, b = TrigPoly.coerce(start[0]), TrigPoly.coerce(start[1])
    out = [(a, b)]
    for _ in range(n - 1):
        ka = kappa(0)
        a, b = a.diff_x() - v * ka * b, b.diff_x() + v * ka * a
        out.append((a, b))
    return out


def dist2_series_h(order: int) -> Series:
    """``|r(x+h) - r(x)|^2`` to ``h^order``."""
    v = LEN / 2
    fr = frenet_coefficients(order)  # index m-1 holds r^(m)/v
    coeffs = [TrigPoly() for _ in range(order + 1)]
    for p in range(2, order + 1):
        acc = TrigPoly()
        for a in range(1, p):
            b = p - a
            (aa, ba), (ab, bb) = fr[a - 1], fr[b - 1]
            acc.iadd(aa * ab + ba * bb, Fraction(1, factorial(a) * factorial(b)))
        coeffs[p] = acc * v * v
    return Series(coeffs, order)


def normal_dot_series_h(order: int) -> Series:
    """``n(x) . n(x+h)`` to ``h^order``."""
    fr = frenet_coefficients(order + 1, start=(0, 1))
    return Series([fr[m][1] / factorial(m) for m in range(order + 1)], order)


def h_of_eps(order: int) -> Series:
    """``cos(theta + eps) - cos(theta)`` to ``eps^order``."""
    cyc = [Cc, -S, -Cc, S]
    return Series([TrigPoly()] + [cyc[m % 4] / factorial(m) for m in range(1, order + 1)], order)


def kernel_taylor(order: int, normals: bool = False, helmholtz: bool = True) -> list[TrigPoly]:
    """Coefficients of ``eps^j`` in ``a(theta, theta + eps)``.

    ``a = J0(k rho)`` (times ``n.n`` when ``normals``), with
    ``rho = |r(cos theta) - r(cos(theta + eps))|``.
    """
    h = h_of_eps(order)
    a = Series([1], order)
    if helmholtz:
        rho2 = dist2_series_h(order).compose(h)
        term = Series([1], order)
        q = -(K * K) / 4
        for m in range(1, order // 2 + 1):
            term = term * rho2
            a = a + term.scale(q**m / (factorial(m) ** 2))
    if normals:
        a = a * normal_dot_series_h(order).compose(h)
    return a.coeffs


def log_multiplier_symbol() -> PSymbol:
    """``1/(2 xi)``, the positive-branch symbol of the log convolution."""
    return PSymbol({-1: TrigPoly.const(Fraction(1, 2))})


def integral_symbol(h_hat: PSymbol, taylor: list[TrigPoly], J: int) -> PSymbol:
    """Symbol of ``u -> int h(theta - t) a(theta, t) u(t) dt``.

    ``sum_j (1/j!) d_xi^j h_hat . D_t^j a(theta, t)|_{t = theta}``, the
    derivative acting on the integration variable; with
    ``D_t^j a = (-i)^j j! [eps^j] a(theta, theta + eps)``.
    """
    if len(taylor) < J + 1:
        raise ValueError("Taylor data shorter than the requested depth")
    from .ring import I

    total = PSymbol({})
    mi = TrigPoly.const(1)
    for j in range(J + 1):
        dh = h_hat.d_xi(j)
        total = total + dh.scale(mi * taylor[j])
        mi = mi * (-I)
    lo = h_hat.lead - J
    return PSymbol(total.terms, lo)


def sigma_S(J: int = 6, helmholtz: bool = True) -> PSymbol:
    """Symbol of the pulled-back weighted single layer, exact to ``xi^(-1-J)``."""
    return integral_symbol(log_multiplier_symbol(), kernel_taylor(J, False, helmholtz), J)


def sigma_V(J: int = 6, helmholtz: bool = True) -> PSymbol:
    """Symbol of ``V_k`` (kernel with ``n(x).n(y)``), exact to ``xi^(-1-J)``."""
    return integral_symbol(log_multiplier_symbol(), kernel_taylor(J, True, helmholtz), J)
