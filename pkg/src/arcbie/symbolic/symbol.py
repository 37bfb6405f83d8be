"""Asymptotic symbols on the positive frequency branch.

A :class:`PSymbol` is a finite sum ``sum_p a_p(theta) xi^p`` together with a
validity bound ``lo``: all coefficients with ``p >= lo`` are exact and the
remainder is ``O(xi^(lo - 1))``.  ``lo = None`` marks an exact symbol.
Negative branch values follow from parity (see :func:`extract_pair`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping

from .ring import I, TrigPoly

__all__ = [
    "PSymbol",
    "InsufficientDepth",
    "sym_compose",
    "sym_sqrt",
    "sym_N1",
    "sym_N2",
    "sigma_D",
    "extract_pair",
    "pair_to_symbol",
]


class InsufficientDepth(ValueError):
    """Requested coefficients lie below the validity bound of the inputs."""


def _falling(p: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= p - i
    return out


@dataclass(frozen=True)
class PSymbol:
    """``sum_p terms[p] xi^p``, exact for powers ``>= lo``."""

    terms: Mapping[int, TrigPoly] = field(default_factory=dict)
    lo: int | None = None

    def __post_init__(self):
        clean = {}
        for p, c in self.terms.items():
            c = TrigPoly.coerce(c)
            if self.lo is not None and p < self.lo:
                continue
            if not c.is_zero():
                clean[int(p)] = c
        object.__setattr__(self, "terms", clean)

    # construction ---------------------------------------------------------
    @classmethod
    def xi(cls, power: int = 1, coeff=1) -> "PSymbol":
        return cls({power: TrigPoly.coerce(coeff)})

    @classmethod
    def mult(cls, m) -> "PSymbol":
        """Symbol of multiplication by a function of theta."""
        return cls({0: TrigPoly.coerce(m)})

    # queries ---------------------------------------------------------------
    def __getitem__(self, p: int) -> TrigPoly:
        if self.lo is not None and p < self.lo:
            raise InsufficientDepth(f"coefficient of xi^{p} is below the validity bound {self.lo}")
        return self.terms.get(p, TrigPoly())

    @property
    def lead(self) -> int | None:
        """Highest power with a nonzero coefficient (None for the zero symbol)."""
        return max(self.terms) if self.terms else None

    def leading_remainder(self) -> tuple[int | None, TrigPoly]:
        """Highest nonzero power and its coefficient; ``(None, 0)`` if zero to ``lo``."""
        if not self.terms:
            return None, TrigPoly()
        p = max(self.terms)
        return p, self.terms[p]

    def powers(self) -> list[int]:
        return sorted(self.terms, reverse=True)

    def truncate(self, lo: int) -> "PSymbol":
        new_lo = lo if self.lo is None else max(lo, self.lo)
        return PSymbol({p: c for p, c in self.terms.items() if p >= new_lo}, new_lo)

    # algebra -----------------------------------------------------------------
    def _combine_lo(self, other: "PSymbol") -> int | None:
        if self.lo is None:
            return other.lo
        if other.lo is None:
            return self.lo
        return max(self.lo, other.lo)

    def __add__(self, other) -> "PSymbol":
        other = _as_symbol(other)
        terms = {p: c.copy() for p, c in self.terms.items()}
        for p, c in other.terms.items():
            terms[p] = terms[p] + c if p in terms else c
        return PSymbol(terms, self._combine_lo(other))

    __radd__ = __add__

    def __neg__(self) -> "PSymbol":
        return PSymbol({p: -c for p, c in self.terms.items()}, self.lo)

    def __sub__(self, other) -> "PSymbol":
        return self + (-_as_symbol(other))

    def __rsub__(self, other) -> "PSymbol":
        return _as_symbol(other) - self

    def scale(self, factor) -> "PSymbol":
        """Multiply every coefficient by a theta-independent factor."""
        f = TrigPoly.coerce(factor)
        return PSymbol({p: c * f for p, c in self.terms.items()}, self.lo)

    def __mul__(self, factor) -> "PSymbol":
        return self.scale(factor)

    __rmul__ = __mul__

    def d_xi(self, j: int = 1) -> "PSymbol":
        terms = {}
        for p, c in self.terms.items():
            f = _falling(p, j)
            if f:
                terms[p - j] = c * f
        return PSymbol(terms, None if self.lo is None else self.lo - j)

    def d_theta(self, j: int = 1) -> "PSymbol":
        return PSymbol({p: c.diff_theta(j) for p, c in self.terms.items()}, self.lo)

    def equals(self, other: "PSymbol") -> bool:
        """Coefficientwise equality on the common validity range."""
        d = self - other
        return not d.terms

    def __repr__(self) -> str:
        from .printing import format_symbol

        return f"PSymbol({format_symbol(self, ascii=True)})"


def _as_symbol(v) -> PSymbol:
    if isinstance(v, PSymbol):
        return v
    return PSymbol.mult(v)


def sym_compose(a: PSymbol, b: PSymbol, J: int | None = None) -> PSymbol:
    """Symbol of the composition: ``sum_j (1/j!) d_xi^j a D_theta^j b``.

    Parameters
    ----------
    a, b : PSymbol
    J : int, optional
        Keep powers down to ``lead(a) + lead(b) - J``.  Without ``J`` the
        result keeps everything that the input validity bounds allow.

    Raises
    ------
    InsufficientDepth
        If ``J`` asks for powers below what the inputs determine, or both
        inputs are exact with negative powers and no ``J`` is given.
    """
    if not a.terms or not b.terms:
        return PSymbol({}, a._combine_lo(b))
    la, lb = a.lead, b.lead
    natural = None
    if a.lo is not None:
        natural = lb + a.lo
    if b.lo is not None:
        cand = la + b.lo
        natural = cand if natural is None else max(natural, cand)
    if J is not None:
        target = la + lb - J
        if natural is not None and target < natural:
            raise InsufficientDepth(
                f"composition valid only down to xi^{natural}, requested xi^{target}"
            )
        lo = target
    else:
        lo = natural
    exact = lo is None
    if exact:
        if min(a.terms) < 0:
            raise InsufficientDepth("exact symbols with negative powers need a depth J")
        # the sum terminates at j = lead(a); nothing lands below min(b)
        lo = min(b.terms) - 1
    terms: dict[int, TrigPoly] = {}
    j = 0
    db = b
    minus_i = TrigPoly.const(1)
    while la + lb - j >= lo:
        da = a.d_xi(j)
        if da.terms:
            w = Fraction(1, factorial(j))
            for p, ca in da.terms.items():
                for q, cb in db.terms.items():
                    if p + q < lo:
                        continue
                    prod = ca * cb * minus_i
                    if prod.is_zero():
                        continue
                    acc = terms.setdefault(p + q, TrigPoly())
                    acc.iadd(prod, w)
        elif min(a.terms) >= 0 and j > la:
            break
        j += 1
        db = db.d_theta(1)
        minus_i = minus_i * (-I)
    return PSymbol(terms, None if exact else lo)


def sym_sqrt(a: PSymbol, J: int = 6) -> PSymbol:
    """Square root ``tau`` with coefficients exact down to ``xi^(2 - J)``.

    The leading coefficient of ``a`` must be a positive rational square
    times ``xi^2``.  The terms are solved order by order from
    ``2 t_1 tau_p = [a - tau # tau]_{p+1}``.
    """
    if a.lead != 2:
        raise ValueError("square root implemented for second-order symbols")
    c2 = a.terms[2]
    if not c2.is_constant():
        raise ValueError("leading coefficient must be a rational constant")
    v = c2.constant_value()
    if v <= 0:
        raise ValueError("vanishing or negative leading coefficient")
    num, den = v.numerator, v.denominator
    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
    if rn is None or rd is None:
        raise ValueError("leading coefficient is not a rational square")
    t1 = Fraction(rn, rd)
    floor = 2 - J
    if a.lo is not None and a.lo > floor:
        raise InsufficientDepth("input symbol is not known deeply enough")
    tau = PSymbol({1: TrigPoly.const(t1)})
    for p in range(0, floor - 1, -1):
        # powers 2..p+1 of tau#tau are now fixed
        res = a.truncate(p + 1) - sym_compose(tau, tau, J=2 - (p + 1))
        coeff = res.terms.get(p + 1, TrigPoly())
        if not coeff.is_zero():
            tau = tau + PSymbol({p: coeff / (2 * t1)})
    return PSymbol(tau.terms, floor)


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def sigma_D(correction: bool = True) -> PSymbol:
    """``xi^2 - (k^2 L^2 / 4) sin^2``, the torus symbol of ``D1`` and ``D2``."""
    from .ring import K, LEN, S

    terms = {2: TrigPoly.const(1)}
    if correction:
        terms[0] = -(K * K * LEN * LEN * S * S) / 4
    return PSymbol(terms)


def sym_N1(sigma_S: PSymbol, J: int | None = None) -> PSymbol:
    """``-d_theta S d_theta``: ``-(i xi) # sigma_S # (i xi)``."""
    ixi = PSymbol({1: I})
    left = sym_compose(ixi, sigma_S, None if J is None else J)
    return -sym_compose(left, ixi, None if J is None else J)


def sym_N2(sigma_V: PSymbol, J: int | None = None) -> PSymbol:
    """``sin V sin``: ``s # sigma_V # s``."""
    from .ring import S

    s = PSymbol.mult(S)
    return sym_compose(sym_compose(s, sigma_V, J), s, J)


def extract_pair(a: PSymbol) -> dict[int, tuple[TrigPoly, TrigPoly]]:
    """Pair of symbols ``(a1, a2)`` per power of ``n``.

    Each coefficient is written ``P0 + s P1`` (``s``-free ``P0``, ``P1``);
    then ``a1 = P0`` and ``a2 = -i P1``, so that the operator acts as
    ``T_n -> a1 T_n - omega^2 a2 U_{n-1}``.  ``c`` is read as ``x``.

    Raises
    ------
    ValueError
        If ``a1`` or ``a2`` is not real (the parity split fails).
    """
    out = {}
    for p, c in a.terms.items():
        p0, p1 = c.split_s()
        a2 = p1 * (-I)
        for part in (p0, a2):
            _, im = part.split_I()
            if not im.is_zero():
                raise ValueError(f"coefficient of xi^{p} does not split into a real pair")
        out[p] = (p0, a2)
    return out


def pair_to_symbol(pair: Mapping[int, tuple[TrigPoly, TrigPoly]], lo: int | None = None) -> PSymbol:
    """Inverse of :func:`extract_pair` on the positive branch."""
    from .ring import S

    return PSymbol({p: a1 + S * I * a2 for p, (a1, a2) in pair.items()}, lo)
