"""Polynomials with rational coefficients in trigonometric and geometric atoms.

Atoms
-----
``I``
    Imaginary unit, reduced by ``I^2 = -1``.
``s``, ``c``
    ``sin(theta)`` and ``cos(theta)``, reduced by ``s^2 = 1 - c^2`` so that
    every element has ``s``-degree at most one.  This normal form makes
    equality a coefficient comparison.
``k``, ``L``
    Wavenumber and arc length (constants).
``kappa0``, ``kappa1``, ...
    ``(d/dx)^i kappa`` evaluated at ``x = cos(theta)``; their theta-derivative
    carries the chain factor ``-sin(theta)``.
``K...``
    Unknown placeholders; differentiation appends a prime.

Two derivations are provided: ``diff_theta`` (d/dtheta) and ``diff_x``
(d/dx acting on curvature atoms only, used for Frenet recursions).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Union

__all__ = ["TrigPoly", "Monomial", "Number", "atom", "const", "I", "S", "Cc", "K", "LEN", "kappa"]

Number = Union[int, Fraction]
Monomial = tuple  # sorted tuple of (atom, exponent)


def _rank(name: str) -> tuple:
    if name == "I":
        return (0, 0, name)
    if name in ("k", "L"):
        return (1, 0, name)
    if name.startswith("kappa"):
        return (2, int(name[5:]), name)
    if name.startswith("K"):
        return (3, 0, name)
    if name == "s":
        return (4, 0, name)
    if name == "c":
        return (5, 0, name)
    return (6, 0, name)


def _mono(d: Mapping[str, int]) -> Monomial:
    return tuple(sorted(((a, e) for a, e in d.items() if e), key=lambda t: _rank(t[0])))


def _normalize(d: dict[str, int], coeff: Fraction) -> list[tuple[Monomial, Fraction]]:
    """Reduce ``I`` and ``s`` powers; returns the resulting terms."""
    d = dict(d)
    e = d.pop("I", 0)
    if e:
        if (e // 2) % 2:
            coeff = -coeff
        if e % 2:
            d["I"] = 1
    es = d.pop("s", 0)
    q, r = divmod(es, 2)
    if r:
        d["s"] = 1
    if q == 0:
        return [(_mono(d), coeff)]
    out = []
    ec = d.pop("c", 0)
    for i in range(q + 1):
        dd = dict(d)
        if ec + 2 * i:
            dd["c"] = ec + 2 * i
        out.append((_mono(dd), coeff * comb(q, i) * (-1) ** i))
    return out


class TrigPoly:
    """Sparse polynomial in the atoms, in normal form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                self._acc_raw(dict(m), Fraction(c))

    def _acc(self, m: Monomial, c: Fraction):
        v = self.terms.get(m, 0) + c
        if v:
            self.terms[m] = v
        else:
            self.terms.pop(m, None)

    def _acc_raw(self, d: dict, c: Fraction):
        for m, cc in _normalize(d, c):
            self._acc(m, cc)

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, v: Number) -> "TrigPoly":
        return cls({(): v}) if v else cls()

    @classmethod
    def atom(cls, name: str, exp: int = 1) -> "TrigPoly":
        return cls({((name, exp),): 1})

    @classmethod
    def coerce(cls, v) -> "TrigPoly":
        if isinstance(v, TrigPoly):
            return v
        if isinstance(v, (int, Fraction)):
            return cls.const(v)
        raise TypeError(f"cannot coerce {type(v).__name__} to TrigPoly")

    # arithmetic -----------------------------------------------------------
    def copy(self) -> "TrigPoly":
        out = TrigPoly()
        out.terms = dict(self.terms)
        return out

    def __add__(self, other) -> "TrigPoly":
        other = TrigPoly.coerce(other)
        out = self.copy()
        for m, c in other.terms.items():
            out._acc(m, c)
        return out

    __radd__ = __add__

    def iadd(self, other: "TrigPoly", scale: Number = 1) -> "TrigPoly":
        """In-place ``self += scale * other``; returns ``self``."""
        for m, c in other.terms.items():
            self._acc(m, c * scale)
        return self

    def __neg__(self) -> "TrigPoly":
        out = TrigPoly()
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other) -> "TrigPoly":
        return self + (-TrigPoly.coerce(other))

    def __rsub__(self, other) -> "TrigPoly":
        return TrigPoly.coerce(other) - self

    def __mul__(self, other) -> "TrigPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return TrigPoly()
            out = TrigPoly()
            out.terms = {m: c * other for m, c in self.terms.items()}
            return out
        other = TrigPoly.coerce(other)
        out = TrigPoly()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                d = dict(m1)
                for a, e in m2:
                    d[a] = d.get(a, 0) + e
                out._acc_raw(d, c1 * c2)
        return out

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "TrigPoly":
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, n: int) -> "TrigPoly":
        out = TrigPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        try:
            other = TrigPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a rational constant")
        return self.terms.get((), Fraction(0))

    def atoms(self) -> set[str]:
        return {a for m in self.terms for a, _ in m}

    # derivations ------------------------------------------------------------
    @staticmethod
    def _d_atom_theta(name: str) -> "TrigPoly":
        if name == "s":
            return TrigPoly.atom("c")
        if name == "c":
            return -TrigPoly.atom("s")
        if name.startswith("kappa"):
            i = int(name[5:])
            return -TrigPoly.atom("s") * TrigPoly.atom(f"kappa{i + 1}")
        if name.startswith("K"):
            return TrigPoly.atom(name + "'")
        return TrigPoly()

    @staticmethod
    def _d_atom_x(name: str) -> "TrigPoly":
        if name.startswith("kappa"):
            return TrigPoly.atom(f"kappa{int(name[5:]) + 1}")
        return TrigPoly()

    def _derive(self, rule) -> "TrigPoly":
        out = TrigPoly()
        for m, c in self.terms.items():
            for a, e in m:
                da = rule(a)
                if da.is_zero():
                    continue
                rest = dict(m)
                rest[a] = e - 1
                out.iadd(TrigPoly({_mono(rest): c * e}) * da)
        return out

    def diff_theta(self, times: int = 1) -> "TrigPoly":
        out = self
        for _ in range(times):
            out = out._derive(TrigPoly._d_atom_theta)
        return out

    def diff_x(self, times: int = 1) -> "TrigPoly":
        out = self
        for _ in range(times):
            out = out._derive(TrigPoly._d_atom_x)
        return out

    # structure ---------------------------------------------------------------
    def split_s(self) -> tuple["TrigPoly", "TrigPoly"]:
        """``(P0, P1)`` with ``self = P0 + s P1`` and neither containing ``s``."""
        p0, p1 = TrigPoly(), TrigPoly()
        for m, c in self.terms.items():
            d = dict(m)
            if d.pop("s", 0):
                p1._acc(_mono(d), c)
            else:
                p0._acc(m, c)
        return p0, p1

    def split_I(self) -> tuple["TrigPoly", "TrigPoly"]:
        """``(R, J)`` with ``self = R + I J``."""
        r, j = TrigPoly(), TrigPoly()
        for m, c in self.terms.items():
            d = dict(m)
            if d.pop("I", 0):
                j._acc(_mono(d), c)
            else:
                r._acc(m, c)
        return r, j

    def subs(self, mapping: Mapping[str, "TrigPoly"]) -> "TrigPoly":
        """Substitute atoms by polynomials (result renormalized)."""
        out = TrigPoly()
        for m, c in self.terms.items():
            term = TrigPoly.const(c)
            keep = {}
            for a, e in m:
                if a in mapping:
                    term = term * (TrigPoly.coerce(mapping[a]) ** e)
                else:
                    keep[a] = e
            out.iadd(term * TrigPoly({_mono(keep): 1}))
        return out

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        """Numeric value; ``I``, ``s``, ``c`` default from ``values['theta']``."""
        import math

        vals = dict(values)
        vals.setdefault("I", 1j)
        if "theta" in vals:
            vals.setdefault("s", math.sin(vals["theta"]))
            vals.setdefault("c", math.cos(vals["theta"]))
        total = 0j
        for m, c in self.terms.items():
            t = complex(c)
            for a, e in m:
                t *= vals[a] ** e
            total += t
        return total

    def max_degree(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    def __repr__(self) -> str:
        from .printing import format_poly

        return f"TrigPoly({format_poly(self, ascii=True)})"


def atom(name: str, exp: int = 1) -> TrigPoly:
    return TrigPoly.atom(name, exp)


def const(v: Number) -> TrigPoly:
    return TrigPoly.const(v)


def kappa(i: int = 0) -> TrigPoly:
    return TrigPoly.atom(f"kappa{i}")


I = TrigPoly.atom("I")
S = TrigPoly.atom("s")
Cc = TrigPoly.atom("c")
K = TrigPoly.atom("k")
LEN = TrigPoly.atom("L")


def sum_polys(items: Iterable[TrigPoly]) -> TrigPoly:
    out = TrigPoly()
    for p in items:
        out.iadd(p)
    return out
