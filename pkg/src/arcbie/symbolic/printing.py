"""Human-readable and JSON renderings of polynomials and symbols."""

from __future__ import annotations

import json

from .ring import TrigPoly

__all__ = ["format_poly", "format_symbol", "symbol_to_json", "symbol_terms"]

_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def _atom_str(name: str, ascii: bool) -> str:
    if name == "I":
        return "i"
    if name.startswith("kappa"):
        i = int(name[5:])
        if ascii:
            return "kappa" if i == 0 else f"kappa{i}"
        return "κ" + "′" * i if i <= 3 else f"κ⁽{str(i).translate(_SUP)}⁾"
    return name


def _mono_str(mono, ascii: bool) -> str:
    parts = []
    for a, e in mono:
        s = _atom_str(a, ascii)
        if e != 1:
            s += f"^{e}" if ascii else str(e).translate(_SUP)
        parts.append(s)
    return ("*" if ascii else "·").join(parts)


def format_poly(p: TrigPoly, ascii: bool = False) -> str:
    """Sum of monomials, e.g. ``3/16·i·k²·L²·s·c``."""
    if p.is_zero():
        return "0"
    out = []
    for mono, c in sorted(p.terms.items(), key=lambda t: (len(t[0]), t[0])):
        body = _mono_str(mono, ascii)
        mag = abs(c)
        if body:
            if mag == 1:
                txt = body
            else:
                txt = f"{mag}{'*' if ascii else '·'}{body}"
        else:
            txt = str(mag)
        sign = "-" if c < 0 else "+"
        out.append((sign, txt))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, txt in out[1:]:
        s += f" {sign} {txt}"
    return s


def format_symbol(sym, ascii: bool = False) -> str:
    """Expansion in decreasing powers of ``xi`` plus the remainder class."""
    xi = "xi" if ascii else "ξ"
    parts = []
    for p in sym.powers():
        c = format_poly(sym.terms[p], ascii)
        if p == 0:
            parts.append(f"({c})")
        else:
            pw = f"^{p}" if ascii else str(p).translate(_SUP)
            parts.append(f"({c}){xi}{pw if p != 1 else ''}")
    s = " + ".join(parts) if parts else "0"
    if sym.lo is not None:
        rem = sym.lo - 1
        cls = f"O({xi}^{rem})" if ascii else f"O({xi}{str(rem).translate(_SUP)})"
        s += f" + {cls}"
    return s


def symbol_terms(sym) -> list[dict]:
    """``[{order, coefficient}]`` in decreasing order, coefficients as ASCII strings."""
    return [{"order": p, "coefficient": format_poly(sym.terms[p], ascii=True)} for p in sym.powers()]


def symbol_to_json(sym, **extra) -> str:
    payload = dict(extra)
    payload["terms"] = symbol_terms(sym)
    payload["remainder_order"] = None if sym.lo is None else sym.lo - 1
    return json.dumps(payload, indent=2, sort_keys=True)
