"""Exact symbol calculus for periodic pseudo-differential operators."""

from .geometry import integral_symbol, kernel_taylor, sigma_S, sigma_V
from .printing import format_poly, format_symbol, symbol_to_json
from .ring import TrigPoly
from .symbol import (
    InsufficientDepth,
    PSymbol,
    extract_pair,
    pair_to_symbol,
    sigma_D,
    sym_compose,
    sym_N1,
    sym_N2,
    sym_sqrt,
)
from .theorems import compare_published, sigma_N, verify_theorems

__all__ = [
    "TrigPoly",
    "PSymbol",
    "InsufficientDepth",
    "sym_compose",
    "sym_sqrt",
    "sym_N1",
    "sym_N2",
    "sigma_D",
    "extract_pair",
    "pair_to_symbol",
    "integral_symbol",
    "kernel_taylor",
    "sigma_S",
    "sigma_V",
    "sigma_N",
    "verify_theorems",
    "compare_published",
    "format_poly",
    "format_symbol",
    "symbol_to_json",
]
