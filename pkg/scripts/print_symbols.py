"""Print the symbol expansions and the comparison with the published coefficients.

Example::

    python3 scripts/print_symbols.py --J 6 --ascii
"""

import argparse

from arcbie.symbolic import format_symbol, sigma_N, sigma_S, sigma_V, sym_N1, sym_N2
from arcbie.symbolic.theorems import compare_published, verify_theorems


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--J", type=int, default=6)
    p.add_argument("--ascii", action="store_true", help="ASCII rendering of the expansions")
    args = p.parse_args()

    J = args.J
    for name, sym in (
        ("S", sigma_S(J)),
        ("V", sigma_V(J)),
        ("N1", sym_N1(sigma_S(J))),
        ("N2", sym_N2(sigma_V(J))),
        ("N", sigma_N(J)),
    ):
        print(f"sigma_{name} = {format_symbol(sym, ascii=args.ascii)}\n")

    print("coefficient comparison")
    for c in compare_published(J):
        tag = "match" if c.match else ("REPORT" if not c.asserted else "MISMATCH")
        print(f"  {c.symbol:3s} xi^{c.order:<3d} {tag}")
        if not c.match:
            print(f"      computed:  {c.computed}\n      published: {c.published}")

    print("\nremainder orders")
    rep = verify_theorems(J)
    for chk in rep["checks"] + rep["optimality"]:
        print(f"  {chk.name:20s} leading xi^{chk.leading_order}  (claimed <= {chk.claimed_order})  {chk.leading_term}")


if __name__ == "__main__":
    main()
