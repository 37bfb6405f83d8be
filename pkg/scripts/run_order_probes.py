"""Print parametrix order-probe slopes for a grid of curves and wavenumbers.

Example::

    python3 scripts/run_order_probes.py --curves segment arc --ks 1 5 --N 512
"""

import argparse
import math

from arcbie.assembly import assemble_all
from arcbie.curves import make_curve
from arcbie.experiments import commutator_suite, order_suite, two_term_residual


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--curves", nargs="+", default=["segment", "arc"])
    p.add_argument("--ks", nargs="+", type=float, default=[1.0, 5.0])
    p.add_argument("--N", type=int, default=512)
    p.add_argument("--opening", type=float, default=math.pi / 2, help="arc opening angle")
    args = p.parse_args()

    for name in args.curves:
        curve = make_curve(name, {"opening": args.opening} if name == "arc" else {})
        for k in args.ks:
            S = assemble_all(curve, k, args.N)["S"].entries
            rows = order_suite(curve, k, args.N)
            rows += two_term_residual(curve, k, args.N, S=S)
            rows += commutator_suite(curve, k, args.N, S=S)
            print(f"\n{name}  k={k:g}  N={args.N}")
            for r in rows:
                flag = "ok " if r.passed else "BAD"
                print(f"  {flag} {r.quantity:40s} {r.value: .4f}   [{r.threshold}]")


if __name__ == "__main__":
    main()
