#!/usr/bin/env python3
"""Time the symbolic closed forms a_n for a fully generic conformal factor.

Usage: python3 scripts/benchmark_symbolic.py [--max-n 2] [--via-frozen]
"""

import argparse
import time

from heatjets import render_closed_form, symbolic_heat_invariant


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=2)
    parser.add_argument("--via-frozen", action="store_true",
                        help="use the frozen-operator route instead")
    parser.add_argument("--show", action="store_true",
                        help="print the closed forms, not just timings")
    args = parser.parse_args()

    for n in range(1, args.max_n + 1):
        start = time.perf_counter()
        result = symbolic_heat_invariant(n, via_frozen=args.via_frozen)
        elapsed = time.perf_counter() - start
        form = result.form
        print(f"a_{n}: {len(form.poly.num)} terms over rho^{form.poly.den}, "
              f"jet order {result.truncation_order}, {elapsed:.3f}s")
        if args.show:
            print(f"  a_{n} = {render_closed_form(form)}")


if __name__ == "__main__":
    main()
