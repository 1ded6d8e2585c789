#!/usr/bin/env python3
"""Sweep the driven-oscillator check over several drive strengths.

For each g the closed-form history series of XD + g(X + D) is expanded
and compared index-by-index against the series built from the power
recurrence.  Everything is exact, so any nonzero difference is a bug.
"""

import argparse
import sys
import time
from fractions import Fraction

from weylurn import Process, Word, driven_oscillator_closed_form, g_series


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--g-values",
        default="0,1,1/2,2,3/4",
        help="comma-separated exact rationals (default: %(default)s)",
    )
    parser.add_argument("-N", "--order", type=int, default=6, help="series order")
    parser.add_argument("--dx", type=int, default=8, help="x-degree bound")
    parser.add_argument("--dy", type=int, default=8, help="y-degree bound")
    args = parser.parse_args()

    failures = 0
    for text in args.g_values.split(","):
        g = Fraction(text.strip())
        h = Process({Word("XD"): 1, Word("X"): g, Word("D"): g})
        start = time.perf_counter()
        closed = driven_oscillator_closed_form(g, args.order, args.dx, args.dy)
        recurrence = g_series(h, args.order, args.dx, args.dy)
        mismatch = closed.first_mismatch(recurrence)
        elapsed = time.perf_counter() - start
        if mismatch is None:
            print(f"g = {str(g):>4}:  match on {len(closed.coeffs)} nonzero "
                  f"coefficients  ({elapsed:.2f}s)")
        else:
            failures += 1
            key, closed_c, rec_c = mismatch
            print(f"g = {str(g):>4}:  MISMATCH at (k, l, n) = {key}: "
                  f"closed form {closed_c} vs recurrence {rec_c}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
