#!/usr/bin/env python3
"""Tabulate exact history counts and transition probabilities of a process.

Example:

    python scripts/history_demo.py "X D + X" -n 3 --l-max 4 --oracle
"""

import argparse
import sys

from weylurn import (
    HistoryTable,
    count_by_operator,
    count_by_search,
    normal_order,
    parse,
    pretty,
    probabilities,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("expr", help="process expression, e.g. 'X D + 1/2 X'")
    parser.add_argument("-n", "--steps", type=int, default=2)
    parser.add_argument("--l-max", type=int, default=4, help="largest initial size")
    parser.add_argument("--oracle", action="store_true",
                        help="cross-check each row against the labelled-ball search")
    args = parser.parse_args()

    h = parse(args.expr)
    print(f"process       {pretty(h)}")
    print(f"normal form   {normal_order(h)}")
    print(f"steps         {args.steps}\n")

    rows = {l: count_by_operator(h, args.steps, l) for l in range(args.l_max + 1)}
    table = HistoryTable.from_rows(rows, n=args.steps)

    print(f"{'l':>3}  histories -> k                       probabilities")
    for l in range(args.l_max + 1):
        counts = rows[l]
        if args.oracle:
            found = count_by_search(h, args.steps, l)
            assert found == counts, f"oracle disagrees at l={l}: {found} vs {counts}"
        if not counts:
            print(f"{l:>3}  (no histories)")
            continue
        count_part = ", ".join(f"{k}: {c}" for k, c in sorted(counts.items()))
        row = probabilities(table, l)
        prob_part = ", ".join(f"{k}: {p}" for k, p in sorted(row.probs.items()))
        print(f"{l:>3}  {count_part:<35}  {prob_part}")
    if args.oracle:
        print("\nlabelled-ball search agrees on every row")
    return 0


if __name__ == "__main__":
    sys.exit(main())
