#!/usr/bin/env python
"""Compare the closed formula with the path-sum oracle over whole quotients W^J.

    python scripts/sweep_verify.py             # default desk-scale sweep plus E6
    python scripts/sweep_verify.py --with-e7   # also E7, k = 7
"""

import argparse
import time

from qkchevalley.chevalley import closed_formula, oracle_expansion, setup

DEFAULT = (
    [("A", n, k) for n in range(1, 6) for k in range(1, n + 1)]
    + [("B", 3, 3), ("B", 4, 4)]
    + [("D", 4, k) for k in (1, 3, 4)]
    + [("D", 5, k) for k in (1, 4, 5)]
    + [("E", 6, 1), ("E", 6, 6)]
)


def sweep(cases, seed):
    total = bad = 0
    for f, n, k in cases:
        t0 = time.perf_counter()
        s = setup(f, n, k, seed)
        xs = s.group.enumerate_WJ(s.J)
        miss = [x for x in xs if closed_formula(s, x).terms != oracle_expansion(s, x).terms]
        total += len(xs)
        bad += len(miss)
        dt = time.perf_counter() - t0
        print(f"{f}{n} k={k}: {len(xs):4d} cosets, {len(miss)} mismatches, {dt:6.2f}s")
        for x in miss:
            print(f"    mismatch at x = {x.word_str() or 'e'}")
    return total, bad


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0, help="reflection order seed")
    ap.add_argument("--with-e7", action="store_true")
    args = ap.parse_args()
    cases = DEFAULT + ([("E", 7, 7)] if args.with_e7 else [])
    t0 = time.perf_counter()
    total, bad = sweep(cases, args.seed)
    print(f"total: {total} cosets, {bad} mismatches, {time.perf_counter() - t0:.2f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
