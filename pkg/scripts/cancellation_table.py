#!/usr/bin/env python
"""Per-coset counts behind the no-cancellation statement.

For x above floor(s_theta) each coset carries at most one appended quantum
path; below it, counts are never 1 and multi-path cosets sum to zero.
"""

import argparse

from qkchevalley.chevalley import cancellation_report, setup


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", dest="family", default="B")
    ap.add_argument("--rank", type=int, default=3)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--quiet", action="store_true", help="only print the summary line")
    args = ap.parse_args()

    s = setup(args.family.upper(), args.rank, args.k)
    xs = s.group.enumerate_WJ(s.J)
    bad = 0
    for x in xs:
        rep = cancellation_report(s, x)
        bad += not rep.ok
        if not args.quiet:
            print(rep.to_text())
    print(f"{s.rs.type} k={args.k}: {len(xs)} cosets, {bad} with violations")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
