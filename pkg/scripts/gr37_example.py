#!/usr/bin/env python
"""Worked example in Gr(3, 7): type A6, k = 3, x = s1 s4 s3 s2 s6 s5 s4 s3.

Prints the Bruhat endpoints, their quantum partners, the full product and the
shifted Schubert-class form [O_x] * [O_{s3}] = [O_x] - e^{-w3} [O_x] * [O(-w3)].
"""

import argparse

from qkchevalley.chevalley import closed_formula, oracle_expansion, setup, to_qk_product_string


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", default="1 4 3 2 6 5 4 3")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    s = setup("A", 6, 3, args.seed)
    g, rs = s.group, s.rs
    x = g.parse_word(args.x)
    s.require(x)
    exp = closed_formula(s, x)
    print(f"floor(s_theta) = {s.s_theta.word_str()}, x above it: {s.above(x)}")
    print("reflection order, largest roots:", " < ".join(rs.format_root(r) for r in s.order.largest(4)))
    for i, (v, c) in enumerate(exp.block(0), 1):
        print(f"x{i} = {v.word_str():<24} {c:+d}")
    for i, (v, c) in enumerate(exp.block(1), 1):
        print(f"y{i} = {v.word_str():<24} {c:+d} Q3")
    product = to_qk_product_string(exp)
    print(product)
    shift = tuple(a - b for a, b in zip(exp.prefactor, rs.fundamental_weight(3)))
    xw = f"[O_{{{x.word_str()}}}]"
    bracket = product.split(" ( ", 1)[1]
    print(f"{xw} * [O_{{3}}] = {xw} - e^{{{rs.format_weight(shift)}}} ( {bracket}")
    ok = oracle_expansion(s, x).terms == exp.terms
    print("oracle agrees:", ok)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
