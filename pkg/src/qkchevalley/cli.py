"""Command line entry point: ``qkchevalley --type A --rank 6 --k 3 --x "1 4 3 2 6 5 4 3"``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .chevalley import (
    NotInQuotient,
    cancellation_report,
    closed_formula,
    expansion_to_json,
    oracle_expansion,
    setup,
    to_qk_product_string,
)
from .rootsystem import LieType, RootSystem, RootSystemError
from .weyl import WordParseError

MODES = ("expand", "verify", "cancel-report", "appendix-demo")
WORKED_EXAMPLE = ("A", 6, 3, "1 4 3 2 6 5 4 3")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class JobSpec:
    family: str
    rank: int
    k: int
    x: str = "all"
    mode: str = "expand"
    order_seed: int = 0
    fmt: str = "text"
    side: str = "QK"
    jobs: int = 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qkchevalley",
        description="Quantum K-theory Chevalley formula for minuscule fundamental weights.",
    )
    p.add_argument("--type", dest="family", type=str.upper, help="Lie type family: A, B, D or E")
    p.add_argument("--rank", type=int)
    p.add_argument("--k", type=int, help="minuscule node")
    p.add_argument("--x", default="all", help='reduced word such as "1 4 3 2", "e", or "all"')
    p.add_argument("--mode", choices=MODES, default="expand")
    p.add_argument("--order-seed", type=int, default=0, help="0 is the descent-greedy order")
    p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    p.add_argument("--side", choices=("QK", "Character"), default="QK")
    p.add_argument("--jobs", type=int, default=1)
    return p


def _resolve(spec: JobSpec):
    try:
        LieType(spec.family, spec.rank)
        rs = RootSystem.build(spec.family, spec.rank)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None
    if spec.k not in rs.minuscule_nodes():
        raise UsageError(
            f"node {spec.k} is not minuscule in {rs.type}; valid k: "
            + ", ".join(map(str, sorted(rs.minuscule_nodes())))
        )
    s = setup(spec.family, spec.rank, spec.k, spec.order_seed)
    g = s.group
    if spec.x.strip() == "all":
        xs = g.enumerate_WJ(s.J)
    else:
        try:
            x = g.parse_word(spec.x)
        except WordParseError as exc:
            raise UsageError(f"cannot parse --x {spec.x!r}: {exc}") from None
        try:
            s.require(x)
        except NotInQuotient as exc:
            raise UsageError(str(exc)) from None
        xs = [x]
    return s, xs


def _work(args):
    spec, word = args
    s, (x,) = _resolve(JobSpec(**{**spec.__dict__, "x": word or "e"}))
    if spec.mode == "expand":
        exp = closed_formula(s, x)
        if spec.fmt == "json":
            return True, expansion_to_json(exp, spec.side)
        return True, to_qk_product_string(exp, side=spec.side)
    if spec.mode == "verify":
        a, b = closed_formula(s, x), oracle_expansion(s, x)
        ok = a.terms == b.terms
        diff = {}
        if not ok:
            keys = set(a.as_words()) | set(b.as_words())
            aw, bw = a.as_words(), b.as_words()
            diff = {f"{v or 'e'}|m={m}": [aw.get((v, m), 0), bw.get((v, m), 0)] for v, m in keys
                    if aw.get((v, m), 0) != bw.get((v, m), 0)}
        if spec.fmt == "json":
            return ok, {"x": x.word_str() or "e", "ok": ok, "diff": diff}
        line = f"{'OK  ' if ok else 'FAIL'} x = {x.word_str() or 'e'}"
        if diff:
            line += "  (closed, oracle): " + json.dumps(diff, sort_keys=True)
        return ok, line
    rep = cancellation_report(s, x)
    if spec.fmt == "json":
        return rep.ok, {
            "x": x.word_str() or "e",
            "above_s_theta": rep.above,
            "set": rep.set_name,
            "rows": [{"v": v.word_str() or "e", "count": c, "signed_sum": sm} for v, c, sm in rep.rows],
            "violations": rep.violations,
        }
    return rep.ok, rep.to_text()


def _worked_example(spec: JobSpec, out) -> int:
    fam, n, k, word = WORKED_EXAMPLE
    s = setup(fam, n, k, spec.order_seed)
    g = s.group
    x = g.parse_word(word)
    exp = closed_formula(s, x)
    if spec.fmt == "json":
        d = expansion_to_json(exp, spec.side)
        d["s_theta_floor"] = s.s_theta.word_str()
        d["oracle_agrees"] = oracle_expansion(s, x).terms == exp.terms
        print(json.dumps(d), file=out)
        return EXIT_OK if d["oracle_agrees"] else EXIT_MISMATCH
    rs = g.rs
    print(f"Type {rs.type}, k = {k}, J = I minus {{{k}}}, |W^J| = {len(g.enumerate_WJ(s.J))}", file=out)
    print(f"x = {x.word_str()}   (length {x.length})", file=out)
    print(f"floor(s_theta) = {s.s_theta.word_str()};  x >= floor(s_theta): {s.above(x)}", file=out)
    top = [rs.format_root(rs.positive_roots[b]) for b in s.order.sequence[-3:]]
    print("top of the reflection order: ... < " + " < ".join(top), file=out)
    print("endpoints of label-increasing Bruhat paths from x:", file=out)
    for i, (v, c) in enumerate(exp.block(0), 1):
        print(f"  x{i} = {v.word_str():<28} sign {c:+d}", file=out)
    print(f"quantum partners floor(y s_a{k}):", file=out)
    for i, (v, c) in enumerate(exp.block(1), 1):
        print(f"  y{i} = {v.word_str():<28} sign {c:+d}  * Q{k}", file=out)
    print(to_qk_product_string(exp, side=spec.side), file=out)
    agree = oracle_expansion(s, x).terms == exp.terms
    print(f"oracle expansion agrees: {agree}", file=out)
    return EXIT_OK if agree else EXIT_MISMATCH


def run(spec: JobSpec, out=None) -> int:
    out = out or sys.stdout
    if spec.mode == "appendix-demo":
        return _worked_example(spec, out)
    s, xs = _resolve(spec)
    tasks = [(spec, x.word_str()) for x in xs]
    if spec.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            results = list(pool.map(_work, tasks))  # map keeps input order
    else:
        results = [_work(t) for t in tasks]
    ok = all(r[0] for r in results)
    if spec.fmt == "json":
        payload = [r[1] for r in results]
        print(json.dumps(payload[0] if spec.x.strip() != "all" else payload), file=out)
    else:
        for _, text in results:
            print(text, file=out)
        if spec.mode == "verify":
            bad = [t[1] or "e" for t, r in zip(tasks, results) if not r[0]]
            print(f"{len(results) - len(bad)}/{len(results)} cosets agree", file=out)
            if bad:
                print("mismatches: " + "; ".join(bad), file=out)
    if spec.mode in ("verify", "cancel-report") and not ok:
        return EXIT_MISMATCH
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.mode != "appendix-demo" and None in (args.family, args.rank, args.k):
        parser.print_usage(sys.stderr)
        print("qkchevalley: error: --type, --rank and --k are required", file=sys.stderr)
        return EXIT_USAGE
    spec = JobSpec(
        family=args.family or WORKED_EXAMPLE[0],
        rank=args.rank or WORKED_EXAMPLE[1],
        k=args.k or WORKED_EXAMPLE[2],
        x=args.x,
        mode=args.mode,
        order_seed=args.order_seed,
        fmt=args.fmt,
        side=args.side,
        jobs=max(1, args.jobs),
    )
    try:
        return run(spec)
    except UsageError as exc:
        print(f"qkchevalley: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
