"""
Quantum K-theory Chevalley formula for anti-dominant minuscule weights.

Two independent computations of the coefficients c^x_{v,m}:

* ``closed_formula`` reads them off label-increasing Bruhat paths and, when
  x >= floor(s_theta), adds one partner ``floor(y s_gammaQ)`` per endpoint;
* ``oracle_expansion`` sums signs over every label-increasing path in the
  quantum Bruhat graph and lets cancellation happen.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field

from .qbg import increasing_walk
from .reflection_order import ReflectionOrder, j_compatible
from .rootsystem import RootSystemError
from .weyl import ParabolicSubset, WeylElem, WeylGroup

__all__ = [
    "ChevalleySetup",
    "SchubertExpansion",
    "CancellationReport",
    "NotInQuotient",
    "setup",
    "gamma_Q",
    "classical_terms",
    "closed_formula",
    "oracle_expansion",
    "cancellation_report",
    "to_qk_product_string",
    "expansion_to_json",
    "coefficient_table",
]


class NotInQuotient(ValueError):
    pass


def gamma_Q(rs, k: int) -> tuple[int, ...]:
    """alpha_k in simply-laced types, alpha_{n-1} + 2 alpha_n in B_n."""
    if rs.type.family == "B":
        if k != rs.rank:
            raise RootSystemError(f"node {k} is not minuscule in {rs.type}")
        n = rs.rank
        return tuple(1 if i == n - 2 else 2 if i == n - 1 else 0 for i in range(n))
    return rs.simple_root(k)


@dataclass
class ChevalleySetup:
    group: WeylGroup
    k: int
    order: ReflectionOrder
    J: ParabolicSubset = field(init=False)
    outside: list[int] = field(init=False, repr=False)  # root indices, increasing
    gamma_index: int = field(init=False)
    s_theta: WeylElem = field(init=False)

    def __post_init__(self):
        g = self.group
        rs = g.rs
        rs.check_minuscule(self.k)
        self.J = g.parabolic(self.k)
        out = set(rs.complement_roots(self.J.J))
        self.outside = [b for b in self.order.sequence if b in out]
        if not self.order.is_J_compatible(self.J):
            raise ValueError("reflection order is not J-compatible")
        self.gamma_index = rs.root_index[gamma_Q(rs, self.k)]
        self.s_theta = g.min_rep_s_theta(self.J)
        self._check_threshold()

    def _check_threshold(self):
        g, k, n = self.group, self.k, self.group.rank
        wJ = g.longest_sub(self.J)
        alt = g.min_rep(wJ.right_mul(k), self.J)
        if g.rs.type.family == "B":
            assert alt == g.from_word(tuple(range(1, n + 1)))
            wn = g.from_word(tuple(range(2, n)) + tuple(range(1, n - 1)))
            assert self.s_theta == wn * g.from_word((n, n - 1, n))
        else:
            assert self.s_theta == alt

    @property
    def rs(self):
        return self.group.rs

    def above(self, x: WeylElem) -> bool:
        return self.group.bruhat_leq(self.s_theta, x)

    def require(self, x: WeylElem) -> None:
        if not self.group.in_WJ(x, self.J):
            fl = self.group.min_rep(x, self.J)
            raise NotInQuotient(
                f"{x.word_str() or 'e'} is not a minimal coset representative; "
                f"its floor is {fl.word_str() or 'e'}"
            )

    def sign(self, y: WeylElem, x: WeylElem) -> int:
        return -1 if (y.length - x.length) % 2 else 1


def setup(family, rank=None, k: int = 1, seed: int | None = 0) -> ChevalleySetup:
    g = family if isinstance(family, WeylGroup) else WeylGroup.of(family, rank)
    g.rs.check_minuscule(k)
    order = j_compatible(g, g.parabolic(k), seed)
    return ChevalleySetup(g, k, order)


@dataclass
class SchubertExpansion:
    """Coefficients c^x_{v,m}, keyed by ``(v, m)`` with v in W^J."""

    setup: ChevalleySetup = field(repr=False)
    x: WeylElem
    terms: dict
    side: str = "QK"

    @property
    def prefactor(self) -> tuple[int, ...]:
        return self.x.act(self.setup.rs.fundamental_weight(self.setup.k))

    @property
    def above_s_theta(self) -> bool:
        return self.setup.above(self.x)

    def block(self, m: int) -> list[tuple[WeylElem, int]]:
        out = [(v, c) for (v, mm), c in self.terms.items() if mm == m]
        return sorted(out, key=lambda t: (t[0].length, t[0].word))

    def as_words(self) -> dict:
        return {(v.word_str(), m): c for (v, m), c in self.terms.items()}

    def __eq__(self, other):
        return isinstance(other, SchubertExpansion) and self.terms == other.terms and self.x == other.x


def _clean(acc) -> dict:
    return {k: c for k, c in acc.items() if c}


def _walk(s: ChevalleySetup, x: WeylElem, quantum: bool):
    return increasing_walk(s.group, x.ikey, x.length, s.outside, quantum)


def classical_terms(s: ChevalleySetup, x: WeylElem) -> dict:
    """``y -> (-1)^{l(y) - l(x)}`` over endpoints of label-increasing Bruhat paths."""
    s.require(x)
    g = s.group
    out = {}
    for ik, ln, _, _ in _walk(s, x, False):
        y = g.from_ikey(ik)
        assert y not in out, "endpoint map is not injective"
        assert g.in_WJ(y, s.J)
        out[y] = -1 if (ln - x.length) % 2 else 1
    return out


def closed_formula(s: ChevalleySetup, x: WeylElem) -> SchubertExpansion:
    g = s.group
    cl = classical_terms(s, x)
    terms = {(y, 0): c for y, c in cl.items()}
    if s.above(x):
        partners = {}
        for y, c in cl.items():
            p = g.min_rep(y.right_reflect(s.gamma_index), s.J)
            if p in partners:
                raise AssertionError(f"partner map not injective at {p}")
            partners[p] = -c
        terms.update({(p, 1): c for p, c in partners.items()})
    return SchubertExpansion(s, x, terms)


def oracle_expansion(s: ChevalleySetup, x: WeylElem) -> SchubertExpansion:
    """Signed sum over all label-increasing QBG paths with labels outside the Levi."""
    s.require(x)
    g = s.group
    rs = g.rs
    kk = s.k - 1
    acc = defaultdict(int)
    for ik, ln, labels, kinds in _walk(s, x, True):
        m = sum(rs.coroots[b][kk] for b, kd in zip(labels, kinds) if kd == 2)
        v = g.from_ikey(g.min_rep_ikey(ik, s.J))
        acc[(v, m)] += -1 if (ln - x.length) % 2 else 1
    return SchubertExpansion(s, x, _clean(acc))


def coefficient_table(s: ChevalleySetup, method: str = "closed") -> dict:
    """``{x: {(v, m): c}}`` over all of W^J."""
    f = closed_formula if method == "closed" else oracle_expansion
    return {x: f(s, x).terms for x in s.group.enumerate_WJ(s.J)}


# -- cancellation analysis ---------------------------------------------------


@dataclass
class CancellationReport:
    x: WeylElem
    above: bool
    set_name: str
    rows: list  # (v, count, signed_sum)
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        head = (
            f"x = {self.x.word_str() or 'e'}  ({'above' if self.above else 'not above'} floor(s_theta)), "
            f"set {self.set_name}"
        )
        lines = [head]
        for v, cnt, sm in self.rows:
            lines.append(f"  v = {v.word_str() or 'e':<30} count = {cnt}  signed sum = {sm:+d}")
        for msg in self.violations:
            lines.append(f"  VIOLATION: {msg}")
        return "\n".join(lines)


def cancellation_report(s: ChevalleySetup, x: WeylElem) -> CancellationReport:
    s.require(x)
    g = s.group
    above = s.above(x)
    if x == g.e:
        return CancellationReport(x, above, "-", [], [])
    bg = [(labels, ik, ln) for ik, ln, labels, _ in _walk(s, x, False)]
    qbg = {labels: (ik, ln) for ik, ln, labels, kinds in _walk(s, x, True) if 2 in kinds}
    violations = []
    family_b = g.rs.type.family == "B"
    k_idx = g.rs.root_index[g.rs.simple_root(s.k)]

    # paths obtained by appending one quantum edge to a Bruhat path
    appended = {}
    if family_b:
        n = g.rank
        t = g.from_word((n, n - 1, n))
    for labels, ik, ln in bg:
        y = g.from_ikey(ik)
        b = k_idx
        if family_b and g.bruhat_leq(t, y):
            b = s.gamma_index
        q = labels + (b,)
        if q not in qbg:
            violations.append(f"appended path {q} missing from the quantum set")
        else:
            appended[q] = qbg[q]
    if not family_b and set(appended) != set(qbg):
        violations.append("quantum set differs from the appended Bruhat paths")

    if above:
        chosen, name = appended, ("H" if family_b else "G")
    else:
        chosen, name = qbg, ("X" if family_b else "G")
    per_v = defaultdict(lambda: [0, 0])
    for _, (ik, ln) in chosen.items():
        v = g.from_ikey(g.min_rep_ikey(ik, s.J))
        per_v[v][0] += 1
        per_v[v][1] += -1 if (ln - x.length) % 2 else 1
    rows = sorted(
        ((v, c, sm) for v, (c, sm) in per_v.items()), key=lambda r: (r[0].length, r[0].word)
    )
    for v, cnt, sm in rows:
        w = v.word_str() or "e"
        if above and cnt > 1:
            violations.append(f"count {cnt} > 1 at v = {w}")
        if not above and cnt == 1:
            violations.append(f"count 1 at v = {w}")
        if not above and cnt >= 2 and sm != 0:
            violations.append(f"signed sum {sm} != 0 at v = {w}")
    return CancellationReport(x, above, name, rows, violations)


# -- rendering ------------------------------------------------------------


def _w(v: WeylElem) -> str:
    return v.word_str() or "e"


def expansion_to_json(exp: SchubertExpansion, side: str | None = None) -> dict:
    s = exp.setup
    rs = s.rs
    return {
        "type": rs.type.family,
        "rank": rs.rank,
        "k": s.k,
        "x": _w(exp.x),
        "prefactor": f"x*w{s.k}",
        "side": side or exp.side,
        "classical": [{"y": _w(v), "sign": c} for v, c in exp.block(0)],
        "quantum": [{"y": _w(v), "sign": c, "q_power": 1} for v, c in exp.block(1)],
        "above_s_theta": exp.above_s_theta,
    }


def _signed(c: int, body: str, first: bool) -> str:
    mag = "" if abs(c) == 1 else f"{abs(c)}*"
    if first:
        return f"{'-' if c < 0 else ''}{mag}{body}"
    return f" {'-' if c < 0 else '+'} {mag}{body}"


def to_qk_product_string(exp: SchubertExpansion, fmt: str = "text", side: str | None = None) -> str:
    side = side or exp.side
    if fmt == "json":
        return json.dumps(expansion_to_json(exp, side))
    s = exp.setup
    k = s.k
    xw = _w(exp.x)
    pref = s.rs.format_weight(exp.prefactor)
    extra = sorted(m for (_, m) in exp.terms if m > 1)
    if extra:
        raise ValueError(f"unexpected Novikov power {extra[-1]}")
    parts = []
    if side == "QK":
        for v, c in exp.block(0):
            parts.append(_signed(c, f"[O_{{{_w(v)}}}]", not parts))
        for v, c in exp.block(1):
            parts.append(_signed(c, f"[O_{{{_w(v)}}}] Q{k}", not parts))
        lhs = f"[O_{{{xw}}}] * [O(-w{k})]"
        return f"{lhs} = e^{{{pref}}} ( {''.join(parts) or '0'} )"
    if side == "Character":
        for v, c in exp.block(0):
            parts.append(_signed(c, f"gch V^-_{{{_w(v)}}}(N w{k})", not parts))
        for v, c in exp.block(1):
            parts.append(_signed(c, f"gch V^-_{{{_w(v)} t_{{a{k}^v}}}}(N w{k})", not parts))
        lhs = f"gch V^-_{{{xw}}}((N-1) w{k})"
        neg = s.rs.format_weight(tuple(-c for c in exp.prefactor))
        return f"{lhs} = e^{{{neg}}} ( {''.join(parts) or '0'} )"
    raise ValueError("side must be 'QK' or 'Character'")
