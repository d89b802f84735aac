"""
Quantum Lakshmibai-Seshadri paths and the general Chevalley coefficient table.

For a dominant weight mu with J = {i : <mu, alpha_i^vee> = 0}, a QLS path is a
sequence of W^J elements with rational cuts; consecutive directions are linked
by a path in the parabolic quantum Bruhat graph restricted to edges whose
label satisfies ``sigma <mu, beta^vee> in Z``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .qbg import dist_table, tilted_max_index
from .weyl import ParabolicSubset, WeylElem, WeylGroup

__all__ = [
    "QLSPath",
    "NOSTerm",
    "enumerate_qls",
    "qls_wt",
    "qls_deg",
    "kappa_zeta",
    "nos_expansion",
    "reduce_terms",
    "parabolic_qbg_edges",
    "QLSTooLarge",
]

#: desk-scale guard for general shapes
MAX_RANK_GENERAL = 4
MAX_THETA_PAIRING = 4


class QLSTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class QLSPath:
    directions: tuple[WeylElem, ...]
    cuts: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.cuts) != len(self.directions) + 1:
            raise ValueError("need one more cut than directions")
        if self.cuts[0] != 0 or self.cuts[-1] != 1:
            raise ValueError("cuts must run from 0 to 1")
        if any(a >= b for a, b in zip(self.cuts, self.cuts[1:])):
            raise ValueError("cuts must increase strictly")
        if any(a == b for a, b in zip(self.directions, self.directions[1:])):
            raise ValueError("consecutive directions must differ")

    def __str__(self):
        xs = ", ".join(x.word_str() or "e" for x in self.directions)
        cs = ", ".join(str(c) for c in self.cuts)
        return f"({xs}; {cs})"


@dataclass(frozen=True)
class NOSTerm:
    """One summand: sign * q^deg * e^weight * [v t_zeta]."""

    v: WeylElem
    zeta: tuple[int, ...]
    deg: int  # exponent of q, equal to -Deg(eta) >= 0
    weight: tuple[int, ...]  # -wt(eta)
    sign: int


def _J_of(mu) -> frozenset[int]:
    return frozenset(i + 1 for i, c in enumerate(mu) if c == 0)


def _check_dominant(mu):
    if any(c < 0 for c in mu):
        raise ValueError(f"{tuple(mu)} is not dominant")


def parabolic_qbg_edges(group: WeylGroup, J: ParabolicSubset):
    """Edges ``(w, beta_index, v, kind)`` of QBG(W^J); kind is 'B' or 'Q'."""
    rs = group.rs
    outside = rs.complement_roots(J.J)
    # 2<rho - rho_J, beta^vee> = sum over alpha outside the Levi of <alpha, beta^vee>
    sum_out = [0] * rs.rank
    for a in outside:
        for i, c in enumerate(rs.roots_weight[a]):
            sum_out[i] += c
    edges = []
    for w in group.enumerate_WJ(J):
        for b in outside:
            v = group.min_rep(w.right_reflect(b), J)
            two = sum(x * y for x, y in zip(sum_out, rs.coroots[b]))
            if v.length == w.length + 1:
                edges.append((w, b, v, "B"))
            elif v.length == w.length + 1 - two:
                edges.append((w, b, v, "Q"))
    return edges


def _reach(nodes, edges):
    """Transitive closure (paths of length >= 1) as a set of pairs."""
    adj = defaultdict(set)
    for a, b in edges:
        adj[a].add(b)
    out = set()
    for s in nodes:
        stack = list(adj[s])
        seen = set()
        while stack:
            t = stack.pop()
            if t in seen:
                continue
            seen.add(t)
            stack.extend(adj[t])
        out.update((s, t) for t in seen)
    return out


def enumerate_qls(group: WeylGroup, mu, *, ls_only: bool = False) -> list[QLSPath]:
    mu = tuple(mu)
    _check_dominant(mu)
    rs = group.rs
    J = ParabolicSubset(rs.rank, _J_of(mu))
    pairings = sorted({sum(a * b for a, b in zip(mu, cv)) for cv in rs.coroots} - {0})
    if len(J.complement) > 1 or any(c > 1 for c in mu):
        # anything beyond a minuscule shape is desk-scale only
        if rs.rank > MAX_RANK_GENERAL or (pairings and pairings[-1] > MAX_THETA_PAIRING):
            raise QLSTooLarge("general shapes are limited to rank <= 4 and <mu, theta^vee> <= 4")
    WJ = group.enumerate_WJ(J)
    edges = parabolic_qbg_edges(group, J)
    if ls_only:
        edges = [e for e in edges if e[3] == "B"]
    sigmas = sorted({Fraction(a, c) for c in pairings for a in range(1, c)})
    reach = {}
    for sg in sigmas:
        keep = []
        for w, b, v, _ in edges:
            if (sg * sum(a * c for a, c in zip(mu, rs.coroots[b]))).denominator == 1:
                keep.append((w, v))
        reach[sg] = _reach(WJ, keep)

    out = []

    def rec(dirs, cuts):
        out.append(QLSPath(tuple(dirs), tuple(cuts) + (Fraction(1),)))
        cur = dirs[-1]
        for sg in sigmas:
            if sg <= cuts[-1]:
                continue
            for nxt in WJ:
                # need a path from the next direction to the current one
                if nxt != cur and (nxt, cur) in reach[sg]:
                    rec(dirs + [nxt], cuts + [sg])

    for x in WJ:
        rec([x], [Fraction(0)])
    return out


def qls_wt(eta: QLSPath, mu) -> tuple[int, ...]:
    total = [Fraction(0)] * len(mu)
    for x, a, b in zip(eta.directions, eta.cuts, eta.cuts[1:]):
        for i, c in enumerate(x.act(mu)):
            total[i] += (b - a) * c
    if any(t.denominator != 1 for t in total):
        raise AssertionError(f"non-integral weight for {eta}")
    return tuple(int(t) for t in total)


def qls_deg(eta: QLSPath, mu) -> int:
    total = Fraction(0)
    dirs = eta.directions
    for u in range(len(dirs) - 1):
        wt = dist_table(dirs[u]).weight(dirs[u + 1])
        total -= eta.cuts[u + 1] * sum(a * b for a, b in zip(mu, wt))
    if total.denominator != 1 or total > 0:
        raise AssertionError(f"Deg({eta}) = {total} is not a non-positive integer")
    return int(total)


def kappa_zeta(eta: QLSPath, v: WeylElem, mu):
    """``(kappa(eta, v), zeta(eta, v))`` via the tilted-maximum recursion."""
    g = v.group
    T = g.tables
    J = ParabolicSubset(g.rank, _J_of(tuple(mu)))
    hats = [T.index(v)]
    cur = v
    for x in eta.directions:
        i = tilted_max_index(x, J, cur)
        hats.append(i)
        cur = T.elem(i)
    zeta = np.zeros(g.rank, dtype=np.int64)
    for a, b in zip(hats, hats[1:]):
        # wt(hat_{u+1} => hat_u) with hat_0 = v
        zeta += dist_table(T.elem(a)).wt[b]
    return cur, tuple(int(c) for c in zeta)


def nos_expansion(x: WeylElem, mu, paths: list[QLSPath] | None = None) -> list[NOSTerm]:
    """All (v, eta) with kappa(eta, v) = x, as signed terms."""
    g = x.group
    mu = tuple(mu)
    J = ParabolicSubset(g.rank, _J_of(mu))
    T = g.tables
    if paths is None:
        paths = _qls_cached(g, mu)
    xb = g.min_rep(x, J)
    cands = [eta for eta in paths if eta.directions[-1] == xb]
    terms = []
    for vi in range(T.size):
        v = T.elem(vi)
        for eta in cands:
            kap, zeta = kappa_zeta(eta, v, mu)
            if kap != x:
                continue
            terms.append(
                NOSTerm(
                    v=v,
                    zeta=zeta,
                    deg=-qls_deg(eta, mu),
                    weight=tuple(-c for c in qls_wt(eta, mu)),
                    sign=(-1) ** ((v.length - x.length) % 2),
                )
            )
    return terms


@lru_cache(maxsize=64)
def _qls_cached(group, mu):
    return enumerate_qls(group, mu)


def reduce_terms(terms, J: ParabolicSubset) -> dict:
    """Collapse ``[v t_zeta]`` to ``[floor(v) t_[zeta]]`` and add coefficients.

    Keys are ``(floor(v), [zeta]^J, deg, weight)``; zero sums are dropped.
    """
    acc = defaultdict(int)
    for t in terms:
        g = t.v.group
        key = (g.min_rep(t.v, J), g.coroot_project(t.zeta, J), t.deg, t.weight)
        acc[key] += t.sign
    return {k: c for k, c in acc.items() if c}
