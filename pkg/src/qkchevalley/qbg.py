"""
Quantum Bruhat graph QBG(W) and Bruhat graph BG(W).

Edges are ``w -> w s_beta`` for positive beta.  A Bruhat edge raises the
length by one; a quantum edge changes it by ``1 - 2<rho, beta^vee>``.
"""

from __future__ import annotations

import enum
from collections import OrderedDict
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .reflection_order import ReflectionOrder
from .weyl import ParabolicSubset, WeylElem, WeylGroup

__all__ = [
    "EdgeKind",
    "QBGPath",
    "DistTable",
    "edge_kind",
    "is_quantum_root",
    "is_quantum_root_by_length",
    "dist_table",
    "shortest",
    "label_increasing_path",
    "increasing_paths_from",
    "tilted_max",
    "tilted_max_bruteforce",
    "tilted_max_index",
    "coset_indices",
    "edge_transform",
    "EdgeTransformError",
    "to_dot",
]


class EdgeKind(enum.IntEnum):
    BRUHAT = 1
    QUANTUM = 2

    @property
    def tag(self) -> str:
        return "B" if self is EdgeKind.BRUHAT else "Q"


def _kind_from_lengths(l0: int, l1: int, height: int):
    if l1 == l0 + 1:
        return EdgeKind.BRUHAT
    if l1 == l0 + 1 - 2 * height:
        return EdgeKind.QUANTUM
    return None


def edge_kind(w: WeylElem, beta) -> EdgeKind | None:
    g = w.group
    rs = g.rs
    b = beta if isinstance(beta, int) else rs.root_index[tuple(beta)]
    ik = g.reflect_vec(b, w.ikey)
    return _kind_from_lengths(w.length, g.length_of_ikey(ik), sum(rs.coroots[b]))


def is_quantum_root(rs, beta) -> bool:
    """Long, or short with support on short simple roots only."""
    beta = tuple(beta)
    if rs.is_long(beta):
        return True
    return all(c == 0 or rs.simple_sq[i] == 1 for i, c in enumerate(beta))


def is_quantum_root_by_length(group: WeylGroup, beta) -> bool:
    rs = group.rs
    return group.reflection(beta).length == 2 * rs.rho_pair(beta) - 1


@dataclass(frozen=True)
class QBGPath:
    start: WeylElem
    labels: tuple[int, ...] = ()  # positive root indices
    kinds: tuple[EdgeKind, ...] = ()

    @cached_property
    def vertices(self) -> list[WeylElem]:
        out = [self.start]
        for b in self.labels:
            out.append(out[-1].right_reflect(b))
        return out

    @property
    def end(self) -> WeylElem:
        return self.vertices[-1]

    def __len__(self):
        return len(self.labels)

    @cached_property
    def weight(self) -> tuple[int, ...]:
        rs = self.start.group.rs
        wt = [0] * rs.rank
        for b, kd in zip(self.labels, self.kinds):
            if kd is EdgeKind.QUANTUM:
                for i, c in enumerate(rs.coroots[b]):
                    wt[i] += c
        return tuple(wt)

    def label_roots(self):
        rs = self.start.group.rs
        return [rs.positive_roots[b] for b in self.labels]

    def __str__(self):
        rs = self.start.group.rs
        parts = [self.start.word_str() or "e"]
        for v, b, kd in zip(self.vertices[1:], self.labels, self.kinds):
            parts.append(f"-[{rs.format_root(rs.positive_roots[b])}:{kd.tag}]-> {v.word_str() or 'e'}")
        return " ".join(parts)


# -- shortest paths ----------------------------------------------------------


@dataclass
class DistTable:
    """Distances and weights of shortest paths from every element to a target."""

    target: WeylElem
    dist: np.ndarray
    wt: np.ndarray = field(repr=False)

    def distance(self, w: WeylElem) -> int:
        return int(self.dist[self.target.group.tables.index(w)])

    def weight(self, w: WeylElem) -> tuple[int, ...]:
        return tuple(int(c) for c in self.wt[self.target.group.tables.index(w)])


_DIST_CACHE: "OrderedDict[tuple, DistTable]" = OrderedDict()
DIST_CACHE_BUDGET = 4096


def dist_table(v: WeylElem) -> DistTable:
    """BFS over reversed QBG edges; asserts weight agreement across shortest paths."""
    g = v.group
    ck = (g.rs.type, v.key)
    hit = _DIST_CACHE.get(ck)
    if hit is not None:
        _DIST_CACHE.move_to_end(ck)
        return hit
    T = g.tables
    size = T.size
    N = T.rmul.shape[1]
    dist = np.full(size, -1, dtype=np.int64)
    wt = np.zeros((size, g.rank), dtype=np.int64)
    src = T.index(v)
    dist[src] = 0
    frontier = np.array([src])
    level = 0
    cols = np.arange(N)
    while len(frontier):
        cand = T.rmul[frontier]  # predecessors u = w s_beta
        valid = T.kind[cand, cols[None, :]] != 0
        rows, bs = np.nonzero(valid)
        us = cand[rows, bs]
        ws = frontier[rows]
        quantum = T.kind[us, bs] == 2
        wts = wt[ws] + np.where(quantum[:, None], T.coroots[bs], 0)
        fresh = dist[us] == -1
        new_idx = us[fresh]
        dist[new_idx] = level + 1
        wt[new_idx] = wts[fresh]  # any representative; checked below
        on_level = dist[us] == level + 1
        if not np.array_equal(wt[us[on_level]], wts[on_level]):
            raise AssertionError("weights of shortest paths disagree")
        frontier = np.unique(new_idx)
        level += 1
    assert (dist >= 0).all(), "QBG is strongly connected"
    tab = DistTable(v, dist, wt)
    _DIST_CACHE[ck] = tab
    if len(_DIST_CACHE) > DIST_CACHE_BUDGET:
        _DIST_CACHE.popitem(last=False)
    return tab


def shortest(x: WeylElem, y: WeylElem) -> tuple[int, tuple[int, ...]]:
    """``(l(x => y), wt(x => y))``."""
    tab = dist_table(y)
    i = x.group.tables.index(x)
    return int(tab.dist[i]), tuple(int(c) for c in tab.wt[i])


def label_increasing_path(x: WeylElem, y: WeylElem, order: ReflectionOrder) -> QBGPath:
    """Lex-minimal shortest path from x to y; asserted to be label-increasing."""
    g = x.group
    T = g.tables
    tab = dist_table(y)
    cur = T.index(x)
    labels, kinds = [], []
    while tab.dist[cur] > 0:
        d = tab.dist[cur]
        best = None
        for b in order.sequence:
            if T.kind[cur, b] and tab.dist[T.rmul[cur, b]] == d - 1:
                best = b
                break
        assert best is not None
        labels.append(best)
        kinds.append(EdgeKind(int(T.kind[cur, best])))
        cur = T.rmul[cur, best]
    pos = order.position
    if any(pos[a] >= pos[b] for a, b in zip(labels, labels[1:])):
        raise AssertionError("lex-minimal shortest path is not label-increasing")
    return QBGPath(x, tuple(labels), tuple(kinds))


def increasing_walk(group: WeylGroup, ikey, length, allowed_sorted, quantum: bool):
    """Yield ``(end_ikey, end_length, labels, kinds)`` over all label-increasing paths.

    ``allowed_sorted`` lists root indices in increasing order.  Works on inverse
    keys only, so no full-group table is needed.
    """
    rs = group.rs
    coroots = rs.coroots
    rw = rs.roots_weight
    heights = [sum(c) for c in coroots]
    lenf = group.length_of_ikey
    m = len(allowed_sorted)

    def rec(ik, ln, start, labels, kinds):
        yield ik, ln, labels, kinds
        for p in range(start, m):
            b = allowed_sorted[p]
            c = sum(a * d for a, d in zip(ik, coroots[b]))
            nk = tuple(a - c * d for a, d in zip(ik, rw[b]))
            nl = lenf(nk)
            if nl == ln + 1:
                kd = EdgeKind.BRUHAT
            elif quantum and nl == ln + 1 - 2 * heights[b]:
                kd = EdgeKind.QUANTUM
            else:
                continue
            yield from rec(nk, nl, p + 1, labels + (b,), kinds + (kd,))

    yield from rec(tuple(ikey), length, 0, (), ())


def increasing_paths_from(
    x: WeylElem, order: ReflectionOrder, allowed=None, graph: str = "QBG"
) -> list[QBGPath]:
    """All label-increasing paths from x with labels in ``allowed`` (root indices or tuples)."""
    g = x.group
    rs = g.rs
    if allowed is None:
        allowed = range(len(rs.positive_roots))
    allowed = {a if isinstance(a, int) else rs.root_index[tuple(a)] for a in allowed}
    allowed_sorted = [b for b in order.sequence if b in allowed]
    if graph not in ("BG", "QBG"):
        raise ValueError("graph must be 'BG' or 'QBG'")
    return [
        QBGPath(x, labels, kinds)
        for _, _, labels, kinds in increasing_walk(
            g, x.ikey, x.length, allowed_sorted, graph == "QBG"
        )
    ]


# -- dual tilted Bruhat order -----------------------------------------------


def coset_indices(u: WeylElem, J: ParabolicSubset) -> np.ndarray:
    """Table indices of the coset ``u W_J``, found by right multiplication."""
    g = u.group
    T = g.tables
    rs = g.rs
    gens = [rs.root_index[rs.simple_root(j)] for j in sorted(J.J)]
    start = T.index(g.min_rep(u, J))
    key = (g.rs.type, J, start)
    hit = _COSET_CACHE.get(key)
    if hit is not None:
        return hit
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for i in frontier:
            for b in gens:
                j = int(T.rmul[i, b])
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    out = np.array(sorted(seen))
    _COSET_CACHE[key] = out
    return out


_COSET_CACHE: dict = {}


def tilted_max_index(u: WeylElem, J: ParabolicSubset, v: WeylElem) -> int:
    tab = dist_table(v)
    idx = coset_indices(u, J)
    d = tab.dist[idx]
    best = np.flatnonzero(d == d.min())
    if len(best) != 1:
        raise AssertionError("coset has no unique closest element")
    return int(idx[best[0]])


def tilted_max(u: WeylElem, J: ParabolicSubset, v: WeylElem) -> WeylElem:
    """Maximum of ``u W_J`` for the dual v-tilted order.

    The maximum is the unique element of the coset closest to v.
    """
    return u.group.tables.elem(tilted_max_index(u, J, v))


def tilted_max_bruteforce(u: WeylElem, J: ParabolicSubset, v: WeylElem) -> WeylElem:
    """Element w2 of the coset with ``l(w1 => v) = l(w1 => w2) + l(w2 => v)`` for every w1."""
    g = u.group
    base = g.min_rep(u, J)
    members = [base * z for z in g.enumerate_WJsub(J)]
    dv = {w: shortest(w, v)[0] for w in members}
    found = [
        w2 for w2 in members
        if all(dv[w1] == shortest(w1, w2)[0] + dv[w2] for w1 in members)
    ]
    if len(found) != 1:
        raise AssertionError(f"expected a unique maximum, found {len(found)}")
    return found[0]


# -- edge transforms ---------------------------------------------------------


class EdgeTransformError(ValueError):
    pass


def edge_transform(u: WeylElem, w: WeylElem, beta, j: int):
    """Apply the left action of s_j to the edge ``u -beta-> w``.

    Returns ``("absorbed", beta, w)`` when beta = u^{-1} alpha_j and w = s_j u,
    otherwise ``("parallel", s_j u, s_j w, kind)``.
    """
    g = u.group
    rs = g.rs
    b = beta if isinstance(beta, int) else rs.root_index[tuple(beta)]
    if u.right_reflect(b) != w:
        raise EdgeTransformError("w is not u s_beta")
    kind = edge_kind(u, b)
    if kind is None:
        raise EdgeTransformError("u -> w is not an edge of QBG")
    w_neg = w.key[j - 1] < 0  # w^{-1} alpha_j negative
    u_neg = u.key[j - 1] < 0
    if w_neg and not u_neg:
        assert kind is EdgeKind.BRUHAT
        assert w == u.left_mul(j)
        assert u.inverse().act_root(rs.simple_root(j)) == rs.positive_roots[b]
        return ("absorbed", b, w)
    if w_neg == u_neg:
        su, sw = u.left_mul(j), w.left_mul(j)
        k2 = edge_kind(su, b)
        assert su.right_reflect(b) == sw and k2 is kind
        return ("parallel", su, sw, k2)
    raise EdgeTransformError("sign pattern w^{-1}alpha_j > 0, u^{-1}alpha_j < 0 is not covered")


def to_dot(group: WeylGroup, min_len: int = 0, max_len: int = 3) -> str:
    """DOT text of QBG restricted to a length window; a debugging aid."""
    T = group.tables
    rs = group.rs
    lines = ["digraph QBG {"]
    ids = np.flatnonzero((T.length >= min_len) & (T.length <= max_len))
    keep = set(ids.tolist())
    name = {i: (T.elem(i).word_str() or "e") for i in ids}
    for i in ids:
        for b in range(T.rmul.shape[1]):
            kd = T.kind[i, b]
            j = int(T.rmul[i, b])
            if kd and j in keep:
                tag = "B" if kd == 1 else "Q"
                lines.append(
                    f'  "{name[i]}" -> "{name[j]}" [label="{rs.format_root(rs.positive_roots[b])} {tag}"];'
                )
    lines.append("}")
    return "\n".join(lines)
