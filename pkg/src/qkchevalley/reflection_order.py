"""
Reflection (convex) orders on the positive roots.

A reduced word of w0 is written left to right, ``j_p ... j_2 j_1``, meaning
``w0 = s_{j_p} ... s_{j_1}``.  With ``beta_q = s_{j_1} ... s_{j_{q-1}} alpha_{j_q}``
the order is ``beta_p < ... < beta_1``; the rightmost letter therefore
produces the largest root.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .weyl import ParabolicSubset, WeylElem, WeylGroup

__all__ = [
    "ReflectionOrder",
    "ReflectionOrderError",
    "from_reduced_word",
    "j_compatible",
    "refine_with_inv",
    "random_reduced_word",
    "is_convex",
]


class ReflectionOrderError(ValueError):
    pass


@dataclass(frozen=True)
class ReflectionOrder:
    group: WeylGroup = field(repr=False, compare=False)
    sequence: tuple[int, ...]  # root indices, smallest first
    word: tuple[int, ...] = field(compare=False)

    def __post_init__(self):
        pos = {b: i for i, b in enumerate(self.sequence)}
        object.__setattr__(self, "position", pos)

    @property
    def roots(self) -> list[tuple[int, ...]]:
        rs = self.group.rs
        return [rs.positive_roots[b] for b in self.sequence]

    def rank_of(self, root) -> int:
        return self.position[self.group.rs.root_index[tuple(root)]]

    def less(self, a, b) -> bool:
        return self.rank_of(a) < self.rank_of(b)

    def largest(self, count: int = 1) -> list[tuple[int, ...]]:
        return self.roots[-count:]

    def __str__(self):
        rs = self.group.rs
        return " < ".join(rs.format_root(b) for b in self.roots)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.roots]

    def is_J_compatible(self, J: ParabolicSubset) -> bool:
        rs = self.group.rs
        inside = set(rs.parabolic_roots(J.J))
        top_inside = max((self.position[b] for b in inside), default=-1)
        bottom_out = min(
            (self.position[b] for b in range(len(rs.positive_roots)) if b not in inside),
            default=len(rs.positive_roots),
        )
        return top_inside < bottom_out


def is_convex(order: ReflectionOrder) -> bool:
    rs = order.group.rs
    pos = order.position
    idx = rs.root_index
    roots = rs.positive_roots
    for a in range(len(roots)):
        for b in range(a + 1, len(roots)):
            s = tuple(x + y for x, y in zip(roots[a], roots[b]))
            c = idx.get(s)
            if c is None:
                continue
            pa, pb, pc = pos[a], pos[b], pos[c]
            if not (pa < pc < pb or pb < pc < pa):
                return False
    return True


def from_reduced_word(group: WeylGroup, word) -> ReflectionOrder:
    rs = group.rs
    word = tuple(word)
    N = len(rs.positive_roots)
    if len(word) != N:
        raise ReflectionOrderError(
            f"word has length {len(word)}; a reduced word of w0 has length {N}"
        )
    if group.from_word(word) != group.longest:
        raise ReflectionOrderError("word is not a reduced expression of the longest element")
    js = word[::-1]  # js[q-1] = j_q
    betas = []
    for q in range(N):
        v = rs.simple_root(js[q])
        for j in reversed(js[:q]):
            v = rs.reflect(j, v)
        betas.append(rs.root_index[v])
    if len(set(betas)) != N:
        raise ReflectionOrderError("word is not reduced")
    order = ReflectionOrder(group, tuple(reversed(betas)), word)
    assert is_convex(order)
    return order


def random_reduced_word(w: WeylElem, rng: random.Random | None = None) -> tuple[int, ...]:
    """Reduced word of w built by peeling left descents; ``rng=None`` picks the least."""
    g = w.group
    out = []
    while w != g.e:
        d = sorted(w.left_descents())
        i = d[0] if rng is None else rng.choice(d)
        out.append(i)
        w = w.left_mul(i)
    return tuple(out)


def _rng(seed):
    return None if seed in (None, 0) else random.Random(seed)


def j_compatible(group: WeylGroup, J: ParabolicSubset, seed: int | None = 0) -> ReflectionOrder:
    """Order with every root of the Levi before every other root.

    Built from ``w0 = v u`` with ``u = floor(w0)``; seed 0 is descent-greedy.
    """
    rng = _rng(seed)
    u = group.longest_WJ(J)
    v = group.longest * u.inverse()
    word = random_reduced_word(v, rng) + random_reduced_word(u, rng)
    order = from_reduced_word(group, word)
    assert order.is_J_compatible(J)
    return order


def refine_with_inv(
    group: WeylGroup, J: ParabolicSubset, t: WeylElem, seed: int | None = 0
) -> ReflectionOrder:
    """J-compatible order whose top block is Inv(t).

    Requires ``floor(w0) = w2 t`` with lengths adding.
    """
    rng = _rng(seed)
    u = group.longest_WJ(J)
    w2 = u * t.inverse()
    if w2.length + t.length != u.length:
        raise ReflectionOrderError(f"{t} is not a right factor of floor(w0) = {u}")
    v = group.longest * u.inverse()
    word = random_reduced_word(v, rng) + random_reduced_word(w2, rng) + random_reduced_word(t, rng)
    order = from_reduced_word(group, word)
    assert order.is_J_compatible(J)
    return order
