"""
Demazure operators on the group algebra Z[q, q^-1][P].

Elements are finite maps ``(weight, q_exponent) -> int``.  For a monomial
e^xi with n = <xi, alpha_i^vee>:

* n <= 0:  D_i e^xi = e^xi (1 + e^{alpha_i} + ... + e^{-n alpha_i})
* n == 1:  D_i e^xi = 0
* n >= 2:  D_i e^xi = -e^xi (e^{-alpha_i} + ... + e^{(1-n) alpha_i})
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field

from .rootsystem import RootSystem

__all__ = ["GroupAlgebraElem", "demazure", "leibniz_check", "random_element"]


@dataclass(frozen=True)
class GroupAlgebraElem:
    rs: RootSystem = field(repr=False, compare=False)
    terms: tuple = ()  # sorted ((weight, q_exp), coeff) pairs, no zeros

    @classmethod
    def from_dict(cls, rs, d) -> "GroupAlgebraElem":
        items = tuple(sorted((k, c) for k, c in d.items() if c))
        return cls(rs, items)

    @classmethod
    def monomial(cls, rs, weight, q: int = 0, coeff: int = 1) -> "GroupAlgebraElem":
        return cls.from_dict(rs, {(tuple(weight), q): coeff})

    @classmethod
    def zero(cls, rs) -> "GroupAlgebraElem":
        return cls(rs, ())

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, weight) -> dict[int, int]:
        """Laurent polynomial in q attached to e^weight, as ``{exp: coeff}``."""
        w = tuple(weight)
        return {q: c for (ww, q), c in self.terms if ww == w}

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        d = defaultdict(int, self.as_dict())
        for k, c in other.terms:
            d[k] += c
        return GroupAlgebraElem.from_dict(self.rs, d)

    def __neg__(self):
        return GroupAlgebraElem(self.rs, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        d = defaultdict(int)
        for (w1, q1), c1 in self.terms:
            for (w2, q2), c2 in other.terms:
                d[(tuple(a + b for a, b in zip(w1, w2)), q1 + q2)] += c1 * c2
        return GroupAlgebraElem.from_dict(self.rs, d)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for (w, q), c in self.terms:
            mono = f"e^{{{self.rs.format_weight(w)}}}"
            if q:
                mono = f"q^{q} {mono}"
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)} "
            out.append(f"{sign} {mag}{mono}")
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else s


def _demazure_monomial(rs, i: int, xi):
    n = xi[i - 1]
    a = rs.root_to_weight(rs.simple_root(i))
    if n <= 0:
        rng, sign = range(0, -n + 1), 1
    elif n == 1:
        return []
    else:
        rng, sign = range(-1, -n, -1), -1
    return [(tuple(x + j * y for x, y in zip(xi, a)), sign) for j in rng]


def demazure(i: int, f: GroupAlgebraElem) -> GroupAlgebraElem:
    d = defaultdict(int)
    for (w, q), c in f.terms:
        for ww, s in _demazure_monomial(f.rs, i, w):
            d[(ww, q)] += s * c
    return GroupAlgebraElem.from_dict(f.rs, d)


def leibniz_check(rs: RootSystem, i: int, lam, mu) -> bool:
    """``D_i(e^lam e^mu) == (D_i e^{lam+rho}) e^{mu-rho} + e^{s_i lam} D_i e^mu``."""
    M = GroupAlgebraElem.monomial
    lam, mu = tuple(lam), tuple(mu)
    rho = rs.rho
    lhs = demazure(i, M(rs, lam) * M(rs, mu))
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    mu_rho = tuple(a - b for a, b in zip(mu, rho))
    a = rs.root_to_weight(rs.simple_root(i))
    s_lam = tuple(x - lam[i - 1] * y for x, y in zip(lam, a))
    rhs = demazure(i, M(rs, lam_rho)) * M(rs, mu_rho) + M(rs, s_lam) * demazure(i, M(rs, mu))
    return lhs == rhs


def random_element(rs: RootSystem, rng: random.Random, terms: int = 4, bound: int = 5):
    d = defaultdict(int)
    for _ in range(terms):
        w = tuple(rng.randint(-bound, bound) for _ in range(rs.rank))
        d[(w, rng.randint(-2, 2))] += rng.choice([-3, -2, -1, 1, 2, 3])
    return GroupAlgebraElem.from_dict(rs, d)
