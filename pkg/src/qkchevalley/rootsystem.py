"""
Exact root data for the finite types A_n, B_n, D_n, E_6 and E_7.

Conventions (Bourbaki numbering, nodes are 1-based in the public API):

* roots are integer tuples of coefficients on the simple roots alpha_i;
* weights are integer tuples of coefficients on the fundamental weights;
* coroots are integer tuples of coefficients on the simple coroots.

With these coordinates the pairing <weight, coroot> is a plain dot product.
Long roots have squared length 2; in B_n the short simple root is alpha_n.

>>> R = RootSystem.build("B", 3)
>>> len(R.positive_roots)
9
>>> R.highest_root()
(1, 2, 2)
>>> sorted(R.minuscule_nodes())
[3]
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

__all__ = ["LieType", "RootSystem", "RootSystemError", "SUPPORTED_TYPES"]

SUPPORTED_TYPES = "A_n (n>=1), B_n (n>=2), D_n (n>=3), E_6, E_7"


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        family, n = self.family, self.rank
        ok = (
            (family == "A" and n >= 1)
            or (family == "B" and n >= 2)
            or (family == "D" and n >= 3)
            or (family == "E" and n in (6, 7))
        )
        if not ok:
            raise RootSystemError(
                f"unsupported type {family}_{n}; allowed types: {SUPPORTED_TYPES}"
            )

    @classmethod
    def parse(cls, text: str) -> "LieType":
        """Parse strings such as ``"A6"``, ``"B_3"`` or ``"E 6"``."""
        s = text.replace("_", "").replace(" ", "").upper()
        if len(s) < 2 or not s[1:].isdigit():
            raise RootSystemError(f"cannot parse Lie type {text!r}")
        return cls(s[0], int(s[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


def cartan_matrix(t: LieType) -> tuple[tuple[int, ...], ...]:
    """Return a with ``a[i][j] = <alpha_j, alpha_i^vee>`` (0-based indices)."""
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j):  # 1-based simply-laced bond
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1

    if t.family in ("A", "B"):
        for i in range(1, n):
            link(i, i + 1)
        if t.family == "B":
            # <alpha_{n-1}, alpha_n^vee> = -2
            a[n - 1][n - 2] = -2
    elif t.family == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        link(n - 2, n)
    elif t.family == "E":
        link(1, 3)
        link(3, 4)
        link(2, 4)
        for i in range(4, n):
            link(i, i + 1)
    return tuple(tuple(row) for row in a)


class RootSystem:
    """Immutable Cartan data with the full positive root list."""

    def __init__(self, lie_type: LieType):
        self.type = lie_type
        self.rank = n = lie_type.rank
        self.cartan = cartan_matrix(lie_type)
        # squared lengths of simple roots
        if lie_type.family == "B":
            self.simple_sq = tuple(1 if i == n - 1 else 2 for i in range(n))
        else:
            self.simple_sq = (2,) * n
        self.positive_roots = self._generate_positive_roots()
        self.root_index = {b: i for i, b in enumerate(self.positive_roots)}
        self.coroots = tuple(self._coroot(b) for b in self.positive_roots)
        self.roots_weight = tuple(self.root_to_weight(b) for b in self.positive_roots)
        self._weight_to_root = {}
        for i, w in enumerate(self.roots_weight):
            self._weight_to_root[w] = (i, 1)
            self._weight_to_root[tuple(-c for c in w)] = (i, -1)

    @classmethod
    def build(cls, family: str | LieType, rank: int | None = None) -> "RootSystem":
        t = family if isinstance(family, LieType) else LieType(family, rank)
        return _build_cached(t)

    def __repr__(self):
        return f"RootSystem({self.type})"

    # -- basic linear algebra -------------------------------------------------

    def _form(self, a, b) -> Fraction:
        """Symmetric invariant form on root coordinates (long roots: 2)."""
        n = self.rank
        total = Fraction(0)
        for i in range(n):
            if not a[i]:
                continue
            for j in range(n):
                if b[j]:
                    # (alpha_i, alpha_j) = a_ij * |alpha_i|^2 / 2
                    total += a[i] * b[j] * Fraction(self.cartan[i][j] * self.simple_sq[i], 2)
        return total

    def sq_length(self, root) -> int:
        return int(self._form(root, root))

    def is_long(self, root) -> bool:
        return self.sq_length(root) == 2

    def _coroot(self, root) -> tuple[int, ...]:
        sq = self._form(root, root)
        coeffs = []
        for c, s in zip(root, self.simple_sq):
            v = Fraction(c * s) / sq
            assert v.denominator == 1
            coeffs.append(int(v))
        return tuple(coeffs)

    def coroot(self, root) -> tuple[int, ...]:
        idx = self.root_index.get(tuple(root))
        if idx is not None:
            return self.coroots[idx]
        neg = self.root_index.get(tuple(-c for c in root))
        if neg is None:
            raise RootSystemError(f"{root} is not a root of {self.type}")
        return tuple(-c for c in self.coroots[neg])

    def root_to_weight(self, root) -> tuple[int, ...]:
        """Fundamental-weight coordinates of an element of the root lattice."""
        n = self.rank
        return tuple(sum(self.cartan[i][j] * root[j] for j in range(n)) for i in range(n))

    def weight_to_root(self, weight) -> tuple[int, int]:
        """Return ``(index, sign)`` of the root with the given weight coordinates."""
        try:
            return self._weight_to_root[tuple(weight)]
        except KeyError:
            raise RootSystemError(f"weight {tuple(weight)} is not a root") from None

    def simple_root(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def fundamental_weight(self, i: int) -> tuple[int, ...]:
        if not 1 <= i <= self.rank:
            raise RootSystemError(f"node {i} out of range for {self.type}")
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def simple_coroot(self, i: int) -> tuple[int, ...]:
        return self.fundamental_weight(i)

    @property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    def pair(self, weight, coroot) -> int:
        if len(weight) != self.rank or len(coroot) != self.rank:
            raise RootSystemError("pairing arguments do not belong to this root system")
        return sum(a * b for a, b in zip(weight, coroot))

    def pair_root(self, root, beta) -> int:
        """``<root, beta^vee>`` for a root in simple-root coordinates."""
        return self.pair(self.root_to_weight(root), self.coroot(beta))

    def reflect(self, i: int, root) -> tuple[int, ...]:
        """``s_i root = root - <root, alpha_i^vee> alpha_i`` in root coordinates."""
        c = sum(self.cartan[i - 1][j] * root[j] for j in range(self.rank))
        out = list(root)
        out[i - 1] -= c
        return tuple(out)

    # -- generation ----------------------------------------------------------

    def _generate_positive_roots(self):
        n = self.rank
        found = {self.simple_root(i) for i in range(1, n + 1)}
        frontier = list(found)
        while frontier:
            nxt = []
            for b in frontier:
                for i in range(1, n + 1):
                    c = self.reflect(i, b)
                    if all(x >= 0 for x in c) and c not in found:
                        found.add(c)
                        nxt.append(c)
            frontier = nxt
        return tuple(sorted(found, key=lambda b: (sum(b), b)))

    @staticmethod
    def height(root) -> int:
        return sum(root)

    def is_root(self, root) -> bool:
        r = tuple(root)
        return r in self.root_index or tuple(-c for c in r) in self.root_index

    def highest_root(self) -> tuple[int, ...]:
        return max(self.positive_roots, key=lambda b: (sum(b), b))

    def rho_pair(self, beta) -> int:
        """``<rho, beta^vee>``, the height of the coroot."""
        return sum(self.coroot(beta))

    @cached_property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def minuscule_nodes(self) -> frozenset[int]:
        out = set()
        for k in range(1, self.rank + 1):
            if all(cv[k - 1] <= 1 for cv in self.coroots):
                out.add(k)
        return frozenset(out)

    def check_minuscule(self, k: int) -> None:
        nodes = self.minuscule_nodes()
        if k not in nodes:
            raise RootSystemError(
                f"node {k} is not minuscule in {self.type}; minuscule nodes: {sorted(nodes)}"
            )

    def parabolic_roots(self, J) -> list[int]:
        """Indices of the positive roots supported on J."""
        J = set(J)
        return [
            i for i, b in enumerate(self.positive_roots)
            if all(c == 0 or (j + 1) in J for j, c in enumerate(b))
        ]

    def complement_roots(self, J) -> list[int]:
        inside = set(self.parabolic_roots(J))
        return [i for i in range(len(self.positive_roots)) if i not in inside]

    def format_root(self, root) -> str:
        terms = []
        for i, c in enumerate(root, start=1):
            if c == 0:
                continue
            coef = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{coef}a{i}"))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += f"{sign}{t}"
        return s

    def format_weight(self, weight) -> str:
        return self.format_root(weight).replace("a", "w")

    def weyl_group_order(self) -> int:
        from math import factorial

        n = self.rank
        fam = self.type.family
        if fam == "A":
            return factorial(n + 1)
        if fam == "B":
            return 2**n * factorial(n)
        if fam == "D":
            return 2 ** (n - 1) * factorial(n)
        return {6: 51840, 7: 2903040}[n]


_CACHE: dict[LieType, RootSystem] = {}


def _build_cached(t: LieType) -> RootSystem:
    rs = _CACHE.get(t)
    if rs is None:
        rs = _CACHE[t] = RootSystem(t)
    return rs
