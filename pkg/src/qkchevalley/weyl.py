"""
Weyl group arithmetic on the weight lattice.

An element w is identified by the dominant-chamber image ``w rho`` (its
``key``); ``w^{-1} rho`` (its ``ikey``) is carried along because right
multiplication by a reflection only needs that vector:

    (w s_beta)^{-1} rho = s_beta (w^{-1} rho).

Lengths come from either vector: l(w) = #{beta > 0 : <w^{-1} rho, beta^vee> < 0}.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .rootsystem import LieType, RootSystem, RootSystemError

__all__ = [
    "WeylElem",
    "WeylGroup",
    "ParabolicSubset",
    "WordParseError",
    "GroupTooLarge",
    "DEFAULT_GROUP_CAP",
    "group_cap",
]

DEFAULT_GROUP_CAP = 10**6


def group_cap() -> int:
    raw = os.environ.get("QBG_GROUP_CAP")
    return int(raw) if raw else DEFAULT_GROUP_CAP


class WordParseError(ValueError):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class GroupTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class ParabolicSubset:
    """A subset J of the nodes; usually J = I minus {k}."""

    rank: int
    J: frozenset

    @classmethod
    def minus(cls, rank: int, k: int) -> "ParabolicSubset":
        return cls(rank, frozenset(i for i in range(1, rank + 1) if i != k))

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(1, self.rank + 1)) - self.J

    @property
    def k(self) -> int:
        (k,) = self.complement
        return k

    def __contains__(self, i):
        return i in self.J


@dataclass(frozen=True, eq=False)
class WeylElem:
    group: "WeylGroup" = field(repr=False)
    key: tuple[int, ...]
    ikey: tuple[int, ...] = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, WeylElem) and self.key == other.key and self.group is other.group

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"WeylElem({self.word_str() or 'e'})"

    # -- words and length -----------------------------------------------------

    @cached_property
    def word(self) -> tuple[int, ...]:
        """Lex-least reduced word, ``w = s_{word[0]} s_{word[1]} ...``."""
        g = self.group
        out = []
        key = self.key
        while True:
            i = next((j for j, c in enumerate(key) if c < 0), None)
            if i is None:
                return tuple(out)
            out.append(i + 1)
            key = g._s(i, key)

    def word_str(self) -> str:
        return " ".join(map(str, self.word))

    @cached_property
    def length(self) -> int:
        return self.group.length_of_ikey(self.ikey)

    def __len__(self):
        return self.length

    def left_descents(self) -> frozenset[int]:
        return frozenset(i + 1 for i, c in enumerate(self.key) if c < 0)

    def right_descents(self) -> frozenset[int]:
        return frozenset(i + 1 for i, c in enumerate(self.ikey) if c < 0)

    def inversion_set(self) -> frozenset[tuple[int, ...]]:
        """Positive roots beta with w(beta) negative."""
        rs = self.group.rs
        return frozenset(
            b for b, cv in zip(rs.positive_roots, rs.coroots) if _dot(self.ikey, cv) < 0
        )

    # -- products ----------------------------------------------------------

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        return self.group.from_word(self.word + other.word)

    def inverse(self) -> "WeylElem":
        return self.group._make(self.ikey, self.key)

    def left_mul(self, i: int) -> "WeylElem":
        g = self.group
        key = g._s(i - 1, self.key)
        return g.from_key(key)

    def right_mul(self, i: int) -> "WeylElem":
        g = self.group
        return g.from_ikey(g._s(i - 1, self.ikey))

    def right_reflect(self, beta_index: int) -> "WeylElem":
        """``w s_beta`` for the positive root with the given index."""
        g = self.group
        return g.from_ikey(g.reflect_vec(beta_index, self.ikey))

    # -- action -------------------------------------------------------------

    def act(self, weight) -> tuple[int, ...]:
        """``w lambda`` in fundamental-weight coordinates."""
        g = self.group
        v = tuple(weight)
        if len(v) != g.rank:
            raise RootSystemError("weight does not belong to this root system")
        for i in reversed(self.word):
            v = g._s(i - 1, v)
        return v

    def act_root(self, root) -> tuple[int, ...]:
        """``w beta`` in simple-root coordinates."""
        rs = self.group.rs
        v = tuple(root)
        for i in reversed(self.word):
            v = rs.reflect(i, v)
        return v

    @cached_property
    def matrix(self) -> np.ndarray:
        """Integer matrix of the action on fundamental-weight coordinates."""
        n = self.group.rank
        cols = [self.act(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
        return np.array(cols, dtype=np.int64).T


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class WeylGroup:
    """Weyl group of a root system with cached elements and Bruhat memo."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        n = rs.rank
        # alpha_i in fundamental-weight coordinates: column i of the Cartan matrix
        self.alpha_w = tuple(tuple(rs.cartan[j][i] for j in range(n)) for i in range(n))
        self._elems: dict[tuple, WeylElem] = {}
        self._len_cache: dict[tuple, int] = {}
        self._bruhat_memo: dict[tuple, bool] = {}
        self.e = self.from_key(rs.rho)

    @classmethod
    def of(cls, family, rank=None) -> "WeylGroup":
        rs = family if isinstance(family, RootSystem) else RootSystem.build(family, rank)
        g = _GROUPS.get(rs.type)
        if g is None:
            g = _GROUPS[rs.type] = cls(rs)
        return g

    def __repr__(self):
        return f"WeylGroup({self.rs.type})"

    # -- low level vector ops ----------------------------------------------

    def _s(self, i: int, v) -> tuple[int, ...]:
        """Simple reflection s_{i+1} on a weight vector (0-based i)."""
        c = v[i]
        if c == 0:
            return tuple(v)
        a = self.alpha_w[i]
        return tuple(x - c * y for x, y in zip(v, a))

    def reflect_vec(self, beta_index: int, v) -> tuple[int, ...]:
        rs = self.rs
        c = _dot(v, rs.coroots[beta_index])
        if c == 0:
            return tuple(v)
        bw = rs.roots_weight[beta_index]
        return tuple(x - c * y for x, y in zip(v, bw))

    def length_of_ikey(self, v) -> int:
        v = tuple(v)
        n = self._len_cache.get(v)
        if n is None:
            n = sum(1 for cv in self.rs.coroots if _dot(v, cv) < 0)
            self._len_cache[v] = n
        return n

    # -- constructors --------------------------------------------------------

    def _make(self, key, ikey) -> WeylElem:
        key = tuple(key)
        el = self._elems.get(key)
        if el is None:
            el = self._elems[key] = WeylElem(self, key, tuple(ikey))
        return el

    def from_word(self, word) -> WeylElem:
        """Element ``s_{w[0]} s_{w[1]} ...``; the word need not be reduced."""
        n = self.rank
        key = self.rs.rho
        ikey = self.rs.rho
        for i in word:
            if not 1 <= i <= n:
                raise WordParseError(f"node {i} out of range 1..{n}")
            ikey = self._s(i - 1, ikey)
        for i in reversed(word):
            key = self._s(i - 1, key)
        return self._make(key, ikey)

    def from_key(self, key) -> WeylElem:
        key = tuple(key)
        el = self._elems.get(key)
        if el is not None:
            return el
        word = []
        k = key
        while True:
            i = next((j for j, c in enumerate(k) if c < 0), None)
            if i is None:
                break
            word.append(i + 1)
            k = self._s(i, k)
        if k != self.rs.rho:
            raise RootSystemError(f"{key} is not in the W-orbit of rho")
        return self.from_word(word)

    def from_ikey(self, ikey) -> WeylElem:
        return self.from_key(ikey).inverse()

    def parse_word(self, text: str) -> WeylElem:
        """Parse a space separated word such as ``"1 4 3 2"``; ``"e"`` or ``""`` is the identity."""
        s = text.strip()
        if s in ("", "e"):
            return self.e
        word = []
        pos = 0
        for tok in s.replace(",", " ").split():
            pos = text.find(tok, pos)
            if not tok.isdigit():
                raise WordParseError(f"bad token {tok!r} at position {pos}", pos)
            i = int(tok)
            if not 1 <= i <= self.rank:
                raise WordParseError(
                    f"node {i} at position {pos} out of range 1..{self.rank}", pos
                )
            word.append(i)
            pos += len(tok)
        return self.from_word(word)

    def s(self, i: int) -> WeylElem:
        return self.from_word((i,))

    def reflection(self, beta) -> WeylElem:
        """``s_beta`` for a positive root given as coefficients (or an index)."""
        rs = self.rs
        idx = beta if isinstance(beta, int) else rs.root_index.get(tuple(beta))
        if idx is None:
            if isinstance(beta, int) or not rs.is_root(beta):
                raise RootSystemError(f"{beta} is not a root of {rs.type}")
            idx = rs.root_index[tuple(-c for c in beta)]
        return self.from_key(self.reflect_vec(idx, rs.rho))

    @cached_property
    def longest(self) -> WeylElem:
        return self.from_key(tuple(-c for c in self.rs.rho))

    def order(self) -> int:
        return self.rs.weyl_group_order()

    # -- Bruhat order --------------------------------------------------------

    def bruhat_leq(self, u: WeylElem, w: WeylElem) -> bool:
        return self._bruhat(u.key, w.key)

    def _bruhat(self, ku, kw) -> bool:
        if ku == kw:
            return True
        memo = self._bruhat_memo
        m = memo.get((ku, kw))
        if m is not None:
            return m
        lu = sum(1 for c in self.rs.coroots if _dot(ku, c) < 0)
        lw = sum(1 for c in self.rs.coroots if _dot(kw, c) < 0)
        if lu >= lw:
            res = False
        else:
            i = next(j for j, c in enumerate(kw) if c < 0)
            swk = self._s(i, kw)
            if ku[i] < 0:
                res = self._bruhat(self._s(i, ku), swk)
            else:
                res = self._bruhat(ku, swk)
        memo[(ku, kw)] = res
        return res

    # -- parabolic machinery --------------------------------------------------

    def parabolic(self, k: int) -> ParabolicSubset:
        if not 1 <= k <= self.rank:
            raise RootSystemError(f"node {k} out of range for {self.rs.type}")
        return ParabolicSubset.minus(self.rank, k)

    def in_WJ(self, w: WeylElem, J: ParabolicSubset) -> bool:
        return all(i not in J for i in w.right_descents())

    def min_rep(self, w: WeylElem, J: ParabolicSubset) -> WeylElem:
        ik = w.ikey
        while True:
            j = next((j for j, c in enumerate(ik) if c < 0 and (j + 1) in J), None)
            if j is None:
                break
            ik = self._s(j, ik)
        return self.from_ikey(ik)

    def min_rep_ikey(self, ikey, J: ParabolicSubset):
        """``floor`` computed on inverse keys."""
        ik = ikey
        inside = J.J
        while True:
            j = next((j for j, c in enumerate(ik) if c < 0 and (j + 1) in inside), None)
            if j is None:
                return ik
            ik = self._s(j, ik)

    def enumerate_WJ(self, J: ParabolicSubset) -> list[WeylElem]:
        """Minimal coset representatives, sorted by (length, lex-least word)."""
        # lam is regular for J: <w lam, alpha_j^vee> > 0 means s_j w is in W^J and longer
        lam0 = tuple(0 if (i + 1) in J else 1 for i in range(self.rank))
        seen = {self.e.key: self.e}
        frontier = [self.e]
        while frontier:
            nxt = []
            for w in frontier:
                lam = w.act(lam0)
                for j in range(self.rank):
                    if lam[j] > 0:
                        u = w.left_mul(j + 1)
                        if u.key not in seen:
                            seen[u.key] = u
                            nxt.append(u)
            frontier = nxt
        return sorted(seen.values(), key=lambda w: (w.length, w.word))

    def enumerate_WJsub(self, J: ParabolicSubset) -> list[WeylElem]:
        """Elements of the parabolic subgroup W_J."""
        gens = sorted(J.J)
        seen = {self.e.key: self.e}
        frontier = [self.e]
        while frontier:
            nxt = []
            for w in frontier:
                for j in gens:
                    u = w.right_mul(j)
                    if u.key not in seen:
                        seen[u.key] = u
                        nxt.append(u)
            frontier = nxt
        return sorted(seen.values(), key=lambda w: (w.length, w.word))

    def longest_WJ(self, J: ParabolicSubset) -> WeylElem:
        """``floor(w0)``, the longest element of W^J."""
        return self.min_rep(self.longest, J)

    def longest_sub(self, J: ParabolicSubset) -> WeylElem:
        """The longest element of W_J."""
        w = self.e
        while True:
            d = [j for j in J.J if j not in w.right_descents()]
            if not d:
                return w
            w = w.right_mul(min(d))

    def coroot_project(self, xi, J: ParabolicSubset) -> tuple[int, ...]:
        return tuple(c if (i + 1) not in J else 0 for i, c in enumerate(xi))

    def min_rep_s_theta(self, J: ParabolicSubset) -> WeylElem:
        return self.min_rep(self.reflection(self.rs.highest_root()), J)

    # -- factorisations -----------------------------------------------------

    def factor_minuscule(self, y: WeylElem, J: ParabolicSubset):
        """Return ``(yt, z)`` with ``y = yt z s_k`` length additive, yt in W^J, z in W_J."""
        if y == self.e or not self.in_WJ(y, J):
            raise ValueError("factor_minuscule needs y in W^J minus {e}")
        ysk = y.right_mul(J.k)
        yt = self.min_rep(ysk, J)
        z = yt.inverse() * ysk
        assert yt.length + z.length + 1 == y.length
        return yt, z

    def factor_minuscule_B(self, y: WeylElem, J: ParabolicSubset):
        """Type B_n, k = n: ``y = xt w (s_n s_{n-1} s_n)`` length additive."""
        n = self.rank
        if self.rs.type.family != "B" or J.k != n:
            raise ValueError("factor_minuscule_B needs type B_n with k = n")
        t = self.from_word((n, n - 1, n))
        if not self.in_WJ(y, J) or not self.bruhat_leq(t, y):
            raise ValueError("factor_minuscule_B needs y in W^J with y >= s_n s_{n-1} s_n")
        yp = y * t  # t is an involution
        if yp.length != y.length - 3:
            raise AssertionError("length drop by 3 fails")
        xt = self.min_rep(yp, J)
        w = xt.inverse() * yp
        assert xt.length + w.length + 3 == y.length
        return xt, w

    # -- full group tables ------------------------------------------------

    @cached_property
    def tables(self) -> "GroupTables":
        return GroupTables(self)


class GroupTables:
    """Vectorised right-multiplication and QBG edge-kind tables over all of W.

    Rows are indexed by element; ``ikeys[i]`` is ``w_i^{-1} rho``.
    ``rmul[i, b]`` is the index of ``w_i s_beta_b`` and ``kind[i, b]`` is
    0 (no edge), 1 (Bruhat) or 2 (quantum).
    """

    def __init__(self, group: WeylGroup):
        size = group.order()
        cap = group_cap()
        if size > cap:
            raise GroupTooLarge(
                f"|W| = {size} exceeds the enumeration cap {cap}; set QBG_GROUP_CAP "
                "or restrict to computations that avoid full-group tables"
            )
        self.group = group
        rs = group.rs
        n = rs.rank
        C = np.array(rs.coroots, dtype=np.int64)  # N x n
        RW = np.array(rs.roots_weight, dtype=np.int64)  # N x n
        A = np.array(group.alpha_w, dtype=np.int64)  # n x n
        rho = np.array(rs.rho, dtype=np.int64)

        # BFS on the orbit of rho by simple reflections
        self.offset = int(C.sum(axis=1).max()) + 1
        self.base = 2 * self.offset + 1
        radix = self.base ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self._radix = radix

        def enc(V):
            return (V + self.offset) @ radix

        found = rho[None, :]
        codes = set(enc(found).tolist())
        frontier = found
        chunks = [found]
        while len(frontier):
            new = []
            for i in range(n):
                c = frontier[:, i : i + 1]
                nb = frontier - c * A[i][None, :]
                new.append(nb)
            nb = np.unique(np.concatenate(new), axis=0)
            nc = enc(nb)
            mask = np.array([c not in codes for c in nc.tolist()], dtype=bool)
            nb = nb[mask]
            codes.update(enc(nb).tolist())
            if len(nb):
                chunks.append(nb)
            frontier = nb
        IK = np.concatenate(chunks)
        assert len(IK) == size, (len(IK), size)
        P = IK @ C.T
        length = (P < 0).sum(axis=1)
        order = np.lexsort((enc(IK), length))
        IK = IK[order]
        P = P[order]
        length = length[order]
        self.ikeys = IK
        self.length = length
        self.codes = enc(IK)
        self._sorter = np.argsort(self.codes)
        self._sorted_codes = self.codes[self._sorter]

        N = len(rs.positive_roots)
        rmul = np.empty((size, N), dtype=np.int64)
        for b in range(N):
            V = IK - P[:, b : b + 1] * RW[b][None, :]
            rmul[:, b] = self.index_of_codes(enc(V))
        self.rmul = rmul
        hts = C.sum(axis=1)
        newlen = length[rmul]
        bru = newlen == length[:, None] + 1
        qua = newlen == length[:, None] + 1 - 2 * hts[None, :]
        self.kind = np.where(bru, 1, np.where(qua, 2, 0)).astype(np.int8)
        self.coroots = C
        self.size = size

    def index_of_codes(self, codes):
        pos = np.searchsorted(self._sorted_codes, codes)
        return self._sorter[pos]

    def index(self, w: WeylElem) -> int:
        code = int((np.array(w.ikey) + self.offset) @ self._radix)
        i = int(self.index_of_codes(np.array([code]))[0])
        assert tuple(self.ikeys[i]) == w.ikey
        return i

    def elem(self, i: int) -> WeylElem:
        return self.group.from_ikey(tuple(int(c) for c in self.ikeys[i]))


_GROUPS: dict[LieType, WeylGroup] = {}
