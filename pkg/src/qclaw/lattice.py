"""Index sets, exchange matrices and the dominance order on M = Z^I."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import RankDeficient


def pos(x: int) -> int:
    return x if x > 0 else 0


@dataclass(frozen=True)
class IndexSet:
    """Ordered vertex labels with a frozen/unfrozen partition."""

    labels: tuple
    frozen: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate vertex labels")
        if not self.frozen <= set(self.labels):
            raise ValueError("frozen vertices must be labels")
        object.__setattr__(self, "_pos", {v: i for i, v in enumerate(self.labels)})

    @property
    def unfrozen(self) -> tuple:
        return tuple(v for v in self.labels if v not in self.frozen)

    @property
    def frozen_list(self) -> tuple:
        return tuple(v for v in self.labels if v in self.frozen)

    def position(self, label) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise KeyError(f"unknown vertex {label!r}") from None

    def __len__(self):
        return len(self.labels)

    def basis(self, label) -> tuple:
        """The standard basis vector f_label."""
        v = [0] * len(self.labels)
        v[self.position(label)] = 1
        return tuple(v)

    def vector(self, mapping: dict) -> tuple:
        v = [0] * len(self.labels)
        for k, c in mapping.items():
            v[self.position(k)] += c
        return tuple(v)


@dataclass(frozen=True)
class ExchangeMatrix:
    """Integer matrix with rows indexed by I and columns by I_uf."""

    index: IndexSet
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n, m = len(self.index), len(self.index.unfrozen)
        if len(rows) != n or any(len(r) != m for r in rows):
            raise ValueError(f"exchange matrix must be {n}x{m}")

    @classmethod
    def from_function(cls, index: IndexSet, f) -> "ExchangeMatrix":
        return cls(index, tuple(tuple(f(i, k) for k in index.unfrozen) for i in index.labels))

    def col_pos(self, k) -> int:
        return self.index.unfrozen.index(k)

    def entry(self, i, k) -> int:
        return self.rows[self.index.position(i)][self.col_pos(k)]

    def column(self, k) -> tuple:
        c = self.col_pos(k)
        return tuple(r[c] for r in self.rows)

    def principal_part(self) -> list[list[int]]:
        uf = self.index.unfrozen
        return [[self.entry(i, k) for k in uf] for i in uf]

    def symmetrizer(self) -> tuple | None:
        """Minimal positive integers d with d_i b_ik = -d_k b_ki on I_uf, or
        None when the principal part is not skew-symmetrizable."""
        uf = self.index.unfrozen
        B = self.principal_part()
        n = len(uf)
        d: list[Fraction | None] = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for k in range(n):
                    if B[i][k] == 0 and B[k][i] == 0:
                        continue
                    if B[i][k] == 0 or B[k][i] == 0 or (B[i][k] > 0) == (B[k][i] > 0):
                        return None
                    dk = d[i] * Fraction(B[i][k], -B[k][i])
                    if d[k] is None:
                        d[k] = dk
                        stack.append(k)
                    elif d[k] != dk:
                        return None
        for i in range(n):
            if B[i][i] != 0:
                return None
        from math import lcm, gcd

        den = 1
        for v in d:
            den = lcm(den, v.denominator)
        ints = [int(v * den) for v in d]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return tuple(v // max(g, 1) for v in ints)

    def is_full_rank(self) -> bool:
        return linalg.rank(self.rows) == len(self.index.unfrozen)

    def mutate(self, k) -> "ExchangeMatrix":
        """Matrix mutation at the unfrozen vertex k."""
        if k not in self.index.unfrozen or k in self.index.frozen:
            raise ValueError(f"cannot mutate at frozen or unknown vertex {k!r}")
        ip = self.index.position
        ck = self.col_pos(k)
        kr = ip(k)
        old = self.rows
        uf = self.index.unfrozen
        new = []
        for i, row in enumerate(old):
            nr = []
            for c, j in enumerate(uf):
                b = row[c]
                if i == kr or c == ck:
                    nr.append(-b)
                else:
                    bik = row[ck]
                    bkj = old[kr][c]
                    nr.append(b + pos(bik) * pos(bkj) - pos(-bik) * pos(-bkj))
            new.append(tuple(nr))
        return ExchangeMatrix(self.index, tuple(new))

    def negate(self) -> "ExchangeMatrix":
        return ExchangeMatrix(self.index, tuple(tuple(-v for v in r) for r in self.rows))

    def y_vector(self, k) -> tuple:
        """Exponent of y_k = x^{B e_k}."""
        return self.column(k)

    def to_json(self) -> list:
        return [list(r) for r in self.rows]

    def quiver_arrows(self) -> set:
        """Arrows i->j with multiplicity max(0, b_ij) between vertices where
        both entries are known (j unfrozen)."""
        arrows = set()
        for i in self.index.labels:
            for k in self.index.unfrozen:
                b = self.entry(i, k)
                if b > 0:
                    arrows.add((i, k, b))
                elif b < 0:
                    arrows.add((k, i, -b))
        return arrows


class DominanceOrder:
    """m' <= m iff m' - m lies in B N^{uf}_{>=0}; B must have full column rank."""

    def __init__(self, B: ExchangeMatrix):
        self.B = B
        L = linalg.left_inverse(B.rows)
        if L is None:
            raise RankDeficient("exchange matrix lacks full column rank")
        self._L = L
        n = len(B.index)
        # h(m) = -sum_k (L m)_k; strictly decreases along B N^+.
        self._height = tuple(-sum((row[i] for row in L), Fraction(0)) for i in range(n)) if L else tuple([Fraction(0)] * n)

    def solve(self, d: Sequence[int]) -> tuple | None:
        """The n with B n = d, or None when d is outside the column space."""
        if not self._L:
            return () if not any(d) else None
        n = tuple(sum(row[i] * d[i] for i in range(len(d))) for row in self._L)
        rows = self.B.rows
        for i, r in enumerate(rows):
            if sum(r[c] * n[c] for c in range(len(n))) != d[i]:
                return None
        return n

    def leq(self, m1: Sequence[int], m2: Sequence[int]) -> bool:
        """True iff m1 is dominated by m2 (m1 - m2 in B N^+)."""
        d = [a - b for a, b in zip(m1, m2)]
        n = self.solve(d)
        if n is None:
            return False
        return all(v >= 0 and v.denominator == 1 for v in n)

    def lt(self, m1, m2) -> bool:
        return tuple(m1) != tuple(m2) and self.leq(m1, m2)

    def height(self, m: Sequence[int]) -> Fraction:
        return sum((h * v for h, v in zip(self._height, m)), Fraction(0))


def dominance_leq(m1: Iterable[int], m2: Iterable[int], B: ExchangeMatrix) -> bool:
    return DominanceOrder(B).leq(tuple(m1), tuple(m2))
