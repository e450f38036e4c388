"""Finite-type Cartan data, weights in fundamental-weight coordinates, and
Weyl-word combinatorics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .errors import SingularCartan

Weight = tuple  # integer coordinates in the basis of fundamental weights


@dataclass(frozen=True)
class CartanData:
    C: tuple
    d: tuple

    def __post_init__(self):
        C = tuple(tuple(int(v) for v in r) for r in self.C)
        d = tuple(int(v) for v in self.d)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "d", d)
        r = len(C)
        if any(len(row) != r for row in C) or len(d) != r:
            raise ValueError("Cartan matrix must be square with one symmetrizer per row")
        for i in range(r):
            if C[i][i] != 2 or d[i] <= 0:
                raise ValueError("need c_ii = 2 and positive d_i")
            for j in range(r):
                if i != j and (C[i][j] > 0 or d[i] * C[i][j] != d[j] * C[j][i]):
                    raise ValueError(f"bad off-diagonal entry c_{i + 1}{j + 1}")

    @property
    def rank(self) -> int:
        return len(self.C)

    @cached_property
    def gram(self) -> tuple:
        """G with G[i][j] = <w_i, w_j>; it satisfies G C = D."""
        r = self.rank
        inv = self.inverse
        return tuple(tuple(self.d[i] * inv[i][j] for j in range(r)) for i in range(r))

    @cached_property
    def inverse(self) -> tuple:
        try:
            inv = linalg.inverse(self.C)
        except ZeroDivisionError:
            raise SingularCartan("Cartan matrix is singular") from None
        return tuple(tuple(r) for r in inv)

    def simple_root(self, i: int) -> Weight:
        """alpha_i = sum_j c_ji w_j."""
        return tuple(row[i - 1] for row in self.C)

    def fundamental(self, i: int) -> Weight:
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def to_json(self) -> dict:
        return {"C": [list(r) for r in self.C], "d": list(self.d)}

    @classmethod
    def from_json(cls, data) -> "CartanData":
        if isinstance(data, str):
            return cartan_preset(data)
        return cls(data["C"], data["d"])


def type_A(n: int) -> CartanData:
    C = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    return CartanData(C, [1] * n)


def cartan_preset(name: str) -> CartanData:
    name = name.upper()
    if name.startswith("A") and name[1:].isdigit():
        return type_A(int(name[1:]))
    if name in ("B2", "C2"):
        # row 1 is the long simple root
        return CartanData(((2, -1), (-2, 2)), (2, 1))
    if name == "G2":
        return CartanData(((2, -1), (-3, 2)), (3, 1))
    raise ValueError(f"unknown Cartan preset {name!r}")


def weight_pairing(C: CartanData, a: Sequence[int], b: Sequence[int]) -> Fraction:
    G = C.gram
    r = C.rank
    return sum((a[i] * G[i][j] * b[j] for i in range(r) for j in range(r) if a[i] and b[j]), Fraction(0))


def reflect(C: CartanData, i: int, lam: Sequence[int]) -> Weight:
    """s_i lam = lam - lam_i alpha_i."""
    c = lam[i - 1]
    if not c:
        return tuple(lam)
    return tuple(v - c * a for v, a in zip(lam, C.simple_root(i)))


def act_by_word(C: CartanData, word: Sequence[int], lam: Sequence[int]) -> Weight:
    """s_{w_1} s_{w_2} ... s_{w_n} lam (rightmost letter acts first)."""
    out = tuple(lam)
    for i in reversed(word):
        out = reflect(C, i, out)
    return out


def roots_of_word(C: CartanData, word: Sequence[int]) -> list:
    """beta_k = s_{w_1} ... s_{w_{k-1}} alpha_{w_k}."""
    return [act_by_word(C, word[:k], C.simple_root(word[k])) for k in range(len(word))]


def root_coordinates(C: CartanData, lam: Sequence[int]) -> tuple:
    """Expansion of a weight in simple roots (rational in general)."""
    inv = C.inverse
    r = C.rank
    # lam = C x
    return tuple(sum((inv[j][i] * lam[i] for i in range(r)), Fraction(0)) for j in range(r))


def is_positive_root(C: CartanData, lam: Sequence[int]) -> bool:
    x = root_coordinates(C, lam)
    return any(x) and all(v >= 0 for v in x)


def is_reduced(C: CartanData, word: Sequence[int]) -> bool:
    return all(is_positive_root(C, b) for b in roots_of_word(C, word))


def rho_check(C: CartanData, lam: Sequence[int]) -> int:
    """<lam, rho^vee> for a weight lying in the root lattice."""
    return int(sum(root_coordinates(C, lam)))


def longest_word(C: CartanData) -> tuple:
    """A reduced word for w_0, built greedily by right multiplication."""
    word: list[int] = []
    while True:
        for i in range(1, C.rank + 1):
            if is_reduced(C, word + [i]):
                word.append(i)
                break
        else:
            return tuple(word)


def reduced_words(C: CartanData, word: Sequence[int]) -> list:
    """All reduced words of the element represented by ``word`` (which must
    be reduced), found by closing under braid moves."""
    from collections import deque

    m = {}
    for i in range(C.rank):
        for j in range(C.rank):
            if i != j:
                m[(i + 1, j + 1)] = {0: 2, 1: 3, 2: 4, 3: 6}[C.C[i][j] * C.C[j][i]]
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for (a, b), mab in m.items():
            left = tuple(a if t % 2 == 0 else b for t in range(mab))
            right = tuple(b if t % 2 == 0 else a for t in range(mab))
            for p in range(len(w) - mab + 1):
                if w[p:p + mab] == left:
                    nw = w[:p] + right + w[p + mab:]
                    if nw not in seen:
                        seen.add(nw)
                        queue.append(nw)
    return sorted(seen)
