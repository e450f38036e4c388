"""Signed words over [-r,-1] u [1,r] and their exchange matrices.

Positions of a word of length l are 1..l.  The extended index set adds the
vertices -r..-1, carrying the letters of ``neg_extension`` (identity by
default), all of positive sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cartan import CartanData
from .errors import EmptyWord, IndexOutOfRange, NotAShuffle, SameSign
from .lattice import ExchangeMatrix, IndexSet

INF = float("inf")


@dataclass(frozen=True)
class SignedWord:
    rank: int
    letters: tuple
    neg_extension: tuple | None = None

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        object.__setattr__(self, "letters", letters)
        for a in letters:
            if a == 0 or abs(a) > self.rank:
                raise ValueError(f"letter {a} outside +-[1,{self.rank}]")
        ext = self.neg_extension
        ext = tuple(range(1, self.rank + 1)) if ext is None else tuple(int(a) for a in ext)
        if sorted(ext) != list(range(1, self.rank + 1)):
            raise ValueError("neg_extension must be a permutation of [1,r]")
        object.__setattr__(self, "neg_extension", ext)

    @classmethod
    def parse(cls, text: str, rank: int | None = None, neg_extension=None) -> "SignedWord":
        """Read ``"1,2,-1,-2"``; the rank defaults to the largest letter."""
        letters = [int(t) for t in text.replace(" ", "").split(",") if t]
        if rank is None:
            rank = max((abs(a) for a in letters), default=1)
        return cls(rank, tuple(letters), neg_extension)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return ",".join(map(str, self.letters))

    def to_json(self) -> list:
        return list(self.letters)

    # -- letters and signs over the extended index set
    def _check(self, k: int) -> None:
        if not (-self.rank <= k <= -1 or 1 <= k <= len(self)):
            raise IndexOutOfRange(f"index {k} not in [-{self.rank},-1] u [1,{len(self)}]")

    def letter(self, k: int) -> int:
        """i_k; for k < 0 this is the chosen extension letter (positive)."""
        self._check(k)
        if k < 0:
            return self.neg_extension[self.rank + k]
        return self.letters[k - 1]

    def sign(self, k: int) -> int:
        return 1 if self.letter(k) > 0 else -1

    def color(self, k: int) -> int:
        return abs(self.letter(k))

    @property
    def extended_labels(self) -> tuple:
        return tuple(range(-self.rank, 0)) + self.positions

    @property
    def positions(self) -> tuple:
        return tuple(range(1, len(self) + 1))

    def positive_subword(self) -> tuple:
        return tuple(a for a in self.letters if a > 0)

    def negative_subword(self) -> tuple:
        return tuple(-a for a in self.letters if a < 0)


def next_occurrence(w: SignedWord, k: int, d: int = 1):
    """k[d]; +inf when it runs past the end, None when it runs before the
    start (only possible for d < 0)."""
    w._check(k)
    cur = k
    for _ in range(abs(d)):
        if d > 0:
            if cur == INF:
                return INF
            c = w.color(cur)
            nxt = next((j for j in range(cur + 1, len(w) + 1) if j != 0 and w.color(j) == c), None)
            cur = INF if nxt is None else nxt
        else:
            if cur is None or cur == INF:
                return None
            c = w.color(cur)
            prev = [j for j in w.extended_labels if j < cur and w.color(j) == c]
            cur = prev[-1] if prev else None
    return cur


def prev_occurrence(w: SignedWord, k: int):
    """k[-1] inside [1,l], or None."""
    p = next_occurrence(w, k, -1)
    return p if p is not None and p > 0 else None


def kmin(w: SignedWord, k: int) -> int:
    c = w.color(k)
    return next(j for j in w.positions if w.color(j) == c)


def kmax(w: SignedWord, k: int) -> int:
    c = w.color(k)
    return [j for j in w.positions if w.color(j) == c][-1]


def occurrences(w: SignedWord, k: int) -> list:
    """k^min, k^min[1], ..., k (positions only)."""
    c = w.color(k)
    return [j for j in w.positions if j <= k and w.color(j) == c]


def unfrozen_vertices(w: SignedWord) -> tuple:
    return tuple(k for k in w.positions if next_occurrence(w, k) != INF)


def b_entry(w: SignedWord, C: CartanData, j: int, k: int) -> int:
    """The (j,k) entry of the extended exchange matrix, k unfrozen."""
    j1 = next_occurrence(w, j)
    k1 = next_occurrence(w, k)
    ek, ej = w.sign(k), w.sign(j)
    if k == j1:
        return ek
    if j == k1:
        return -ej
    c = C.C[w.color(j) - 1][w.color(k) - 1]
    if j < k < j1 < k1 and w.sign(j1) == ek:
        return ek * c
    if j < k < k1 < j1 and ek == -w.sign(k1):
        return ek * c
    if k < j < k1 < j1 and w.sign(k1) == ej:
        return -ej * c
    if k < j < j1 < k1 and ej == -w.sign(j1):
        return -ej * c
    return 0


def build_B_matrix(w: SignedWord, C: CartanData, dotted: bool = False) -> ExchangeMatrix:
    """The double-dotted matrix on [-r,-1] u [1,l], or its [1,l] block."""
    if w.rank > C.rank:
        raise ValueError("Cartan rank is smaller than the word's alphabet")
    uf = set(unfrozen_vertices(w))
    labels = w.positions if dotted else w.extended_labels
    frozen = [v for v in labels if v not in uf]
    idx = IndexSet(labels, frozen)
    return ExchangeMatrix.from_function(idx, lambda j, k: b_entry(w, C, j, k))


def left_reflection(w: SignedWord) -> SignedWord:
    if not w.letters:
        raise EmptyWord("cannot reflect an empty word")
    return SignedWord(w.rank, (-w.letters[0],) + w.letters[1:], w.neg_extension)


def flip(w: SignedWord, k: int) -> tuple[SignedWord, int | None]:
    """Swap positions k, k+1 (opposite signs). Returns the new word and the
    vertex to mutate at, or None when the seeds agree."""
    if not 1 <= k < len(w):
        raise IndexOutOfRange(f"flip position {k} out of range")
    a, b = w.letters[k - 1], w.letters[k]
    if (a > 0) == (b > 0):
        raise SameSign(f"letters {a}, {b} at {k}, {k + 1} have the same sign")
    letters = list(w.letters)
    letters[k - 1], letters[k] = b, a
    nw = SignedWord(w.rank, tuple(letters), w.neg_extension)
    return nw, (k if abs(a) == abs(b) else None)


def flip_path(w_from: SignedWord, w_to: SignedWord) -> list:
    """Flip positions turning ``w_from`` into ``w_to`` (bubble each target
    letter leftwards into place)."""
    if (w_from.positive_subword() != w_to.positive_subword()
            or w_from.negative_subword() != w_to.negative_subword()):
        raise NotAShuffle("words are not shuffles of the same signed subwords")
    cur = list(w_from.letters)
    path = []
    for p, target in enumerate(w_to.letters):
        s = target > 0
        q = next(i for i in range(p, len(cur)) if (cur[i] > 0) == s)
        if cur[q] != target:
            raise NotAShuffle("subword mismatch")
        for t in range(q, p, -1):
            cur[t - 1], cur[t] = cur[t], cur[t - 1]
            path.append(t)
    return path


def shuffles(pos_word: Sequence[int], neg_word: Sequence[int]) -> list:
    """All interleavings of ``pos_word`` and ``-neg_word`` (as letter tuples)."""
    out = []

    def rec(i, j, acc):
        if i == len(pos_word) and j == len(neg_word):
            out.append(tuple(acc))
            return
        if i < len(pos_word):
            rec(i + 1, j, acc + [pos_word[i]])
        if j < len(neg_word):
            rec(i, j + 1, acc + [-neg_word[j]])

    rec(0, 0, [])
    return out
