import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qclaw.cartan import cartan_preset, type_A
from qclaw.errors import EmptyWord, IndexOutOfRange, NotAShuffle, SameSign
from qclaw.signed_words import (
    INF,
    SignedWord,
    build_B_matrix,
    flip,
    flip_path,
    kmax,
    kmin,
    left_reflection,
    next_occurrence,
    shuffles,
    unfrozen_vertices,
)

IOTA = SignedWord(2, (1, 2, 1, 1, 2, 1))


def signed_words(rank, max_len=6):
    letters = st.integers(1, rank).flatmap(lambda a: st.sampled_from([a, -a]))
    return st.lists(letters, min_size=1, max_size=max_len).map(lambda L: SignedWord(rank, tuple(L)))


def test_occurrences():
    assert [next_occurrence(IOTA, k) for k in (1, 3, 4, 2, 5)] == [3, 4, 6, 5, INF]
    assert kmin(IOTA, 1) == 1 and kmin(IOTA, 6) == 1 and kmax(IOTA, 2) == 5
    assert next_occurrence(IOTA, 4, 0) == 4
    assert next_occurrence(IOTA, 1, 2) == 4
    assert next_occurrence(IOTA, 3, -1) == 1


def test_unfrozen_vertices():
    assert unfrozen_vertices(IOTA) == (1, 2, 3, 4)
    assert unfrozen_vertices(SignedWord(2, (1, 2))) == ()
    assert unfrozen_vertices(SignedWord(1, (1, 1))) == (1,)


def test_index_checks():
    with pytest.raises(IndexOutOfRange):
        IOTA.letter(7)
    with pytest.raises(IndexOutOfRange):
        IOTA.letter(-3)
    assert IOTA.letter(-1) == 2 and IOTA.sign(-2) == 1


def test_dotted_matrix_examples():
    C = type_A(2)
    B = build_B_matrix(IOTA, C, dotted=True).negate()
    arrows = {(i, j) for i, j, _ in B.quiver_arrows()}
    assert arrows == {(3, 1), (4, 3), (6, 4), (5, 2), (1, 2), (2, 4), (4, 5)}
    B11 = build_B_matrix(SignedWord(1, (1, 1)), type_A(1), dotted=True)
    assert B11.rows == ((0,), (-1,))


def test_left_reflection():
    w = SignedWord(2, (1, -2))
    assert left_reflection(w).letters == (-1, -2)
    assert left_reflection(left_reflection(w)) == w
    with pytest.raises(EmptyWord):
        left_reflection(SignedWord(2, ()))
    C = type_A(2)
    a = build_B_matrix(SignedWord(2, (1, 2, 1)), C, dotted=True)
    b = build_B_matrix(SignedWord(2, (-1, 2, 1)), C, dotted=True)
    assert a == b


def test_flip_examples():
    assert flip(SignedWord(2, (1, -2, 1)), 1) == (SignedWord(2, (-2, 1, 1)), None)
    assert flip(SignedWord(1, (1, -1)), 1) == (SignedWord(1, (-1, 1)), 1)
    with pytest.raises(SameSign):
        flip(SignedWord(1, (1, 1)), 1)


def _bfs_flip_distance(a, b):
    from collections import deque

    seen = {a.letters: 0}
    queue = deque([a])
    while queue:
        w = queue.popleft()
        if w == b:
            return seen[w.letters]
        for k in range(1, len(w)):
            try:
                nw, _ = flip(w, k)
            except SameSign:
                continue
            if nw.letters not in seen:
                seen[nw.letters] = seen[w.letters] + 1
                queue.append(nw)
    return None


def test_flip_path_examples():
    assert flip_path(SignedWord(1, (1, -1)), SignedWord(1, (-1, 1))) == [1]
    assert flip_path(IOTA, IOTA) == []
    a, b = SignedWord(2, (1, 2, -1, -2)), SignedWord(2, (-1, 1, -2, 2))
    path = flip_path(a, b)
    assert len(path) == 3 == _bfs_flip_distance(a, b)
    w = a
    for k in path:
        w, _ = flip(w, k)
    assert w == b
    with pytest.raises(NotAShuffle):
        flip_path(a, SignedWord(2, (1, 2, -2, -1)))


def test_shuffles_count_and_order():
    s = shuffles((1, 2, 1), (1, 2, 1))
    assert len(s) == 20 and s[0] == (1, 2, 1, -1, -2, -1)
    assert len(set(s)) == 20


@given(signed_words(2))
def test_sign_reversal_negates_dotted_matrix(w):
    C = type_A(2)
    neg = SignedWord(2, tuple(-a for a in w.letters))
    assert build_B_matrix(neg, C, dotted=True) == build_B_matrix(w, C, dotted=True).negate()


@pytest.mark.parametrize("name", ["A2", "B2", "A3", "G2"])
def test_equal_colour_flip_is_mutation(name):
    C = cartan_preset(name)
    rng = random.Random(hash(name) % 1000)
    hits = 0
    for _ in range(60):
        L = [rng.choice([1, -1]) * rng.randint(1, C.rank) for _ in range(rng.randint(2, 6))]
        w = SignedWord(C.rank, tuple(L))
        for k in range(1, len(w)):
            a, b = L[k - 1], L[k]
            if a == -b:
                nw, m = flip(w, k)
                assert build_B_matrix(nw, C) == build_B_matrix(w, C).mutate(m)
                hits += 1
    assert hits > 0


@pytest.mark.parametrize("name", ["A2", "B2"])
def test_distinct_colour_flip_is_relabelling(name):
    C = cartan_preset(name)
    for L in itertools.product([1, -1, 2, -2], repeat=4):
        w = SignedWord(2, L)
        for k in range(1, 4):
            a, b = L[k - 1], L[k]
            if (a > 0) != (b > 0) and abs(a) != abs(b):
                nw, m = flip(w, k)
                assert m is None
                B, Bn = build_B_matrix(w, C), build_B_matrix(nw, C)
                sigma = {v: v for v in B.index.labels}
                sigma[k], sigma[k + 1] = k + 1, k
                for i in B.index.labels:
                    for j in B.index.unfrozen:
                        assert Bn.entry(sigma[i], sigma[j]) == B.entry(i, j)
