import pytest

from qclaw.bz import (
    LabelBook,
    build_bz_seed,
    bz_weights,
    connect,
    flip_bz,
    interval_lambda,
    nu_matrix,
    realize_corpus,
    connectivity_corpus,
    unshuffled_seed,
    unshuffled_word,
    verify_flip_qpowers,
)
from qclaw.cartan import cartan_preset, reflect, type_A, weight_pairing
from qclaw.errors import NotReducedPair, SameSign
from qclaw.golden import load_sl3_fixture
from qclaw.seeds import find_mutation_path, mutate_seed
from qclaw.signed_words import SignedWord, flip, flip_path, shuffles

A1, A2 = type_A(1), type_A(2)
W1 = (1,)


def test_a1_weights():
    w = SignedWord(1, (1, -1))
    W = bz_weights(A1, w)
    s1w = reflect(A1, 1, W1)
    assert W[-1] == (W1, s1w)
    assert W[1] == (W1, W1)
    # gamma_2 = s_1 w_1; no positive letter after position 2, so delta_2 = w_1
    assert W[2] == (s1w, W1)


def test_a1_lambda_from_pairings():
    S = build_bz_seed(A1, SignedWord(1, (1, -1)))
    W = S.weights
    labels = S.seed.index.labels
    for a, k in enumerate(labels):
        for b, j in enumerate(labels[:a]):
            gk, dk = W[k]
            gj, dj = W[j]
            want = weight_pairing(A1, gk, gj) - weight_pairing(A1, dk, dj)
            assert S.seed.Lambda[a][b] == want
    assert S.seed.Lambda[labels.index(2)][labels.index(1)] == -1
    assert S.seed.dprime() == (2,)


def test_a2_compatibility_unit_symmetrizer():
    S = build_bz_seed(A2, SignedWord(2, (1, 2, 1, -1, -2, -1)))
    assert set(S.seed.dprime()) == {2}


def test_non_reduced_rejected():
    with pytest.raises(NotReducedPair):
        build_bz_seed(A2, SignedWord(2, (1, 1, -2)))


def test_flip_moves():
    S = build_bz_seed(A2, SignedWord(2, (1, -2, 2, -1)))
    T, move = flip_bz(S, 1)
    assert "permute" in move and T.word.letters == (-2, 1, 2, -1)
    S1 = build_bz_seed(A1, SignedWord(1, (1, -1)))
    T1, move = flip_bz(S1, 1)
    assert move == {"mutate": 1}
    assert T1.weights[1][0] == reflect(A1, 1, W1)
    with pytest.raises(SameSign):
        flip_bz(build_bz_seed(A2, SignedWord(2, (1, 2, -1, -2))), 1)


def test_flip_chain_reproduces_fresh_seeds():
    base_word = SignedWord(2, (1, 2, 1, -1, -2, -1))
    base = build_bz_seed(A2, base_word)
    for letters in shuffles((1, 2, 1), (1, 2, 1)):
        target = SignedWord(2, letters)
        S = base
        for k in flip_path(base_word, target):
            S, _ = flip_bz(S, k)
        fresh = build_bz_seed(A2, target)
        assert S.word == target
        assert S.seed.B == fresh.seed.B and S.seed.Lambda == fresh.seed.Lambda
        assert S.labels() == fresh.labels()


def test_flip_qpowers_a1():
    rep = verify_flip_qpowers(build_bz_seed(A1, SignedWord(1, (1, -1))), 1)
    assert (rep.alpha, rep.beta) == (-1, 0) and rep.passed


def test_flip_qpowers_a2_after_flips():
    w = SignedWord(2, (1, 2, 1, -1, -2, -1))
    S = build_bz_seed(A2, w)
    assert verify_flip_qpowers(S, 3).passed
    # bring another equal-letter pair together
    S, _ = flip_bz(S, 3)
    S, _ = flip_bz(S, 2)
    assert S.word.letters == (1, -1, 2, 1, -2, -1)
    assert verify_flip_qpowers(S, 1).passed
    with pytest.raises(ValueError):
        verify_flip_qpowers(S, 2)


@pytest.mark.parametrize("ext", [(1, 2), (2, 1)])
def test_flip_qpowers_independent_of_extension(ext):
    for letters in shuffles((1, 2, 1), (1, 2, 1)):
        w = SignedWord(2, letters, ext)
        S = build_bz_seed(A2, w)
        for k in range(1, 6):
            a, b = letters[k - 1], letters[k]
            if a > 0 > b and a == -b:
                rep = verify_flip_qpowers(S, k)
                assert (rep.alpha, rep.beta) == (-1, 0)


@pytest.mark.parametrize("name", ["B2", "G2"])
def test_flip_qpowers_non_simply_laced(name):
    from qclaw.cartan import longest_word

    C = cartan_preset(name)
    w0 = longest_word(C)
    # eta = reversed w0 puts equal letters at the junction
    w = SignedWord(C.rank, tuple(w0) + tuple(-a for a in reversed(w0)))
    S = build_bz_seed(C, w)
    k = len(w0)
    rep = verify_flip_qpowers(S, k)
    assert (rep.alpha, rep.beta) == (-1, 0)


def test_golden_nu_and_lambda():
    fx = load_sl3_fixture()
    nu = nu_matrix(A2, (1, 2, 1), (1, 2, 1))
    assert [list(r) for r in nu] == fx["nu"]
    L = interval_lambda(A2, (1, 2, 1), (1, 2, 1))
    assert [list(r) for r in L] == fx["Lambda"]
    assert L[0][3] == 0 and L[0][2] == -1


def test_unshuffled_seed():
    S = unshuffled_seed(A2, (1, 2, 1), (1, 2, 1))
    assert unshuffled_word((1, 2, 1), (1, 2, 1), 2).letters == (1, 2, 1, 1, 2, 1)
    assert S.dprime() == (2, 2, 2, 2)
    T = unshuffled_seed(A1, (1,), (1,))
    assert T.B.rows == ((0,), (-1,))


def test_a1_connection_is_one_mutation():
    words = connectivity_corpus(A1)
    realized, _ = realize_corpus(A1, words)
    Sa, Sb = (realized[w.letters] for w in words)
    r = connect(Sa, Sb, 3)
    assert r.found and [m for m in r.path if "mutate" in m] == [{"mutate": 1}]


def test_label_book_consistency():
    base = build_bz_seed(A1, SignedWord(1, (1, -1)))
    book = LabelBook(base)
    T = book.extend_by_flip(base, 1)
    assert T.seed == mutate_seed(base.seed, 1)
    assert book.register(T.weights[1], T.seed.x(1))
    assert not book.register(T.weights[1], base.seed.x(1))


def test_connectivity_corpus_a2_shape():
    words = connectivity_corpus(A2)
    assert len(words) == 23
    assert words[0].letters == (1, 2, 1, -1, -2, -1)
    realized, _ = realize_corpus(A2, words)
    assert len(realized) == 23
    a = realized[words[0].letters]
    b = realized[words[-1].letters]
    assert find_mutation_path(a.seed, b.seed, 12, use_permutations=True).found
