"""Quantum seeds attached to signed words through weight data.

Two families live here:

* the seeds on the extended index set [-r,-1] u [1,l] whose variables are
  labelled by pairs of weights (gamma_k, delta_k), with exchange matrix minus
  the signed-word matrix and Lambda read off from weight pairings;
* the seeds on [1,l] for an unshuffled word (zeta^op, eta), quantized by the
  root-pairing form nu.

Generalized minors are never evaluated; a variable is identified with its
weight label.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .cartan import CartanData, act_by_word, is_reduced, reflect, roots_of_word, weight_pairing
from .coefficient import Coefficient
from .errors import NonIntegerLambda, NotReducedPair, SameSign
from .lattice import pos
from .seeds import (
    QuantumSeed,
    check_compatible_pair,
    matching_permutation,
    mutate_seed,
    permute_seed,
)
from .signed_words import (
    SignedWord,
    build_B_matrix,
    flip,
    next_occurrence,
    occurrences,
)
from .torus import TorusContext, TorusElement, exact_divide


@dataclass(frozen=True)
class BZSeed:
    seed: QuantumSeed
    word: SignedWord
    cartan: CartanData
    weights: dict = field(compare=False)
    pair: tuple = ()

    def label(self, k) -> tuple:
        return self.weights[k]

    def labels(self) -> tuple:
        return tuple(self.weights[k] for k in self.seed.index.labels)

    def weight_table(self) -> list:
        return [{"vertex": k, "gamma": list(g), "delta": list(d)} for k, (g, d) in
                ((k, self.weights[k]) for k in self.seed.index.labels)]

    def __eq__(self, other):
        if not isinstance(other, BZSeed):
            return NotImplemented
        return self.seed == other.seed and self.labels() == other.labels()

    def __hash__(self):
        return hash((self.seed.key(), self.labels()))


def bz_weights(C: CartanData, word: SignedWord) -> dict:
    """(gamma_k, delta_k) for every vertex of the extended index set."""
    w_word = word.positive_subword()
    w_inv = tuple(reversed(w_word))
    out = {}
    for t in range(1, word.rank + 1):
        i = word.letter(-t)
        om = C.fundamental(i)
        out[-t] = (om, act_by_word(C, w_inv, om))
    for k in word.positions:
        om = C.fundamental(word.color(k))
        u_le = [-a for a in word.letters[:k] if a < 0]
        w_gt_inv = [a for a in reversed(word.letters[k:]) if a > 0]
        gamma = act_by_word(C, u_le, om)
        delta = act_by_word(C, w_gt_inv, om)
        # cross-check against w^{-1} w_{<=k}
        w_le = [a for a in word.letters[:k] if a > 0]
        if act_by_word(C, list(w_inv) + w_le, om) != delta:
            raise NotReducedPair("inconsistent delta weights")
        out[k] = (gamma, delta)
    return out


def bz_lambda(C: CartanData, labels: Sequence, weights: dict) -> tuple:
    """Lambda_kj = <gamma_k, gamma_j> - <delta_k, delta_j> for k after j."""
    n = len(labels)
    L = [[0] * n for _ in range(n)]
    for a in range(n):
        ga, da = weights[labels[a]]
        for b in range(a):
            gb, db = weights[labels[b]]
            v = weight_pairing(C, ga, gb) - weight_pairing(C, da, db)
            if v.denominator != 1:
                raise NonIntegerLambda(f"Lambda_{labels[a]},{labels[b]} = {v}")
            L[a][b] = int(v)
            L[b][a] = -int(v)
    return tuple(tuple(r) for r in L)


def build_bz_seed(C: CartanData, word: SignedWord, ref: TorusContext | None = None, variables=None) -> BZSeed:
    u_word = word.negative_subword()
    w_word = word.positive_subword()
    if not is_reduced(C, u_word) or not is_reduced(C, w_word):
        raise NotReducedPair(f"{word} is not a shuffle of reduced words")
    weights = bz_weights(C, word)
    B = build_B_matrix(word, C).negate()
    labels = B.index.labels
    L = bz_lambda(C, labels, weights)
    check_compatible_pair(B, L)
    if variables is None:
        seed = QuantumSeed.initial(B, L, name=str(word))
    else:
        seed = QuantumSeed(B, L, tuple(variables), name=str(word))
    return BZSeed(seed, word, C, weights, (u_word, w_word))


def flip_bz(S: BZSeed, k: int) -> tuple[BZSeed, dict]:
    """Flip positions k, k+1 and move the seed along: a transposition when
    the letters have different colours, the mutation at k otherwise."""
    word, m = flip(S.word, k)
    C = S.cartan
    if m is None:
        sigma = {k: k + 1, k + 1: k}
        seed = permute_seed(S.seed, sigma, relabel_frozen=True)
        weights = dict(S.weights)
        weights[k], weights[k + 1] = S.weights[k + 1], S.weights[k]
        move = {"permute": [[k, k + 1], [k + 1, k]]}
    else:
        seed = mutate_seed(S.seed, k)
        weights = dict(S.weights)
        weights[k] = bz_weights(C, word)[k]
        move = {"mutate": k}
    seed = replace(seed, name=str(word))
    return BZSeed(seed, word, C, weights, S.pair), move


def flipped_weight(C: CartanData, word: SignedWord, k: int) -> tuple:
    """(u_{<=k} s_m w_m, w^{-1}_{>k} s_m w_m) for the colour m at k."""
    m = word.color(k)
    sm = reflect(C, m, C.fundamental(m))
    u_le = [-a for a in word.letters[:k] if a < 0]
    w_gt_inv = [a for a in reversed(word.letters[k:]) if a > 0]
    return act_by_word(C, u_le, sm), act_by_word(C, w_gt_inv, sm)


@dataclass
class FlipReport:
    k: int
    alpha: Fraction
    beta: Fraction
    passed: bool

    def to_json(self):
        return {"k": self.k, "alpha": str(self.alpha), "beta": str(self.beta), "passed": self.passed}


def exchange_rhs(S: BZSeed, k: int) -> TorusElement:
    """q^{-1} x_{k[1]} x_{k[-1]} + (normalized frozen-weighted monomial),
    written in the reference torus."""
    seed = S.seed
    k1 = next_occurrence(S.word, k)
    km = next_occurrence(S.word, k, -1)
    first = (seed.x(k1) * seed.x(km)).scale(Coefficient.qpow(-2))
    _, v = seed.exchange_vectors(k)
    return first + seed.monomial(v)


def verify_flip_qpowers(S: BZSeed, k: int) -> FlipReport:
    """Mutate at k and write x_k(mu_k S) x_k(S) as
    q^alpha x_{k[1]} x_{k[-1]} + q^beta x^{sum [-b_jk]_+ f_j}."""
    a, b = S.word.letters[k - 1], S.word.letters[k]
    if (a > 0) == (b > 0):
        raise SameSign(f"positions {k}, {k + 1} have the same sign")
    if abs(a) != abs(b):
        raise ValueError("flip at k is a pure relabelling; there is no exchange to check")
    if a < 0:
        raise ValueError("the exchange identity is checked for the pattern (m, -m) only")
    # the identity lives in the seed's own torus, whatever the realization
    seed = QuantumSeed.initial(S.seed.B, S.seed.Lambda)
    new = mutate_seed(seed, k).x(k)
    lhs = new * seed.x(k)
    k1 = next_occurrence(S.word, k)
    km = next_occurrence(S.word, k, -1)
    t1 = seed.x(k1) * seed.x(km)
    _, v = seed.exchange_vectors(k)
    t2 = seed.monomial(v)
    alpha = _solve_q_shift(lhs, t1, t2)
    if alpha is None:
        return FlipReport(k, Fraction(0), Fraction(0), False)
    al, be = alpha
    ok = al == Fraction(-1) and be == 0
    return FlipReport(k, al, be, ok)


def _solve_q_shift(lhs: TorusElement, t1: TorusElement, t2: TorusElement):
    """Find half-integers (alpha, beta) with lhs = q^alpha t1 + q^beta t2
    (t1, t2 monomials)."""
    m1 = max(t1.support())
    c1 = t1.coefficient(m1)
    l1 = lhs.coefficient(m1)
    if l1.is_zero() or len(l1.terms) != 1 or len(c1.terms) != 1:
        return None
    a = l1.single_exponent() - c1.single_exponent()
    rest = lhs - t1.scale(Coefficient.qpow(a))
    m2 = max(t2.support())
    c2 = t2.coefficient(m2)
    l2 = rest.coefficient(m2)
    if l2.is_zero() or len(l2.terms) != 1 or len(c2.terms) != 1:
        return None
    b = l2.single_exponent() - c2.single_exponent()
    if rest != t2.scale(Coefficient.qpow(b)):
        return None
    return Fraction(a, 2), Fraction(b, 2)


# -- the nu form and the unshuffled seeds ---------------------------------

def unshuffled_word(zeta: Sequence[int], eta: Sequence[int], rank: int) -> SignedWord:
    """iota = (zeta^op, eta)."""
    return SignedWord(rank, tuple(reversed(zeta)) + tuple(eta))


def nu_matrix(C: CartanData, zeta: Sequence[int], eta: Sequence[int]) -> tuple:
    """The skew form nu on Z^[1,l], rows k and columns j."""
    lw = len(zeta)
    beta = roots_of_word(C, zeta)
    beta_p = roots_of_word(C, eta)
    l = lw + len(eta)

    def root(k):
        return beta[lw - k] if k <= lw else beta_p[k - lw - 1]

    nu = [[Fraction(0)] * l for _ in range(l)]
    for k in range(1, l + 1):
        for j in range(1, k):
            p = weight_pairing(C, root(k), root(j))
            if k <= lw or j > lw:
                v = -p
            else:
                v = p
            nu[k - 1][j - 1] = v
            nu[j - 1][k - 1] = -v
    for r in nu:
        for v in r:
            if v.denominator != 1:
                raise NonIntegerLambda("nu has non-integer entries")
    return tuple(tuple(int(v) for v in r) for r in nu)


def interval_lambda(C: CartanData, zeta: Sequence[int], eta: Sequence[int]) -> tuple:
    """Lambda_kj = nu(f_[k^min,k], f_[j^min,j])."""
    word = unshuffled_word(zeta, eta, C.rank)
    nu = nu_matrix(C, zeta, eta)
    l = len(word)
    occ = {k: occurrences(word, k) for k in word.positions}
    return tuple(
        tuple(sum(nu[a - 1][b - 1] for a in occ[k] for b in occ[j]) for j in range(1, l + 1))
        for k in range(1, l + 1)
    )


def unshuffled_seed(C: CartanData, zeta: Sequence[int], eta: Sequence[int]) -> QuantumSeed:
    """The seed on [1,l] for (zeta^op, eta): the dotted signed-word matrix
    with Lambda = -interval_lambda."""
    if not is_reduced(C, zeta) or not is_reduced(C, eta):
        raise NotReducedPair("zeta and eta must be reduced")
    word = unshuffled_word(zeta, eta, C.rank)
    B = build_B_matrix(word, C, dotted=True)
    L = tuple(tuple(-v for v in r) for r in interval_lambda(C, zeta, eta))
    check_compatible_pair(B, L)
    return QuantumSeed.initial(B, L, name=str(word))


# -- label dictionaries and connection search ------------------------------

class LabelBook:
    """A consistent dictionary weight label -> torus element in one
    reference torus, grown along flips and seed matches."""

    def __init__(self, base: BZSeed):
        self.base = base
        self.ref = base.seed.ref
        self.book: dict = {}
        for lab, x in zip(base.labels(), base.seed.variables):
            self.book[lab] = x

    def realize(self, S: BZSeed) -> BZSeed | None:
        """S with its variables replaced by their dictionary entries, or None
        if some label is unknown."""
        try:
            xs = tuple(self.book[lab] for lab in S.labels())
        except KeyError:
            return None
        seed = QuantumSeed(S.seed.B, S.seed.Lambda, xs, S.seed.name)
        return BZSeed(seed, S.word, S.cartan, S.weights, S.pair)

    def register(self, label, x: TorusElement) -> bool:
        old = self.book.get(label)
        if old is None:
            self.book[label] = x
            return True
        return old == x

    def extend_by_flip(self, S: BZSeed, k: int) -> BZSeed:
        """Given a realized S, define the new label at a colour-preserving
        flip from the exchange identity with exponents (-1, 0)."""
        rhs = exchange_rhs(S, k)
        new_x = exact_divide(rhs, S.seed.x(k), side="right")
        T, _ = flip_bz(S, k)
        self.register(T.weights[k], new_x)
        return self.realize(T)


def words_of_pair(C: CartanData, u_word, w_word) -> list:
    from .signed_words import shuffles

    return [SignedWord(C.rank, s) for s in shuffles(w_word, u_word)]


def connectivity_corpus(C: CartanData, other_reduced: bool = True) -> list:
    """Signed words for (w_0, w_0): every shuffle of one reduced pair, then
    the unshuffled word of each remaining pair of reduced words."""
    from itertools import product

    from .cartan import longest_word, reduced_words
    from .signed_words import shuffles

    w0 = longest_word(C)
    words = [SignedWord(C.rank, s) for s in shuffles(w0, w0)]
    if other_reduced:
        rws = reduced_words(C, w0)
        for z, e in product(rws, rws):
            if (z, e) != (w0, w0):
                words.append(SignedWord(C.rank, tuple(z) + tuple(-a for a in e)))
    return words


def _match_labels(T: QuantumSeed, W: BZSeed, book: dict) -> dict | None:
    """A bijection sigma from W's vertices to T's with matching B, Lambda
    and with every already-known label landing on its known variable."""
    wl = W.seed.index.labels
    tl = T.index.labels
    where = {x.key(): lab for lab, x in zip(tl, T.variables)}
    fixed = {}
    for v in wl:
        x = book.get(W.weights[v])
        if x is not None:
            t = where.get(x.key())
            if t is None:
                return None
            fixed[v] = t
    if len(set(fixed.values())) != len(fixed):
        return None
    order = [v for v in wl if v in fixed] + [v for v in wl if v not in fixed]
    WB, TB = W.seed.B, T.B
    WL, TL = W.seed.Lambda, T.Lambda
    wp, tp = W.seed.index.position, T.index.position
    wuf, tuf = set(W.seed.index.unfrozen), set(T.index.unfrozen)

    def consistent(sigma, v):
        sv = sigma[v]
        if (v in wuf) != (sv in tuf):
            return False
        for u, su in sigma.items():
            if WL[wp(v)][wp(u)] != TL[tp(sv)][tp(su)]:
                return False
            if u in wuf and WB.entry(v, u) != TB.entry(sv, su):
                return False
            if v in wuf and WB.entry(u, v) != TB.entry(su, sv):
                return False
        return True

    def rec(i, sigma, used):
        if i == len(order):
            return dict(sigma)
        v = order[i]
        cands = [fixed[v]] if v in fixed else [t for t in tl if t not in used]
        for t in cands:
            if t in used:
                continue
            sigma[v] = t
            used.add(t)
            if consistent(sigma, v):
                out = rec(i + 1, sigma, used)
                if out is not None:
                    return out
            del sigma[v]
            used.discard(t)
        return None

    return rec(0, {}, set())


def realize_corpus(C: CartanData, words: Sequence[SignedWord], max_seeds: int = 5000):
    """Place the BZ seeds of ``words`` in one reference torus.

    The first word must be unshuffled, (zeta, -eta).  Shuffles of the same
    reduced pair are reached by flips moving negative letters left; the new
    variable at a colour-preserving flip is defined by the exchange identity
    with exponents (-1, 0).  Words with other reduced words are located in
    the exchange graph by matching B, Lambda and every already-known label;
    their remaining labels are then registered from the match.

    Returns (dict letters -> realized BZSeed, LabelBook)."""
    from collections import deque

    from .seeds import enumerate_exchange_graph

    base = build_bz_seed(C, words[0])
    book = LabelBook(base)
    wanted = {w.letters for w in words}
    realized = {base.word.letters: base}
    queue = deque([base])
    while queue:
        S = queue.popleft()
        for k in range(1, len(S.word)):
            a, b = S.word.letters[k - 1], S.word.letters[k]
            if not (a > 0 > b):
                continue
            nw, m = flip(S.word, k)
            if nw.letters in realized:
                continue
            if m is None:
                T, _ = flip_bz(S, k)
            else:
                T = book.extend_by_flip(S, k)
            realized[nw.letters] = T
            queue.append(T)
    missing = [w for w in words if w.letters not in realized]
    if missing:
        graph = enumerate_exchange_graph(base.seed, max_seeds=max_seeds)
        for w in missing:
            W = build_bz_seed(C, w)
            for T in graph.seeds:
                sigma = _match_labels(T, W, book.book)
                if sigma is None:
                    continue
                xs = tuple(T.x(sigma[v]) for v in W.seed.index.labels)
                for v, x in zip(W.seed.index.labels, xs):
                    book.register(W.weights[v], x)
                realized[w.letters] = book.realize(W)
                break
    return {k: v for k, v in realized.items() if k in wanted}, book


def connect(Sa: BZSeed, Sb: BZSeed, max_depth: int = 12):
    """Mutation path (with a final relabelling) between two realized BZ seeds."""
    from .seeds import find_mutation_path

    return find_mutation_path(Sa.seed, Sb.seed, max_depth, use_permutations=True)
