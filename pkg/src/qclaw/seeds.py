"""Classical and quantum seeds, compatible pairs, mutation and exchange-graph search.

Cluster variables of every seed are stored as torus elements of one fixed
reference torus (normally the initial seed's). A mutated variable is the
two-term exchange expression evaluated in the current cluster and divided
exactly by the old variable.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Callable, Hashable, Iterable, Sequence

from .coefficient import Coefficient
from .errors import Incompatible, NotDivisible, NotLaurent, PermutationMixesFrozen
from .lattice import DominanceOrder, ExchangeMatrix, IndexSet, pos
from .torus import (
    TorusContext,
    TorusElement,
    degree_and_pointedness,
    exact_divide,
    monomial_q_normalization,
)


def _lambda_tuple(L):
    if L is None:
        return None
    return tuple(tuple(int(v) for v in r) for r in L)


def check_compatible_pair(B: ExchangeMatrix, Lambda) -> tuple:
    """Return (d'_k) for k in I_uf with sum_j Lambda_ij b_jk = -delta_ik d'_k."""
    L = _lambda_tuple(Lambda)
    idx = B.index
    n = len(idx)
    if L is None or len(L) != n or any(len(r) != n for r in L):
        raise Incompatible("Lambda has the wrong shape")
    for i in range(n):
        for j in range(n):
            if L[i][j] != -L[j][i]:
                raise Incompatible("Lambda is not skew-symmetric")
    uf = idx.unfrozen
    dprime = []
    for c, k in enumerate(uf):
        kp = idx.position(k)
        for i in range(n):
            v = sum(L[i][j] * B.rows[j][c] for j in range(n))
            if i == kp:
                if -v <= 0:
                    raise Incompatible(f"d'_{k} = {-v} is not positive")
                dprime.append(-v)
            elif v != 0:
                raise Incompatible(f"(Lambda B)_{idx.labels[i]},{k} = {v} should vanish")
    return tuple(dprime)


def mutate_matrix(B: ExchangeMatrix, k) -> ExchangeMatrix:
    return B.mutate(k)


def tropical_phi(m: Sequence[int], k, B: ExchangeMatrix) -> tuple:
    """The piecewise-linear map M(s) -> M(mu_k s) built from the entries of B."""
    idx = B.index
    kp = idx.position(k)
    col = B.column(k)
    mk = m[kp]
    out = []
    for i, mi in enumerate(m):
        if i == kp:
            out.append(-mk)
        else:
            out.append(mi + pos(col[i]) * pos(mk) - pos(-col[i]) * pos(-mk))
    return tuple(out)


def mutate_lambda(Lambda, B: ExchangeMatrix, k) -> tuple:
    """Lambda'_ij = lambda(phi f'_i, phi f'_j) with phi: M(mu_k s) -> M(s)."""
    L = _lambda_tuple(Lambda)
    idx = B.index
    Bp = B.mutate(k)
    n = len(idx)
    images = [tropical_phi(idx.basis(v), k, Bp) for v in idx.labels]
    ctx = TorusContext(idx, L)
    return tuple(tuple(ctx.lam(images[i], images[j]) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class QuantumSeed:
    """Exchange matrix, optional Lambda, and cluster variables in a fixed
    reference torus (one per label, in label order)."""

    B: ExchangeMatrix
    Lambda: tuple | None
    variables: tuple
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "Lambda", _lambda_tuple(self.Lambda))
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(self.variables) != len(self.B.index):
            raise ValueError("one variable per vertex is required")

    @classmethod
    def initial(cls, B: ExchangeMatrix, Lambda=None, name: str | None = None) -> "QuantumSeed":
        """Seed whose variables are the coordinate monomials x^{f_i} of its
        own torus."""
        ctx = TorusContext(B.index, _lambda_tuple(Lambda))
        xs = tuple(TorusElement.variable(ctx, v) for v in B.index.labels)
        return cls(B, Lambda, xs, name)

    @property
    def index(self) -> IndexSet:
        return self.B.index

    @property
    def ref(self) -> TorusContext:
        return self.variables[0].ctx

    @property
    def own_context(self) -> TorusContext:
        return TorusContext(self.index, self.Lambda)

    def is_quantum(self) -> bool:
        return self.Lambda is not None

    def x(self, label) -> TorusElement:
        return self.variables[self.index.position(label)]

    def dprime(self) -> tuple:
        return check_compatible_pair(self.B, self.Lambda)

    def key(self) -> tuple:
        return (self.index.labels, self.index.frozen, self.B.rows, self.Lambda, tuple(v.key() for v in self.variables))

    def cluster_key(self) -> frozenset:
        return frozenset(v.key() for v in self.variables)

    def monomial(self, m: Sequence[int]) -> TorusElement:
        """The normalized cluster monomial x^m(s) in the reference torus.

        Negative powers are allowed only for variables that are invertible
        torus monomials (frozen variables, initial variables)."""
        ctx = self.ref
        own = self.own_context
        out = TorusElement.one(ctx)
        for v, e in zip(self.variables, m):
            if e:
                out = out * (v ** e)
        shift = monomial_q_normalization(own, m)
        return out.scale(Coefficient.qpow(shift)) if shift else out

    def exchange_vectors(self, k) -> tuple[tuple, tuple]:
        """(sum_j [-b_jk]_+ f_j, sum_i [b_ik]_+ f_i)."""
        col = self.B.column(k)
        return tuple(pos(-b) for b in col), tuple(pos(b) for b in col)

    def exchange_numerator(self, k) -> TorusElement:
        """x_k * x'_k written in the reference torus."""
        own = self.own_context
        fk = self.index.basis(k)
        out = TorusElement.zero(self.ref)
        for v in self.exchange_vectors(k):
            out = out + self.monomial(v).scale(Coefficient.qpow(own.lam(fk, v)))
        return out

    def __repr__(self):
        return f"QuantumSeed(name={self.name!r}, B={self.B.rows}, Lambda={self.Lambda})"


def mutate_seed(S: QuantumSeed, k) -> QuantumSeed:
    """mu_k S with the new variable re-expressed in the reference torus."""
    if k in S.index.frozen or k not in S.index.labels:
        raise ValueError(f"cannot mutate at {k!r}")
    num = S.exchange_numerator(k)
    try:
        new_x = exact_divide(num, S.x(k), side="left")
    except NotDivisible as exc:
        raise NotLaurent(f"exchange at {k!r} is not Laurent in the reference torus") from exc
    Bp = S.B.mutate(k)
    Lp = mutate_lambda(S.Lambda, S.B, k) if S.Lambda is not None else None
    xs = list(S.variables)
    xs[S.index.position(k)] = new_x
    return QuantumSeed(Bp, Lp, tuple(xs), S.name)


def mutate_path(S: QuantumSeed, path: Iterable) -> QuantumSeed:
    for k in path:
        S = mutate_seed(S, k)
    return S


def _permute_square(M, idx: IndexSet, sigma: dict):
    n = len(idx)
    out = [[0] * n for _ in range(n)]
    p = idx.position
    for a in idx.labels:
        for b in idx.labels:
            out[p(sigma[a])][p(sigma[b])] = M[p(a)][p(b)]
    return tuple(tuple(r) for r in out)


def permute_seed(S: QuantumSeed, sigma: dict, relabel_frozen: bool = False) -> QuantumSeed:
    """The seed sigma S: (sigma B)_{sigma i, sigma j} = b_ij and
    x_{sigma i}(sigma S) = x_i(S).

    By default sigma must preserve the frozen labels.  With
    ``relabel_frozen`` the frozen set is transported along sigma instead."""
    idx = S.index
    sigma = {v: sigma.get(v, v) for v in idx.labels}
    if sorted(map(repr, sigma.values())) != sorted(map(repr, idx.labels)):
        raise ValueError("sigma is not a permutation of the labels")
    if relabel_frozen:
        new_idx = IndexSet(idx.labels, frozenset(sigma[v] for v in idx.frozen))
    else:
        for v in idx.labels:
            if (v in idx.frozen) != (sigma[v] in idx.frozen):
                raise PermutationMixesFrozen(f"sigma sends {v!r} across the frozen/unfrozen split")
        new_idx = idx
    p = new_idx.position
    rows = [[0] * len(new_idx.unfrozen) for _ in idx.labels]
    cp = {k: c for c, k in enumerate(new_idx.unfrozen)}
    for i in idx.labels:
        for k in idx.unfrozen:
            rows[p(sigma[i])][cp[sigma[k]]] = S.B.entry(i, k)
    B = ExchangeMatrix(new_idx, tuple(tuple(r) for r in rows))
    L = _permute_square(S.Lambda, idx, sigma) if S.Lambda is not None else None
    xs = [None] * len(idx)
    for i in idx.labels:
        xs[p(sigma[i])] = S.x(i)
    return QuantumSeed(B, L, tuple(xs), S.name)


def opposite_seed(S: QuantumSeed) -> QuantumSeed:
    L = None if S.Lambda is None else tuple(tuple(-v for v in r) for r in S.Lambda)
    return QuantumSeed(S.B.negate(), L, S.variables, S.name)


def matching_permutation(Sa: QuantumSeed, Sb: QuantumSeed) -> dict | None:
    """The sigma with sigma Sa == Sb, if any (variables must be distinct)."""
    where = {}
    for lab, v in zip(Sb.index.labels, Sb.variables):
        where.setdefault(v.key(), []).append(lab)
    sigma = {}
    for lab, v in zip(Sa.index.labels, Sa.variables):
        cands = where.get(v.key())
        if not cands or len(cands) != 1:
            return None
        sigma[lab] = cands[0]
    if permute_seed(Sa, sigma, relabel_frozen=True) == Sb:
        return sigma
    return None


# -- breadth-first search ----------------------------------------------

@dataclass
class SearchResult:
    found: bool
    path: list
    explored: int
    max_depth: int

    def to_json(self):
        if not self.found:
            return {"found": False, "notFound": {"maxDepth": self.max_depth}, "explored": self.explored}
        return {"found": True, "path": self.path, "explored": self.explored}


def bfs_search(start, neighbors: Callable, key: Callable, goal: Callable, max_depth: int) -> SearchResult:
    """Generic BFS; ``goal(node)`` returns None or a list of trailing moves."""
    tail = goal(start)
    if tail is not None:
        return SearchResult(True, list(tail), 1, max_depth)
    seen = {key(start)}
    frontier = deque([(start, [])])
    explored = 1
    while frontier:
        node, path = frontier.popleft()
        if len(path) >= max_depth:
            continue
        for move, nxt in neighbors(node):
            kk = key(nxt)
            if kk in seen:
                continue
            seen.add(kk)
            explored += 1
            npath = path + [move]
            tail = goal(nxt)
            if tail is not None:
                return SearchResult(True, npath + list(tail), explored, max_depth)
            frontier.append((nxt, npath))
    return SearchResult(False, [], explored, max_depth)


def _mutation_neighbors(S: QuantumSeed):
    for k in S.index.unfrozen:
        yield {"mutate": k}, mutate_seed(S, k)


def find_mutation_path(Sa: QuantumSeed, Sb: QuantumSeed, max_depth: int, use_permutations: bool = False) -> SearchResult:
    """Shortest sequence of mutations (plus a final relabelling when allowed)
    taking Sa to Sb."""
    if Sa.ref != Sb.ref:
        raise ValueError("seeds must share a reference torus")

    def goal(S):
        if S == Sb:
            return []
        if use_permutations:
            sigma = matching_permutation(S, Sb)
            if sigma is not None:
                return [{"permute": [[a, sigma[a]] for a in S.index.labels]}]
        return None

    key = (lambda S: (S.cluster_key(),)) if use_permutations else (lambda S: S.key())
    return bfs_search(Sa, _mutation_neighbors, key, goal, max_depth)


def find_mutation_paths(Sa: QuantumSeed, targets: Sequence[QuantumSeed], max_depth: int,
                        use_permutations: bool = True) -> list:
    """One breadth-first sweep from Sa answering ``find_mutation_path`` for
    every target at once."""
    results: list = [None] * len(targets)

    def check(S, path, explored):
        for t, Sb in enumerate(targets):
            if results[t] is not None:
                continue
            if S == Sb:
                results[t] = SearchResult(True, list(path), explored, max_depth)
            elif use_permutations:
                sigma = matching_permutation(S, Sb)
                if sigma is not None:
                    move = {"permute": [[a, sigma[a]] for a in S.index.labels]}
                    results[t] = SearchResult(True, list(path) + [move], explored, max_depth)

    key = (lambda S: S.cluster_key()) if use_permutations else (lambda S: S.key())
    seen = {key(Sa)}
    frontier = deque([(Sa, [])])
    check(Sa, [], 1)
    explored = 1
    while frontier and any(r is None for r in results):
        node, path = frontier.popleft()
        if len(path) >= max_depth:
            continue
        for move, nxt in _mutation_neighbors(node):
            kk = key(nxt)
            if kk in seen:
                continue
            seen.add(kk)
            explored += 1
            check(nxt, path + [move], explored)
            frontier.append((nxt, path + [move]))
    return [r if r is not None else SearchResult(False, [], explored, max_depth) for r in results]


@dataclass
class ExchangeGraph:
    seeds: list
    paths: list
    truncated: bool
    edges: list = field(default_factory=list)

    def __len__(self):
        return len(self.seeds)


def max_seeds_default(fallback: int = 10000) -> int:
    v = os.environ.get("QCLAW_MAX_SEEDS")
    return int(v) if v else fallback


def enumerate_exchange_graph(S: QuantumSeed, max_seeds: int | None = None, modulo_permutation: bool = True) -> ExchangeGraph:
    """BFS closure of S under all mutations.

    With ``modulo_permutation`` seeds are identified by their unordered
    cluster; otherwise by exact labelled equality."""
    if max_seeds is None:
        max_seeds = max_seeds_default()
    key = (lambda T: T.cluster_key()) if modulo_permutation else (lambda T: T.key())
    ids = {key(S): 0}
    seeds, paths, edges = [S], [[]], []
    queue = deque([0])
    truncated = False
    while queue:
        i = queue.popleft()
        T = seeds[i]
        for k in T.index.unfrozen:
            U = mutate_seed(T, k)
            kk = key(U)
            j = ids.get(kk)
            if j is None:
                if len(seeds) >= max_seeds:
                    truncated = True
                    continue
                j = len(seeds)
                ids[kk] = j
                seeds.append(U)
                paths.append(paths[i] + [k])
                queue.append(j)
            edges.append((i, k, j))
    return ExchangeGraph(seeds, paths, truncated, edges)


# -- green-to-red sequences ----------------------------------------------

def _reaches_injectives(S: QuantumSeed, order: DominanceOrder, ref_index: IndexSet):
    uf = ref_index.unfrozen
    ufpos = [ref_index.position(k) for k in uf]
    hits = {}
    for lab, v in zip(S.index.labels, S.variables):
        if lab in S.index.frozen:
            continue
        try:
            d, _ = degree_and_pointedness(v, order)
        except Exception:
            return None
        restricted = tuple(d[p] for p in ufpos)
        for k, p in zip(uf, ufpos):
            target = tuple(-1 if q == p else 0 for q in ufpos)
            if restricted == target:
                hits[k] = lab
    if len(hits) == len(uf):
        return hits
    return None


def is_green_to_red(S: QuantumSeed, path: Sequence) -> dict | None:
    order = DominanceOrder(S.B)
    return _reaches_injectives(mutate_path(S, path), order, S.index)


def find_green_to_red(S: QuantumSeed, max_depth: int) -> SearchResult:
    """Shortest mutation sequence Sigma and permutation sigma with the
    unfrozen part of deg x_{sigma k}(Sigma S) equal to -f_k for all unfrozen k.

    The final move records sigma as ``{"sigma": [[k, sigma k], ...]}``."""
    order = DominanceOrder(S.B)

    def goal(T):
        hits = _reaches_injectives(T, order, S.index)
        if hits is None:
            return None
        return [{"sigma": [[k, hits[k]] for k in S.index.unfrozen]}]

    return bfs_search(S, _mutation_neighbors, lambda T: T.key(), goal, max_depth)


# -- serialization --------------------------------------------------------

def seed_to_json(S: QuantumSeed) -> dict:
    return {
        "labels": list(S.index.labels),
        "frozen": [v for v in S.index.labels if v in S.index.frozen],
        "B": S.B.to_json(),
        "Lambda": None if S.Lambda is None else [list(r) for r in S.Lambda],
        "vars": {str(lab): v.to_json() for lab, v in zip(S.index.labels, S.variables)},
    }


def seed_from_json(data: dict, ref: TorusContext | None = None) -> QuantumSeed:
    idx = IndexSet(tuple(data["labels"]), frozenset(data.get("frozen", [])))
    rows = data["B"]
    B = ExchangeMatrix(idx, tuple(tuple(r) for r in rows))
    L = data.get("Lambda")
    L = None if L is None else tuple(tuple(r) for r in L)
    if L is not None:
        check_compatible_pair(B, L)
    if ref is None:
        ref = TorusContext(idx, L)
    if data.get("vars"):
        xs = tuple(TorusElement.from_json(ref, data["vars"][str(lab)]) for lab in idx.labels)
    else:
        xs = tuple(TorusElement.variable(ref, lab) for lab in idx.labels)
    return QuantumSeed(B, L, xs, data.get("name"))


def compatible_lambda(B: ExchangeMatrix, scale_to_integers: bool = True, extra: Sequence[int] | None = None):
    """Find an integer skew-symmetric Lambda compatible with B, using the
    principal part's symmetrizer for d'. ``extra`` picks a null-space combination."""
    from fractions import Fraction
    from math import lcm

    from . import linalg

    d = B.symmetrizer()
    if d is None:
        raise Incompatible("principal part is not skew-symmetrizable")
    idx = B.index
    n = len(idx)
    uf = idx.unfrozen
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    A, rhs = [], []
    for c, k in enumerate(uf):
        kp = idx.position(k)
        for i in range(n):
            row = [0] * len(pairs)
            for t, (a, b) in enumerate(pairs):
                if a == i:
                    row[t] += B.rows[b][c]
                elif b == i:
                    row[t] -= B.rows[a][c]
            A.append(row)
            rhs.append(-d[c] if i == kp else 0)
    sol = linalg.solve_rational(A, rhs)
    if sol is None:
        raise Incompatible("no compatible Lambda exists (B not of full rank?)")
    part, null = sol
    vec = list(part)
    if extra:
        for coef, nv in zip(extra, null):
            vec = [x + coef * y for x, y in zip(vec, nv)]
    den = 1
    for v in vec:
        den = lcm(den, Fraction(v).denominator)
    L = [[0] * n for _ in range(n)]
    for t, (a, b) in enumerate(pairs):
        L[a][b] = int(vec[t] * den)
        L[b][a] = -L[a][b]
    return tuple(tuple(r) for r in L)
