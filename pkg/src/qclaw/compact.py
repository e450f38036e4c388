"""Vanishing orders, membership in the partially compactified upper cluster
algebra, and the freezing / quotient maps.

Elements handed to these functions are written in the *own* torus of a seed:
the coordinates are that seed's cluster variables and the twist is its
Lambda.  For an initial seed this is also the reference torus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .coefficient import Coefficient
from .errors import NonEssentialViolated, NegativeOrder, NotDivisible
from .lattice import ExchangeMatrix, IndexSet
from .seeds import ExchangeGraph, QuantumSeed, enumerate_exchange_graph, mutate_lambda
from .torus import TorusContext, TorusElement, exact_divide, vanishing_order


# -- re-expression along mutations ------------------------------------------

def _shell(S: QuantumSeed) -> QuantumSeed:
    """S with coordinate variables in its own torus."""
    return QuantumSeed.initial(S.B, S.Lambda, S.name)


def _mutated_shell(S: QuantumSeed, k) -> QuantumSeed:
    Lp = mutate_lambda(S.Lambda, S.B, k) if S.Lambda is not None else None
    return QuantumSeed.initial(S.B.mutate(k), Lp, S.name)


def old_variable_image(Sp: QuantumSeed, k) -> TorusElement:
    """x_k of mu_k(Sp), written in the own torus of Sp."""
    ctx = Sp.own_context
    fk = Sp.index.basis(k)
    out = TorusElement.zero(ctx)
    for v in Sp.exchange_vectors(k):
        out = out + TorusElement.monomial(ctx, tuple(a - b for a, b in zip(v, fk)))
    return out


def _push(z: TorusElement, S: QuantumSeed, Sp: QuantumSeed, k, Y: TorusElement, clear: int) -> TorusElement:
    """Image of z * x_k^clear under the mutation map S -> Sp."""
    src = S.own_context
    dst = Sp.own_context
    p = S.index.position(k)
    fk = S.index.basis(k)
    powers: dict[int, TorusElement] = {}
    out = TorusElement.zero(dst)
    for m, c in z.terms():
        e = m[p]
        rest = tuple(0 if i == p else v for i, v in enumerate(m))
        # x^m = q^{-lambda(rest, e f_k)/2} x^rest * x_k^e
        shift = -src.lam(rest, tuple(e * v for v in fk))
        n = e + clear
        if n not in powers:
            powers[n] = Y ** n
        term = TorusElement.monomial(dst, rest, c.shift(shift)) * powers[n]
        out = out + term
    return out


@dataclass
class RightFraction:
    """Right fraction num * den^{-1} in a seed's own torus."""

    num: TorusElement
    den: TorusElement

    def reduce(self):
        try:
            return exact_divide(self.num, self.den, side="right")
        except NotDivisible:
            return None


def _step_fraction(fr: RightFraction, S: QuantumSeed, k) -> tuple[RightFraction, QuantumSeed]:
    Sp = _mutated_shell(S, k)
    Y = old_variable_image(Sp, k)
    p = S.index.position(k)
    low = min([0] + [m[p] for m in fr.num.support()] + [m[p] for m in fr.den.support()])
    N = -low
    num = _push(fr.num, S, Sp, k, Y, N)
    den = _push(fr.den, S, Sp, k, Y, N)
    q = RightFraction(num, den).reduce()
    if q is not None:
        return RightFraction(q, TorusElement.one(Sp.own_context)), Sp
    return RightFraction(num, den), Sp


@dataclass(frozen=True)
class NotLaurentAt:
    """Marker returned when z is not Laurent in the target seed."""

    path: tuple


def reexpress_in_seed(z: TorusElement, S: QuantumSeed, path: Sequence):
    """z (in the own torus of S) rewritten in the own torus of mu_path S, or
    a NotLaurentAt marker."""
    T = _shell(S)
    fr = RightFraction(z, TorusElement.one(z.ctx))
    for k in path:
        fr, T = _step_fraction(fr, T, k)
    q = fr.reduce()
    return q if q is not None else NotLaurentAt(tuple(path))


# -- membership ----------------------------------------------------------------

@dataclass
class MembershipReport:
    element: TorusElement
    per_seed: dict
    frozen_orders: dict
    in_U: bool
    in_bar_U: bool
    all_seed_frozen: bool
    partial: bool
    expressions: dict = field(default_factory=dict, repr=False)

    def to_json(self):
        return {
            "element": self.element.to_json(),
            "perSeed": {str(i): v for i, v in sorted(self.per_seed.items())},
            "frozenOrders": {str(j): v for j, v in self.frozen_orders.items()},
            "verdict": {"inU": self.in_U, "inBarU": self.in_bar_U, "partial": self.partial},
            "allSeedFrozenCheck": self.all_seed_frozen,
        }


def check_membership(z: TorusElement, S: QuantumSeed, max_seeds: int | None = None,
                     graph: ExchangeGraph | None = None) -> MembershipReport:
    """Laurent test in every enumerated seed; frozen orders from S alone."""
    if graph is None:
        graph = enumerate_exchange_graph(_shell(S), max_seeds)
    where = {tuple(p): i for i, p in enumerate(graph.paths)}
    fractions: dict[int, tuple[RightFraction, QuantumSeed]] = {}
    per_seed, exprs = {}, {}
    for i, p in enumerate(graph.paths):
        if not p:
            fr, T = RightFraction(z, TorusElement.one(z.ctx)), _shell(S)
        else:
            parent_fr, parent_T = fractions[where[tuple(p[:-1])]]
            fr, T = _step_fraction(parent_fr, parent_T, p[-1])
        fractions[i] = (fr, T)
        q = fr.reduce()
        per_seed[i] = q is not None
        if q is not None:
            exprs[i] = q
    frozen = S.index.frozen_list
    orders = {j: (vanishing_order(z, j) if not z.is_zero() else None) for j in frozen}
    in_U = all(per_seed.values())
    nonneg = all(v is None or v >= 0 for v in orders.values())
    everywhere = all(
        e.is_zero() or all(vanishing_order(e, j) >= 0 for j in frozen) for e in exprs.values()
    )
    return MembershipReport(z, per_seed, orders, in_U, in_U and nonneg, in_U and everywhere,
                            graph.truncated, exprs)


# -- sampling helpers ------------------------------------------------------------

def random_coefficient(rng: random.Random, spread: int = 2) -> Coefficient:
    c = Coefficient()
    for _ in range(rng.randint(1, 2)):
        c = c + Coefficient.qpow(rng.randint(-spread, spread), rng.choice([-2, -1, 1, 2]))
    return c if not c.is_zero() else Coefficient.const(1)


def random_laurent(ctx: TorusContext, rng: random.Random, terms: int = 3, bound: int = 2,
                   nonneg: Sequence = ()) -> TorusElement:
    """Random element; coordinates listed in ``nonneg`` get exponents >= 0."""
    keep = {ctx.index.position(j) for j in nonneg}
    z = TorusElement.zero(ctx)
    while z.is_zero():
        for _ in range(terms):
            m = tuple(rng.randint(0 if i in keep else -bound, bound) for i in range(ctx.dim))
            z = z + TorusElement.monomial(ctx, m, random_coefficient(rng))
    return z


def cluster_pool(graph: ExchangeGraph) -> list:
    """Distinct cluster variables over the graph, in discovery order."""
    seen, out = set(), []
    for T in graph.seeds:
        for v in T.variables:
            if v.key() not in seen:
                seen.add(v.key())
                out.append(v)
    return out


def random_algebra_element(graph: ExchangeGraph, rng: random.Random, terms: int = 2, length: int = 2) -> TorusElement:
    """A random combination of products of cluster variables: an element of
    the partially compactified upper algebra."""
    pool = cluster_pool(graph)
    ctx = pool[0].ctx
    z = TorusElement.zero(ctx)
    while z.is_zero():
        for _ in range(terms):
            t = TorusElement.one(ctx)
            for _ in range(rng.randint(0, length)):
                t = t * rng.choice(pool)
            z = z + t.scale(random_coefficient(rng))
    return z


# -- primality and the intersection property ------------------------------------

@dataclass
class HarnessReport:
    passed: bool
    counts: dict
    failures: list

    def to_json(self):
        return {"passed": self.passed, "counts": self.counts, "failures": self.failures}


def divides_frozen(z: TorusElement, j) -> bool:
    """x_j divides z in the compactified algebra, i.e. nu_j(z) >= 1."""
    return not z.is_zero() and vanishing_order(z, j) >= 1


def frozen_is_prime_witness(S: QuantumSeed, j, samples: int = 200, rng_seed: int = 0,
                            graph: ExchangeGraph | None = None, membership_checks: int = 5) -> HarnessReport:
    """Falsifiable consequences of x_j being prime: nu_j is additive on
    products of elements with nu_j = 0, and conjugation by x_j keeps
    elements inside the algebra."""
    if j not in S.index.frozen:
        raise ValueError(f"{j!r} is not frozen")
    rng = random.Random(rng_seed)
    graph = graph or enumerate_exchange_graph(_shell(S))
    xj = TorusElement.variable(graph.seeds[0].ref, j)
    xj_inv = xj ** -1
    counts = {"pairs": 0, "divisible": 0, "normality": 0}
    failures = []
    while counts["pairs"] < samples:
        a = random_algebra_element(graph, rng)
        b = random_algebra_element(graph, rng)
        if divides_frozen(a, j) or divides_frozen(b, j):
            counts["divisible"] += 1
            continue
        counts["pairs"] += 1
        if vanishing_order(a * b, j) != 0:
            failures.append({"a": a.to_json(), "b": b.to_json(), "reason": "x_j divides a*b"})
        if counts["normality"] < membership_checks:
            counts["normality"] += 1
            conj = xj * a * xj_inv
            if not check_membership(conj, S, graph=graph).in_bar_U:
                failures.append({"a": a.to_json(), "reason": "x_j a x_j^-1 left the algebra"})
    return HarnessReport(not failures, counts, failures)


def not_divisible_check(S: QuantumSeed, graph: ExchangeGraph | None = None) -> HarnessReport:
    """No frozen variable divides an unfrozen cluster variable (hence, by
    additivity of nu_j, no unfrozen cluster monomial)."""
    graph = graph or enumerate_exchange_graph(_shell(S))
    failures = []
    n = 0
    for T in graph.seeds:
        for lab, v in zip(T.index.labels, T.variables):
            if lab in T.index.frozen:
                continue
            n += 1
            for j in S.index.frozen_list:
                if divides_frozen(v, j):
                    failures.append({"variable": v.to_json(), "frozen": j})
    return HarnessReport(not failures, {"variables": n}, failures)


def intersection_harness(S: QuantumSeed, samples: int = 100, rng_seed: int = 0,
                         graph: ExchangeGraph | None = None, max_attempts: int | None = None) -> HarnessReport:
    """Sample z = a * E^{-1} (E a frozen monomial) and look for an unfrozen
    monomial U with U * z in the algebra.  Whenever both representations
    exist, z itself must be in the algebra."""
    rng = random.Random(rng_seed)
    graph = graph or enumerate_exchange_graph(_shell(S))
    ref = graph.seeds[0].ref
    idx = S.index
    frozen, unfrozen = idx.frozen_list, idx.unfrozen
    max_attempts = max_attempts or 20 * samples
    counts = {"twoRepresentations": 0, "attempts": 0, "oneRepresentation": 0}
    failures = []
    while counts["twoRepresentations"] < samples and counts["attempts"] < max_attempts:
        counts["attempts"] += 1
        a = random_algebra_element(graph, rng)
        E = TorusElement.monomial(ref, idx.vector({j: rng.randint(0, 1) for j in frozen}))
        if rng.random() < 0.5:
            a = a * E  # makes z = a E^{-1} land in the algebra
        z = a * E ** -1
        found = None
        for U in _small_unfrozen_monomials(ref, unfrozen, rng):
            if check_membership(U * z, S, graph=graph).in_bar_U:
                found = U
                break
        if found is None:
            counts["oneRepresentation"] += 1
            continue
        counts["twoRepresentations"] += 1
        if not check_membership(z, S, graph=graph).in_bar_U:
            failures.append({"z": z.to_json(), "U": found.to_json()})
    not_div = not_divisible_check(S, graph)
    counts["notDivisibleVariables"] = not_div.counts["variables"]
    failures += not_div.failures
    passed = not failures and counts["twoRepresentations"] >= samples
    return HarnessReport(passed, counts, failures)


def _small_unfrozen_monomials(ctx: TorusContext, unfrozen: Sequence, rng: random.Random, tries: int = 3):
    yield TorusElement.one(ctx)
    for _ in range(tries):
        m = ctx.index.vector({k: rng.randint(0, 2) for k in unfrozen})
        yield TorusElement.monomial(ctx, m)


# -- freezing and quotients --------------------------------------------------

def freeze_vertices(S: QuantumSeed, F: Sequence) -> QuantumSeed:
    F = set(F)
    if not F <= set(S.index.unfrozen):
        raise ValueError("only unfrozen vertices can be frozen")
    idx = IndexSet(S.index.labels, S.index.frozen | F)
    B = ExchangeMatrix.from_function(idx, S.B.entry)
    return QuantumSeed(B, S.Lambda, S.variables, S.name)


def is_non_essential(S: QuantumSeed, j) -> bool:
    return j in S.index.frozen and all(S.B.entry(j, k) == 0 for k in S.index.unfrozen)


def delete_vertex(S: QuantumSeed, j) -> QuantumSeed:
    """The initial seed on I minus {j}, with B and Lambda restricted."""
    keep = [v for v in S.index.labels if v != j]
    idx = IndexSet(keep, S.index.frozen - {j})
    B = ExchangeMatrix.from_function(idx, S.B.entry)
    L = None
    if S.Lambda is not None:
        p = S.index.position
        L = tuple(tuple(S.Lambda[p(a)][p(b)] for b in keep) for a in keep)
    return QuantumSeed.initial(B, L, S.name)


def pi_quotient(S: QuantumSeed, F: Sequence, j, z: TorusElement, target: QuantumSeed | None = None) -> TorusElement:
    """Set x_j = 0 in z (written in the own torus of S) and drop the j
    coordinate; the result lives in the own torus of the vertex-deleted seed."""
    fs = freeze_vertices(S, F)
    if not is_non_essential(fs, j):
        raise NonEssentialViolated(f"{j!r} is not a non-essential frozen vertex")
    if not z.is_zero() and vanishing_order(z, j) < 0:
        raise NegativeOrder(f"nu_{j}(z) < 0")
    target = target or delete_vertex(fs, j)
    ctx = target.own_context
    p = S.index.position(j)
    out = {}
    for m, c in z.terms():
        if m[p] == 0:
            out[m[:p] + m[p + 1:]] = c
    return TorusElement(ctx, out)
