"""Interval variables, standard monomials and Kazhdan-Lusztig type bases for
seeds of unshuffled signed words.

Multi-indices ``c`` are tuples indexed by positions 1..l (stored 0-based).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coefficient import ONE, Coefficient
from .errors import IncompleteTable, NonTerminating, NotInSpan
from .lattice import DominanceOrder
from .seeds import QuantumSeed, mutate_seed
from .signed_words import SignedWord, next_occurrence, occurrences, prev_occurrence
from .torus import TorusElement, degree_and_pointedness, normalize


def interval_degree(word: SignedWord, j: int, k: int) -> tuple:
    """f_k - f_{j[-1]} (the second term absent when j is the first
    occurrence of its colour)."""
    v = [0] * len(word)
    v[k - 1] += 1
    p = prev_occurrence(word, j)
    if p is not None:
        v[p - 1] -= 1
    return tuple(v)


def interval_pairs(word: SignedWord) -> list:
    return [(j, k) for k in word.positions for j in occurrences(word, k)]


@dataclass
class IntervalTable:
    seed: QuantumSeed
    word: SignedWord
    entries: dict
    order: DominanceOrder = field(repr=False)
    _monomials: dict = field(default_factory=dict, repr=False)
    _kl: dict = field(default_factory=dict, repr=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def W(self, j: int, k: int | None = None) -> TorusElement:
        return self.entries[(j, j if k is None else k)]

    def gamma(self, k: int) -> tuple:
        return interval_degree(self.word, k, k)

    def degree_of(self, c: Sequence[int]) -> tuple:
        out = [0] * self.length
        for k, ck in enumerate(c, start=1):
            if ck:
                for i, g in enumerate(self.gamma(k)):
                    out[i] += ck * g
        return tuple(out)

    def c_of_degree(self, m: Sequence[int]) -> tuple:
        """Invert m = sum c_k gamma_k, top down: c_k = m_k + c_{k[1]}."""
        c = [0] * self.length
        for k in range(self.length, 0, -1):
            nxt = next_occurrence(self.word, k)
            c[k - 1] = m[k - 1] + (c[nxt - 1] if nxt != float("inf") else 0)
        return tuple(c)

    def to_json(self) -> dict:
        return {
            "word": self.word.to_json(),
            "intervals": [
                {"j": j, "k": k, "degree": list(interval_degree(self.word, j, k)), "element": x.to_json()}
                for (j, k), x in sorted(self.entries.items())
            ],
        }


def find_interval_variables(S: QuantumSeed, word: SignedWord, max_depth: int = 20,
                            max_seeds: int | None = None) -> IntervalTable:
    """Collect the cluster variables of degree f_k - f_{j[-1]} by a
    breadth-first sweep of the exchange graph."""
    order = DominanceOrder(S.B)
    wanted = {interval_degree(word, j, k): (j, k) for j, k in interval_pairs(word)}
    found: dict = {}

    def harvest(T: QuantumSeed):
        for x in T.variables:
            try:
                d, pointed = degree_and_pointedness(x, order)
            except Exception:
                continue
            key = wanted.get(d)
            if key is not None and pointed and key not in found:
                found[key] = x

    harvest(S)
    if len(found) < len(wanted):
        seen = {S.cluster_key()}
        queue = deque([(S, 0)])
        budget = max_seeds if max_seeds is not None else 100000
        while queue and len(found) < len(wanted) and len(seen) < budget:
            T, depth = queue.popleft()
            if depth >= max_depth:
                continue
            for k in T.index.unfrozen:
                U = mutate_seed(T, k)
                key = U.cluster_key()
                if key in seen:
                    continue
                seen.add(key)
                harvest(U)
                queue.append((U, depth + 1))
    if len(found) < len(wanted):
        missing = sorted(set(wanted.values()) - set(found))
        raise IncompleteTable(f"intervals {missing} not found within depth {max_depth}")
    return IntervalTable(S, word, found, order)


# -- standard monomials ---------------------------------------------------

def standard_monomial(T: IntervalTable, c: Sequence[int]) -> TorusElement:
    """[W_1^{c_1} * ... * W_l^{c_l}]."""
    c = tuple(c)
    hit = T._monomials.get(c)
    if hit is not None:
        return hit
    ctx = T.seed.ref
    z = TorusElement.one(ctx)
    for k, ck in enumerate(c, start=1):
        if ck:
            z = z * (T.W(k) ** ck)
    z = normalize(z, T.order)
    T._monomials[c] = z
    return z


def expand_in_standard_basis(T: IntervalTable, z: TorusElement, max_steps: int = 100000) -> dict:
    """Coefficients b_c with z = sum b_c M(c), found by peeling off the
    highest remaining term."""
    out: dict = {}
    rest = z
    steps = 0
    while not rest.is_zero():
        steps += 1
        if steps > max_steps:
            raise NotInSpan("peeling did not terminate")
        m = max(rest.support(), key=lambda v: (T.order.height(v), v))
        c = T.c_of_degree(m)
        if any(v < 0 for v in c):
            raise NotInSpan(f"degree {m} needs negative exponents {c}")
        b = rest.coefficient(m)
        out[c] = out.get(c, Coefficient()) + b
        if out[c].is_zero():
            del out[c]
        rest = rest - standard_monomial(T, c).scale(b)
    return out


def synthesize(T: IntervalTable, expansion: dict) -> TorusElement:
    z = TorusElement.zero(T.seed.ref)
    for c, b in expansion.items():
        z = z + standard_monomial(T, c).scale(b)
    return z


@dataclass
class StraighteningReport:
    k: int
    j: int
    expansion: dict
    passed: bool

    def to_json(self):
        return {
            "k": self.k,
            "j": self.j,
            "passed": self.passed,
            "expansion": [{"c": list(c), "coeff": b.to_json()} for c, b in sorted(self.expansion.items())],
        }


def verify_straightening(T: IntervalTable, k: int, j: int) -> StraighteningReport:
    """W_k W_j - q^{lambda(gamma_k, gamma_j)} W_j W_k must lie in the span of
    M(c) with c supported strictly between j and k."""
    if not j < k:
        raise ValueError("need j < k")
    ctx = T.seed.own_context
    lam = ctx.lam(T.gamma(k), T.gamma(j))
    defect = T.W(k) * T.W(j) - (T.W(j) * T.W(k)).scale(Coefficient.qpow(2 * lam))
    exp = expand_in_standard_basis(T, defect)
    ok = all(all(v == 0 for i, v in enumerate(c, start=1) if not j < i < k) for c in exp)
    return StraighteningReport(k, j, exp, ok)


# -- Kazhdan-Lusztig basis -------------------------------------------------

def order_key(c: Sequence[int], order: str):
    if order == "lex":
        return tuple(c)
    if order in ("rev", "revlex"):
        return tuple(reversed(c))
    raise ValueError(f"unknown order {order!r}")


def _bar_expansion(T: IntervalTable, c: tuple) -> dict:
    return expand_in_standard_basis(T, standard_monomial(T, c).bar())


def kl_expansion(T: IntervalTable, c: Sequence[int], order: str = "lex", budget: int = 10000) -> dict:
    """The KL element C(c) as {c': b_{c'}} over the standard basis, with
    b_c = 1 and the other b in q^{-1/2} Z[q^{-1/2}]."""
    c = tuple(c)
    memo = T._kl.setdefault(order, {})
    if c in memo:
        return memo[c]
    key = lambda v: order_key(v, order)
    # bar(M(c)) - M(c) rewritten in the C basis, highest index first
    defect = _bar_expansion(T, c)
    top = defect.pop(c, Coefficient())
    if top != ONE:
        raise NotInSpan(f"bar(M{c}) does not have leading coefficient 1")
    result = {c: ONE}
    steps = 0
    while defect:
        steps += 1
        if steps > budget:
            raise NonTerminating(f"correction loop exceeded {budget} steps")
        cp = max(defect, key=key)
        if key(cp) >= key(c):
            raise NotInSpan(f"defect term {cp} is not below {c}")
        d = defect.pop(cp)
        # d = p - bar(p) with p in the negative part
        p = d.split_antisymmetric()
        sub = kl_expansion(T, cp, order, budget)
        for cc, b in sub.items():
            if cc == cp:
                continue
            v = defect.get(cc, Coefficient()) - d * b
            if v.is_zero():
                defect.pop(cc, None)
            else:
                defect[cc] = v
        if not p.is_zero():
            for cc, b in sub.items():
                v = result.get(cc, Coefficient()) + p * b
                if v.is_zero():
                    result.pop(cc, None)
                else:
                    result[cc] = v
    memo[c] = result
    return result


def kl_basis_element(T: IntervalTable, c: Sequence[int], order: str = "lex", budget: int = 10000) -> TorusElement:
    return synthesize(T, kl_expansion(T, c, order, budget))


def multi_indices(l: int, total: int) -> Iterable[tuple]:
    """All c in N^l with |c| <= total."""
    def rec(i, left):
        if i == l:
            yield ()
            return
        for v in range(left + 1):
            for rest in rec(i + 1, left - v):
                yield (v,) + rest
    yield from rec(0, total)


# -- triangular-basis axioms -------------------------------------------------

@dataclass
class AxiomReport:
    passed: bool
    failures: list
    skipped: list

    def to_json(self):
        return {"passed": self.passed, "failures": self.failures, "skipped": self.skipped}


def check_triangular_axioms(S: QuantumSeed, sample: Sequence[TorusElement], order: DominanceOrder | None = None) -> AxiomReport:
    """Bar-invariance, pointedness with distinct degrees, and the unitriangular
    shape of [x_i * C] inside the sample."""
    order = order or DominanceOrder(S.B)
    failures, skipped = [], []
    by_degree = {}
    for n, z in enumerate(sample):
        if z.bar() != z:
            failures.append({"element": n, "reason": "not bar-invariant"})
        try:
            d, pointed = degree_and_pointedness(z, order)
        except Exception as exc:
            failures.append({"element": n, "reason": f"no degree: {exc}"})
            continue
        if not pointed:
            failures.append({"element": n, "reason": "not pointed"})
        if d in by_degree:
            failures.append({"element": n, "reason": f"degree {list(d)} repeated"})
        by_degree[d] = z
    for i, x in zip(S.index.labels, S.variables):
        for d, z in by_degree.items():
            prod = normalize(x * z, order)
            top, _ = degree_and_pointedness(prod, order)
            rest = prod
            first = True
            ok = True
            while not rest.is_zero():
                m = max(rest.support(), key=lambda v: (order.height(v), v))
                b = rest.coefficient(m)
                base = by_degree.get(m)
                if base is None:
                    skipped.append({"x": i, "degree": list(d), "missing": list(m)})
                    ok = None
                    break
                if first:
                    if m != top or b != ONE:
                        ok = False
                        break
                    first = False
                elif not (b.in_mm() and order.lt(m, top)):
                    ok = False
                    break
                rest = rest - base.scale(b)
            if ok is False:
                failures.append({"x": i, "degree": list(d), "reason": "not (prec, mm)-unitriangular"})
    return AxiomReport(not failures, failures, skipped)
