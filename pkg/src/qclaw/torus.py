"""The based quantum torus LP(s) with its Lambda-twisted product.

Monomials x^m multiply by x^g * x^h = q^{lambda(g,h)/2} x^{g+h} where
lambda(g,h) = g^T Lambda h. Coefficients live in Z[q^{±1/2}].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .coefficient import ONE, Coefficient
from .errors import (
    ContextMismatch,
    LeadingCoefficientNotUnit,
    NoUniqueMaxDegree,
    NotDivisible,
    ZeroElement,
)
from .lattice import DominanceOrder, ExchangeMatrix, IndexSet


@dataclass(frozen=True)
class TorusContext:
    """Index set plus skew-symmetric form; ``Lambda=None`` is the commutative
    (classical) torus."""

    index: IndexSet
    Lambda: tuple | None = None

    def __post_init__(self):
        n = len(self.index)
        if self.Lambda is not None:
            L = tuple(tuple(int(v) for v in r) for r in self.Lambda)
            if len(L) != n or any(len(r) != n for r in L):
                raise ValueError(f"Lambda must be {n}x{n}")
            for i in range(n):
                for j in range(n):
                    if L[i][j] != -L[j][i]:
                        raise ValueError("Lambda must be skew-symmetric")
            if not any(any(r) for r in L):
                L = None
            object.__setattr__(self, "Lambda", L)

    @property
    def dim(self) -> int:
        return len(self.index)

    def lam(self, g: Sequence[int], h: Sequence[int]) -> int:
        L = self.Lambda
        if L is None:
            return 0
        total = 0
        for i, gi in enumerate(g):
            if gi:
                row = L[i]
                total += gi * sum(row[j] * hj for j, hj in enumerate(h) if hj)
        return total

    def classical(self) -> "TorusContext":
        return TorusContext(self.index, None)

    def lambda_rows(self) -> list[list[int]]:
        n = self.dim
        if self.Lambda is None:
            return [[0] * n for _ in range(n)]
        return [list(r) for r in self.Lambda]


def _add_into(out: dict, m: tuple, c: Coefficient) -> None:
    v = out.get(m)
    v = c if v is None else v + c
    if v:
        out[m] = v
    else:
        out.pop(m, None)


class TorusElement:
    """A finite sum of monomials x^m with Coefficient weights."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: TorusContext, terms: Mapping | None = None):
        self.ctx = ctx
        clean: dict[tuple, Coefficient] = {}
        n = ctx.dim
        if terms:
            for m, c in terms.items():
                m = tuple(int(v) for v in m)
                if len(m) != n:
                    raise ValueError(f"exponent vector {m} has wrong dimension {len(m)} != {n}")
                if not isinstance(c, Coefficient):
                    c = Coefficient.const(c)
                _add_into(clean, m, c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx, terms):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, ctx: TorusContext, m: Sequence[int], coeff: Coefficient | int = ONE) -> "TorusElement":
        return cls(ctx, {tuple(m): coeff})

    @classmethod
    def one(cls, ctx: TorusContext) -> "TorusElement":
        return cls.monomial(ctx, (0,) * ctx.dim)

    @classmethod
    def zero(cls, ctx: TorusContext) -> "TorusElement":
        return cls(ctx)

    @classmethod
    def variable(cls, ctx: TorusContext, label) -> "TorusElement":
        return cls.monomial(ctx, ctx.index.basis(label))

    # -- container protocol --------------------------------------------
    def terms(self):
        return self._terms.items()

    def support(self):
        return self._terms.keys()

    def coefficient(self, m: Sequence[int]) -> Coefficient:
        return self._terms.get(tuple(m), Coefficient())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items())

    def key(self) -> tuple:
        return tuple((m, tuple(c.sorted_items())) for m, c in self.sorted_terms())

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    # -- arithmetic ----------------------------------------------------
    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatch("torus elements live in different contexts")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            _add_into(out, m, c)
        return TorusElement._raw(self.ctx, out)

    def __neg__(self):
        return TorusElement._raw(self.ctx, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Coefficient | int) -> "TorusElement":
        if isinstance(c, int):
            c = Coefficient.const(c)
        if not c:
            return TorusElement.zero(self.ctx)
        return TorusElement._raw(self.ctx, {m: v * c for m, v in self._terms.items() if v * c})

    def __mul__(self, other):
        if isinstance(other, (int, Coefficient)):
            return self.scale(other)
        return star_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Coefficient)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise NotDivisible("only monomials with unit coefficient are invertible")
            return exact_divide(TorusElement.one(self.ctx), self) ** (-n)
        out = TorusElement.one(self.ctx)
        for _ in range(n):
            out = out * self
        return out

    def bar(self) -> "TorusElement":
        return bar_element(self)

    # -- rendering -----------------------------------------------------
    def to_json(self) -> list:
        return [{"m": list(m), "c": c.to_json()} for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ctx: TorusContext, data) -> "TorusElement":
        return cls(ctx, {tuple(t["m"]): Coefficient.from_json(t["c"]) for t in data})

    def __repr__(self):
        if not self._terms:
            return "TorusElement(0)"
        parts = [f"({c.render()})x^{list(m)}" for m, c in self.sorted_terms()]
        return "TorusElement(" + " + ".join(parts) + ")"


def star_product(a: TorusElement, b: TorusElement) -> TorusElement:
    a._check(b)
    ctx = a.ctx
    out: dict[tuple, Coefficient] = {}
    L = ctx.Lambda
    if L is None:
        for g, cg in a._terms.items():
            for h, ch in b._terms.items():
                _add_into(out, tuple(x + y for x, y in zip(g, h)), cg * ch)
        return TorusElement._raw(ctx, out)
    n = ctx.dim
    bL = []
    for h, ch in b._terms.items():
        Lh = tuple(sum(L[i][j] * h[j] for j in range(n) if h[j]) for i in range(n))
        bL.append((h, ch, Lh))
    for g, cg in a._terms.items():
        for h, ch, Lh in bL:
            lam = sum(gi * Lh[i] for i, gi in enumerate(g) if gi)
            _add_into(out, tuple(x + y for x, y in zip(g, h)), (cg * ch).shift(lam))
    return TorusElement._raw(ctx, out)


def bar_element(a: TorusElement) -> TorusElement:
    return TorusElement._raw(a.ctx, {m: c.bar() for m, c in a._terms.items()})


def _bounds(z: TorusElement):
    sup = list(z._terms)
    n = z.ctx.dim
    lo = [min(m[i] for m in sup) for i in range(n)]
    hi = [max(m[i] for m in sup) for i in range(n)]
    return lo, hi


def exact_divide(a: TorusElement, d: TorusElement, side: str = "left") -> TorusElement:
    """Return ``c`` with ``d * c == a`` (``side='left'``) or ``c * d == a``
    (``side='right'``); raise NotDivisible when no torus quotient exists.

    Leading terms are taken in the lexicographic order on exponents; the
    quotient support must fit in the box predicted by Newton polytopes.
    """
    a._check(d)
    if d.is_zero():
        raise ZeroDivisionError("division by zero torus element")
    ctx = a.ctx
    if a.is_zero():
        return TorusElement.zero(ctx)
    alo, ahi = _bounds(a)
    dlo, dhi = _bounds(d)
    lo = [x - y for x, y in zip(alo, dlo)]
    hi = [x - y for x, y in zip(ahi, dhi)]
    if any(l > h for l, h in zip(lo, hi)):
        raise NotDivisible("support of dividend too small")
    md = max(d._terms)
    cd = d._terms[md]
    rem = dict(a._terms)
    quot: dict[tuple, Coefficient] = {}
    while rem:
        mr = max(rem)
        cm = tuple(x - y for x, y in zip(mr, md))
        if any(v < l or v > h for v, l, h in zip(cm, lo, hi)):
            raise NotDivisible("quotient term outside Newton box")
        lam = ctx.lam(md, cm) if side == "left" else ctx.lam(cm, md)
        try:
            t = rem[mr].divide_exact(cd.shift(lam))
        except ArithmeticError:
            raise NotDivisible("leading coefficient does not divide") from None
        _add_into(quot, cm, t)
        piece = TorusElement._raw(ctx, {cm: t})
        prod = d * piece if side == "left" else piece * d
        for m, c in prod._terms.items():
            _add_into(rem, m, -c)
    return TorusElement._raw(ctx, quot)


def vanishing_order(z: TorusElement, j) -> int:
    """Order of vanishing at x_j = 0: the least exponent of x_j in z."""
    if z.is_zero():
        raise ZeroElement("vanishing order of zero is undefined")
    p = z.ctx.index.position(j)
    return min(m[p] for m in z._terms)


def in_compactified_torus(z: TorusElement, frozen: Iterable | None = None) -> bool:
    if z.is_zero():
        return True
    if frozen is None:
        frozen = z.ctx.index.frozen
    return all(vanishing_order(z, j) >= 0 for j in frozen)


def degree_and_pointedness(z: TorusElement, B: ExchangeMatrix | DominanceOrder) -> tuple[tuple, bool]:
    """The unique dominance-maximal exponent of z and whether its coefficient
    is 1."""
    if z.is_zero():
        raise ZeroElement("zero has no degree")
    order = B if isinstance(B, DominanceOrder) else DominanceOrder(B)
    best = None
    best_h = None
    tie = False
    for m in z._terms:
        h = order.height(m)
        if best_h is None or h > best_h:
            best, best_h, tie = m, h, False
        elif h == best_h:
            tie = True
    if tie:
        raise NoUniqueMaxDegree("several support terms share the maximal height")
    for m in z._terms:
        if m != best and not order.leq(m, best):
            raise NoUniqueMaxDegree(f"{m} is not dominated by {best}")
    return best, z._terms[best] == ONE


def degree(z: TorusElement, B) -> tuple:
    return degree_and_pointedness(z, B)[0]


def normalize(z: TorusElement, B: ExchangeMatrix | DominanceOrder) -> TorusElement:
    m, _ = degree_and_pointedness(z, B)
    c = z._terms[m]
    if not c.is_qpower():
        raise LeadingCoefficientNotUnit(f"leading coefficient {c} is not a power of q^(1/2)")
    return z.scale(Coefficient.qpow(-c.single_exponent()))


def semiclassical_limit(z: TorusElement) -> TorusElement:
    ctx = z.ctx.classical()
    out = {}
    for m, c in z._terms.items():
        v = c.specialize()
        if v:
            out[m] = Coefficient.const(v)
    return TorusElement._raw(ctx, out)


def monomial_q_normalization(ctx: TorusContext, exps: Sequence[int]) -> int:
    """Half-exponent e with x^m = q^{e/2} x_1^{m_1} * ... * x_n^{m_n}."""
    L = ctx.Lambda
    if L is None:
        return 0
    n = len(exps)
    total = 0
    for i in range(n):
        if exps[i]:
            for j in range(i + 1, n):
                total += exps[i] * exps[j] * L[i][j]
    return -total
