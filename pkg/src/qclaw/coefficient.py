"""Laurent polynomials in q^{1/2} with integer coefficients.

Exponents are stored as integers counting half powers of q, so ``q`` itself
has exponent 2 and ``q^{-1/2}`` has exponent -1.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class Coefficient:
    """An immutable element of Z[q^{1/2}, q^{-1/2}]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "Coefficient":
        return cls({0: c})

    @classmethod
    def qpow(cls, half_exp: int, c: int = 1) -> "Coefficient":
        """``c * q^(half_exp/2)``."""
        return cls({half_exp: c})

    @classmethod
    def _raw(cls, terms: dict) -> "Coefficient":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Coefficient.const(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = Coefficient.const(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Coefficient._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Coefficient.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Coefficient()
            return Coefficient._raw({e: c * other for e, c in self._terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return Coefficient(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("only monomials q^a are invertible")
            ((e, c),) = self._terms.items()
            return Coefficient._raw({-e * -n: c ** -n})
        out = Coefficient.const(1)
        for _ in range(n):
            out = out * self
        return out

    def divide_exact(self, other: "Coefficient") -> "Coefficient":
        """Quotient ``self / other`` in Z[q^{±1/2}]; ArithmeticError if it
        does not exist."""
        if not other._terms:
            raise ZeroDivisionError("division by zero coefficient")
        if not self._terms:
            return Coefficient()
        d_hi, d_lo = other.max_exponent(), other.min_exponent()
        d_lead = other._terms[d_hi]
        lo_bound = self.min_exponent() - d_lo
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            s = e - d_hi
            if s < lo_bound or c % d_lead:
                raise ArithmeticError("not divisible")
            t = c // d_lead
            quot[s] = t
            for ed, cd in other._terms.items():
                k = ed + s
                v = rem.get(k, 0) - t * cd
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Coefficient._raw(quot)

    def shift(self, half_exp: int) -> "Coefficient":
        return Coefficient._raw({e + half_exp: c for e, c in self._terms.items()})

    def bar(self) -> "Coefficient":
        """The bar involution q^{a} -> q^{-a}."""
        return Coefficient._raw({-e: c for e, c in self._terms.items()})

    def in_mm(self) -> bool:
        """Membership in q^{-1/2} Z[q^{-1/2}]: every exponent is <= -1/2."""
        return all(e <= -1 for e in self._terms)

    def specialize(self) -> int:
        """Value at q^{1/2} = 1."""
        return sum(self._terms.values())

    def is_unit(self) -> bool:
        """True for ``±q^a`` (the units of the ring)."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c in (1, -1)

    def is_qpower(self) -> bool:
        """True for ``q^a`` with coefficient exactly 1."""
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def single_exponent(self) -> int:
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a single power of q^(1/2)")
        return next(iter(self._terms))

    def min_exponent(self) -> int:
        return min(self._terms)

    def max_exponent(self) -> int:
        return max(self._terms)

    def split_antisymmetric(self) -> "Coefficient":
        """For ``f`` with ``bar(f) == -f`` return the unique ``g`` in the
        negative part with ``f = g - bar(g)``."""
        if self.bar() != -self:
            raise ValueError("coefficient is not bar-antisymmetric")
        return Coefficient._raw({e: c for e, c in self._terms.items() if e < 0})

    def sorted_items(self) -> list[tuple[int, int]]:
        return sorted(self._terms.items())

    def to_json(self) -> list:
        return [[e, c] for e, c in self.sorted_items()]

    @classmethod
    def from_json(cls, data: Iterable) -> "Coefficient":
        out: dict[int, int] = {}
        for e, c in data:
            out[int(e)] = out.get(int(e), 0) + int(c)
        return cls(out)

    def render(self) -> str:
        """Canonical text form, e.g. ``1*q^(-1/2) + 2*q^(0/2)``."""
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*q^({e}/2)" for e, c in self.sorted_items())

    def __repr__(self):
        return f"Coefficient({self.render()})"

    def __str__(self):
        return self.render()


ZERO = Coefficient()
ONE = Coefficient.const(1)


def coeff_add(a: Coefficient, b: Coefficient) -> Coefficient:
    return a + b


def coeff_mul(a: Coefficient, b: Coefficient) -> Coefficient:
    return a * b


def coeff_bar(a: Coefficient) -> Coefficient:
    return a.bar()


def coeff_in_mm(a: Coefficient) -> bool:
    return a.in_mm()
