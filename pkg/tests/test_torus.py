import pytest
from hypothesis import given

from qclaw.coefficient import ONE, Coefficient
from qclaw.errors import ContextMismatch, LeadingCoefficientNotUnit, NoUniqueMaxDegree, NotDivisible
from qclaw.lattice import ExchangeMatrix, IndexSet
from qclaw.torus import (
    TorusContext,
    TorusElement,
    degree_and_pointedness,
    exact_divide,
    in_compactified_torus,
    monomial_q_normalization,
    normalize,
    semiclassical_limit,
    vanishing_order,
)

from strategies import elements

IDX = IndexSet((1, 2, 3), {3})
CTX = TorusContext(IDX, ((0, 1, -2), (-1, 0, 1), (2, -1, 0)))
x1, x2, x3 = (TorusElement.variable(CTX, i) for i in (1, 2, 3))
qh = Coefficient.qpow


def mono(*m, c=ONE):
    return TorusElement.monomial(CTX, m, c)


def test_star_product_twist():
    # lambda(f1, f2) = 1 contributes q^{1/2}
    assert x1 * x2 == mono(1, 1, 0, c=qh(1))
    assert x2 * x1 == mono(1, 1, 0, c=qh(-1))
    assert x1 * x2 == (x2 * x1).scale(qh(2))


def test_inverse_monomial():
    assert x3 * x3 ** -1 == TorusElement.one(CTX)


def test_normalized_monomial_exponent():
    # x^(1,1,0) = q^{-1/2} x1 * x2
    assert monomial_q_normalization(CTX, (1, 1, 0)) == -1
    assert (x1 * x2).scale(qh(-1)) == mono(1, 1, 0)


def test_context_mismatch():
    other = TorusContext(IDX, None)
    with pytest.raises(ContextMismatch):
        x1 + TorusElement.variable(other, 1)


def test_exact_division_sides():
    a = TorusElement.one(CTX) + x1
    d = x2 + x3
    assert exact_divide(d * a, d, side="left") == a
    assert exact_divide(a * d, d, side="right") == a
    with pytest.raises(NotDivisible):
        exact_divide(a, TorusElement.one(CTX) + x2)


def test_vanishing_order_and_compactification():
    z = mono(0, 1, 2) + mono(-1, 0, 1)
    assert vanishing_order(z, 3) == 1
    assert vanishing_order(z, 1) == -1
    assert in_compactified_torus(z)
    assert not in_compactified_torus(z * x3 ** -2)


def test_degree_and_normalization():
    B = ExchangeMatrix(IDX, ((0, 1), (-1, 0), (1, -1)))
    col1 = B.column(1)
    top = (1, 0, 0)
    z = mono(*top, c=qh(3)) + mono(*(a + b for a, b in zip(top, col1)), c=qh(1))
    m, pointed = degree_and_pointedness(z, B)
    assert m == top and not pointed
    n = normalize(z, B)
    assert n.coefficient(top) == ONE
    assert degree_and_pointedness(n, B) == (top, True)
    with pytest.raises(LeadingCoefficientNotUnit):
        normalize(mono(*top, c=Coefficient.const(2)), B)
    with pytest.raises(NoUniqueMaxDegree):
        degree_and_pointedness(mono(1, 0, 0) + mono(0, 1, 1), B)


def test_semiclassical_limit_sums_coefficients():
    z = mono(1, 0, 0, c=qh(1) + qh(-3)) + mono(0, 1, 0, c=qh(2) - ONE)
    s = semiclassical_limit(z)
    assert s.ctx.Lambda is None
    assert s == TorusElement.monomial(s.ctx, (1, 0, 0), 2)


def test_json_roundtrip():
    z = mono(1, -1, 0, c=qh(-1)) + mono(0, 0, 2, c=Coefficient.const(3))
    assert TorusElement.from_json(CTX, z.to_json()) == z


@given(elements(CTX), elements(CTX), elements(CTX))
def test_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(elements(CTX), elements(CTX))
def test_bar_is_anti_automorphism(a, b):
    assert (a * b).bar() == b.bar() * a.bar()


@given(elements(CTX), elements(CTX))
def test_division_recovers_factor(a, d):
    if d.is_zero():
        return
    assert exact_divide(d * a, d, side="left") == a
    assert exact_divide(a * d, d, side="right") == a


@given(elements(CTX), elements(CTX))
def test_vanishing_order_is_additive(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert vanishing_order(a * b, 3) == vanishing_order(a, 3) + vanishing_order(b, 3)
