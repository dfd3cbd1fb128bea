"""Jet2D arithmetic, calculus, and order-tracking checks."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heatjets.errors import (IndexOutOfRange, NonInvertibleConstantTerm,
                             OrderExhausted)
from heatjets.jets import Jet2D

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@st.composite
def jets(draw, min_order=0, max_order=5, min_val=0):
    order = draw(st.integers(min_order, max_order))
    coeffs = {}
    for _ in range(draw(st.integers(0, 5))):
        a = draw(st.integers(0, order))
        b = draw(st.integers(0, order - a))
        if a + b >= min_val:
            coeffs[(a, b)] = draw(rationals)
    return Jet2D(coeffs, order)


@st.composite
def invertible_jets(draw):
    f = draw(jets())
    coeffs = dict(f.coeffs)
    coeffs[(0, 0)] = draw(rationals.filter(bool))
    return Jet2D(coeffs, f.order)


def common(f, g):
    n = min(f.order, g.order)
    return f.truncate(n), g.truncate(n)


def test_constructors_and_access():
    f = Jet2D.monomial(2, 1, order=4, coeff=Fraction(3))
    assert f.coefficient(2, 1) == 3
    assert f.coefficient(0, 0) == 0
    assert f.valuation() == 3
    with pytest.raises(IndexOutOfRange):
        f.coefficient(4, 1)
    with pytest.raises(IndexOutOfRange):
        Jet2D.monomial(3, 3, order=4)
    assert Jet2D.zero(3).valuation() == 4
    assert not Jet2D.constant(0, 3)


def test_zero_coefficients_are_stripped():
    f = Jet2D({(1, 0): Fraction(0), (0, 1): Fraction(2)}, 3)
    assert (1, 0) not in f.coeffs
    g = f - f
    assert not g.coeffs


@settings(max_examples=60)
@given(jets(), jets(), jets())
def test_ring_axioms(f, g, h):
    fg, gf = f + g, g + f
    assert fg == gf
    a, b = common(f * g, g * f)
    assert a == b
    a, b = common((f + g) + h, f + (g + h))
    assert a == b
    a, b = common((f * g) * h, f * (g * h))
    assert a == b
    a, b = common(f * (g + h), f * g + f * h)
    assert a == b
    assert f - f == Jet2D.zero(f.order)


def test_mul_matches_polynomial_convolution():
    # low-degree data in a high-order jet behaves as an exact polynomial
    f = Jet2D({(1, 0): Fraction(2), (0, 2): Fraction(-1)}, 10)
    g = Jet2D({(0, 0): Fraction(3), (1, 1): Fraction(5)}, 10)
    ref = {}
    for (a1, b1), c1 in f.coeffs.items():
        for (a2, b2), c2 in g.coeffs.items():
            key = (a1 + a2, b1 + b2)
            ref[key] = ref.get(key, 0) + c1 * c2
    prod = f * g
    assert {k: v for k, v in ref.items() if v} == prod.coeffs


def test_valuation_aware_product_order():
    # u^4 known to order 6, times an order-2 factor: the band rule keeps
    # the product trusted to order 6, not 2.
    f = Jet2D.monomial(4, 0, order=6)
    g = Jet2D({(0, 0): Fraction(1), (2, 0): Fraction(7)}, 2)
    assert (f * g).order == 6
    assert (f * g).coefficient(6, 0) == 7


def test_addition_order_is_min():
    f = Jet2D.constant(Fraction(1), 5)
    g = Jet2D.constant(Fraction(1), 2)
    assert (f + g).order == 2


@settings(max_examples=50)
@given(jets(min_order=1), jets(min_order=1))
def test_product_rule(f, g):
    lhs = (f * g).diff(1, 0)
    rhs = f.diff(1, 0) * g + f * g.diff(1, 0)
    a, b = common(lhs, rhs)
    assert a == b


def test_diff_factorials_and_exhaustion():
    f = Jet2D.monomial(3, 2, order=5, coeff=Fraction(1))
    d = f.diff(2, 1)
    assert d.coefficient(1, 1) == 12  # 3*2 * 2
    assert d.order == 2
    with pytest.raises(OrderExhausted):
        d.diff(0, 3)


@settings(max_examples=50)
@given(invertible_jets())
def test_inverse_round_trip(f):
    inv = f.inverse()
    assert f * inv == Jet2D.constant(Fraction(1), f.order)


def test_inverse_requires_unit_constant_term():
    with pytest.raises(NonInvertibleConstantTerm):
        Jet2D.monomial(1, 0, order=3, coeff=Fraction(1)).inverse()


def test_sphere_conformal_factor_jet():
    # rho = 4 (1 + u^2 + v^2)^(-2) for the unit sphere in stereographic
    # coordinates: order-2 jet is 4 - 8 u^2 - 8 v^2.
    base = Jet2D({(0, 0): Fraction(1), (2, 0): Fraction(1),
                  (0, 2): Fraction(1)}, 2)
    rho = (base ** 2).inverse() * Fraction(4)
    assert rho.coeffs == {(0, 0): 4, (2, 0): -8, (0, 2): -8}


@settings(max_examples=40)
@given(invertible_jets().filter(lambda f: f.order >= 1))
def test_log_derivative_identity(f):
    # d/du log f = f_u / f, with the constant of log irrelevant
    lhs = f.log_nonconstant().diff(1, 0)
    rhs = f.diff(1, 0) * f.inverse()
    a, b = common(lhs, rhs)
    assert a == b


def test_log_of_product_splits():
    one_u = Jet2D({(0, 0): Fraction(1), (1, 0): Fraction(1)}, 6)
    one_v = Jet2D({(0, 0): Fraction(1), (0, 1): Fraction(1)}, 6)
    both = one_u * one_v
    split = one_u.log_nonconstant() + one_v.log_nonconstant()
    assert both.log_nonconstant() == split


def test_compose_linear_rotation_invariance():
    # u^2 + v^2 is fixed by the rational rotation (3/5, 4/5)
    r = Jet2D({(2, 0): Fraction(1), (0, 2): Fraction(1)}, 4)
    c, s = Fraction(3, 5), Fraction(4, 5)
    rotated = r.compose_linear(c, -s, s, c)
    assert rotated == r


def test_compose_linear_round_trip():
    f = Jet2D({(1, 0): Fraction(2), (0, 1): Fraction(-3),
               (2, 1): Fraction(1, 2)}, 4)
    c, s = Fraction(3, 5), Fraction(4, 5)
    there = f.compose_linear(c, -s, s, c)
    back = there.compose_linear(c, s, -s, c)
    assert back == f


def test_truncate_refuses_extension():
    f = Jet2D.constant(Fraction(1), 2)
    with pytest.raises(ValueError):
        f.truncate(5)
    assert f.truncate(0).order == 0
