"""Conformal and frozen Laplacian behavior on exact jets."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heatjets.errors import NonInvertibleConstantTerm, OrderExhausted
from heatjets.jets import Jet2D
from heatjets.laplace import (ConformalLaplacian, FrozenLaplacian,
                              gaussian_curvature_jet)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def flat(c, order):
    return Jet2D.constant(Fraction(c), order)


def sphere_rho(radius, order):
    """rho = 4 R^4 / (R^2 + u^2 + v^2)^2 in stereographic coordinates."""
    r2 = Fraction(radius) ** 2
    base = Jet2D({(0, 0): r2, (2, 0): Fraction(1), (0, 2): Fraction(1)}, order)
    return (base ** 2).inverse() * (4 * r2 ** 2)


@st.composite
def metric_jets(draw, order=6):
    coeffs = {}
    for _ in range(draw(st.integers(0, 6))):
        a = draw(st.integers(0, order))
        b = draw(st.integers(0, order - a))
        coeffs[(a, b)] = draw(rationals)
    # drawn last so a repeated (0, 0) index cannot zero it out
    coeffs[(0, 0)] = draw(rationals.filter(bool))
    return Jet2D(coeffs, order)


def test_flat_laplacian_known_values():
    lap = ConformalLaplacian(flat(1, 8))
    f = Jet2D.monomial(4, 0, order=8, coeff=Fraction(1))
    assert lap.apply(f).coeffs == {(2, 0): -12}
    assert lap.apply_power(f, 2).constant_term() == 24
    g = Jet2D({(2, 2): Fraction(1)}, 8)
    assert lap.apply_power(g, 2).constant_term() == 8


def test_constant_rescaling():
    f = Jet2D({(2, 0): Fraction(1), (0, 2): Fraction(3)}, 6)
    assert ConformalLaplacian(flat(1, 6)).apply(f) * Fraction(1, 4) == \
        ConformalLaplacian(flat(4, 6)).apply(f)


def test_frozen_agrees_with_full_on_flat_metrics():
    f = Jet2D({(3, 1): Fraction(2), (0, 4): Fraction(-1)}, 6)
    rho = flat(Fraction(7, 3), 6)
    assert ConformalLaplacian(rho).apply(f) == FrozenLaplacian(rho).apply(f)


@settings(max_examples=30)
@given(metric_jets(), st.integers(0, 3), st.integers(0, 3))
def test_frozen_only_sees_constant_term(rho, a, b):
    f = Jet2D.monomial(a, b, order=6, coeff=Fraction(1))
    frozen = FrozenLaplacian(rho)
    frozen_const = FrozenLaplacian(flat(rho.constant_term(), 6))
    assert frozen.apply(f) == frozen_const.apply(f)


def test_degenerate_conformal_factor_rejected():
    rho = Jet2D.monomial(1, 0, order=4, coeff=Fraction(1))
    with pytest.raises(NonInvertibleConstantTerm):
        ConformalLaplacian(rho)


def test_inverse_factor_cache_and_identity():
    rho = sphere_rho(1, 6)
    lap = ConformalLaplacian(rho)
    inv2 = lap.inverse_factor(2)
    assert lap._inv.order == 2
    inv6 = lap.inverse_factor(6)
    assert lap._inv.order == 6
    assert rho.truncate(2) * inv2 == Jet2D.constant(Fraction(1), 2)
    assert rho * inv6 == Jet2D.constant(Fraction(1), 6)
    with pytest.raises(OrderExhausted):
        lap.inverse_factor(7)


@settings(max_examples=25)
@given(metric_jets())
def test_laplacian_is_linear(rho):
    lap = ConformalLaplacian(rho)
    f = Jet2D({(2, 0): Fraction(1), (1, 1): Fraction(2)}, 6)
    g = Jet2D({(0, 2): Fraction(5), (3, 0): Fraction(-1)}, 6)
    assert lap.apply(f + g) == lap.apply(f) + lap.apply(g)
    assert lap.apply(f * Fraction(3, 2)) == lap.apply(f) * Fraction(3, 2)


def test_sphere_curvature_is_constant_one_over_radius_squared():
    for radius in (1, 2, Fraction(3, 2)):
        rho = sphere_rho(radius, 8)
        k = gaussian_curvature_jet(rho)
        assert k.order == 6
        assert k.coeffs == {(0, 0): Fraction(1) / Fraction(radius) ** 2}


def test_flat_curvature_vanishes():
    assert not gaussian_curvature_jet(flat(Fraction(7, 3), 6))


def test_reciprocal_linear_curvature():
    # rho = 1/(2 + 3u + 5v) has K = -(9 + 25)/(2 ell) with ell = 2 + 3u + 5v
    ell = Jet2D({(0, 0): Fraction(2), (1, 0): Fraction(3),
                 (0, 1): Fraction(5)}, 6)
    rho = ell.inverse()
    k = gaussian_curvature_jet(rho)
    expected = ell.inverse(order=4) * Fraction(-34, 2)
    assert k == expected
