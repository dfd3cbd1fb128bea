"""Multiple-commutator calculus: definition rules, V_m counts, X_m forms."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heatjets.commutator import (RationalMatrix, commutator,
                                 filtration_vectors, multiple_commutator,
                                 x_operator_by_sum, x_operator_closed,
                                 x_operator_recurrence)

entries = st.integers(-3, 3)


def matrices(n):
    return st.lists(st.lists(entries, min_size=n, max_size=n),
                    min_size=n, max_size=n).map(RationalMatrix)


def fixed_pair():
    rng = random.Random(42)
    return (RationalMatrix.random(4, rng), RationalMatrix.random(4, rng))


def test_definition_rules():
    b, a = fixed_pair()
    assert multiple_commutator(b, a, (0,)) == b
    assert multiple_commutator(b, a, (1,)) == commutator(b, a)
    assert multiple_commutator(b, a, (2,)) == commutator(commutator(b, a), a)
    assert multiple_commutator(b, a, (0, 0)) == b * b
    assert multiple_commutator(b, a, (0, 1)) == commutator(b * b, a)
    with pytest.raises(ValueError):
        multiple_commutator(b, a, ())
    with pytest.raises(ValueError):
        multiple_commutator(b, a, (-1,))


def test_commuting_elements_kill_brackets():
    d1 = RationalMatrix([[2, 0], [0, 3]])
    d2 = RationalMatrix([[5, 0], [0, 7]])
    zero = d1 * Fraction(0)
    assert multiple_commutator(d1, d2, (1,)) == zero
    # closed form collapses to B^m by the binomial theorem
    assert x_operator_closed(d1, d2, 3) == d1 * d1 * d1
    assert x_operator_by_sum(d1, d2, 3) == d1 * d1 * d1


def test_filtration_counts():
    for m in range(1, 11):
        vectors = list(filtration_vectors(m))
        assert len(vectors) == 2 ** (m - 1)
        assert len(set(vectors)) == len(vectors)
        for j in vectors:
            assert sum(j) + len(j) == m


def test_v1_and_v2_explicit():
    assert list(filtration_vectors(1)) == [(0,)]
    assert sorted(filtration_vectors(2)) == [(0, 0), (1,)]


def test_x2_hand_expansion():
    b, a = fixed_pair()
    expected = b * b + b * a - a * b
    assert x_operator_by_sum(b, a, 2) == expected
    assert x_operator_recurrence(b, a, 2) == expected
    assert x_operator_closed(b, a, 2) == expected


def test_self_commutation_collapses():
    b, _ = fixed_pair()
    assert x_operator_recurrence(b, b, 2) == b * b


def test_three_way_equivalence_fixed_matrices():
    b, a = fixed_pair()
    for m in range(1, 6):
        by_sum = x_operator_by_sum(b, a, m)
        rec = x_operator_recurrence(b, a, m)
        assert by_sum == rec
        assert rec == x_operator_closed(b, a, m)
    for m in range(6, 9):
        assert x_operator_recurrence(b, a, m) == x_operator_closed(b, a, m)


def test_resolvent_difference_recurrence_form():
    # with B = A - H the recurrence reads X_m = X_{m-1} A - H X_{m-1}
    rng = random.Random(3)
    a = RationalMatrix.random(4, rng)
    h = RationalMatrix.random(4, rng)
    b = a - h
    x = b
    for m in range(2, 9):
        x_next = x * a - h * x
        assert x_next == x_operator_recurrence(b, a, m)
        x = x_next


@settings(max_examples=30, deadline=None)
@given(matrices(3), matrices(3), st.integers(1, 4))
def test_three_way_equivalence_property(b, a, m):
    rec = x_operator_recurrence(b, a, m)
    assert x_operator_by_sum(b, a, m) == rec
    assert x_operator_closed(b, a, m) == rec
