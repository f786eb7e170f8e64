"""Local jet expansions at the base Weierstrass point.

The local coordinate is z = y, and x(z) is the even power series solving
x * G(x) = z^2, where G is the branch polynomial with its root at 0
removed.  All expansions are even in z; derivative tables list exact
z-derivatives at 0 with odd columns identically zero.
"""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussmap.curve import (
    canonical_derivatives,
    curve_from_json,
    default_curve,
    expand_canonical,
    expand_omega,
    new_curve,
    random_curve,
    x_derivatives,
    x_of_z,
)
from gaussmap.errors import (
    DuplicateBranchPoint,
    FirstBranchPointNotZero,
    IndexOutOfRange,
    InvalidIndex,
    TooFewBranchPoints,
)

F = Fraction


# -- validation ---------------------------------------------------------------------


def test_curve_construction_validates_branch_points():
    with pytest.raises(FirstBranchPointNotZero):
        new_curve([1, 2, 3, 4, 5, 6, 7, 8])
    with pytest.raises(DuplicateBranchPoint):
        new_curve([0, 1, 1, 3, 4, 5, 6, 7])
    with pytest.raises(TooFewBranchPoints):
        new_curve([0, 1, 2, 3, 4, 5])
    with pytest.raises(InvalidIndex):
        new_curve([0, 1, 2, 3, 4, 5, 6, 7, 8])  # odd count


def test_default_curve_has_consecutive_integer_branch_points():
    c = default_curve(4)
    assert c.genus == 4
    assert c.branch_points == tuple(F(i) for i in range(10))


def test_curve_json_round_trip():
    c = default_curve(3)
    assert curve_from_json(c.to_json()) == c
    assert curve_from_json({"branch_points": ["0", "1/2", "-1", "2", "3", "4", "5", "6"]}).genus == 3


def test_random_curve_is_seed_deterministic():
    a = random_curve(4, random.Random(7))
    b = random_curve(4, random.Random(7))
    assert a == b and a.genus == 4


# -- the defining identity ----------------------------------------------------------


def branch_identity_holds(curve, order=13):
    """x(z) * G(x(z)) == z^2 exactly, coefficient by coefficient."""
    x = x_of_z(curve, order)
    lhs = x * x.compose_poly(curve.moduli_polynomial())
    return all(
        lhs.coefficient(i) == (1 if i == 2 else 0)
        for i in range(lhs.truncation)
    )


def test_x_series_satisfies_the_branch_equation():
    assert branch_identity_holds(default_curve(3))


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_x_series_satisfies_the_branch_equation_on_random_curves(seed):
    curve = random_curve(3, random.Random(seed))
    assert branch_identity_holds(curve, order=11)


def test_x_series_leading_term_is_reciprocal_branch_product():
    c = default_curve(3)
    x = x_of_z(c, 6)
    assert x.coefficient(0) == 0 and x.coefficient(1) == 0
    assert x.coefficient(2) == 1 / c.g_at_zero()


def test_x_derivatives_start_with_the_known_second_derivative():
    c = default_curve(3)
    table = x_derivatives(c, 8)
    assert table[0] == 0 and table[1] == 0
    assert table[2] == 2 / c.g_at_zero()
    assert all(table[i] == 0 for i in range(1, 8, 2))


def test_x_derivatives_match_the_series_jets():
    c = default_curve(4)
    table = x_derivatives(c, 10)
    x = x_of_z(c, 11)
    for order in range(11):
        assert table[order] == x.derivative_at_zero(order)


# -- frame functions of the canonical basis -----------------------------------------


def test_canonical_expansions_scale_by_powers_of_x():
    c = default_curve(3)
    base = expand_canonical(c, 0, 13).series
    x = x_of_z(c, 13)
    for i in range(1, c.genus):
        expected = base
        for _ in range(i):
            expected = expected * x
        got = expand_canonical(c, i, 13).series
        bound = min(expected.truncation, got.truncation)
        assert all(
            got.coefficient(n) == expected.coefficient(n) for n in range(bound)
        )


def test_canonical_expansion_valuation_doubles_the_index():
    c = default_curve(4)
    for i in range(c.genus):
        exp = expand_canonical(c, i, 2 * c.genus + 3)
        assert exp.valuation == 2 * i
        assert exp.series.valuation() == 2 * i


def test_canonical_expansion_needs_enough_orders():
    c = default_curve(3)
    with pytest.raises(IndexOutOfRange):
        expand_canonical(c, 2, 4)
    with pytest.raises(IndexOutOfRange):
        expand_canonical(c, 3, 20)  # index outside 0..g-1


def test_derivative_table_matches_series_derivatives():
    c = default_curve(3)
    table = canonical_derivatives(c, 10)
    for i in range(c.genus):
        exp = expand_canonical(c, i, 11)
        for order in range(11):
            assert table[i][order] == exp.series.derivative_at_zero(order)


def test_derivative_table_odd_columns_vanish():
    c = default_curve(5)
    table = canonical_derivatives(c, 12)
    for row in table:
        assert all(row[order] == 0 for order in range(1, 13, 2))


def test_derivative_table_leading_entries_are_nonzero():
    c = default_curve(3)
    table = canonical_derivatives(c, 8)
    for i in range(c.genus):
        assert table[i][2 * i] != 0
        lead = expand_canonical(c, i, 2 * i + 1).series.coefficient(2 * i)
        assert table[i][2 * i] == math.factorial(2 * i) * lead


def test_twisted_expansion_is_the_double_pole_shift_of_a_canonical_row():
    c = default_curve(4)
    g = c.genus
    for k in range(1, g):
        omega = expand_omega(c, k, 11)
        assert omega.valuation == 2 * g - 2 * k - 2
        assert omega.series.valuation() == omega.valuation
        alpha = expand_canonical(c, g - k, 13).series
        shifted = alpha.shift_down(2)
        bound = min(shifted.truncation, omega.series.truncation)
        assert all(
            omega.series.coefficient(n) == shifted.coefficient(n)
            for n in range(bound)
        )


def test_derivative_tables_are_monotone_in_order():
    c = default_curve(3)
    small = canonical_derivatives(c, 6)
    large = canonical_derivatives(c, 12)
    for i in range(c.genus):
        assert large[i][: len(small[i])] == small[i]
