"""Family-member tests: anchors, index reductions, and closed-form routes."""

from fractions import Fraction

import pytest

from polyeuler.algebra import IndexOutOfRange, LambdaPoly, TruncatedSeries, XLambdaPoly
from polyeuler.families import (
    UnknownIdentity,
    closed_form_rhs,
    deg_poly_euler,
    deg_poly_euler_number,
    poly_euler,
    poly_euler_number,
    polylog_stirling_coeff,
    t34_lhs_oracle_series,
    t35_rhs_oracle_series,
)
from polyeuler.identities import _li_expansion_series
from polyeuler.sequences import classical_family, degenerate_family, exp_series, polylog_compose

K_RANGE = (-2, -1, 0, 1, 2, 3)


# ---------------------------------------------------------------------------
# poly-Euler polynomials
# ---------------------------------------------------------------------------


def test_index_one_gives_classical_euler_polynomials():
    for n in range(13):
        assert poly_euler(n, 1) == classical_family("euler", n)


def test_member_zero_is_one_for_every_index():
    for k in K_RANGE:
        assert poly_euler(0, k) == XLambdaPoly.one()
        assert deg_poly_euler(0, k) == XLambdaPoly.one()


def test_member_one_number_closed_value():
    for k in K_RANGE:
        expected = Fraction(2) ** (1 - k) - Fraction(3, 2)
        assert poly_euler(1, k).specialize(x=0) == XLambdaPoly.const(expected)
        assert poly_euler_number(1, k) == XLambdaPoly.const(expected)
    assert poly_euler_number(1, 1).rational_constant() == Fraction(-1, 2)
    assert poly_euler_number(1, 2).rational_constant() == Fraction(-1)


def test_members_have_no_lambda_content():
    for n in range(8):
        for k in (-1, 2):
            assert poly_euler(n, k).lambda_degree <= 0


# ---------------------------------------------------------------------------
# degenerate poly-Euler polynomials
# ---------------------------------------------------------------------------


def test_index_one_gives_degenerate_euler_polynomials():
    for n in range(13):
        assert deg_poly_euler(n, 1) == degenerate_family("euler", n)


def test_lam_zero_specialization_matches_classical_members():
    for n in range(11):
        for k in K_RANGE:
            assert deg_poly_euler(n, k).specialize(lam=0) == poly_euler(n, k)


def test_degenerate_member_one_number():
    lam = LambdaPoly.lam()
    for k in K_RANGE:
        expected = lam - Fraction(3, 2) + (LambdaPoly.one() - lam) * Fraction(2) ** (1 - k)
        assert deg_poly_euler_number(1, k).lambda_part() == expected


# ---------------------------------------------------------------------------
# polylogarithm expansion coefficients
# ---------------------------------------------------------------------------


def test_expansion_coefficient_anchors():
    for k in K_RANGE:
        assert polylog_stirling_coeff(1, k) == 2
    assert polylog_stirling_coeff(2, 1) == 0
    assert polylog_stirling_coeff(2, 2) == -2


def test_expansion_coefficient_against_composition():
    for n in range(1, 13):
        for k in K_RANGE:
            composed = _li_expansion_series(k, 16).egf_coeff(n)
            assert composed == XLambdaPoly.const(polylog_stirling_coeff(n, k))


def test_expansion_coefficient_rejects_n_zero():
    with pytest.raises(IndexOutOfRange):
        polylog_stirling_coeff(0, 2)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def test_euler_sum_closed_form_small_members():
    for k in K_RANGE:
        assert closed_form_rhs("T2.4", 0, k) == XLambdaPoly.one()
        at_zero = closed_form_rhs("T2.4", 1, k).specialize(x=0)
        assert at_zero == XLambdaPoly.const(Fraction(2) ** (1 - k) - Fraction(3, 2))
        assert closed_form_rhs("T2.4", 1, k) == poly_euler(1, k)


def test_degenerate_stirling_sum_closed_form_at_one():
    for k in K_RANGE:
        assert closed_form_rhs("T3.3", 1, k) == XLambdaPoly.const(2)


def test_unknown_identity_is_rejected():
    with pytest.raises(UnknownIdentity):
        closed_form_rhs("Eq18", 2, 1)
    with pytest.raises(UnknownIdentity):
        closed_form_rhs("T2.6", 2, 1, variant="inverted")


# ---------------------------------------------------------------------------
# substitution oracle series
# ---------------------------------------------------------------------------


def test_oracle_series_first_coefficients():
    # (1 - e_lam(-2t)) * egf(1 - e_lam(-2t)) starts at 2t
    w = t34_lhs_oracle_series(2, 12)
    assert w.coeffs[0].is_zero
    assert w.egf_coeff(1) == XLambdaPoly.const(2)
    # l_{k,lam}(-t)/(e_lam(u)+1) starts at -t/2
    u = t35_rhs_oracle_series(2, 12)
    assert u.egf_coeff(1) == XLambdaPoly.const(Fraction(-1, 2))


def test_polylog_series_collapse_keeps_higher_orders_empty():
    order = 12
    inner = TruncatedSeries.one(order) - exp_series(order, -2)
    series = polylog_compose(1, inner)
    assert series == TruncatedSeries.t(order) * 2
