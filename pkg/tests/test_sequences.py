"""Background-family tests against independent oracles.

The oracles here deliberately avoid the library's series machinery:
set-partition enumeration and recurrences for Stirling numbers, dict-based
two-variable polynomial arithmetic for the degenerate basis conversions, and
Akiyama-Tanigawa for Bernoulli numbers.
"""

from fractions import Fraction
from math import comb, factorial

import pytest

from polyeuler.algebra import (
    IndexOutOfRange,
    LambdaPoly,
    NonzeroInnerConstant,
    TruncatedSeries,
    XLambdaPoly,
)
from polyeuler.sequences import (
    classical_family,
    deg_exp,
    deg_log,
    deg_polylog_compose,
    degenerate_family,
    exp_series,
    falling_factorial,
    falling_factorial_deg,
    lambda_pochhammer,
    ones_falling_deg,
    poly_bernoulli,
    poly_bernoulli_mirror,
    polylog_compose,
    stirling,
    stirling_table,
)

# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def count_partitions_with_blocks(n: int, k: int) -> int:
    """Brute-force count of set partitions of an n-set into k blocks."""
    if n == 0:
        return 1 if k == 0 else 0
    count = 0

    def place(element: int, blocks: list[list[int]]):
        nonlocal count
        if element == n:
            if len(blocks) == k:
                count += 1
            return
        for block in blocks:
            block.append(element)
            place(element + 1, blocks)
            block.pop()
        if len(blocks) < k:
            blocks.append([element])
            place(element + 1, blocks)
            blocks.pop()

    place(0, [])
    return count


def stirling2_recurrence(n_max: int) -> list[list[int]]:
    rows = [[1]]
    for n in range(1, n_max + 1):
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = rows[n - 1][k - 1] + (k * rows[n - 1][k] if k <= n - 1 else 0)
        rows.append(row)
    return rows


def stirling1_recurrence(n_max: int) -> list[list[int]]:
    # signed: s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k)
    rows = [[1]]
    for n in range(1, n_max + 1):
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            above = rows[n - 1][k] if k <= n - 1 else 0
            row[k] = rows[n - 1][k - 1] - (n - 1) * above
        rows.append(row)
    return rows


# dict-based polynomials in (x, lam): {(x_exp, lam_exp): Fraction}


def dadd(a: dict, b: dict) -> dict:
    out = dict(a)
    for key, value in b.items():
        out[key] = out.get(key, Fraction(0)) + value
    return {key: value for key, value in out.items() if value != 0}


def dmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (xa, la), ca in a.items():
        for (xb, lb), cb in b.items():
            key = (xa + xb, la + lb)
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {key: value for key, value in out.items() if value != 0}


def dscale(a: dict, c: Fraction) -> dict:
    return {key: value * c for key, value in a.items() if value * c != 0}


def d_ff_deg(n: int) -> dict:
    """(x)_{n,lam} as a dict polynomial."""
    acc = {(0, 0): Fraction(1)}
    for j in range(n):
        acc = dmul(acc, {(1, 0): Fraction(1), (0, 1): Fraction(-j)})
    return acc


def d_ff(n: int) -> dict:
    acc = {(0, 0): Fraction(1)}
    for j in range(n):
        acc = dmul(acc, dadd({(1, 0): Fraction(1)}, {(0, 0): Fraction(-j)}))
    return acc


def expand_in_basis(p: dict, basis: list[dict], degree: int) -> list[dict]:
    """Coefficients (as lam-polynomial dicts) of p in a monic-in-x basis."""
    remainder = dict(p)
    coeffs: list[dict] = [dict() for _ in range(degree + 1)]
    for l in range(degree, -1, -1):
        c_l = {
            (0, le): value for (xe, le), value in remainder.items() if xe == l
        }
        coeffs[l] = {le: value for (_, le), value in c_l.items()}
        remainder = dadd(remainder, dscale(dmul(c_l, basis[l]), Fraction(-1)))
    assert remainder == {}, remainder
    return coeffs


def lam_dict_of(p: LambdaPoly) -> dict:
    return {e: c for e, c in enumerate(p.coeffs) if c != 0}


def akiyama_tanigawa(n: int) -> Fraction:
    """B_n with B_1 = +1/2 (triangular update oracle)."""
    row = [Fraction(0)] * (n + 1)
    result = Fraction(0)
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        result = row[0]
    return result


# ---------------------------------------------------------------------------
# falling factorials
# ---------------------------------------------------------------------------


def test_falling_factorial_deg_examples():
    assert falling_factorial_deg(0) == XLambdaPoly.one()
    x = XLambdaPoly.x()
    lam_x = XLambdaPoly((LambdaPoly.zero(), LambdaPoly.lam()))
    assert falling_factorial_deg(2) == x * x - lam_x
    assert falling_factorial_deg(3).specialize(lam=1) == XLambdaPoly((0, 2, -3, 1))


def test_falling_factorial_matches_lam_equals_one():
    for n in range(8):
        assert falling_factorial_deg(n).specialize(lam=1) == falling_factorial(n)


def test_ones_falling_and_pochhammer():
    lam = LambdaPoly.lam()
    assert ones_falling_deg(2) == LambdaPoly.one() - lam
    assert lambda_pochhammer(1) == LambdaPoly.one()
    assert lambda_pochhammer(3) == (lam - 1) * (lam - 2)
    # expanded normalization: lam^(m-1) (1)_{m,1/lam} with 1/lam cleared
    for m in range(1, 7):
        assert lambda_pochhammer(m).eval_at(0) == Fraction((-1) ** (m - 1) * factorial(m - 1))


# ---------------------------------------------------------------------------
# Stirling numbers
# ---------------------------------------------------------------------------


def test_stirling_second_against_partition_counts():
    for n in range(7):
        for k in range(n + 1):
            assert stirling("second", n, k).constant() == count_partitions_with_blocks(n, k)
    assert stirling("second", 3, 2).constant() == 3


def test_stirling_first_against_falling_factorial_expansion():
    for n in range(9):
        expansion = d_ff(n)
        for l in range(n + 1):
            expected = expansion.get((l, 0), Fraction(0))
            assert stirling("first", n, l).constant() == expected
    assert stirling("first", 3, 1).constant() == 2


def test_stirling_against_recurrences():
    rows2 = stirling2_recurrence(10)
    rows1 = stirling1_recurrence(10)
    for n in range(11):
        for k in range(n + 1):
            assert stirling("second", n, k).constant() == rows2[n][k]
            assert stirling("first", n, k).constant() == rows1[n][k]


def test_degenerate_stirling_second_against_basis_conversion():
    basis = [d_ff(l) for l in range(9)]
    for n in range(9):
        coeffs = expand_in_basis(d_ff_deg(n), basis, n)
        for l in range(n + 1):
            assert lam_dict_of(stirling("second", n, l, degenerate=True)) == coeffs[l]


def test_degenerate_stirling_first_against_basis_conversion():
    basis = [d_ff_deg(l) for l in range(9)]
    for n in range(9):
        coeffs = expand_in_basis(d_ff(n), basis, n)
        for l in range(n + 1):
            assert lam_dict_of(stirling("first", n, l, degenerate=True)) == coeffs[l]


def test_degenerate_stirling_specializes_to_classical():
    for kind in ("first", "second"):
        for n in range(11):
            for k in range(n + 1):
                assert stirling(kind, n, k, degenerate=True).eval_at(0) == stirling(
                    kind, n, k
                ).constant()


def test_stirling_inversion():
    s1 = stirling_table("first", degenerate=True)
    s2 = stirling_table("second", degenerate=True)
    for n in range(11):
        for m in range(n + 1):
            acc = LambdaPoly.zero()
            for l in range(m, n + 1):
                acc = acc + s1.entry(n, l) * s2.entry(l, m)
            assert acc == (LambdaPoly.one() if n == m else LambdaPoly.zero())


def test_degenerate_falling_factorial_in_classical_basis():
    # (x)_{n,lam} = sum(S_{2,lam}(n,l) (x)_l) as an identity in Q[lam][x]
    table = stirling_table("second", degenerate=True)
    for n in range(11):
        acc = XLambdaPoly.zero()
        for l in range(n + 1):
            acc = acc + falling_factorial(l) * table.entry(n, l)
        assert acc == falling_factorial_deg(n)


def test_classical_expansions_of_power_and_falling_factorial():
    # (x)_n = sum(S_1(n,l) x^l) and x^n = sum(S_2(n,l) (x)_l), n <= 10
    for n in range(11):
        by_first = XLambdaPoly(
            [stirling("first", n, l).constant() for l in range(n + 1)]
        )
        assert by_first == falling_factorial(n)
        by_second = XLambdaPoly.zero()
        for l in range(n + 1):
            by_second = by_second + falling_factorial(l) * stirling("second", n, l)
        assert by_second == XLambdaPoly(tuple([0] * n + [1]))


def test_stirling_index_errors():
    with pytest.raises(IndexOutOfRange):
        stirling("second", 3, 4)
    with pytest.raises(IndexOutOfRange):
        stirling("first", -1, 0)
    assert stirling_table("second").entry(2, 3).is_zero


# ---------------------------------------------------------------------------
# degenerate exponential and logarithm
# ---------------------------------------------------------------------------


def test_deg_exp_examples():
    e = deg_exp(8, 1, symbolic_x=True)
    assert e.coeffs[1] == XLambdaPoly.x()
    e_m2 = deg_exp(8, -2)
    expected = (LambdaPoly.one() - LambdaPoly.lam()) * 2
    assert e_m2.coeffs[2] == XLambdaPoly.from_lambda(expected)
    for n in range(9):
        assert e.coeffs[n].specialize(lam=0) == XLambdaPoly(
            tuple([0] * n + [Fraction(1, factorial(n))])
        )


def test_deg_log_examples():
    series = deg_log(10)
    assert series.coeffs[0].is_zero
    assert series.coeffs[1] == XLambdaPoly.one()
    half = Fraction(1, 2)
    assert series.coeffs[2] == XLambdaPoly.from_lambda(
        LambdaPoly.lam() * half - half
    )


def test_deg_log_and_deg_exp_are_compositional_inverses():
    order = 12
    em1 = deg_exp(order) - TruncatedSeries.one(order)
    assert deg_log(order).compose(em1) == TruncatedSeries.t(order)
    assert em1.compose(deg_log(order)) == TruncatedSeries.t(order)


# ---------------------------------------------------------------------------
# polylogarithms
# ---------------------------------------------------------------------------


def test_polylog_linear_case_collapses():
    order = 12
    inner = TruncatedSeries.one(order) - exp_series(order, -2)
    assert polylog_compose(1, inner) == TruncatedSeries.t(order) * 2


def test_polylog_at_t_is_the_defining_sum():
    order = 9
    for k in (-2, 0, 2):
        series = polylog_compose(k, TruncatedSeries.t(order))
        for m in range(1, order + 1):
            assert series.coeffs[m] == XLambdaPoly.const(Fraction(m) ** (-k))
        assert series.coeffs[0].is_zero


def test_polylog_rejects_nonzero_constant():
    with pytest.raises(NonzeroInnerConstant):
        polylog_compose(2, TruncatedSeries.one(4))
    with pytest.raises(NonzeroInnerConstant):
        deg_polylog_compose(2, TruncatedSeries.one(4))


def test_deg_polylog_leading_term_and_linear_case():
    order = 10
    series = deg_polylog_compose(3, TruncatedSeries.t(order))
    assert series.coeffs[1] == XLambdaPoly.one()
    inner = TruncatedSeries.one(14) - deg_exp(14, -2)
    assert deg_polylog_compose(1, inner) == TruncatedSeries.t(14) * 2


def test_deg_polylog_specializes_to_classical():
    order = 9
    inner = TruncatedSeries.one(order) - exp_series(order, -2)
    deg_inner = TruncatedSeries.one(order) - deg_exp(order, -2)
    for k in (-1, 1, 2):
        degenerate = deg_polylog_compose(k, deg_inner).specialize(lam=0)
        assert degenerate == polylog_compose(k, inner)


# ---------------------------------------------------------------------------
# Bernoulli and Euler families
# ---------------------------------------------------------------------------


def test_classical_family_examples():
    assert classical_family("euler", 1) == XLambdaPoly((Fraction(-1, 2), 1))
    assert classical_family("bernoulli", 0) == XLambdaPoly.one()
    assert classical_family("bernoulli", 2).specialize(x=0) == XLambdaPoly.const(
        Fraction(1, 6)
    )


def test_bernoulli_numbers_against_akiyama_tanigawa():
    for n in range(11):
        ours = classical_family("bernoulli", n).specialize(lam=0, x=0)
        assert ours == (-1) ** n * akiyama_tanigawa(n)


def test_euler_polynomials_satisfy_functional_equation():
    # E_n(x+1) + E_n(x) = 2 x^n characterizes the family
    shift = XLambdaPoly((1, 1))
    for n in range(13):
        e = classical_family("euler", n)
        assert e.subs_x(shift) + e == XLambdaPoly(tuple([0] * n + [2]))


def test_bernoulli_polynomials_satisfy_difference_equation():
    shift = XLambdaPoly((1, 1))
    for n in range(1, 13):
        b = classical_family("bernoulli", n)
        assert b.subs_x(shift) - b == XLambdaPoly(tuple([0] * (n - 1) + [n]))


def test_degenerate_family_examples():
    assert degenerate_family("euler", 0) == XLambdaPoly.one()
    assert degenerate_family("euler", 1) == XLambdaPoly((Fraction(-1, 2), 1))
    assert degenerate_family("euler", 2).specialize(lam=0) == classical_family("euler", 2)


def test_degenerate_families_reduce_at_lam_zero():
    for name in ("euler", "bernoulli"):
        for n in range(11):
            assert degenerate_family(name, n).specialize(lam=0) == classical_family(name, n)


def test_degenerate_euler_shift_relation():
    # sum(C(n,l) (1)_{l,lam} E_{n-l,lam}(x)) + E_{n,lam}(x) = 2 (x)_{n,lam},
    # summed directly, independent of the series-division route
    for n in range(9):
        acc = XLambdaPoly.zero()
        for l in range(n + 1):
            acc = acc + degenerate_family("euler", n - l) * (
                ones_falling_deg(l) * comb(n, l)
            )
        acc = acc + degenerate_family("euler", n)
        assert acc == falling_factorial_deg(n) * 2


# ---------------------------------------------------------------------------
# poly-Bernoulli
# ---------------------------------------------------------------------------


def test_poly_bernoulli_index_one_is_bernoulli():
    assert poly_bernoulli(0, 1) == XLambdaPoly.one()
    for n in range(11):
        assert poly_bernoulli(n, 1) == classical_family("bernoulli", n)


def test_deg_poly_bernoulli_reduces_to_mirror_classical():
    for n in range(9):
        for k in (-1, 1, 2, 3):
            reduced = poly_bernoulli(n, k, degenerate=True).specialize(lam=0)
            assert reduced == poly_bernoulli_mirror(n, k)


def test_deg_poly_bernoulli_first_member():
    lam = LambdaPoly.lam()
    for k in (-1, 1, 2):
        value = poly_bernoulli(1, k, degenerate=True).specialize(x=0).lambda_part()
        assert value == (LambdaPoly.one() - lam) * Fraction(2) ** (-k)
