"""The two headline families and the closed-form sums they are checked against.

Definitions (egf convention: member n is n! times the t^n coefficient):

* poly-Euler polynomials of index k
      Li_k(1 - e^(-2t)) / (t (e^t + 1)) * e^(x t)
  At k=1 the numerator collapses to 2t and the classical Euler polynomials
  come back.  Member values at x=0 are the poly-Euler numbers.

* degenerate poly-Euler polynomials of index k
      l_{k,lam}(1 - e_lam(-2t)) / (t (e_lam(t) + 1)) * e_lam^x(t)
  At k=1 the numerator is again exactly 2t, giving the degenerate Euler
  polynomials; at lam=0 every ingredient reduces to its classical twin.

Family members are always produced from these generating functions.  The
closed-form right-hand sides of the verified identities live in
:func:`closed_form_rhs` and are evaluated term by term with the printed
index ranges and signs, so agreement between the two routes is a genuine
check rather than a tautology.  Suspected-typo encodings are selected with
a ``variant`` tag and never replace the printed form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .algebra import (
    IndexOutOfRange,
    LambdaPoly,
    TruncatedSeries,
    XLambdaPoly,
)
from .sequences import (
    auto_order,
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
    polylog_compose,
    stirling_table,
)


class UnknownIdentity(Exception):
    """An identity id (or variant) that is not registered."""


# ---------------------------------------------------------------------------
# generating functions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _poly_euler_quotient(k: int, order: int) -> TruncatedSeries:
    inner = TruncatedSeries.one(order + 1) - exp_series(order + 1, -2)
    num = polylog_compose(k, inner)
    den = TruncatedSeries.t(order + 1) * (
        exp_series(order + 1) + TruncatedSeries.one(order + 1)
    )
    return num / den


@lru_cache(maxsize=None)
def _poly_euler_series(k: int, order: int) -> TruncatedSeries:
    return _poly_euler_quotient(k, order) * exp_series(order, 1, symbolic_x=True)


@lru_cache(maxsize=None)
def _deg_poly_euler_quotient(k: int, order: int) -> TruncatedSeries:
    inner = TruncatedSeries.one(order + 1) - deg_exp(order + 1, -2)
    num = deg_polylog_compose(k, inner)
    den = TruncatedSeries.t(order + 1) * (
        deg_exp(order + 1) + TruncatedSeries.one(order + 1)
    )
    return num / den


@lru_cache(maxsize=None)
def _deg_poly_euler_series(k: int, order: int) -> TruncatedSeries:
    return _deg_poly_euler_quotient(k, order) * deg_exp(order, 1, symbolic_x=True)


def poly_euler(n: int, k: int) -> XLambdaPoly:
    """Poly-Euler polynomial of index k, from the generating function."""
    return _poly_euler_series(k, auto_order(n)).egf_coeff(n)


def poly_euler_number(n: int, k: int) -> XLambdaPoly:
    """Poly-Euler number (the member at x=0), as a constant polynomial."""
    return _poly_euler_quotient(k, auto_order(n)).egf_coeff(n)


def deg_poly_euler(n: int, k: int) -> XLambdaPoly:
    """Degenerate poly-Euler polynomial of index k."""
    return _deg_poly_euler_series(k, auto_order(n)).egf_coeff(n)


def deg_poly_euler_number(n: int, k: int) -> XLambdaPoly:
    """Degenerate poly-Euler number, a polynomial in lam only."""
    return _deg_poly_euler_quotient(k, auto_order(n)).egf_coeff(n)


# ---------------------------------------------------------------------------
# cached scalar ingredients for the closed-form sums
# ---------------------------------------------------------------------------


def _s2(n: int, j: int) -> Fraction:
    return stirling_table("second").entry(n, j).constant()


def _s1(n: int, j: int) -> Fraction:
    return stirling_table("first").entry(n, j).constant()


def _s2l(n: int, j: int) -> LambdaPoly:
    return stirling_table("second", degenerate=True).entry(n, j)


def _s1l(n: int, j: int) -> LambdaPoly:
    return stirling_table("first", degenerate=True).entry(n, j)


@lru_cache(maxsize=None)
def _euler_poly(n: int) -> XLambdaPoly:
    return classical_family("euler", n)


@lru_cache(maxsize=None)
def _euler_number(n: int) -> Fraction:
    return _euler_poly(n).specialize(lam=0, x=0)


@lru_cache(maxsize=None)
def _bernoulli_half(n: int) -> XLambdaPoly:
    """B_n(x/2), by exact substitution into the Bernoulli polynomial."""
    half_x = XLambdaPoly((0, Fraction(1, 2)))
    return classical_family("bernoulli", n).subs_x(half_x)


@lru_cache(maxsize=None)
def _bernoulli_number(n: int) -> Fraction:
    return classical_family("bernoulli", n).specialize(lam=0, x=0)


@lru_cache(maxsize=None)
def _pe_number(n: int, k: int) -> Fraction:
    value = poly_euler_number(n, k).rational_constant()
    assert value is not None
    return value


@lru_cache(maxsize=None)
def _deg_euler_number(n: int) -> LambdaPoly:
    return degenerate_family("euler", n).specialize(x=0).lambda_part()


@lru_cache(maxsize=None)
def _deg_pe_number(n: int, k: int) -> LambdaPoly:
    return deg_poly_euler_number(n, k).lambda_part()


@lru_cache(maxsize=None)
def _deg_pb_number(n: int, k: int) -> LambdaPoly:
    return poly_bernoulli(n, k, degenerate=True).specialize(x=0).lambda_part()


_X_PLUS_1 = XLambdaPoly((1, 1))
_X_PLUS_2 = XLambdaPoly((2, 1))
_X_HALF = XLambdaPoly((0, Fraction(1, 2)))
_X_PLUS_2_HALF = XLambdaPoly((1, Fraction(1, 2)))


@lru_cache(maxsize=None)
def _poly_bernoulli_shifted(n: int, k: int, shift: str) -> XLambdaPoly:
    subs = {
        "x": None,
        "x+2": _X_PLUS_2,
        "x/2": _X_HALF,
        "(x+2)/2": _X_PLUS_2_HALF,
    }[shift]
    member = poly_bernoulli(n, k)
    return member if subs is None else member.subs_x(subs)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def polylog_stirling_coeff(n: int, k: int) -> Fraction:
    """Closed-form egf coefficient of Li_k(1 - e^(-2t)).

    The sum over Stirling numbers of the second kind:
    sum(2^n (-1)^(n+m) m! / m^k * S2(n, m), m=1..n).  This is the target the
    composition route must reproduce exactly.
    """
    if n < 1:
        raise IndexOutOfRange("the expansion starts at n = 1")
    acc = Fraction(0)
    for m in range(1, n + 1):
        s2 = _s2(n, m)
        if s2 == 0:
            continue
        acc += Fraction(2**n * (-1) ** (n + m) * factorial(m)) * Fraction(m) ** (-k) * s2
    return acc


def _rhs_t22(n: int, k: int) -> XLambdaPoly:
    # Triple Stirling/Bernoulli sum with B_{n-l}(x/2) carriers.
    acc = XLambdaPoly.zero()
    for l in range(n + 1):
        scalar = Fraction(0)
        for m in range(l + 1):
            for j in range(1, m + 2):
                s2 = _s2(m + 1, j)
                if s2 == 0:
                    continue
                scalar += (
                    Fraction(
                        comb(l, m) * (-1) ** (m + 1 + j) * factorial(j) * 2**m,
                        (l - m + 1) * (m + 1),
                    )
                    * Fraction(j) ** (-k)
                    * s2
                )
        if scalar == 0:
            continue
        acc = acc + _bernoulli_half(n - l) * (scalar * Fraction(comb(n, l) * 2 ** (n - l)))
    return acc


def _rhs_t24(n: int, k: int) -> XLambdaPoly:
    acc = XLambdaPoly.zero()
    for m in range(n + 1):
        scalar = Fraction(0)
        for l in range(1, m + 2):
            s2 = _s2(m + 1, l)
            if s2 == 0:
                continue
            scalar += (
                Fraction(2**m * (-1) ** (m + 1 + l) * factorial(l), m + 1)
                * Fraction(l) ** (-k)
                * s2
            )
        if scalar == 0:
            continue
        acc = acc + _euler_poly(n - m) * (scalar * comb(n, m))
    return acc


def _rhs_t26(n: int, k: int) -> XLambdaPoly:
    coeffs = [comb(n, l) * _pe_number(n - l, k) for l in range(n + 1)]
    return XLambdaPoly(coeffs)


def _rhs_t28(n: int, k: int, transposed: bool) -> XLambdaPoly:
    acc = XLambdaPoly.zero()
    for l in range(n + 1):
        part = XLambdaPoly.zero()
        for m in range(l + 1):
            s2 = _s2(l, m) if transposed else _s2(m, l)
            if s2 == 0:
                continue
            part = part + falling_factorial(m) * s2
        if part.is_zero:
            continue
        acc = acc + part * (comb(n, l) * _pe_number(n - l, k))
    return acc


def _lhs_t29(n: int, k: int) -> XLambdaPoly:
    member = poly_euler(n - 1, k)
    return (member.subs_x(_X_PLUS_1) + member) * n


def _rhs_t29(n: int, k: int, rescaled: bool) -> XLambdaPoly:
    if rescaled:
        diff = _poly_bernoulli_shifted(n, k, "(x+2)/2") - _poly_bernoulli_shifted(
            n, k, "x/2"
        )
    else:
        diff = _poly_bernoulli_shifted(n, k, "x+2") - _poly_bernoulli_shifted(n, k, "x")
    return diff * 2**n


def _rhs_t31(n: int, k: int) -> XLambdaPoly:
    acc = XLambdaPoly.zero()
    for l in range(n + 1):
        acc = acc + falling_factorial_deg(l) * (_deg_pe_number(n - l, k) * comb(n, l))
    return acc


def _rhs_t32(n: int, k: int, transposed: bool) -> XLambdaPoly:
    acc = XLambdaPoly.zero()
    for l in range(n + 1):
        part = XLambdaPoly.zero()
        for m in range(l + 1):
            s2 = _s2l(l, m) if transposed else _s2l(m, l)
            if s2.is_zero:
                continue
            part = part + falling_factorial(m) * s2
        if part.is_zero:
            continue
        acc = acc + part * (_deg_pe_number(n - l, k) * comb(n, l))
    return acc


def _lhs_t33(n: int, k: int) -> XLambdaPoly:
    member = deg_poly_euler(n - 1, k)
    return member.specialize(x=1) + member.specialize(x=0)


def _rhs_t33(n: int, k: int) -> XLambdaPoly:
    acc = LambdaPoly.zero()
    for l in range(1, n + 1):
        s2 = _s2l(n, l)
        if s2.is_zero:
            continue
        acc = acc + lambda_pochhammer(l) * s2 * Fraction(l) ** (1 - k)
    acc = acc * Fraction(2**n * (-1) ** (n - 1), n)
    return XLambdaPoly.from_lambda(acc)


def _lhs_t34(n: int, k: int) -> XLambdaPoly:
    acc = LambdaPoly.zero()
    for i in range(1, n + 1):
        fi = ones_falling_deg(i)
        for m in range(n - i + 1):
            s2 = _s2l(n - i, m)
            if s2.is_zero:
                continue
            scalar = Fraction(comb(n, i) * 2**n * (-1) ** (m + n + 1))
            acc = acc + fi * s2 * _deg_pe_number(m, k) * scalar
    return XLambdaPoly.from_lambda(acc)


def _rhs_t34(n: int, k: int) -> XLambdaPoly:
    acc = LambdaPoly.zero()
    for m in range(1, n + 1):
        poch = lambda_pochhammer(m)
        base = Fraction(2) ** (n - m - 1) * Fraction(m) ** (1 - k) * comb(n, m)
        for l in range(n - m + 1):
            s2 = _s2l(n - m, l)
            if s2.is_zero:
                continue
            acc = acc + poch * s2 * _deg_euler_number(l) * (
                base * (-1) ** (l + n - 1)
            )
    return XLambdaPoly.from_lambda(acc)


def _lhs_t35(n: int, k: int) -> XLambdaPoly:
    # As printed the m = n term would carry lam^(-1); the derivation's inner
    # log series starts at index 1, so that term is vacuous and m stops at n-1.
    acc = LambdaPoly.zero()
    for m in range(n):
        poch = lambda_pochhammer(n - m)
        for l in range(m + 1):
            s1 = _s1l(m, l)
            if s1.is_zero:
                continue
            scalar = Fraction((-1) ** (l + 1) * comb(n, m)) * Fraction(2) ** (-l - 1)
            acc = acc + poch * s1 * _deg_pe_number(l, k) * scalar
    return XLambdaPoly.from_lambda(acc)


def _rhs_t35(n: int, k: int) -> XLambdaPoly:
    acc = LambdaPoly.zero()
    for m in range(1, n + 1):
        poch = lambda_pochhammer(m)
        base = Fraction(m) ** (1 - k) * comb(n, m)
        for l in range(n - m + 1):
            s1 = _s1l(n - m, l)
            if s1.is_zero:
                continue
            # (-1)^(l-1) written parity-safe for l = 0
            scalar = base * Fraction(2) ** (-l - 1) * (-1) ** (l + 1)
            acc = acc + poch * s1 * _deg_euler_number(l) * scalar
    return XLambdaPoly.from_lambda(acc)


def _rhs_t36(n: int, k: int, sign_corrected: bool) -> XLambdaPoly:
    acc = LambdaPoly.zero()
    for l in range(n + 1):
        en = _deg_euler_number(n - l)
        for m in range(l + 1):
            sign = (-1) ** m if sign_corrected else (-1) ** l
            scalar = Fraction(comb(n, l) * comb(l, m) * sign * 2**l, m + 1)
            acc = acc + ones_falling_deg(m + 1) * _deg_pb_number(l - m, k) * en * scalar
    return XLambdaPoly.from_lambda(acc)


# ---------------------------------------------------------------------------
# series-substitution oracles for the two substitution identities
# ---------------------------------------------------------------------------
#
# Both identities rewrite one expression along two expansion chains; each
# printed double sum must equal its own chain head, which we can evaluate
# independently by direct series composition.  That gives one oracle per
# printed sum, decoupled from whether the two sums agree with each other.


@lru_cache(maxsize=None)
def _one_minus_deg_exp(order: int, scale: int) -> TruncatedSeries:
    return TruncatedSeries.one(order) - deg_exp(order, scale)


@lru_cache(maxsize=None)
def t34_lhs_oracle_series(k: int, order: int) -> TruncatedSeries:
    """(1 - e_lam(-2t)) times the number egf evaluated at 1 - e_lam(-2t)."""
    inner = _one_minus_deg_exp(order, -2)
    return _deg_poly_euler_quotient(k, order).compose(inner) * inner


@lru_cache(maxsize=None)
def t34_rhs_oracle_series(k: int, order: int) -> TruncatedSeries:
    """l_{k,lam}(t) / (e_lam(1 - e_lam(-2t)) + 1)."""
    num = deg_polylog_compose(k, TruncatedSeries.t(order))
    inner = _one_minus_deg_exp(order, -2)
    den = deg_exp(order).compose(inner) + TruncatedSeries.one(order)
    return num / den


@lru_cache(maxsize=None)
def _neg_half_deg_log(order: int) -> TruncatedSeries:
    return deg_log(order) * Fraction(-1, 2)


@lru_cache(maxsize=None)
def t35_lhs_oracle_series(k: int, order: int) -> TruncatedSeries:
    """u times the number egf at u, for u = -(1/2) log_lam(1+t)."""
    u = _neg_half_deg_log(order)
    return _deg_poly_euler_quotient(k, order).compose(u) * u


@lru_cache(maxsize=None)
def t35_rhs_oracle_series(k: int, order: int) -> TruncatedSeries:
    """l_{k,lam}(-t) / (e_lam(u) + 1), for u = -(1/2) log_lam(1+t)."""
    num = deg_polylog_compose(k, TruncatedSeries.t(order).scale_t(-1))
    den = deg_exp(order).compose(_neg_half_deg_log(order)) + TruncatedSeries.one(order)
    return num / den


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_RHS_EVALUATORS = {
    ("T2.2", "printed"): _rhs_t22,
    ("C2.3", "printed"): lambda n, k: _rhs_t22(n, k).specialize(x=0),
    ("T2.4", "printed"): _rhs_t24,
    ("C2.5", "printed"): lambda n, k: _rhs_t24(n, k).specialize(x=0),
    ("T2.6", "printed"): _rhs_t26,
    ("T2.7", "printed"): lambda n, k: poly_euler(n - 1, k) * n
    if n >= 1
    else XLambdaPoly.zero(),
    ("T2.8", "printed"): lambda n, k: _rhs_t28(n, k, transposed=False),
    ("T2.8", "transposed"): lambda n, k: _rhs_t28(n, k, transposed=True),
    ("T2.9", "printed"): lambda n, k: _rhs_t29(n, k, rescaled=False),
    ("T2.9", "rescaled-argument"): lambda n, k: _rhs_t29(n, k, rescaled=True),
    ("T3.1", "printed"): _rhs_t31,
    ("T3.2", "printed"): lambda n, k: _rhs_t32(n, k, transposed=False),
    ("T3.2", "transposed"): lambda n, k: _rhs_t32(n, k, transposed=True),
    ("T3.3", "printed"): _rhs_t33,
    ("T3.4", "printed"): _rhs_t34,
    ("T3.5", "printed"): _rhs_t35,
    ("T3.6", "printed"): lambda n, k: _rhs_t36(n, k, sign_corrected=False),
    ("T3.6", "sign-corrected"): lambda n, k: _rhs_t36(n, k, sign_corrected=True),
}


def closed_form_rhs(identity_id: str, n: int, k: int, variant: str = "printed") -> XLambdaPoly:
    """Evaluate the printed right-hand side of a registered identity.

    Substitutions of shifted arguments (x/2, x+1, x+2) are performed by exact
    polynomial composition; everything stays inside Q[lam][x].
    """
    try:
        evaluator = _RHS_EVALUATORS[(identity_id, variant)]
    except KeyError:
        raise UnknownIdentity(f"no closed form registered for {identity_id!r} ({variant!r})")
    return evaluator(n, k)
