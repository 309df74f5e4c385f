"""Background families: falling factorials, Stirling numbers, degenerate
exponential / logarithm / polylogarithm, and the Bernoulli, Euler and
poly-Bernoulli generating functions.

Conventions used throughout:

* degenerate falling factorial  (x)_{n,lam} = x(x-lam)(x-2lam)...(x-(n-1)lam)
* degenerate exponential        e_lam^x(t) = (1+lam*t)^(x/lam)
                                = sum((x)_{n,lam} t^n/n!)
* degenerate logarithm          log_lam(1+t) = ((1+t)^lam - 1)/lam
                                = sum(prod_{j<n}(lam-j) t^n/n!, n>=1)
* polylogarithm                 Li_k(z) = sum(z^m/m^k, m>=1), any integer k
* degenerate polylogarithm      the lam-deformation whose z^m coefficient is
                                prod_{j=1..m-1}(j-lam) / ((m-1)! m^k)

Scalars of the shape lam^(m-1)*(1)_{m,1/lam} are always stored expanded as
prod_{j=1..m-1}(lam-j), so 1/lam never enters the data model and everything
stays inside Q[lam][x].

Every generator here is memoized; tables and member lists are built once per
(parameters, order) and then shared read-only.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import (
    IndexOutOfRange,
    LambdaPoly,
    NonzeroInnerConstant,
    Scalar,
    TruncatedSeries,
    XLambdaPoly,
    series_powers,
)

#: Default truncation order for series construction.
DEFAULT_ORDER = 16


def auto_order(n: int) -> int:
    """Truncation order comfortably covering member index n."""
    return DEFAULT_ORDER if n <= DEFAULT_ORDER - 2 else n + 2


# ---------------------------------------------------------------------------
# falling factorials and lam-normalized scalars
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def falling_factorial_deg(n: int) -> XLambdaPoly:
    """(x)_{n,lam}, expanded in Q[lam][x]; (x)_{0,lam} = 1."""
    if n < 0:
        raise IndexOutOfRange("falling factorial index must be nonnegative")
    if n == 0:
        return XLambdaPoly.one()
    x = XLambdaPoly.x()
    prev = falling_factorial_deg(n - 1)
    shift = XLambdaPoly.from_lambda(LambdaPoly.lam() * (n - 1))
    return prev * (x - shift)


@lru_cache(maxsize=None)
def falling_factorial(n: int) -> XLambdaPoly:
    """Classical (x)_n = x(x-1)...(x-n+1), a lam-free polynomial."""
    if n < 0:
        raise IndexOutOfRange("falling factorial index must be nonnegative")
    if n == 0:
        return XLambdaPoly.one()
    x = XLambdaPoly.x()
    return falling_factorial(n - 1) * (x - (n - 1))


@lru_cache(maxsize=None)
def ones_falling_deg(n: int) -> LambdaPoly:
    """(1)_{n,lam} = prod_{j=0..n-1}(1 - j*lam) as a LambdaPoly."""
    if n < 0:
        raise IndexOutOfRange("falling factorial index must be nonnegative")
    if n == 0:
        return LambdaPoly.one()
    return ones_falling_deg(n - 1) * (LambdaPoly.one() - LambdaPoly.lam() * (n - 1))

@lru_cache(maxsize=None)
def lambda_pochhammer(m: int) -> LambdaPoly:
    """prod_{j=1..m-1}(lam - j), the expanded form of lam^(m-1)*(1)_{m,1/lam}.

    This is the t^m egf coefficient of log_lam(1+t); it reduces to (m-1)!
    times (-1)^(m-1) at lam=0.
    """
    if m < 1:
        raise IndexOutOfRange("lambda_pochhammer is defined for m >= 1")
    if m == 1:
        return LambdaPoly.one()
    return lambda_pochhammer(m - 1) * (LambdaPoly.lam() - (m - 1))


# ---------------------------------------------------------------------------
# exponential / logarithm series, classical and degenerate
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def exp_series(order: int, scale: Scalar = 1, symbolic_x: bool = False) -> TruncatedSeries:
    """e^(x*scale*t) with symbolic x, else e^(scale*t)."""
    s = Fraction(scale)
    coeffs = []
    p = Fraction(1)
    for n in range(order + 1):
        c = XLambdaPoly((tuple([0] * n) + (1,))) if symbolic_x else XLambdaPoly.one()
        coeffs.append(c * (p / factorial(n)))
        p *= s
    return TruncatedSeries(coeffs, order)


@lru_cache(maxsize=None)
def deg_exp(order: int, scale: Scalar = 1, symbolic_x: bool = False) -> TruncatedSeries:
    """e_lam^x(scale*t): coefficient n is (x)_{n,lam} * scale^n / n!.

    With ``symbolic_x`` off, x is set to 1, giving e_lam(scale*t).
    """
    s = Fraction(scale)
    coeffs = []
    p = Fraction(1)
    for n in range(order + 1):
        base = (
            falling_factorial_deg(n)
            if symbolic_x
            else XLambdaPoly.from_lambda(ones_falling_deg(n))
        )
        coeffs.append(base * (p / factorial(n)))
        p *= s
    return TruncatedSeries(coeffs, order)


@lru_cache(maxsize=None)
def log1p_series(order: int) -> TruncatedSeries:
    """log(1+t) = sum((-1)^(n-1) t^n / n, n>=1)."""
    coeffs: list[XLambdaPoly] = [XLambdaPoly.zero()]
    for n in range(1, order + 1):
        coeffs.append(XLambdaPoly.const(Fraction((-1) ** (n - 1), n)))
    return TruncatedSeries(coeffs, order)


@lru_cache(maxsize=None)
def deg_log(order: int) -> TruncatedSeries:
    """log_lam(1+t) = sum(prod_{j<n}(lam-j) t^n/n!, n>=1); inverse of e_lam(t)-1."""
    coeffs: list[XLambdaPoly] = [XLambdaPoly.zero()]
    for n in range(1, order + 1):
        coeffs.append(
            XLambdaPoly.from_lambda(lambda_pochhammer(n)) * Fraction(1, factorial(n))
        )
    return TruncatedSeries(coeffs, order)


# ---------------------------------------------------------------------------
# polylogarithms applied to a series argument
# ---------------------------------------------------------------------------


def polylog_compose(k: int, inner: TruncatedSeries) -> TruncatedSeries:
    """Li_k applied to a series with zero constant term: sum(inner^m / m^k)."""
    if not inner.coeffs[0].is_zero:
        raise NonzeroInnerConstant("polylogarithm argument must vanish at t=0")
    pows = series_powers(inner)
    acc = TruncatedSeries.zero(inner.order)
    for m in range(1, inner.order + 1):
        if pows[m].valuation() is None:
            break
        acc = acc + pows[m] * Fraction(m) ** (-k)
    return acc


def deg_polylog_compose(k: int, inner: TruncatedSeries) -> TruncatedSeries:
    """Degenerate polylogarithm applied to a series with zero constant term.

    Term m carries the polynomial coefficient prod_{j=1..m-1}(j-lam) divided
    by (m-1)! m^k; at lam=0 this reduces to the classical 1/m^k.
    """
    if not inner.coeffs[0].is_zero:
        raise NonzeroInnerConstant("polylogarithm argument must vanish at t=0")
    pows = series_powers(inner)
    acc = TruncatedSeries.zero(inner.order)
    for m in range(1, inner.order + 1):
        if pows[m].valuation() is None:
            break
        scalar = Fraction((-1) ** (m - 1), factorial(m - 1)) * Fraction(m) ** (-k)
        acc = acc + pows[m] * (lambda_pochhammer(m) * scalar)
    return acc


# ---------------------------------------------------------------------------
# Stirling numbers
# ---------------------------------------------------------------------------


class StirlingTable:
    """Triangular table of Stirling numbers of one kind, classical or degenerate.

    Entries are read off the defining series: row n, column j of the table is
    n!/j! times the t^n coefficient of f(t)^j, where f is e^t-1 (second kind),
    log(1+t) (first kind), or their degenerate counterparts e_lam(t)-1 and
    log_lam(1+t).  Values are LambdaPoly (rational constants when classical).
    The table is grown on demand and never mutated afterwards.
    """

    def __init__(self, kind: str, degenerate: bool = False):
        if kind not in ("first", "second"):
            raise ValueError(f"unknown Stirling kind {kind!r}")
        self.kind = kind
        self.degenerate = degenerate
        self._rows: list[list[LambdaPoly]] = []
        self._build(DEFAULT_ORDER)

    def _base_series(self, order: int) -> TruncatedSeries:
        if self.kind == "second":
            f = deg_exp(order) if self.degenerate else exp_series(order)
            return f - TruncatedSeries.one(order)
        return deg_log(order) if self.degenerate else log1p_series(order)

    def _build(self, n_max: int) -> None:
        pows = series_powers(self._base_series(n_max))
        rows = []
        for n in range(n_max + 1):
            row = []
            for j in range(n + 1):
                value = pows[j].coeffs[n].lambda_part() * Fraction(
                    factorial(n), factorial(j)
                )
                row.append(value)
            rows.append(row)
        self._rows = rows

    def ensure(self, n: int) -> None:
        if n >= len(self._rows):
            self._build(max(n, 2 * (len(self._rows) - 1)))

    def entry(self, n: int, j: int) -> LambdaPoly:
        """Table entry, zero for j > n (lenient indexing for summations)."""
        if n < 0 or j < 0:
            raise IndexOutOfRange(f"Stirling indices must be nonnegative, got ({n}, {j})")
        if j > n:
            return LambdaPoly.zero()
        self.ensure(n)
        return self._rows[n][j]


_TABLES: dict[tuple[str, bool], StirlingTable] = {}


def stirling_table(kind: str, degenerate: bool = False) -> StirlingTable:
    key = (kind, degenerate)
    if key not in _TABLES:
        _TABLES[key] = StirlingTable(kind, degenerate)
    return _TABLES[key]


def stirling(kind: str, n: int, j: int, degenerate: bool = False) -> LambdaPoly:
    """Stirling number of the given kind; strict range check 0 <= j <= n."""
    if n < 0 or j < 0 or j > n:
        raise IndexOutOfRange(f"Stirling index ({n}, {j}) outside 0 <= j <= n")
    return stirling_table(kind, degenerate).entry(n, j)


# ---------------------------------------------------------------------------
# Bernoulli / Euler / poly-Bernoulli generating functions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _classical_series(name: str, order: int) -> TruncatedSeries:
    if name == "bernoulli":
        # t/(e^t - 1) * e^(x t)
        num = TruncatedSeries.t(order + 1)
        den = exp_series(order + 1) - TruncatedSeries.one(order + 1)
    elif name == "euler":
        # 2/(e^t + 1) * e^(x t)
        num = TruncatedSeries.from_constant(2, order)
        den = exp_series(order) + TruncatedSeries.one(order)
    else:
        raise ValueError(f"unknown family {name!r}")
    return (num / den) * exp_series(order, 1, symbolic_x=True)


@lru_cache(maxsize=None)
def _degenerate_series(name: str, order: int) -> TruncatedSeries:
    if name == "bernoulli":
        num = TruncatedSeries.t(order + 1)
        den = deg_exp(order + 1) - TruncatedSeries.one(order + 1)
    elif name == "euler":
        num = TruncatedSeries.from_constant(2, order)
        den = deg_exp(order) + TruncatedSeries.one(order)
    else:
        raise ValueError(f"unknown family {name!r}")
    return (num / den) * deg_exp(order, 1, symbolic_x=True)


def classical_family(name: str, n: int) -> XLambdaPoly:
    """Bernoulli polynomial B_n(x) or Euler polynomial E_n(x)."""
    return _classical_series(name, auto_order(n)).egf_coeff(n)


def degenerate_family(name: str, n: int) -> XLambdaPoly:
    """Degenerate Bernoulli B_{n,lam}(x) or degenerate Euler E_{n,lam}(x)."""
    return _degenerate_series(name, auto_order(n)).egf_coeff(n)


def bernoulli_number(n: int) -> Fraction:
    """B_n with the B_1 = -1/2 convention of t/(e^t-1)."""
    return classical_family("bernoulli", n).specialize(lam=0, x=0)


def euler_poly_number(n: int) -> Fraction:
    """E_n(0), the Euler polynomial at zero."""
    return classical_family("euler", n).specialize(lam=0, x=0)


@lru_cache(maxsize=None)
def _poly_bernoulli_series(k: int, order: int) -> TruncatedSeries:
    # Li_k(1 - e^(-t)) / (e^t - 1) * e^(x t)
    inner = TruncatedSeries.one(order + 1) - exp_series(order + 1, -1)
    num = polylog_compose(k, inner)
    den = exp_series(order + 1) - TruncatedSeries.one(order + 1)
    return (num / den) * exp_series(order, 1, symbolic_x=True)


@lru_cache(maxsize=None)
def _deg_poly_bernoulli_series(k: int, order: int) -> TruncatedSeries:
    # l_{k,lam}(1 - e_lam(-t)) / (1 - e_lam(-t)) * e_lam^x(-t)
    inner = TruncatedSeries.one(order + 1) - deg_exp(order + 1, -1)
    num = deg_polylog_compose(k, inner)
    return (num / inner) * deg_exp(order, -1, symbolic_x=True)


@lru_cache(maxsize=None)
def _poly_bernoulli_mirror_series(k: int, order: int) -> TruncatedSeries:
    # Li_k(1 - e^(-t)) / (1 - e^(-t)) * e^(-x t): the lam=0 shape of the
    # degenerate construction (argument -t throughout).
    inner = TruncatedSeries.one(order + 1) - exp_series(order + 1, -1)
    num = polylog_compose(k, inner)
    return (num / inner) * exp_series(order, -1, symbolic_x=True)


def poly_bernoulli(n: int, k: int, degenerate: bool = False) -> XLambdaPoly:
    """Poly-Bernoulli polynomial of index k, classical or degenerate."""
    if degenerate:
        return _deg_poly_bernoulli_series(k, auto_order(n)).egf_coeff(n)
    return _poly_bernoulli_series(k, auto_order(n)).egf_coeff(n)


def poly_bernoulli_mirror(n: int, k: int) -> XLambdaPoly:
    """Classical member matching the degenerate construction's sign layout."""
    return _poly_bernoulli_mirror_series(k, auto_order(n)).egf_coeff(n)
