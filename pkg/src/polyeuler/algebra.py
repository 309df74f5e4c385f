"""Exact arithmetic kernel: rationals, two-variable polynomials, truncated series.

Layers, bottom up:

* ``ExactRational`` -- alias for :class:`fractions.Fraction`, which already
  keeps the canonical form needed everywhere (positive denominator, gcd-reduced,
  zero stored as 0/1).
* ``LambdaPoly`` -- dense polynomial in the deformation parameter ``lam`` with
  rational coefficients, trailing zeros stripped.
* ``XLambdaPoly`` -- dense polynomial in ``x`` whose coefficients are
  ``LambdaPoly`` values; the working ring Q[lam][x].
* ``TruncatedSeries`` -- power series in ``t`` over ``XLambdaPoly`` with a hard
  truncation order; arithmetic never claims precision past the weakest operand.

All values are immutable after construction, hashable, and safe to share.
Every constructor strips trailing zero coefficients, so structural equality
coincides with mathematical equality.  No floating point appears anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence, Union

ExactRational = Fraction

Scalar = Union[int, Fraction]


class AlgebraError(Exception):
    """Base class for the exact-arithmetic error family."""


class LeadingCoefficientNotInvertible(AlgebraError):
    """Series division needs a nonzero rational constant at the denominator's valuation."""


class ValuationMismatch(AlgebraError):
    """Numerator vanishes to lower order than the denominator."""


class NonzeroInnerConstant(AlgebraError):
    """Series composition requires the inner series to vanish at t=0."""


class OrderExceeded(AlgebraError):
    """A coefficient beyond the stored truncation order was requested."""


class IndexOutOfRange(AlgebraError):
    """Index outside the range an operation is defined for."""


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an int or Fraction, got {type(value).__name__}")


class LambdaPoly:
    """Dense polynomial in ``lam`` over Q, canonical (no trailing zeros)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, value: Scalar) -> "LambdaPoly":
        return cls((value,))

    @classmethod
    def zero(cls) -> "LambdaPoly":
        return _LP_ZERO

    @classmethod
    def one(cls) -> "LambdaPoly":
        return _LP_ONE

    @classmethod
    def lam(cls) -> "LambdaPoly":
        return _LP_LAM

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def constant(self) -> Fraction:
        """The value as a plain rational; raises if ``lam`` actually occurs."""
        if len(self.coeffs) > 1:
            raise ValueError(f"not a constant: {self}")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def eval_at(self, lam_value: Scalar) -> Fraction:
        v = _as_fraction(lam_value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __add__(self, other):
        other = _coerce_lambda(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LambdaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LambdaPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce_lambda(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_lambda(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            v = _as_fraction(other)
            if v == 0:
                return _LP_ZERO
            return LambdaPoly(tuple(c * v for c in self.coeffs))
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return _LP_ZERO
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                out[i + j] += a * b
        return LambdaPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _coerce_lambda(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return _poly_str([(c, (0, e)) for e, c in enumerate(self.coeffs)])

    def __repr__(self):
        return f"LambdaPoly({self})"


def _coerce_lambda(value) -> "LambdaPoly":
    if isinstance(value, LambdaPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LambdaPoly((value,))
    return NotImplemented


_LP_ZERO = LambdaPoly()
_LP_ONE = LambdaPoly((1,))
_LP_LAM = LambdaPoly((0, 1))


class XLambdaPoly:
    """Dense polynomial in ``x`` with ``LambdaPoly`` coefficients: Q[lam][x]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce_lambda_strict(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs: tuple[LambdaPoly, ...] = tuple(cs)

    @classmethod
    def const(cls, value) -> "XLambdaPoly":
        return cls((value,))

    @classmethod
    def from_lambda(cls, p: LambdaPoly) -> "XLambdaPoly":
        return cls((p,))

    @classmethod
    def zero(cls) -> "XLambdaPoly":
        return _XP_ZERO

    @classmethod
    def one(cls) -> "XLambdaPoly":
        return _XP_ONE

    @classmethod
    def x(cls) -> "XLambdaPoly":
        return _XP_X

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def x_degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lambda_degree(self) -> int:
        return max((c.degree for c in self.coeffs), default=-1)

    def coeff(self, i: int) -> LambdaPoly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return _LP_ZERO

    def rational_constant(self) -> Fraction | None:
        """The value as a plain rational, or None if ``x`` or ``lam`` occurs."""
        if self.is_zero:
            return Fraction(0)
        if len(self.coeffs) == 1 and self.coeffs[0].degree == 0:
            return self.coeffs[0].coeffs[0]
        return None

    def lambda_part(self) -> LambdaPoly:
        """The value as a LambdaPoly; raises if ``x`` actually occurs."""
        if len(self.coeffs) > 1:
            raise ValueError(f"not free of x: {self}")
        return self.coeffs[0] if self.coeffs else _LP_ZERO

    def __add__(self, other):
        other = _coerce_x(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return XLambdaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return XLambdaPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce_x(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_x(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LambdaPoly)):
            s = _coerce_lambda(other)
            if s.is_zero:
                return _XP_ZERO
            return XLambdaPoly(tuple(c * s for c in self.coeffs))
        if not isinstance(other, XLambdaPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return _XP_ZERO
        out = [_LP_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return XLambdaPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        acc = _XP_ONE
        for _ in range(n):
            acc = acc * self
        return acc

    def derivative_x(self) -> "XLambdaPoly":
        """Formal derivative with respect to ``x``."""
        return XLambdaPoly(tuple(c * i for i, c in enumerate(self.coeffs) if i > 0))

    def subs_x(self, inner: "XLambdaPoly") -> "XLambdaPoly":
        """Substitute ``inner`` for ``x`` (Horner evaluation in Q[lam][x])."""
        acc = _XP_ZERO
        for c in reversed(self.coeffs):
            acc = acc * inner + XLambdaPoly.from_lambda(c)
        return acc

    def specialize(self, lam: Scalar | None = None, x: Scalar | None = None):
        """Substitute rational values for ``lam`` and/or ``x``.

        Untouched symbols stay symbolic.  With both values given the result
        is an exact ``Fraction``; otherwise it is an ``XLambdaPoly`` in the
        remaining symbol.
        """
        if lam is not None and x is not None:
            xv = _as_fraction(x)
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * xv + c.eval_at(lam)
            return acc
        if lam is not None:
            return XLambdaPoly(tuple(LambdaPoly.const(c.eval_at(lam)) for c in self.coeffs))
        if x is not None:
            xv = _as_fraction(x)
            acc = _LP_ZERO
            for c in reversed(self.coeffs):
                acc = acc * xv + c
            return XLambdaPoly.from_lambda(acc)
        return self

    def __eq__(self, other):
        other = _coerce_x(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        terms = []
        for xe, lp in enumerate(self.coeffs):
            for le, c in enumerate(lp.coeffs):
                terms.append((c, (xe, le)))
        return _poly_str(terms)

    def __repr__(self):
        return f"XLambdaPoly({self})"


def _coerce_lambda_strict(value) -> LambdaPoly:
    p = _coerce_lambda(value)
    if p is NotImplemented:
        raise TypeError(f"cannot use {type(value).__name__} as a LambdaPoly coefficient")
    return p


def _coerce_x(value) -> "XLambdaPoly":
    if isinstance(value, XLambdaPoly):
        return value
    if isinstance(value, (int, Fraction, LambdaPoly)):
        return XLambdaPoly((value,))
    return NotImplemented


_XP_ZERO = XLambdaPoly()
_XP_ONE = XLambdaPoly((1,))
_XP_X = XLambdaPoly((0, 1))


def _poly_str(terms: list[tuple[Fraction, tuple[int, int]]]) -> str:
    """Render terms, highest x power first, then highest lam power."""
    parts: list[str] = []
    for coeff, (xe, le) in sorted(terms, key=lambda t: (-t[1][0], -t[1][1])):
        if coeff == 0:
            continue
        monos = []
        if xe:
            monos.append("x" if xe == 1 else f"x^{xe}")
        if le:
            monos.append("lam" if le == 1 else f"lam^{le}")
        mag = abs(coeff)
        if not monos:
            body = str(mag)
        elif mag == 1:
            body = "*".join(monos)
        else:
            body = "*".join([str(mag)] + monos)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


class TruncatedSeries:
    """Power series sum(c_n t^n, n=0..N) + O(t^(N+1)) with exact coefficients."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, coeffs: Sequence = (), order: int | None = None):
        cs = [c if isinstance(c, XLambdaPoly) else _coerce_x_strict(c) for c in coeffs]
        if order is None:
            if not cs:
                raise ValueError("order is required for an empty coefficient list")
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        if len(cs) > order + 1:
            raise ValueError(f"{len(cs)} coefficients exceed order {order}")
        cs.extend([_XP_ZERO] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs: tuple[XLambdaPoly, ...] = tuple(cs)
        self._hash: int | None = None

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((_XP_ONE,), order)

    @classmethod
    def t(cls, order: int) -> "TruncatedSeries":
        return cls((_XP_ZERO, _XP_ONE), order)

    @classmethod
    def from_constant(cls, value, order: int) -> "TruncatedSeries":
        return cls((_coerce_x_strict(value),), order)

    @classmethod
    def from_egf(cls, members: Sequence, order: int) -> "TruncatedSeries":
        """Series whose egf coefficients are the given members: c_n = m_n / n!."""
        return cls(
            tuple(_coerce_x_strict(m) * Fraction(1, factorial(n)) for n, m in enumerate(members)),
            order,
        )

    def coeff(self, n: int) -> XLambdaPoly:
        if n < 0 or n > self.order:
            raise OrderExceeded(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def egf_coeff(self, n: int) -> XLambdaPoly:
        """n! times the t^n coefficient (family member in the egf convention)."""
        return self.coeff(n) * factorial(n)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if zero throughout."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                return i
        return None

    def prefix(self, order: int) -> "TruncatedSeries":
        """Truncate down to a smaller order."""
        if order > self.order:
            raise OrderExceeded(f"cannot extend order {self.order} to {order}")
        if order == self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m = min(self.order, other.order)
        return TruncatedSeries(
            tuple(a + b for a, b in zip(self.coeffs[: m + 1], other.coeffs[: m + 1])), m
        )

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m = min(self.order, other.order)
        return TruncatedSeries(
            tuple(a - b for a, b in zip(self.coeffs[: m + 1], other.coeffs[: m + 1])), m
        )

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LambdaPoly, XLambdaPoly)):
            s = _coerce_x_strict(other)
            return TruncatedSeries(tuple(c * s for c in self.coeffs), self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m = min(self.order, other.order)
        out = [_XP_ZERO] * (m + 1)
        for i in range(m + 1):
            a = self.coeffs[i]
            if a.is_zero:
                continue
            for j in range(m + 1 - i):
                b = other.coeffs[j]
                if b.is_zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, m)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Exact quotient; the denominator's valuation is cancelled.

        The denominator must have a nonzero rational constant at its first
        nonzero coefficient, and the numerator must vanish at least to the
        same order.  The result's order drops by the cancelled valuation.
        """
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        v = other.valuation()
        if v is None:
            raise LeadingCoefficientNotInvertible("denominator is zero through its order")
        lead = other.coeffs[v].rational_constant()
        if lead is None or lead == 0:
            raise LeadingCoefficientNotInvertible(
                f"leading coefficient at t^{v} is not a nonzero rational: {other.coeffs[v]}"
            )
        nv = self.valuation()
        if nv is not None and nv < v:
            raise ValuationMismatch(
                f"numerator valuation {nv} is below denominator valuation {v}"
            )
        m = min(self.order, other.order) - v
        if m < 0:
            raise OrderExceeded("operands are too short to produce any quotient coefficient")
        num = self.coeffs[v : v + m + 1]
        den = other.coeffs[v : v + m + 1]
        inv_lead = Fraction(1) / lead
        q: list[XLambdaPoly] = []
        for n in range(m + 1):
            acc = num[n]
            for i in range(1, n + 1):
                d = den[i]
                if d.is_zero or q[n - i].is_zero:
                    continue
                acc = acc - d * q[n - i]
            q.append(acc * inv_lead)
        return TruncatedSeries(q, m)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Substitute ``inner`` (which must vanish at t=0) for the variable."""
        if not inner.coeffs[0].is_zero:
            raise NonzeroInnerConstant(f"inner series has constant term {inner.coeffs[0]}")
        m = min(self.order, inner.order)
        pows = series_powers(inner.prefix(m))
        result = TruncatedSeries.from_constant(self.coeffs[0], m)
        for j in range(1, m + 1):
            c = self.coeffs[j]
            if c.is_zero or pows[j].valuation() is None:
                continue
            result = result + pows[j] * c
        return result

    def scale_t(self, c: Scalar) -> "TruncatedSeries":
        """Substitute ``c*t`` for ``t``: coefficient n picks up a factor c^n."""
        v = _as_fraction(c)
        out = []
        p = Fraction(1)
        for coeff in self.coeffs:
            out.append(coeff * p)
            p *= v
        return TruncatedSeries(out, self.order)

    def specialize(self, lam: Scalar | None = None, x: Scalar | None = None) -> "TruncatedSeries":
        """Specialize every coefficient (coefficients stay in Q[lam][x])."""
        if lam is not None and x is not None:
            return TruncatedSeries(
                tuple(XLambdaPoly.const(c.specialize(lam=lam, x=x)) for c in self.coeffs),
                self.order,
            )
        return TruncatedSeries(
            tuple(c.specialize(lam=lam, x=x) for c in self.coeffs), self.order
        )

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self.coeffs))
        return self._hash

    def __str__(self):
        parts = [f"({c})*t^{n}" for n, c in enumerate(self.coeffs) if not c.is_zero]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.order + 1})"

    def __repr__(self):
        return f"TruncatedSeries({self})"


def _coerce_x_strict(value) -> XLambdaPoly:
    p = _coerce_x(value)
    if p is NotImplemented:
        raise TypeError(f"cannot use {type(value).__name__} as a series coefficient")
    return p


@lru_cache(maxsize=None)
def series_powers(s: TruncatedSeries) -> tuple[TruncatedSeries, ...]:
    """All powers s^0..s^order at s's own order, computed once and shared.

    Composition and polylogarithm evaluation both walk powers of the same
    inner series; caching them here makes those walks linear in practice.
    """
    pows = [TruncatedSeries.one(s.order)]
    for _ in range(s.order):
        nxt = pows[-1] * s
        if nxt.valuation() is None:
            pows.extend([nxt] * (s.order + 1 - len(pows)))
            break
        pows.append(nxt)
    return tuple(pows)
