"""Exact-format rendering and parsing for polynomials and rationals.

Rationals cross every serialization boundary as decimal-free "p/q" strings;
polynomials in Q[lam][x] become nested coefficient arrays indexed
[x-degree][lam-degree].  Parsing is the exact inverse, so a round trip
re-canonicalizes to a structurally equal value.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import LambdaPoly, XLambdaPoly


def frac_str(value: Fraction) -> str:
    """Render as "p/q", always with the (positive) denominator."""
    return f"{value.numerator}/{value.denominator}"


def parse_frac(text: str) -> Fraction:
    """Parse "p/q" or a bare integer string into an exact Fraction."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def lambda_poly_to_list(p: LambdaPoly) -> list[str]:
    return [frac_str(c) for c in p.coeffs]


def lambda_poly_from_list(items: list[str]) -> LambdaPoly:
    return LambdaPoly(tuple(parse_frac(s) for s in items))


def poly_to_lists(p: XLambdaPoly) -> list[list[str]]:
    """Nested [x-degree][lam-degree] array of "p/q" strings."""
    return [lambda_poly_to_list(c) for c in p.coeffs]


def poly_from_lists(rows: list[list[str]]) -> XLambdaPoly:
    return XLambdaPoly(tuple(lambda_poly_from_list(row) for row in rows))


def poly_to_monomial_str(p: XLambdaPoly) -> str:
    """Human-readable rendering, decreasing x power then decreasing lam power."""
    return str(p)
