"""Exact rational scalars on the unit interval, plus shared error types.

Every quantity in this package -- truth values, coordinates, breakpoints,
suprema -- is a :class:`fractions.Fraction`.  All formulas in play (min,
Lukasiewicz, product, affine rescaling) are closed over the rationals, so
equality checks everywhere are exact and tolerance-free.
"""

from __future__ import annotations

import math
from fractions import Fraction

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class ParseError(ValueError):
    """Malformed textual input (rationals, function files, spec files)."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ExactnessError(ArithmeticError):
    """An exact rational answer does not exist (irrational critical point).

    Raised instead of ever returning an approximation.  Unreachable for the
    function population this package constructs; it guards against silent
    precision loss if callers feed hand-built exotic inputs.
    """


def parse_rat(text: str) -> Rat:
    """Parse ``p/q``, an integer, or a decimal literal into an exact Rat.

    Decimals convert losslessly: ``0.3`` becomes ``3/10``.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty rational literal")
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        if "." in s or "e" in s or "E" in s:
            return Fraction(s)
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}: {exc}") from None


def fmt_rat(value: Rat) -> str:
    """Render exactly, ``p/q`` or a bare integer."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def ensure_unit(value: Rat, what: str = "value") -> Rat:
    if not ZERO <= value <= ONE:
        raise DomainError(f"{what} {fmt_rat(value)} outside [0,1]")
    return value


def rat_sqrt(value: Rat) -> Rat | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None
