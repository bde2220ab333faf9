"""Exact rational values and their canonical text form.

Capacities and scores are `int` or `fractions.Fraction`, never floats.
Integral values are stored as plain ints (Fraction(6, 3) normalizes to 2)
so that hot integer paths stay cheap while mixed arithmetic stays exact.
The text form is `p/q` with q > 1, plain integer otherwise.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def as_rational(value) -> Rational:
    """Coerce to an exact rational, collapsing integral Fractions to int."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass int, Fraction or 'p/q' text")
    f = Fraction(value)
    return f.numerator if f.denominator == 1 else f


def parse_rational(text: str) -> Rational:
    """Parse `p/q` or integer text into an exact rational."""
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return num
    den = int(m.group(2))
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return as_rational(Fraction(num, den))


def format_rational(value: Rational) -> str:
    """Render an exact rational as canonical `p/q` (q > 1) or integer text."""
    value = as_rational(value)
    if isinstance(value, int):
        return str(value)
    return f"{value.numerator}/{value.denominator}"
