"""Exact rationals: the ground field every other value is built over."""

import re
from fractions import Fraction
from typing import TypeAlias

from app.core.exceptions import ParseError

# Fraction keeps numerator/denominator in lowest terms with a positive
# denominator after every operation, which is the canonical form we need.
Rational: TypeAlias = Fraction

_RATIONAL_RE = re.compile(
    r"""
    \A\s*
    (?P<sign>[-+]?)
    (?:
        (?P<num>\d+)(?:\s*/\s*(?P<den>\d+))?
      | (?P<int>\d*)\.(?P<frac>\d+)
    )
    \s*\Z
    """,
    re.VERBOSE,
)


def parse_rational(text: str) -> Rational:
    """Parse ``p``, ``p/q`` or a terminating decimal, all optionally signed."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ParseError(f"Not a rational number: {text!r}")
    sign = -1 if match["sign"] == "-" else 1
    if match["num"] is not None:
        den = int(match["den"]) if match["den"] is not None else 1
        if den == 0:
            raise ParseError(f"Zero denominator in {text!r}")
        return Fraction(sign * int(match["num"]), den)
    digits = match["frac"]
    whole = int(match["int"] or "0")
    return sign * (whole + Fraction(int(digits), 10 ** len(digits)))


def format_rational(value: Rational) -> str:
    """``p/q`` with the denominator omitted when it is 1."""
    return str(value)


def sign(value) -> int:
    """-1, 0 or 1 for any ordered-field element comparable with 0."""
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0
