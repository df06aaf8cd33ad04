"""Scalar plumbing: exact rationals, floats, parsing and printing.

Exact quantities are plain ``fractions.Fraction`` values (arbitrary
precision, always reduced, positive denominator).  Floating quantities
are ``float``.  A token parses to a Fraction iff it is an integer or a
``p/q`` literal; anything with a decimal point or exponent is a float.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOATING = "floating"

DEFAULT_TOLERANCE = 1e-9

_INT_RE = re.compile(r"[+-]?\d+\Z")
_FRACTION_RE = re.compile(r"[+-]?\d+/\d+\Z")


def is_exact_scalar(x: Scalar) -> bool:
    return isinstance(x, (Fraction, int))


def as_float(x: Scalar) -> float:
    return float(x)


def parse_scalar(token: str) -> Scalar:
    """Parse one numeric token: ``p/q`` and integers are exact, decimals float."""
    token = token.strip()
    if _INT_RE.match(token) or _FRACTION_RE.match(token):
        return Fraction(token)
    return float(token)  # raises ValueError on garbage


def parse_rational(token: str) -> Fraction:
    """Parse a token that must be exact (integer or ``p/q``)."""
    token = token.strip()
    if not (_INT_RE.match(token) or _FRACTION_RE.match(token)):
        raise ValueError(f"not an exact rational literal: {token!r}")
    return Fraction(token)


def format_scalar(x: Scalar) -> str:
    """Fractions print as ``p/q`` (or a bare integer), floats with 12 significant digits."""
    if isinstance(x, (Fraction, int)):
        return str(x)
    return f"{x:.12g}"
