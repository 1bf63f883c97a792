"""Exact-rational string formats used in reports and configs.

Two interchange formats, both decimal-digit strings so golden files are
platform independent:

    "a/b^n"  -- scaled-integer form, e.g. "5/2^3" (kept unreduced)
    "p/q"    -- plain reduced fraction, e.g. "3/10"; bare integers allowed
"""

from __future__ import annotations

import re
from fractions import Fraction

_BADIC_RE = re.compile(r"^(\d+)/(\d+)\^(\d+)$")
_RATIO_RE = re.compile(r"^(-?\d+)/(-?\d+)$")
_INT_RE = re.compile(r"^-?\d+$")


def format_badic(numerator: int, base: int, scale: int) -> str:
    if scale == 0:
        return str(numerator)
    return f"{numerator}/{base}^{scale}"


def format_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "a/b^n", "p/q", a bare integer, or a decimal like "0.3"."""
    text = text.strip()
    m = _BADIC_RE.match(text)
    if m:
        a, b, n = int(m.group(1)), int(m.group(2)), int(m.group(3))
        if b < 2:
            raise ValueError(f"scaled-integer base must be >= 2: {text!r}")
        return Fraction(a, b**n)
    if _RATIO_RE.match(text) or _INT_RE.match(text):
        return Fraction(text)
    # Fraction accepts decimal strings exactly ("0.3" -> 3/10)
    try:
        return Fraction(text)
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
