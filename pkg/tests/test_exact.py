from fractions import Fraction

import pytest

from digitfract.exact import format_badic, format_fraction, parse_rational


def test_parse_forms():
    assert parse_rational("3/10") == Fraction(3, 10)
    assert parse_rational("0.3") == Fraction(3, 10)
    assert parse_rational("5/2^3") == Fraction(5, 8)
    assert parse_rational("7") == Fraction(7)
    assert parse_rational("0") == 0


def test_parse_rejects_junk():
    for junk in ("zebra", "1/0^2", "2^3", "1//2", ""):
        with pytest.raises(ValueError):
            parse_rational(junk)


def test_format_roundtrip():
    for x in (Fraction(0), Fraction(3, 10), Fraction(-1, 7), Fraction(12)):
        assert parse_rational(format_fraction(x)) == x
    assert parse_rational(format_badic(5, 2, 3)) == Fraction(5, 8)
    assert format_badic(5, 2, 0) == "5"
    assert format_fraction(Fraction(4, 2)) == "2"
