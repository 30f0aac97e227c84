import math

import pytest

from concswap.core import InvalidParameterError
from concswap.utils import format_value, parse_float, parse_complex, parse_spectrum, parse_specs


@pytest.mark.parametrize("value, expected", [
    (1.0, "1"), (0.5, "0.5"), (float('nan'), "nan"), (1e-20, "9.9999999999999995e-21"),
    (complex(0.5, -0.25), "0.5-0.25i"),
])
def test_format_value(value, expected):
    assert format_value(value) == expected


def test_format_value_round_trips():
    value = 2 * math.sqrt(0.21)
    assert float(format_value(value)) == value


@pytest.mark.parametrize("string", ["abc", "", "inf", "nan"])
def test_parse_float_invalid(string):
    with pytest.raises(InvalidParameterError, match="lam0"):
        parse_float(string, "lam0")


@pytest.mark.parametrize("string, expected", [
    ("0.6", 0.6), ("0.6+0.8i", 0.6 + 0.8j), ("0.6-0.8i", 0.6 - 0.8j), ("0.8i", 0.8j),
    (" 1 ", 1),
])
def test_parse_complex(string, expected):
    assert parse_complex(string) == expected


@pytest.mark.parametrize("string", ["0.6+0.8j", "i+", "x", ""])
def test_parse_complex_invalid(string):
    with pytest.raises(InvalidParameterError):
        parse_complex(string, "alpha0")


def test_parse_spectrum():
    assert list(parse_spectrum("0.1, 0.2,0.3,0.4")) == pytest.approx([0.4, 0.3, 0.2, 0.1])
    with pytest.raises(InvalidParameterError):
        parse_spectrum("0.5,,0.5")


def test_parse_specs():
    spectra = parse_specs("0.7:0.3,0.5:0.5", count=2)
    assert [s[0] for s in spectra] == pytest.approx([0.7, 0.5])
    with pytest.raises(InvalidParameterError, match="expected 3"):
        parse_specs("0.7:0.3,0.5:0.5", count=3)
    with pytest.raises(InvalidParameterError, match="at least"):
        parse_specs("0.7:0.3", minimum=2)
    with pytest.raises(InvalidParameterError, match="a:b"):
        parse_specs("0.7:0.2:0.1")
