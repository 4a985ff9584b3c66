import logging
from enum import Enum

import pytest

from galois_quantum_toolkit.utils import (
    ParseError,
    complex_fsum,
    create_logger,
    enum_from_value,
    format_float,
    format_polynomial,
    format_tuple,
    parallel_map,
    parse_coefficients,
    phase_power,
    round_significant,
)


class Colour(Enum):
    DARK_RED = "dark-red"
    BLUE = "blue"


def test_parse_coefficients():
    assert parse_coefficients("1,1,0,1") == [1, 1, 0, 1]
    assert parse_coefficients(" 3 , 0 ,-1 ") == [3, 0, -1]
    with pytest.raises(ParseError):
        parse_coefficients("1,,2")
    with pytest.raises(ParseError):
        parse_coefficients("1,x")


def test_format_polynomial():
    assert format_polynomial([1, 1, 0, 1]) == "1+x+x^3"
    assert format_polynomial([1, 1, 0, 1], ascending=False) == "x^3+x+1"
    assert format_polynomial([1, -1, 1], ascending=False) == "x^2-x+1"
    assert format_polynomial([0, 2], symbol="α") == "2α"
    assert format_polynomial([]) == "0"
    assert format_tuple([0, 1, 1]) == "(0,1,1)"


def test_rounding():
    assert round_significant(0.1 + 0.2) == 0.3
    assert format_float(2 / 3) == "0.666666666667"


def test_enum_from_value():
    assert enum_from_value(Colour, "blue") is Colour.BLUE
    assert enum_from_value(Colour, "Dark-Red") is Colour.DARK_RED
    assert enum_from_value(Colour, "dark_red") is Colour.DARK_RED
    with pytest.raises(ValueError):
        enum_from_value(Colour, "green")
    with pytest.raises(ValueError):
        enum_from_value(Colour, None)


def test_parallel_map_keeps_order():
    items = list(range(50))
    assert parallel_map(lambda x: x * x, items, threads=4) == [x * x for x in items]
    assert parallel_map(lambda x: x + 1, items, threads=1) == [x + 1 for x in items]


def test_parallel_map_reraises():
    def fail(x):
        raise RuntimeError(f"bad item {x}")

    with pytest.raises(RuntimeError):
        parallel_map(fail, [1, 2, 3], threads=2)


def test_numeric_helpers():
    assert complex_fsum([]) == 0j
    assert abs(complex_fsum(phase_power(7, range(7)))) < 1e-12
    assert phase_power(4, -1) == pytest.approx(-1j)


def test_create_logger_writes_file(tmp_path):
    logger = create_logger("gqt-test", level=logging.INFO, log_dir=tmp_path, console_output=False)
    logger.info("field built")
    for handler in logger.handlers:
        handler.flush()
    assert "field built" in (tmp_path / "gqt-test.log").read_text()
    assert len(create_logger("gqt-test", console_output=False, log_dir=tmp_path).handlers) == 1
