from enum import Enum
from typing import Any, Sequence, Type, TypeVar

from .config import FLOAT_SIGNIFICANT_DIGITS
from .errors import ToolkitError


class ParseError(ToolkitError): ...


def parse_coefficients(text: str) -> list[int]:
    """
    Parse a polynomial written as comma-separated integer coefficients, lowest degree first.

    Args:
        text (str): e.g. "1,1,0,1" for 1 + x + x^3.

    Returns:
        list[int]: The coefficients, lowest degree first.
    """
    parts = [part.strip() for part in text.split(",")]
    if not parts or any(part == "" for part in parts):
        raise ParseError(f"'{text}' is not a comma-separated coefficient list")
    try:
        return [int(part) for part in parts]
    except ValueError as e:
        raise ParseError(f"'{text}' contains a non-integer coefficient") from e


def _monomial(power: int, symbol: str) -> str:
    if power == 0:
        return ""
    if power == 1:
        return symbol
    return f"{symbol}^{power}"


def format_polynomial(
    coeffs: Sequence[int], symbol: str = "x", ascending: bool = True
) -> str:
    """
    Render integer coefficients (lowest degree first) as a compact polynomial string,
    e.g. [1, 1, 0, 1] -> "1+x+x^3" (ascending) or "x^3+x+1" (descending).
    """
    terms = [(i, int(c)) for i, c in enumerate(coeffs) if int(c) != 0]
    if not terms:
        return "0"
    if not ascending:
        terms.reverse()

    rendered = []
    for position, (power, coefficient) in enumerate(terms):
        magnitude = abs(coefficient)
        monomial = _monomial(power, symbol)
        if power == 0:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}{monomial}"

        if coefficient < 0:
            rendered.append(f"-{body}")
        elif position > 0:
            rendered.append(f"+{body}")
        else:
            rendered.append(body)
    return "".join(rendered)


def format_tuple(values: Sequence[int]) -> str:
    return "(" + ",".join(str(int(v)) for v in values) + ")"


def round_significant(value: float, digits: int = FLOAT_SIGNIFICANT_DIGITS) -> float:
    rounded = float(f"{value:.{digits}g}")
    # normalize negative zero
    return rounded + 0.0


def format_float(value: float, digits: int = FLOAT_SIGNIFICANT_DIGITS) -> str:
    return f"{round_significant(value, digits):.{digits}g}"


EnumT = TypeVar("EnumT", bound=Enum)


def enum_from_value(enum_class: Type[EnumT], value: Any) -> EnumT:
    if value is None:
        raise ValueError(f"None cannot be converted to {enum_class.__name__}")

    # Try exact match first
    for member in enum_class:
        if member.value == value:
            return member

    if isinstance(value, str):
        value_lower = value.lower()
        for member in enum_class:
            if isinstance(member.value, str) and member.value.lower() == value_lower:
                return member

        # Try matching against member names
        value_upper = value.upper().replace("-", "_")
        for member in enum_class:
            if member.name == value_upper:
                return member

    raise ValueError(f"'{value}' is not a valid {enum_class.__name__} value")
