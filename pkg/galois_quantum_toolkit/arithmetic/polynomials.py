"""
Dense polynomial helpers on coefficient lists (lowest degree first), over the
integers (modulus=None) or over Z_n. The zero polynomial is the empty list.

Integer arithmetic goes through sympy's Poly; the Z_n case stays on plain lists,
which is what the Galois field and ring tables call in their inner loops.
"""

from typing import Sequence

from sympy import Poly, Symbol

from galois_quantum_toolkit.utils import ToolkitError

_X = Symbol("x")


class NonInvertibleLead(ToolkitError): ...


def _reduce(coeffs: Sequence[int], modulus: int | None) -> list[int]:
    if modulus is None:
        return [int(c) for c in coeffs]
    return [int(c) % modulus for c in coeffs]


def trim(coeffs: Sequence[int], modulus: int | None = None) -> list[int]:
    result = _reduce(coeffs, modulus)
    while result and result[-1] == 0:
        result.pop()
    return result


def _to_sympy(coeffs: Sequence[int]) -> Poly:
    return Poly.from_list(list(coeffs)[::-1], _X, domain="ZZ")


def _from_sympy(poly: Poly) -> list[int]:
    return trim([int(c) for c in poly.all_coeffs()[::-1]])


def poly_mul(a: Sequence[int], b: Sequence[int], modulus: int | None = None) -> list[int]:
    a, b = trim(a, modulus), trim(b, modulus)
    if not a or not b:
        return []
    if modulus is None:
        return _from_sympy(_to_sympy(a) * _to_sympy(b))

    result = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            result[i + j] += ca * cb
    return trim(result, modulus)


def poly_divmod(
    a: Sequence[int], b: Sequence[int], modulus: int | None = None
) -> tuple[list[int], list[int]]:
    """
    Long division a = quotient * b + remainder.

    Over the integers b must have leading coefficient +-1; over Z_n the leading
    coefficient must be a unit mod n.
    """
    a, b = trim(a, modulus), trim(b, modulus)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")

    lead = b[-1]
    if modulus is None:
        if lead not in (1, -1):
            raise NonInvertibleLead(f"leading coefficient {lead} is not +-1 over Z")
        if not a:
            return [], []
        quotient, remainder = _to_sympy(a).div(_to_sympy(b))
        return _from_sympy(quotient), _from_sympy(remainder)

    try:
        lead_inverse = pow(lead, -1, modulus)
    except ValueError as e:
        raise NonInvertibleLead(
            f"leading coefficient {lead} is not a unit mod {modulus}"
        ) from e

    remainder = list(a)
    quotient = [0] * max(len(a) - len(b) + 1, 0)
    for shift in range(len(a) - len(b), -1, -1):
        factor = remainder[shift + len(b) - 1] * lead_inverse % modulus
        if factor == 0:
            continue
        quotient[shift] = factor
        for j, cb in enumerate(b):
            remainder[shift + j] -= factor * cb
        remainder = [c % modulus for c in remainder]
    return trim(quotient, modulus), trim(remainder, modulus)


def poly_mod(a: Sequence[int], b: Sequence[int], modulus: int | None = None) -> list[int]:
    return poly_divmod(a, b, modulus)[1]


def poly_powmod(
    base: Sequence[int], exponent: int, divisor: Sequence[int], modulus: int
) -> list[int]:
    """base**exponent reduced modulo (divisor, modulus), by square-and-multiply."""
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    result = poly_mod([1], divisor, modulus)
    square = poly_mod(base, divisor, modulus)
    while exponent:
        if exponent & 1:
            result = poly_mod(poly_mul(result, square, modulus), divisor, modulus)
        exponent >>= 1
        if exponent:
            square = poly_mod(poly_mul(square, square, modulus), divisor, modulus)
    return result


def x_power_minus_one(n: int) -> list[int]:
    """Coefficients of x^n - 1 over the integers."""
    return [-1] + [0] * (n - 1) + [1]
