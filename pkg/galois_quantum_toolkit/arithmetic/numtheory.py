"""
Arithmetic functions (Moebius, totient, von Mangoldt), Ramanujan sums and cyclotomic
polynomials.
"""

import math
from functools import lru_cache

from pydantic import Field, field_validator
from sympy import divisors, factorint

from galois_quantum_toolkit.models import Model
from galois_quantum_toolkit.utils import ToolkitError, complex_fsum, format_polynomial

from .polynomials import poly_divmod, poly_mul, trim, x_power_minus_one


class NonPositiveArgument(ToolkitError): ...


class IntPolynomial(Model):
    coeffs: list[int] = Field(
        description="Integer coefficients, lowest degree first; empty for the zero polynomial",
    )

    @field_validator("coeffs")
    @classmethod
    def _trim_coefficients(cls, value: list[int]) -> list[int]:
        return trim(value)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        return format_polynomial(self.coeffs, ascending=False)


class ArithmeticProfile(Model):
    n: int = Field(description="The argument")
    mobius: int = Field(description="Moebius function value in {-1, 0, 1}")
    totient: int = Field(description="Euler totient")
    mangoldt: float = Field(description="von Mangoldt function, natural-log units")
    is_prime_power: bool = Field(description="Whether n = p^m with p prime, m >= 1")


def _require_positive(n: int, name: str = "n") -> None:
    if n < 1:
        raise NonPositiveArgument(f"{name} must be a positive integer, got {n}")


@lru_cache(maxsize=4096)
def _factor(n: int) -> dict[int, int]:
    return dict(factorint(n))


def mobius(n: int) -> int:
    _require_positive(n)
    factors = _factor(n)
    if any(exponent > 1 for exponent in factors.values()):
        return 0
    return (-1) ** len(factors)


def totient(n: int) -> int:
    _require_positive(n)
    result = n
    for prime in _factor(n):
        result -= result // prime
    return result


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, m) with n = p^m, or None when n is not a prime power."""
    _require_positive(n)
    factors = _factor(n)
    if len(factors) != 1:
        return None
    (prime, exponent), = factors.items()
    return prime, exponent


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


def mangoldt(n: int) -> float:
    decomposition = prime_power(n)
    if decomposition is None:
        return 0.0
    return math.log(decomposition[0])


def ramanujan_sum(q: int, n: int) -> int:
    """
    Ramanujan sum c_q(n) from the closed form mu(q1) phi(q) / phi(q1), q1 = q / gcd(q, n).

    Negative n is reduced as c_q(|n| mod q).
    """
    _require_positive(q, "q")
    n = abs(n) % q
    q1 = q // math.gcd(q, n)
    return mobius(q1) * totient(q) // totient(q1)


def ramanujan_sum_direct(q: int, n: int) -> complex:
    """Direct exponential sum over residues coprime to q (the oracle for ramanujan_sum)."""
    _require_positive(q, "q")
    return complex_fsum(
        complex(math.cos(2 * math.pi * p * n / q), math.sin(2 * math.pi * p * n / q))
        for p in range(1, q + 1)
        if math.gcd(p, q) == 1
    )


@lru_cache(maxsize=256)
def _cyclotomic_coefficients(n: int) -> tuple[int, ...]:
    numerator: list[int] = [1]
    denominator: list[int] = [1]
    for d in divisors(n):
        sign = mobius(n // d)
        if sign == 1:
            numerator = poly_mul(numerator, x_power_minus_one(d))
        elif sign == -1:
            denominator = poly_mul(denominator, x_power_minus_one(d))

    quotient, remainder = poly_divmod(numerator, denominator)
    if remainder:
        raise ToolkitError(f"Moebius product for Q_{n} did not divide exactly")
    return tuple(quotient)


def cyclotomic_poly(n: int) -> IntPolynomial:
    """
    The n-th cyclotomic polynomial, prod_{d | n} (x^d - 1)^{mu(n/d)}, by exact
    integer division.
    """
    _require_positive(n)
    return IntPolynomial(coeffs=list(_cyclotomic_coefficients(n)))


def arithmetic_profile(n: int) -> ArithmeticProfile:
    return ArithmeticProfile(
        n=n,
        mobius=mobius(n),
        totient=totient(n),
        mangoldt=mangoldt(n),
        is_prime_power=is_prime_power(n),
    )
