"""
Cyclic codes over F_q as ideals of F_q[x]/(x^n - 1), their generator matrices and
exhaustive distance analysis, and the incidence-structure check that ties the binary
Hamming code of length 7 to the Fano plane.

Polynomials over F_q are lists of canonical field indices, lowest degree first.
"""

import itertools
import math
from enum import Enum
from functools import lru_cache
from typing import Sequence

import galois
import numpy as np
from pydantic import Field, model_validator

from galois_quantum_toolkit.fields import (
    FieldSpec,
    GaloisField,
    build_field,
    default_modulus,
    to_galois,
)
from galois_quantum_toolkit.models import IntArray, Model
from galois_quantum_toolkit.utils import (
    ToolkitError,
    create_logger,
    enum_from_value,
    format_polynomial,
    parallel_map,
)

logger = create_logger(__name__)

MAX_CODEWORDS = 2**22
MAX_MEMBERSHIP_WORDS = 2**16
ENUMERATION_CHUNK = 2**14


class UnsupportedLength(ToolkitError): ...


class NotADivisor(ToolkitError): ...


class CodeTooLarge(ToolkitError): ...


class FactorizationFailed(ToolkitError): ...


class WeightMethod(Enum):
    GENERATOR = "generator"
    MEMBERSHIP = "membership"


class LinearCode(Model):
    n: int = Field(description="Code length")
    k: int = Field(description="Code dimension, n - deg(g)")
    field: FieldSpec
    g: list[int] = Field(description="Monic generator polynomial, lowest degree first")
    generator_matrix: IntArray = Field(
        description="k x n matrix whose row i holds the coefficients of x^i g(x)",
    )

    @model_validator(mode="after")
    def _check_shape(self) -> "LinearCode":
        if self.generator_matrix.shape != (self.k, self.n):
            raise ValueError(
                f"generator matrix has shape {self.generator_matrix.shape}, "
                f"expected ({self.k}, {self.n})"
            )
        return self

    @property
    def q(self) -> int:
        return self.field.q

    def __str__(self) -> str:
        return f"[{self.n},{self.k}] cyclic code over F_{self.q}, g = {format_polynomial(self.g)}"


class DistanceReport(Model):
    n: int
    k: int
    q: int
    d_min: int
    correct_up_to: int = Field(description="floor((d - 1) / 2)")
    detect_up_to: int = Field(description="d - 1")
    singleton_gap: int = Field(description="(n - k + 1) - d")
    is_mds: bool
    weight_distribution: list[int] = Field(
        description="A_w, the number of codewords of weight w, for w = 0..n",
    )
    claimed_distance: int | None = None
    note: str | None = Field(
        default=None,
        description="Set when d_min differs from the claimed distance (default n - k + 1)",
    )


class PlaneAxiomsReport(Model):
    size: int = Field(description="Number of rows (lines) and columns (points)")
    row_sum: int | None = Field(description="Common row sum s, if all rows agree")
    column_sum: int | None = Field(description="Common column sum, if all columns agree")
    rows_meet_once: bool = Field(description="Any two distinct rows share exactly one 1-column")
    columns_meet_once: bool = Field(
        description="Any two distinct columns share exactly one 1-row",
    )
    size_matches_order: bool = Field(description="n = s^2 - s + 1")
    order: int | None = Field(description="Inferred order s - 1 when every axiom holds")
    passed: bool


def _field_of(spec: FieldSpec) -> GaloisField:
    return build_field(
        spec.p, spec.m, spec.modulus, allow_non_primitive=not spec.is_primitive
    )


def _trim(field: GaloisField, poly: Sequence[int]) -> list[int]:
    poly = [int(c) for c in poly]
    while poly and poly[-1] == 0:
        poly.pop()
    for c in poly:
        if not 0 <= c < field.q:
            raise ToolkitError(f"coefficient {c} is not an element of F_{field.q}")
    return poly


def poly_mul_fq(field: GaloisField, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = _trim(field, a), _trim(field, b)
    if not a or not b:
        return []
    result = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    b_array = np.asarray(b, dtype=np.int64)
    for i, coefficient in enumerate(a):
        window = result[i : i + len(b)]
        result[i : i + len(b)] = field.add_array(window, field.mul_array(coefficient, b_array))
    return _trim(field, result.tolist())


def poly_divmod_fq(
    field: GaloisField, a: Sequence[int], b: Sequence[int]
) -> tuple[list[int], list[int]]:
    """Quotient and remainder of a by b over F_q."""
    a, b = _trim(field, a), _trim(field, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    remainder = a[:]
    quotient = [0] * max(len(a) - len(b) + 1, 0)
    lead_inverse = field.inv(b[-1])
    b_array = np.asarray(b, dtype=np.int64)
    while len(remainder) >= len(b):
        shift = len(remainder) - len(b)
        factor = field.mul(remainder[-1], lead_inverse)
        quotient[shift] = factor
        window = np.asarray(remainder[shift:], dtype=np.int64)
        remainder[shift:] = field.sub_array(window, field.mul_array(factor, b_array)).tolist()
        remainder = _trim(field, remainder)
    return _trim(field, quotient), remainder


def _x_power_minus_one(field: GaloisField, n: int) -> list[int]:
    return [field.neg(1)] + [0] * (n - 1) + [1]


@lru_cache(maxsize=None)
def _xn1_factors_cached(n: int, field: GaloisField) -> tuple[tuple[int, ...], ...]:
    GF = to_galois(field)
    target = _x_power_minus_one(field, n)
    poly = galois.Poly(GF(target), order="asc")
    factors, multiplicities = poly.factors()
    if any(multiplicity != 1 for multiplicity in multiplicities):
        raise FactorizationFailed(f"x^{n} - 1 is not square-free over F_{field.q}")

    # galois uses the same integer representation of extension elements
    result = [
        [int(c) for c in factor.coefficients(order="asc")] for factor in factors
    ]
    result.sort(key=lambda f: (len(f), f[::-1]))

    product = [1]
    for factor in result:
        product = poly_mul_fq(field, product, factor)
    if product != target:
        raise FactorizationFailed(
            f"factors of x^{n} - 1 over F_{field.q} do not multiply back"
        )
    return tuple(tuple(factor) for factor in result)


def _require_separable(n: int, field: GaloisField) -> None:
    if n < 1:
        raise UnsupportedLength(f"code length must be positive, got {n}")
    if math.gcd(n, field.p) != 1:
        raise UnsupportedLength(
            f"x^{n} - 1 is inseparable over F_{field.q} (p = {field.p} divides n)"
        )


def xn1_factors(n: int, field: GaloisField) -> list[list[int]]:
    """Monic irreducible factors of x^n - 1 over F_q, verified by multiplication."""
    _require_separable(n, field)
    return [list(factor) for factor in _xn1_factors_cached(n, field)]


def xn1_divisors(n: int, field: GaloisField) -> list[list[int]]:
    """
    All 2^f monic divisors of x^n - 1 over F_q, where f is the number of irreducible
    factors, ordered by degree and then by coefficients.

    Args:
        n: Code length, coprime to the characteristic
        field: The coefficient field

    Returns:
        list[list[int]]: Divisors as coefficient lists, lowest degree first
    """
    factors = xn1_factors(n, field)
    divisors = []
    for chosen in itertools.product((False, True), repeat=len(factors)):
        product = [1]
        for use, factor in zip(chosen, factors):
            if use:
                product = poly_mul_fq(field, product, factor)
        divisors.append(product)
    divisors.sort(key=lambda d: (len(d), d[::-1]))
    logger.info(f"x^{n} - 1 over F_{field.q}: {len(factors)} factors, {len(divisors)} divisors")
    return divisors


def cofactor(n: int, field: GaloisField, g: Sequence[int]) -> list[int]:
    """h = (x^n - 1) / g; raises NotADivisor when g does not divide x^n - 1."""
    quotient, remainder = poly_divmod_fq(field, _x_power_minus_one(field, n), g)
    if remainder:
        raise NotADivisor(
            f"{format_polynomial(g)} does not divide x^{n} - 1 over F_{field.q}"
        )
    return quotient


def _check_generator(n: int, field: GaloisField, g: Sequence[int]) -> list[int]:
    g = _trim(field, g)
    if not g or g[-1] != 1:
        raise NotADivisor(f"generator {format_polynomial(g)} must be monic")
    if len(g) - 1 >= n:
        raise NotADivisor(f"deg g = {len(g) - 1} must be below n = {n}")
    cofactor(n, field, g)
    return g


def _shift_rows(g: Sequence[int], n: int, count: int) -> np.ndarray:
    padded = np.zeros(n, dtype=np.int64)
    padded[: len(g)] = g
    return np.stack([np.roll(padded, i) for i in range(count)])


def cyclic_code(n: int, field: GaloisField, g: Sequence[int]) -> LinearCode:
    """
    The cyclic code generated by g, with generator-matrix rows g, x g, ..., x^(k-1) g
    (coefficient of x^0 leftmost).
    """
    g = _check_generator(n, field, g)
    k = n - (len(g) - 1)
    return LinearCode(
        n=n,
        k=k,
        field=field.spec,
        g=g,
        generator_matrix=_shift_rows(g, n, k),
    )


def hamming_code(r: int) -> LinearCode:
    """Binary cyclic Hamming code of length 2^r - 1 generated by the default primitive polynomial."""
    if r < 2:
        raise UnsupportedLength(f"Hamming codes need r >= 2, got {r}")
    return cyclic_code(2**r - 1, build_field(2), default_modulus(2, r))


def cyclic_extension_matrix(n: int, field: GaloisField, g: Sequence[int]) -> np.ndarray:
    """All n cyclic shifts of the coefficient vector of g, one per row."""
    g = _check_generator(n, field, g)
    return _shift_rows(g, n, n)


def _remainder_basis(field: GaloisField, n: int, g: Sequence[int]) -> np.ndarray:
    """Row j holds x^j mod g, padded to deg g coefficients."""
    width = len(g) - 1
    basis = np.zeros((n, max(width, 1)), dtype=np.int64)
    for j in range(n):
        _, remainder = poly_divmod_fq(field, [0] * j + [1], g)
        basis[j, : len(remainder)] = remainder
    return basis


def _linear_combination(field: GaloisField, coefficients: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """sum_i coefficients[:, i] * rows[i] over F_q, for a block of coefficient vectors."""
    total = np.zeros((coefficients.shape[0], rows.shape[1]), dtype=np.int64)
    for i in range(rows.shape[0]):
        term = field.mul_array(coefficients[:, i : i + 1], rows[i][None, :])
        total = field.add_array(total, term)
    return total


def _vectors(q: int, length: int, start: int, stop: int) -> np.ndarray:
    """Base-q digit vectors of the integers in [start, stop), least significant first."""
    numbers = np.arange(start, stop, dtype=np.int64)[:, None]
    return (numbers // q ** np.arange(length, dtype=np.int64)[None, :]) % q


def is_codeword(code: LinearCode, word: Sequence[int]) -> bool:
    """Whether the word (coefficient of x^0 first) is a multiple of g modulo x^n - 1."""
    if len(word) != code.n:
        return False
    field = _field_of(code.field)
    _, remainder = poly_divmod_fq(field, word, code.g)
    return not remainder


def _check_size(count: int, what: str) -> None:
    if count > MAX_CODEWORDS:
        raise CodeTooLarge(f"{what} of {count} words exceeds the bound {MAX_CODEWORDS}")


def _weights_by_generator(
    code: LinearCode, field: GaloisField, threads: int | None, progress: bool
) -> np.ndarray:
    q, k, n = code.q, code.k, code.n
    total = q**k
    _check_size(total, "enumeration")
    matrix = code.generator_matrix

    def block_weights(start: int) -> np.ndarray:
        info = _vectors(q, k, start, min(start + ENUMERATION_CHUNK, total))
        words = _linear_combination(field, info, matrix)
        weights = np.count_nonzero(words, axis=1)
        return np.bincount(weights, minlength=n + 1)

    blocks = parallel_map(
        block_weights,
        range(0, total, ENUMERATION_CHUNK),
        threads=threads,
        desc="codewords",
        progress=progress,
    )
    return np.sum(blocks, axis=0)


def _weights_by_membership(code: LinearCode, field: GaloisField) -> np.ndarray:
    q, n = code.q, code.n
    total = q**n
    if total > MAX_MEMBERSHIP_WORDS:
        raise CodeTooLarge(
            f"membership enumeration of {total} words exceeds {MAX_MEMBERSHIP_WORDS}"
        )
    basis = _remainder_basis(field, n, code.g)
    counts = np.zeros(n + 1, dtype=np.int64)
    for start in range(0, total, ENUMERATION_CHUNK):
        words = _vectors(q, n, start, min(start + ENUMERATION_CHUNK, total))
        remainders = _linear_combination(field, words, basis)
        members = words[~np.any(remainders, axis=1)]
        counts += np.bincount(np.count_nonzero(members, axis=1), minlength=n + 1)
    return counts


def weight_distribution(
    code: LinearCode,
    method: WeightMethod | str = WeightMethod.GENERATOR,
    threads: int | None = None,
    progress: bool = False,
) -> list[int]:
    """
    Number of codewords of each weight 0..n.

    The generator method enumerates the q^k information vectors times the generator
    matrix; the membership method scans all q^n words and keeps the multiples of g.
    """
    if isinstance(method, str):
        method = enum_from_value(WeightMethod, method)
    field = _field_of(code.field)
    match method:
        case WeightMethod.GENERATOR:
            counts = _weights_by_generator(code, field, threads, progress)
        case WeightMethod.MEMBERSHIP:
            counts = _weights_by_membership(code, field)
    return [int(c) for c in counts]


def _distance_note(
    n: int, k: int, q: int, d_min: int, claimed_distance: int | None
) -> str | None:
    """Set when d_min differs from the claimed distance, or from n - k + 1 when none is given."""
    label = f"[{n},{k},{d_min}] code over F_{q}"
    if claimed_distance is None:
        singleton = n - k + 1
        if d_min == singleton:
            return None
        return (
            f"{label} is not MDS: d = {d_min} < n - k + 1 = {singleton}, "
            f"so it corrects {(d_min - 1) // 2} and detects {d_min - 1} errors"
        )
    if d_min == claimed_distance:
        return None
    return (
        f"{label} has d = {d_min}, not the claimed {claimed_distance}: "
        f"it corrects {(d_min - 1) // 2} and detects {d_min - 1} errors"
    )


def min_distance(
    code: LinearCode,
    threads: int | None = None,
    progress: bool = False,
    claimed_distance: int | None = None,
) -> DistanceReport:
    """
    Exact minimum distance as the minimum nonzero codeword weight.

    `claimed_distance` is the value the report's note is checked against; without
    one the note flags codes that miss the Singleton bound.

    Raises:
        CodeTooLarge: when q^k exceeds 2^22
    """
    distribution = weight_distribution(code, WeightMethod.GENERATOR, threads, progress)
    d_min = next(w for w in range(1, code.n + 1) if distribution[w] > 0)
    gap = (code.n - code.k + 1) - d_min
    note = _distance_note(code.n, code.k, code.q, d_min, claimed_distance)
    if note:
        logger.warning(note)
    return DistanceReport(
        n=code.n,
        k=code.k,
        q=code.q,
        d_min=d_min,
        correct_up_to=(d_min - 1) // 2,
        detect_up_to=d_min - 1,
        singleton_gap=gap,
        is_mds=gap == 0,
        weight_distribution=distribution,
        claimed_distance=claimed_distance,
        note=note,
    )


def shift_word(word: Sequence[int]) -> list[int]:
    """Cyclic shift by one position (multiplication by x modulo x^n - 1)."""
    word = list(word)
    return word[-1:] + word[:-1]


def codewords(code: LinearCode) -> np.ndarray:
    """Every codeword, one per row, in information-vector order."""
    total = code.q**code.k
    _check_size(total, "enumeration")
    field = _field_of(code.field)
    return _linear_combination(field, _vectors(code.q, code.k, 0, total), code.generator_matrix)


def plane_axioms_check(matrix: np.ndarray | Sequence[Sequence[int]]) -> PlaneAxiomsReport:
    """
    Check whether a square 0/1 matrix is the incidence matrix of a projective plane:
    constant row and column sums s, any two rows meet in one column, any two columns
    meet in one row, and n = s^2 - s + 1.
    """
    matrix = np.asarray(matrix, dtype=np.int64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ToolkitError(f"expected a square matrix, got shape {matrix.shape}")
    if np.any((matrix != 0) & (matrix != 1)):
        raise ToolkitError("incidence matrices must have 0/1 entries")

    n = matrix.shape[0]
    row_sums = matrix.sum(axis=1)
    column_sums = matrix.sum(axis=0)
    row_sum = int(row_sums[0]) if np.all(row_sums == row_sums[0]) else None
    column_sum = int(column_sums[0]) if np.all(column_sums == column_sums[0]) else None

    off_diagonal = ~np.eye(n, dtype=bool)
    rows_meet_once = bool(np.all((matrix @ matrix.T)[off_diagonal] == 1))
    columns_meet_once = bool(np.all((matrix.T @ matrix)[off_diagonal] == 1))
    size_matches_order = row_sum is not None and n == row_sum**2 - row_sum + 1

    passed = (
        row_sum is not None
        and column_sum == row_sum
        and rows_meet_once
        and columns_meet_once
        and size_matches_order
    )
    return PlaneAxiomsReport(
        size=n,
        row_sum=row_sum,
        column_sum=column_sum,
        rows_meet_once=rows_meet_once,
        columns_meet_once=columns_meet_once,
        size_matches_order=size_matches_order,
        order=row_sum - 1 if passed else None,
        passed=passed,
    )
