"""
Finite fields F_q, q = p^m, realized as F_p[x] modulo a monic primitive polynomial.

Elements are addressed by their canonical index n = sum c_i p^i, where c_i is the
coefficient of x^i. Index 0 is the zero element and index 1 is the unit.
"""

from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence

import galois
import numpy as np
from pydantic import Field
from sympy import factorint, isprime

from galois_quantum_toolkit.arithmetic import (
    poly_mod,
    poly_mul,
    poly_powmod,
    trim,
)
from galois_quantum_toolkit.models import Model
from galois_quantum_toolkit.utils import (
    ToolkitError,
    create_logger,
    enum_from_value,
    format_polynomial,
    format_tuple,
    parse_coefficients,
)

MAX_FIELD_ORDER = 2**20
MAX_TABLE_ORDER = 2**16


class NonPrimeP(ToolkitError): ...


class InvalidModulus(ToolkitError): ...


class NotIrreducible(ToolkitError): ...


class NotPrimitive(ToolkitError): ...


class FieldTooLarge(ToolkitError): ...


class ZeroInverse(ToolkitError, ZeroDivisionError): ...


class MixedFields(ToolkitError): ...


class LogOfZero(ToolkitError): ...


class TableTooLarge(ToolkitError): ...


class DiscreteLogUnavailable(ToolkitError): ...


class FieldOp(Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    INV = "inv"
    POW = "pow"


class FieldSpec(Model):
    p: int = Field(description="Prime characteristic")
    m: int = Field(description="Extension degree over F_p")
    q: int = Field(description="Field size p^m")
    modulus: list[int] = Field(
        description="Monic defining polynomial over Z_p, lowest degree first",
    )
    primitive_element_index: int = Field(
        description="Canonical index of the class of x, the generator alpha",
    )
    is_primitive: bool = Field(
        default=True,
        description="False only for an irreducible modulus accepted by override",
    )


class FieldTableRow(Model):
    index: int = Field(description="Canonical index of the element")
    exponent: int | None = Field(
        description="t with alpha^t equal to the element, None for zero",
    )
    power: str = Field(description="Element as a power of alpha")
    polynomial: str = Field(description="Element as a polynomial in alpha")
    coefficients: str = Field(description="Coefficient tuple, highest degree first")


class FieldTable(Model):
    spec: FieldSpec
    rows: list[FieldTableRow]


def _index_to_digits(index: int, p: int, m: int) -> list[int]:
    digits = []
    for _ in range(m):
        index, digit = divmod(index, p)
        digits.append(digit)
    return digits


def _digits_to_index(digits: Sequence[int], p: int) -> int:
    index = 0
    for digit in reversed(digits):
        index = index * p + int(digit) % p
    return index


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    if len(modulus) == 2:
        return True
    return galois.Poly(modulus, field=galois.GF(p), order="asc").is_irreducible()


def _has_full_order(
    element: Sequence[int], modulus: Sequence[int], p: int, q: int
) -> bool:
    """Whether element has multiplicative order q - 1 modulo (modulus, p)."""
    if not trim(poly_mod(element, modulus, p)):
        return False
    if poly_powmod(element, q - 1, modulus, p) != [1]:
        return False
    return all(
        poly_powmod(element, (q - 1) // r, modulus, p) != [1] for r in factorint(q - 1)
    )


def is_primitive_polynomial(modulus: Sequence[int], p: int) -> bool:
    """Monic, irreducible, g(0) != 0, and the class of x generates the multiplicative group."""
    modulus = trim(modulus, p)
    m = len(modulus) - 1
    if m < 1 or modulus[-1] != 1 or modulus[0] == 0:
        return False
    return _is_irreducible(modulus, p) and _has_full_order([0, 1], modulus, p, p**m)


def default_modulus(p: int, m: int) -> list[int]:
    """
    The monic primitive polynomial of degree m over F_p with the smallest canonical
    encoding sum c_i p^i (equivalently, the smallest coefficient tuple compared from the
    highest lower-order coefficient down).
    """
    for encoding in range(1, p**m):
        candidate = _index_to_digits(encoding, p, m) + [1]
        if is_primitive_polynomial(candidate, p):
            return candidate
    raise NotPrimitive(f"no primitive polynomial of degree {m} over F_{p} found")


class GaloisField:
    """
    A realized finite field F_q with exact arithmetic on canonical indices.

    For q <= 2^16 the field materializes digit, exponential, logarithm and trace tables
    and all arithmetic is table lookups; larger fields (up to 2^20) fall back to
    polynomial arithmetic modulo the defining polynomial.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.m = spec.m
        self.q = spec.q
        self.modulus = list(spec.modulus)
        self.logger = create_logger(__class__.__name__)

        self._powers = self.p ** np.arange(self.m, dtype=np.int64)
        self.has_tables = self.q <= MAX_TABLE_ORDER

        # generator of the multiplicative group used for the exp/log tables
        self._generator = (
            spec.primitive_element_index
            if spec.is_primitive
            else self._find_generator()
        )

        if self.has_tables:
            self._build_tables()

        self.logger.info(
            f"Built F_{self.q} with modulus {format_polynomial(self.modulus)} "
            f"(tables: {self.has_tables})"
        )

    def __repr__(self) -> str:
        return f"GaloisField(p={self.p}, m={self.m}, modulus={self.modulus})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaloisField):
            return NotImplemented
        return self.spec == other.spec

    def __hash__(self) -> int:
        return hash((self.p, self.m, tuple(self.modulus)))

    # -- representation ---------------------------------------------------------

    def digits(self, index: int) -> list[int]:
        return _index_to_digits(index, self.p, self.m)

    def index_of(self, digits: Sequence[int]) -> int:
        reduced = trim(digits, self.p)
        if len(reduced) > self.m:
            reduced = poly_mod(reduced, self.modulus, self.p)
        return _digits_to_index(reduced, self.p)

    def element(self, value: "int | Sequence[int] | FieldElement") -> "FieldElement":
        """Element from a canonical index, a coefficient sequence, or an element."""
        if isinstance(value, FieldElement):
            self._check_member(value)
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, int(value))
        return FieldElement(self, self.index_of(value))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, index) for index in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def alpha(self) -> "FieldElement":
        return FieldElement(self, self.spec.primitive_element_index)

    def _check_member(self, element: "FieldElement") -> None:
        if element.field is not self and element.field.spec != self.spec:
            raise MixedFields(
                f"element of F_{element.field.q} (modulus {element.field.modulus}) "
                f"used with F_{self.q} (modulus {self.modulus})"
            )

    # -- construction -----------------------------------------------------------

    def _find_generator(self) -> int:
        for index in range(2, self.q):
            if _has_full_order(self.digits(index), self.modulus, self.p, self.q):
                return index
        if self.q == 2:
            return 1
        raise ToolkitError(f"no generator found for F_{self.q}")

    def _poly_mul_index(self, a: int, b: int) -> int:
        product = poly_mod(
            poly_mul(self.digits(a), self.digits(b), self.p), self.modulus, self.p
        )
        return _digits_to_index(product, self.p)

    def _shift_by_x(self, index: int) -> int:
        digits = [0] + self.digits(index)
        lead = digits[-1]
        if lead:
            digits = [(d - lead * g) % self.p for d, g in zip(digits, self.modulus)]
        return _digits_to_index(digits[: self.m], self.p)

    def _next_power(self, current: int) -> int:
        if self.m == 1:
            return current * self._generator % self.p
        if self._generator == self.p:
            return self._shift_by_x(current)
        return self._poly_mul_index(current, self._generator)

    def _build_tables(self) -> None:
        q, p, m = self.q, self.p, self.m
        indices = np.arange(q, dtype=np.int64)
        self._digit_table = np.stack(
            [(indices // p**i) % p for i in range(m)], axis=1
        ).astype(np.int64)

        order = q - 1
        exp = np.zeros(order, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        current = 1
        for t in range(order):
            exp[t] = current
            log[current] = t
            current = self._next_power(current)
        if current != 1 or len(set(exp.tolist())) != order:
            raise NotPrimitive(f"generator does not have order {order} in F_{q}")
        self._exp = exp
        self._log = log

        self._neg_table = ((-self._digit_table) % p) @ self._powers

        # tr(x) = sum_i x^(p^i), summed in the field
        trace = np.zeros(q, dtype=np.int64)
        nonzero = indices[1:]
        for i in range(m):
            frobenius = exp[(log[nonzero] * p**i) % order]
            trace[1:] = self.add_array(trace[1:], frobenius)
        if np.any(trace >= p):
            raise ToolkitError(f"trace of F_{q} left the prime subfield")
        self._trace_table = trace

    # -- vectorized arithmetic on canonical indices ------------------------------

    def add_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.m == 1:
            return (a + b) % self.p
        if not self.has_tables:
            return np.vectorize(self._add_scalar, otypes=[np.int64])(a, b)
        return ((self._digit_table[a] + self._digit_table[b]) % self.p) @ self._powers

    def neg_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self.m == 1:
            return (-a) % self.p
        if not self.has_tables:
            return np.vectorize(self._neg_scalar, otypes=[np.int64])(a)
        return self._neg_table[a]

    def sub_array(self, a, b) -> np.ndarray:
        return self.add_array(a, self.neg_array(b))

    def mul_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        if not self.has_tables:
            return np.vectorize(self._poly_mul_index, otypes=[np.int64])(a, b)
        a, b = np.broadcast_arrays(a, b)
        product = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, product)

    def trace_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.has_tables:
            return self._trace_table[a]
        return np.vectorize(self._trace_scalar, otypes=[np.int64])(a)

    # -- scalar arithmetic -------------------------------------------------------

    def _add_scalar(self, a: int, b: int) -> int:
        digits = [(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))]
        return _digits_to_index(digits, self.p)

    def _neg_scalar(self, a: int) -> int:
        return _digits_to_index([(-x) % self.p for x in self.digits(a)], self.p)

    def add(self, a: int, b: int) -> int:
        return int(self.add_array(a, b))

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_array(a, b))

    def neg(self, a: int) -> int:
        return int(self.neg_array(a))

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_array(a, b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in F_{self.q}")
        return self.power(a, -1)

    def power(self, a: int, exponent: int) -> int:
        if a == 0:
            if exponent < 0:
                raise ZeroInverse(f"0 has no inverse in F_{self.q}")
            return 1 if exponent == 0 else 0
        order = self.q - 1
        if self.has_tables:
            return int(self._exp[(int(self._log[a]) * exponent) % order])
        if self.m == 1:
            return pow(a, exponent % order, self.p)
        powered = poly_powmod(self.digits(a), exponent % order, self.modulus, self.p)
        return _digits_to_index(powered, self.p)

    def _trace_scalar(self, a: int) -> int:
        total, term = 0, a
        for _ in range(self.m):
            total = self._add_scalar(total, term)
            term = self.power(term, self.p)
        if total >= self.p:
            raise ToolkitError(f"trace of F_{self.q} left the prime subfield")
        return total

    def trace(self, a: int) -> int:
        return int(self.trace_array(a))

    def log(self, a: int) -> int:
        if a == 0:
            raise LogOfZero("discrete logarithm of 0 is undefined")
        if not self.spec.is_primitive:
            raise DiscreteLogUnavailable(
                f"modulus {format_polynomial(self.modulus)} is not primitive; "
                "discrete logarithms to the class of x are unavailable"
            )
        if self.has_tables:
            return int(self._log[a])
        return self._baby_step_giant_step(a)

    def log_array(self, a) -> np.ndarray:
        """Vectorized discrete logarithm of nonzero elements (table-backed fields)."""
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise LogOfZero("discrete logarithm of 0 is undefined")
        if not self.spec.is_primitive:
            raise DiscreteLogUnavailable("discrete logarithms need a primitive modulus")
        if not self.has_tables:
            return np.vectorize(self._baby_step_giant_step, otypes=[np.int64])(a)
        return self._log[a]

    def _baby_step_giant_step(self, a: int) -> int:
        order = self.q - 1
        step = int(np.ceil(np.sqrt(order)))
        generator = self._generator
        baby: dict[int, int] = {}
        current = 1
        for j in range(step):
            baby.setdefault(current, j)
            current = self._poly_mul_index(current, generator)
        giant = self.power(generator, -step)
        current = a
        for i in range(step + 1):
            if current in baby:
                return (i * step + baby[current]) % order
            current = self._poly_mul_index(current, giant)
        raise ToolkitError(f"discrete logarithm not found in F_{self.q}")

    def exp(self, t: int) -> int:
        """Canonical index of alpha^t."""
        return self.power(self.spec.primitive_element_index, t)

    def exp_table(self) -> np.ndarray:
        if not self.has_tables:
            raise TableTooLarge(f"F_{self.q} exceeds the table bound {MAX_TABLE_ORDER}")
        return self._exp.copy()


class FieldElement:
    """An element of a GaloisField, addressed by its canonical index."""

    __slots__ = ("field", "index")

    def __init__(self, field: GaloisField, index: int):
        if not 0 <= index < field.q:
            raise ValueError(f"index {index} is outside F_{field.q}")
        self.field = field
        self.index = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field.digits(self.index))

    def _coerce(self, other: "FieldElement | int") -> int:
        if isinstance(other, FieldElement):
            self.field._check_member(other)
            return other.index
        if isinstance(other, (int, np.integer)):
            # integers act through the prime subfield
            return int(other) % self.field.p
        return NotImplemented

    def _wrap(self, index: int) -> "FieldElement":
        return FieldElement(self.field, index)

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.add(self.index, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.sub(self.index, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.sub(b, self.index))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.mul(self.index, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.mul(self.index, self.field.inv(b)))

    def __pow__(self, exponent: int):
        return self._wrap(self.field.power(self.index, int(exponent)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.index))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.index))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field.spec == other.field.spec and self.index == other.index
        if isinstance(other, (int, np.integer)):
            return self.index == int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, tuple(self.field.modulus), self.index))

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"F{self.field.q}({format_polynomial(self.coeffs)})"


def _validate_modulus(modulus: Sequence[int], p: int, m: int) -> list[int]:
    reduced = trim(modulus, p)
    if len(reduced) - 1 != m:
        raise InvalidModulus(
            f"modulus {list(modulus)} has degree {len(reduced) - 1} over Z_{p}, expected {m}"
        )
    if reduced[-1] != 1:
        raise InvalidModulus(f"modulus {list(modulus)} is not monic")
    return reduced


@lru_cache(maxsize=64)
def _build_field_cached(
    p: int, m: int, modulus: tuple[int, ...] | None, allow_non_primitive: bool
) -> GaloisField:
    if not isprime(p):
        raise NonPrimeP(f"characteristic {p} is not prime")
    if m < 1:
        raise InvalidModulus(f"extension degree must be >= 1, got {m}")
    q = p**m
    if q > MAX_FIELD_ORDER:
        raise FieldTooLarge(f"F_{q} exceeds the supported order {MAX_FIELD_ORDER}")

    if modulus is None:
        chosen = default_modulus(p, m)
        primitive = True
    else:
        chosen = _validate_modulus(modulus, p, m)
        if not _is_irreducible(chosen, p) or (m > 1 and chosen[0] == 0):
            raise NotIrreducible(
                f"{format_polynomial(chosen)} factors over F_{p}"
            )
        primitive = _has_full_order([0, 1], chosen, p, q)
        if not primitive and not allow_non_primitive:
            raise NotPrimitive(
                f"{format_polynomial(chosen)} is irreducible but its root does not "
                f"have order {q - 1}"
            )

    alpha = _digits_to_index(poly_mod([0, 1], chosen, p), p)
    spec = FieldSpec(
        p=p,
        m=m,
        q=q,
        modulus=chosen,
        primitive_element_index=alpha,
        is_primitive=primitive,
    )
    return GaloisField(spec)


def build_field(
    p: int,
    m: int = 1,
    modulus: Sequence[int] | None = None,
    allow_non_primitive: bool = False,
) -> GaloisField:
    """
    Build F_{p^m}.

    Args:
        p: Prime characteristic
        m: Extension degree
        modulus: Optional monic defining polynomial, lowest degree first. Defaults to the
            primitive polynomial with the smallest canonical encoding.
        allow_non_primitive: Accept an irreducible but non-primitive modulus; discrete
            logarithms are then unavailable.

    Returns:
        GaloisField: The realized field; its FieldSpec is available as `.spec`.
    """
    key = tuple(int(c) for c in modulus) if modulus is not None else None
    return _build_field_cached(p, m, key, allow_non_primitive)


def field_op(
    field: GaloisField,
    op: FieldOp | str,
    a: FieldElement,
    b: FieldElement | int | None = None,
) -> FieldElement:
    if isinstance(op, str):
        op = enum_from_value(FieldOp, op)
    a = field.element(a)
    match op:
        case FieldOp.INV:
            return a.inverse()
        case FieldOp.POW:
            if b is None or isinstance(b, FieldElement):
                raise ValueError("pow requires an integer exponent")
            return a ** int(b)
    if b is None:
        raise ValueError(f"{op.value} requires two operands")
    b = field.element(b)
    match op:
        case FieldOp.ADD:
            return a + b
        case FieldOp.SUB:
            return a - b
        case FieldOp.MUL:
            return a * b
    raise ValueError(f"unsupported field operation {op}")


def trace(field: GaloisField, x: FieldElement | int) -> int:
    return field.trace(field.element(x).index)


def discrete_log(field: GaloisField, x: FieldElement | int) -> int:
    return field.log(field.element(x).index)


def _power_label(exponent: int, symbol: str) -> str:
    if exponent == 0:
        return "1"
    if exponent == 1:
        return symbol
    return f"{symbol}^{exponent}"


def field_table(field: GaloisField, symbol: str = "α") -> FieldTable:
    """
    All elements in the three representations: powers of alpha, polynomials in alpha,
    and coefficient tuples printed highest degree first.
    """
    if not field.has_tables:
        raise TableTooLarge(f"F_{field.q} exceeds the table bound {MAX_TABLE_ORDER}")
    if not field.spec.is_primitive:
        raise DiscreteLogUnavailable("field tables require a primitive modulus")

    def row(index: int, exponent: int | None) -> FieldTableRow:
        coeffs = field.digits(index)
        return FieldTableRow(
            index=index,
            exponent=exponent,
            power="0" if exponent is None else _power_label(exponent, symbol),
            polynomial=format_polynomial(coeffs, symbol=symbol),
            coefficients=format_tuple(reversed(coeffs)),
        )

    rows = [row(0, None)]
    rows.extend(row(field.exp(t), t) for t in range(field.q - 1))
    return FieldTable(spec=field.spec, rows=rows)


def evaluate_polynomial(
    field: GaloisField, coefficients: Sequence[int], points: Iterable[int] | None = None
) -> np.ndarray:
    """
    Evaluate a polynomial with F_q coefficients (canonical indices, lowest degree first)
    at every point by Horner's rule.
    """
    xs = np.arange(field.q, dtype=np.int64) if points is None else np.asarray(
        list(points), dtype=np.int64
    )
    values = np.zeros_like(xs)
    for coefficient in reversed(list(coefficients)):
        values = field.add_array(field.mul_array(values, xs), int(coefficient))
    return values


def parse_polynomial(text: str, p: int | None = None) -> list[int]:
    """
    Read "c0,c1,...,cd" (lowest degree first). With p given, coefficients must already
    lie in [0, p).
    """
    coeffs = parse_coefficients(text)
    if p is not None and any(not 0 <= c < p for c in coeffs):
        raise InvalidModulus(f"coefficients of '{text}' must lie in [0, {p})")
    return coeffs


def to_galois(field: GaloisField) -> type[galois.FieldArray]:
    """
    The galois FieldArray class for the same field. Extension fields are built on the
    same modulus, so galois integers coincide with canonical indices.
    """
    if field.m == 1:
        return galois.GF(field.p)
    irreducible = galois.Poly(field.modulus, field=galois.GF(field.p), order="asc")
    return galois.GF(field.q, irreducible_poly=irreducible)
