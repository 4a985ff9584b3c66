"""
Galois rings R_{4^m} = Z_4[x]/(h) for a basic primitive polynomial h.

Elements are addressed by the canonical index n = sum c_i 4^i with c_i in Z_4 the
coefficient of x^i.
"""

from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np
from pydantic import Field

from galois_quantum_toolkit.arithmetic import poly_mod, poly_mul, trim, x_power_minus_one
from galois_quantum_toolkit.models import ComplexValue, Model
from galois_quantum_toolkit.utils import (
    ToolkitError,
    create_logger,
    enum_from_value,
    format_polynomial,
)

from .field import GaloisField, build_field, is_primitive_polynomial

MAX_RING_DEGREE = 8
FULL_TABLE_SIZE = 256


class NotPrimitiveBase(ToolkitError): ...


class LiftVerificationFailed(ToolkitError): ...


class InvalidRingDegree(ToolkitError): ...


class MixedRings(ToolkitError): ...


class DecompositionFailed(ToolkitError): ...


class TraceNotScalar(ToolkitError): ...


class NotTeichmuller(ToolkitError): ...


class RingOp(Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    POW = "pow"


class RingSpec(Model):
    m: int = Field(description="Degree of the ring over Z_4")
    modulus_h: list[int] = Field(
        description="Basic primitive polynomial over Z_4, lowest degree first",
    )
    reduced_hbar: list[int] = Field(description="modulus_h reduced mod 2")
    xi_index: int = Field(description="Canonical index of xi = [x], of order 2^m - 1")
    teichmuller: list[int] = Field(
        description="Canonical indices of (0, 1, xi, ..., xi^(2^m - 2))",
    )


class TwoAdicForm(Model):
    a: int = Field(description="Canonical index of the Teichmueller part a = y^(2^m)")
    b: int = Field(description="Canonical index of the Teichmueller b with y = a + 2b")
    a_position: int = Field(description="Position of a in the Teichmueller sequence")
    b_position: int = Field(description="Position of b in the Teichmueller sequence")


class RingTableRow(Model):
    index: int
    polynomial: str
    teichmuller: str | None = Field(
        description="Label of the element if it lies in the Teichmueller set",
    )
    two_adic: str = Field(description="Decomposition a + 2b as Teichmueller labels")
    frobenius: int = Field(description="Canonical index of the Frobenius image")
    gtrace: int = Field(description="Generalized trace, an element of Z_4")
    character: ComplexValue = Field(description="Canonical additive character i^gtrace")


class RingTable(Model):
    spec: RingSpec
    rows: list[RingTableRow]


def lift_basic_primitive(hbar: Sequence[int]) -> list[int]:
    """
    Lift a primitive binary polynomial to the basic primitive polynomial over Z_4.

    Writing hbar = e + d with e the even-degree and d the odd-degree terms,
    h(x^2) = +-(e(x)^2 - d(x)^2); the sign is the one making h monic. The result is
    checked to reduce to hbar mod 2 and to divide x^(2^m - 1) - 1 over Z_4.

    Args:
        hbar: Binary coefficients, lowest degree first.

    Returns:
        list[int]: Coefficients of h over Z_4, lowest degree first.
    """
    hbar = trim(hbar, 2)
    if not is_primitive_polynomial(hbar, 2):
        raise NotPrimitiveBase(f"{format_polynomial(hbar)} is not primitive over Z_2")
    m = len(hbar) - 1

    even = [c if i % 2 == 0 else 0 for i, c in enumerate(hbar)]
    odd = [c if i % 2 == 1 else 0 for i, c in enumerate(hbar)]
    square_even = np.convolve(even, even)
    square_odd = np.convolve(odd, odd)
    graeffe = (square_even - square_odd).tolist()

    # only even powers survive; h(x^2) -> h(x)
    lifted = trim(graeffe[::2], 4)
    if lifted[-1] == 3:
        lifted = trim([-c for c in lifted], 4)

    if len(lifted) - 1 != m or lifted[-1] != 1:
        raise LiftVerificationFailed(f"lift of {format_polynomial(hbar)} is not monic")
    if trim(lifted, 2) != hbar:
        raise LiftVerificationFailed(
            f"lift {format_polynomial(lifted)} does not reduce to {format_polynomial(hbar)}"
        )
    if poly_mod(x_power_minus_one(2**m - 1), lifted, 4):
        raise LiftVerificationFailed(
            f"{format_polynomial(lifted)} does not divide x^{2**m - 1} - 1 over Z_4"
        )
    return lifted


class GaloisRing:
    """
    A realized Galois ring R_{4^m} with precomputed Teichmueller set, 2-adic
    decompositions, Frobenius images and generalized traces for every element.
    """

    def __init__(self, spec: RingSpec):
        self.spec = spec
        self.m = spec.m
        self.size = 4**spec.m
        self.modulus = list(spec.modulus_h)
        self.logger = create_logger(__class__.__name__)

        indices = np.arange(self.size, dtype=np.int64)
        self._digits = np.stack(
            [(indices // 4**i) % 4 for i in range(self.m)], axis=1
        ).astype(np.int64)
        self._powers = 4 ** np.arange(self.m, dtype=np.int64)

        self._mul_table = None
        if self.size <= FULL_TABLE_SIZE:
            left, right = np.meshgrid(indices, indices, indexing="ij")
            self._mul_table = self._mul_digits(left, right)

        self.teichmuller = list(spec.teichmuller)
        self._position = np.full(self.size, -1, dtype=np.int64)
        self._position[self.teichmuller] = np.arange(len(self.teichmuller))
        self._half = np.full(self.size, -1, dtype=np.int64)
        for t in self.teichmuller:
            self._half[(2 * self._digits[t] % 4) @ self._powers] = t

        self._decompose_all()
        self.logger.info(
            f"Built R_{self.size} with modulus {format_polynomial(self.modulus)}"
        )

    def __repr__(self) -> str:
        return f"GaloisRing(m={self.m}, modulus={self.modulus})"

    # -- element arithmetic on canonical indices ---------------------------------

    def digits(self, index: int) -> list[int]:
        return self._digits[index].tolist()

    def index_of(self, coeffs: Sequence[int]) -> int:
        reduced = trim(coeffs, 4)
        if len(reduced) > self.m:
            reduced = poly_mod(reduced, self.modulus, 4)
        reduced = reduced + [0] * (self.m - len(reduced))
        return int(np.asarray(reduced, dtype=np.int64) @ self._powers)

    def _mul_digits(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        da = self._digits[a]
        db = self._digits[b]
        m = self.m
        product = np.zeros(a.shape + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                product[..., i + j] += da[..., i] * db[..., j]
        # x^k = -x^(k-m) (h - x^m) for k >= m
        for k in range(2 * m - 2, m - 1, -1):
            lead = product[..., k] % 4
            for j in range(m):
                product[..., k - m + j] -= lead * self.modulus[j]
            product[..., k] = 0
        return (product[..., :m] % 4) @ self._powers

    def add_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return ((self._digits[a] + self._digits[b]) % 4) @ self._powers

    def neg_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return ((-self._digits[a]) % 4) @ self._powers

    def sub_array(self, a, b) -> np.ndarray:
        return self.add_array(a, self.neg_array(b))

    def mul_array(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(
            np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        )
        if self._mul_table is not None:
            return self._mul_table[a, b]
        return self._mul_digits(a, b)

    def add(self, a: int, b: int) -> int:
        return int(self.add_array(a, b))

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_array(a, b))

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_array(a, b))

    def power(self, a: int, exponent: int) -> int:
        if exponent < 0:
            raise ValueError("R_{4^m} has zero divisors; negative powers are not exposed")
        result, square = 1, a
        while exponent:
            if exponent & 1:
                result = self.mul(result, square)
            exponent >>= 1
            if exponent:
                square = self.mul(square, square)
        return result

    def is_unit_array(self, a) -> np.ndarray:
        return np.any(self._digits[np.asarray(a, dtype=np.int64)] % 2 == 1, axis=-1)

    def is_unit(self, a: int) -> bool:
        return bool(self.is_unit_array(a))

    def units(self) -> np.ndarray:
        return np.flatnonzero(self.is_unit_array(np.arange(self.size)))

    def element(self, value: "int | Sequence[int] | RingElement") -> "RingElement":
        if isinstance(value, RingElement):
            self._check_member(value)
            return value
        if isinstance(value, (int, np.integer)):
            return RingElement(self, int(value))
        return RingElement(self, self.index_of(value))

    def elements(self) -> list["RingElement"]:
        return [RingElement(self, index) for index in range(self.size)]

    @property
    def xi(self) -> "RingElement":
        return RingElement(self, self.spec.xi_index)

    def _check_member(self, element: "RingElement") -> None:
        if element.ring is not self and element.ring.spec != self.spec:
            raise MixedRings(
                f"element of R_{element.ring.size} (modulus {element.ring.modulus}) "
                f"used with R_{self.size} (modulus {self.modulus})"
            )

    # -- Teichmueller structure --------------------------------------------------

    def teichmuller_position(self, a: int) -> int:
        """Position in (0, 1, xi, ...), or -1 when a is not a Teichmueller element."""
        return int(self._position[a])

    def teichmuller_positions(self, a) -> np.ndarray:
        return self._position[np.asarray(a, dtype=np.int64)]

    def teichmuller_label(self, a: int) -> str | None:
        position = self.teichmuller_position(a)
        if position < 0:
            return None
        if position <= 1:
            return str(position)
        if position == 2:
            return "ξ"
        return f"ξ^{position - 1}"

    def _decompose_all(self) -> None:
        everything = np.arange(self.size, dtype=np.int64)
        a = everything
        for _ in range(self.m):
            a = self.mul_array(a, a)
        b = self._half[self.sub_array(everything, a)]
        valid = (self._position[a] >= 0) & (b >= 0)
        self._a = np.where(valid, a, -1)
        self._b = np.where(valid, b, -1)

        if not np.all(valid):
            self.logger.warning(
                f"{np.count_nonzero(~valid)} elements of R_{self.size} have no 2-adic "
                "decomposition; the modulus is not basic primitive"
            )
            self._frobenius = None
            self._gtrace = None
            return

        # sigma(a + 2b) = a^2 + 2b^2
        b_squared = self.mul_array(self._b, self._b)
        self._frobenius = self.add_array(
            self.mul_array(self._a, self._a), self.add_array(b_squared, b_squared)
        )

        total = everything
        current = everything
        for _ in range(1, self.m):
            current = self._frobenius[current]
            total = self.add_array(total, current)
        self._gtrace = total

    def decompose(self, y: int) -> tuple[int, int]:
        a, b = int(self._a[y]), int(self._b[y])
        if a < 0 or b < 0:
            raise DecompositionFailed(
                f"element {self.digits(y)} has no decomposition a + 2b over the "
                f"Teichmueller set of {format_polynomial(self.modulus)}"
            )
        return a, b

    def frobenius(self, y: int) -> int:
        self.decompose(y)
        return int(self._frobenius[y])

    def frobenius_array(self, y) -> np.ndarray:
        if self._frobenius is None:
            raise DecompositionFailed("Frobenius map unavailable without 2-adic forms")
        return self._frobenius[np.asarray(y, dtype=np.int64)]

    def gtrace(self, y: int) -> int:
        self.decompose(y)
        value = int(self._gtrace[y])
        if value >= 4:
            raise TraceNotScalar(
                f"generalized trace of {self.digits(y)} is {self.digits(value)}, not in Z_4"
            )
        return value

    def gtrace_array(self, y) -> np.ndarray:
        if self._gtrace is None:
            raise DecompositionFailed("generalized trace unavailable without 2-adic forms")
        values = self._gtrace[np.asarray(y, dtype=np.int64)]
        if np.any(values >= 4):
            raise TraceNotScalar("generalized trace left Z_4")
        return values

    @property
    def residue_field(self) -> GaloisField:
        return build_field(2, self.m, self.spec.reduced_hbar)


class RingElement:
    """An element of a GaloisRing, addressed by its canonical index."""

    __slots__ = ("ring", "index")

    def __init__(self, ring: GaloisRing, index: int):
        if not 0 <= index < ring.size:
            raise ValueError(f"index {index} is outside R_{ring.size}")
        self.ring = ring
        self.index = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ring.digits(self.index))

    def _coerce(self, other) -> int:
        if isinstance(other, RingElement):
            self.ring._check_member(other)
            return other.index
        if isinstance(other, (int, np.integer)):
            return int(other) % 4
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.add(self.index, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.sub(self.index, b))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.mul(self.index, b))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        return RingElement(self.ring, self.ring.power(self.index, int(exponent)))

    def __neg__(self):
        return RingElement(self.ring, int(self.ring.neg_array(self.index)))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RingElement):
            return self.ring.spec == other.ring.spec and self.index == other.index
        if isinstance(other, (int, np.integer)):
            return self.index == int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((tuple(self.ring.modulus), self.index))

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"R{self.ring.size}({format_polynomial(self.coeffs)})"


@lru_cache(maxsize=16)
def _build_ring_cached(m: int, hbar: tuple[int, ...] | None) -> GaloisRing:
    if not 1 <= m <= MAX_RING_DEGREE:
        raise InvalidRingDegree(f"ring degree must be in [1, {MAX_RING_DEGREE}], got {m}")
    if hbar is None:
        base = build_field(2, m).modulus
    else:
        base = trim(hbar, 2)
        if len(base) - 1 != m:
            raise NotPrimitiveBase(f"{format_polynomial(base)} does not have degree {m}")
    h = lift_basic_primitive(base)

    xi_coeffs = poly_mod([0, 1], h, 4)
    xi_coeffs = xi_coeffs + [0] * (m - len(xi_coeffs))
    xi = sum(c * 4**i for i, c in enumerate(xi_coeffs))

    # powers of xi by polynomial arithmetic, before any tables exist
    order = 2**m - 1
    teichmuller = [0]
    power = [1]
    for j in range(order):
        index = sum(c * 4**i for i, c in enumerate(power + [0] * (m - len(power))))
        if j > 0 and index == 1:
            raise LiftVerificationFailed(f"xi has order {j} < {order}")
        teichmuller.append(index)
        power = poly_mod(poly_mul(power, xi_coeffs, 4), h, 4)
    if power != [1]:
        raise LiftVerificationFailed(f"xi^{order} != 1 in the lifted ring")

    spec = RingSpec(
        m=m,
        modulus_h=h,
        reduced_hbar=trim(h, 2),
        xi_index=xi,
        teichmuller=teichmuller,
    )
    return GaloisRing(spec)


def build_ring(m: int, hbar: Sequence[int] | None = None) -> GaloisRing:
    """
    Build R_{4^m} from the default primitive polynomial of degree m (or hbar).

    Returns:
        GaloisRing: The realized ring; its RingSpec is available as `.spec`.
    """
    key = tuple(int(c) for c in hbar) if hbar is not None else None
    return _build_ring_cached(m, key)


def ring_op(
    ring: GaloisRing, op: RingOp | str, a: RingElement | int, b: RingElement | int
) -> RingElement:
    if isinstance(op, str):
        op = enum_from_value(RingOp, op)
    a = ring.element(a)
    match op:
        case RingOp.POW:
            if isinstance(b, RingElement):
                raise ValueError("pow requires an integer exponent")
            return a ** int(b)
        case RingOp.ADD:
            return a + ring.element(b)
        case RingOp.SUB:
            return a - ring.element(b)
        case RingOp.MUL:
            return a * ring.element(b)
    raise ValueError(f"unsupported ring operation {op}")


def two_adic_decompose(ring: GaloisRing, y: RingElement | int) -> TwoAdicForm:
    y = ring.element(y)
    a, b = ring.decompose(y.index)
    return TwoAdicForm(
        a=a,
        b=b,
        a_position=ring.teichmuller_position(a),
        b_position=ring.teichmuller_position(b),
    )


def frobenius(ring: GaloisRing, y: RingElement | int) -> RingElement:
    return RingElement(ring, ring.frobenius(ring.element(y).index))


def gtrace(ring: GaloisRing, y: RingElement | int) -> int:
    return ring.gtrace(ring.element(y).index)


def ring_table(ring: GaloisRing) -> RingTable:
    """One row per element: 2-adic form, Frobenius image, trace and character value."""
    rows = []
    for index in range(ring.size):
        a, b = ring.decompose(index)
        value = ring.gtrace(index)
        rows.append(
            RingTableRow(
                index=index,
                polynomial=format_polynomial(ring.digits(index)),
                teichmuller=ring.teichmuller_label(index),
                two_adic=f"{ring.teichmuller_label(a)} + 2·{ring.teichmuller_label(b)}",
                frobenius=ring.frobenius(index),
                gtrace=value,
                character=1j**value,
            )
        )
    return RingTable(spec=ring.spec, rows=rows)


def teichmuller_exponent(ring: GaloisRing, y: RingElement | int) -> int | None:
    """k with y = xi^k, or None for y = 0; raises NotTeichmuller off the Teichmueller set."""
    y = ring.element(y)
    position = ring.teichmuller_position(y.index)
    if position < 0:
        raise NotTeichmuller(f"{y!r} is not in the Teichmueller set of R_{{4^{ring.m}}}")
    return None if position == 0 else position - 1
