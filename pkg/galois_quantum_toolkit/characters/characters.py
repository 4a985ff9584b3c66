"""
Additive and multiplicative characters over Galois fields and rings, and the
exponential sums built from them: Weil sums, field Gauss sums, Teichmueller Gamma sums
and ring Gauss sums.
"""

import itertools
import math
from enum import Enum
from functools import lru_cache
from typing import Any, Sequence

import numpy as np
from pydantic import Field, PrivateAttr

from galois_quantum_toolkit.fields import GaloisField, GaloisRing, evaluate_polynomial
from galois_quantum_toolkit.models import ComplexValue, Model
from galois_quantum_toolkit.utils import (
    DEFAULT_TOLERANCE,
    ToolkitError,
    complex_fsum,
    create_logger,
    phase_power,
)

MAX_UNIT_GROUP_DEGREE = 4

logger = create_logger(__name__)


class MultCharAtZero(ToolkitError): ...


class GroupDecompositionFailed(ToolkitError): ...


class InvalidPolynomial(ToolkitError): ...


class CharacterKind(Enum):
    ADDITIVE_FIELD = "additive_field"
    ADDITIVE_RING = "additive_ring"
    MULTIPLICATIVE_FIELD = "multiplicative_field"
    INDEX_PHASE = "index_phase"
    RING_UNIT = "ring_unit"


class TrivialConvention(Enum):
    # the trivial character is 1 on the whole carrier
    ALL_ONES = "all_ones"
    # the trivial character is 1 on units and 0 elsewhere
    UNITS = "units"


class UnitGroupStructure(Model):
    generators: list[int] = Field(description="Canonical indices of independent generators")
    orders: list[int] = Field(description="Order of each generator")
    _exponents: np.ndarray = PrivateAttr()

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    def exponents(self, x) -> np.ndarray:
        """Exponent vectors of x over the generators; rows of -1 for non-units."""
        return self._exponents[np.asarray(x, dtype=np.int64)]


class CharacterSpec(Model):
    kind: CharacterKind
    parameter: int = Field(
        description="Index of the character within its family",
    )
    carrier: GaloisField | GaloisRing = Field(exclude=True)
    exponents: list[int] | None = Field(
        default=None,
        description="Character exponents over the unit-group generators (ring_unit only)",
    )
    convention: TrivialConvention = TrivialConvention.UNITS
    structure: UnitGroupStructure | None = Field(default=None, exclude=True)

    @property
    def is_trivial(self) -> bool:
        match self.kind:
            case CharacterKind.MULTIPLICATIVE_FIELD:
                return self.parameter % (self.carrier.q - 1) == 0
            case CharacterKind.INDEX_PHASE:
                return self.parameter % _index_period(self.carrier) == 0
            case CharacterKind.RING_UNIT:
                return not any(self.exponents or [])
        return self.parameter == 0

    def values(self, xs) -> np.ndarray:
        """Vectorized character values at canonical indices xs."""
        xs = np.asarray(xs, dtype=np.int64)
        carrier = self.carrier
        match self.kind:
            case CharacterKind.ADDITIVE_FIELD:
                traces = carrier.trace_array(carrier.mul_array(self.parameter, xs))
                return phase_power(carrier.p, traces)
            case CharacterKind.ADDITIVE_RING:
                traces = carrier.gtrace_array(carrier.mul_array(self.parameter, xs))
                return phase_power(4, traces)
            case CharacterKind.MULTIPLICATIVE_FIELD:
                if np.any(xs == 0):
                    raise MultCharAtZero("multiplicative characters are undefined at 0")
                order = carrier.q - 1
                return phase_power(order, self.parameter * carrier.log_array(xs))
            case CharacterKind.INDEX_PHASE:
                period = _index_period(carrier)
                return phase_power(period, self.parameter * _index_labels(carrier, xs))
            case CharacterKind.RING_UNIT:
                return self._unit_values(xs)
        raise ValueError(f"unsupported character kind {self.kind}")

    def _unit_values(self, xs: np.ndarray) -> np.ndarray:
        structure = self.structure
        exponents = structure.exponents(xs)
        period = math.lcm(*structure.orders)
        weights = np.asarray(
            [j * (period // o) for j, o in zip(self.exponents, structure.orders)],
            dtype=np.int64,
        )
        values = phase_power(period, exponents @ weights)
        units = exponents[..., 0] >= 0
        all_ones = self.is_trivial and self.convention is TrivialConvention.ALL_ONES
        outside = 1.0 if all_ones else 0.0
        return np.where(units, values, outside)

    def __call__(self, x) -> complex:
        return complex(self.values(int(x)))


def _index_period(carrier: GaloisField | GaloisRing) -> int:
    if isinstance(carrier, GaloisField):
        return carrier.q
    return 2**carrier.m


def _index_labels(carrier: GaloisField | GaloisRing, xs: np.ndarray) -> np.ndarray:
    """Canonical integer labels: field index, or Teichmueller position in a ring."""
    if isinstance(carrier, GaloisField):
        return xs
    positions = carrier.teichmuller_positions(xs)
    if np.any(positions < 0):
        raise ToolkitError("index-phase characters on a ring need Teichmueller arguments")
    return positions


def additive_character(carrier: GaloisField | GaloisRing, parameter: int = 1) -> CharacterSpec:
    """kappa_c(x) = omega_p^tr(c x) on a field, or i^gtrace(c x) on a ring."""
    kind = (
        CharacterKind.ADDITIVE_FIELD
        if isinstance(carrier, GaloisField)
        else CharacterKind.ADDITIVE_RING
    )
    return CharacterSpec(kind=kind, parameter=parameter, carrier=carrier)


def multiplicative_character(field: GaloisField, parameter: int = 1) -> CharacterSpec:
    """psi_j(x) = exp(2 pi i j log(x) / (q - 1)), periodic in the discrete logarithm."""
    return CharacterSpec(
        kind=CharacterKind.MULTIPLICATIVE_FIELD, parameter=parameter, carrier=field
    )


def index_phase_character(carrier: GaloisField | GaloisRing, parameter: int) -> CharacterSpec:
    """psi_k(n) = exp(2 pi i k n / q) on the canonical integer label n."""
    return CharacterSpec(
        kind=CharacterKind.INDEX_PHASE, parameter=parameter, carrier=carrier
    )


def evaluate_character(spec: CharacterSpec, x) -> complex:
    return spec(x)


def _polynomial_degree(coefficients: Sequence[int]) -> int:
    nonzero = [i for i, c in enumerate(coefficients) if int(c) != 0]
    return nonzero[-1] if nonzero else -1


def weil_sum(field: GaloisField, f: Sequence[int], kappa: CharacterSpec) -> complex:
    """
    Sum of kappa(f(x)) over all x in F_q.

    Args:
        field: The field
        f: Polynomial coefficients as canonical indices of F_q, lowest degree first
        kappa: An additive character of the field

    Returns:
        complex: The Weil sum
    """
    if _polynomial_degree(f) < 1:
        raise InvalidPolynomial("Weil sums need a polynomial of degree >= 1")
    return complex_fsum(kappa.values(evaluate_polynomial(field, f)))


def weil_bound(field: GaloisField, degree: int) -> float:
    return (degree - 1) * math.sqrt(field.q)


def gauss_sum_field(
    field: GaloisField,
    psi: CharacterSpec,
    kappa: CharacterSpec,
    f: Sequence[int] | None = None,
    g: Sequence[int] | None = None,
) -> complex:
    """
    Gauss sum G(psi, kappa) = sum over x != 0 of psi(x) kappa(x), or with polynomial
    arguments, sum over x of psi(f(x)) kappa(g(x)) skipping the zeros of f.
    """
    if f is None and g is None:
        xs = np.arange(1, field.q, dtype=np.int64)
        return complex_fsum(psi.values(xs) * kappa.values(xs))

    f_values = evaluate_polynomial(field, f if f is not None else [0, 1])
    g_values = evaluate_polynomial(field, g if g is not None else [0, 1])
    keep = f_values != 0
    return complex_fsum(psi.values(f_values[keep]) * kappa.values(g_values[keep]))


def gamma_sum(ring: GaloisRing, y) -> complex:
    """Sum of kappa~(y u) over the Teichmueller set."""
    y = ring.element(y).index
    teichmuller = np.asarray(ring.teichmuller, dtype=np.int64)
    return complex_fsum(phase_power(4, ring.gtrace_array(ring.mul_array(y, teichmuller))))


def gamma_expected_magnitude(ring: GaloisRing, y) -> float:
    """2^m at y = 0, 0 on 2T \\ {0}, sqrt(2^m) otherwise."""
    y = ring.element(y).index
    if y == 0:
        return float(2**ring.m)
    if _is_twice_teichmuller(ring, y):
        return 0.0
    return math.sqrt(2**ring.m)


def _is_twice_teichmuller(ring: GaloisRing, y: int) -> bool:
    return any(ring.add(t, t) == y for t in ring.teichmuller[1:])


def _element_orders(ring: GaloisRing, units: np.ndarray) -> np.ndarray:
    orders = np.zeros(len(units), dtype=np.int64)
    current = units.copy()
    for k in range(1, len(units) + 1):
        newly = (current == 1) & (orders == 0)
        orders[newly] = k
        if np.all(orders > 0):
            break
        current = ring.mul_array(current, units)
    return orders


def _cyclic_subgroup(ring: GaloisRing, generator: int, order: int) -> list[int]:
    elements, current = [], 1
    for _ in range(order):
        elements.append(current)
        current = ring.mul(current, generator)
    return elements


@lru_cache(maxsize=8)
def _unit_group_structure_cached(ring: GaloisRing) -> UnitGroupStructure:
    if ring.m > MAX_UNIT_GROUP_DEGREE:
        raise GroupDecompositionFailed(
            f"unit group decomposition is limited to m <= {MAX_UNIT_GROUP_DEGREE}"
        )
    units = ring.units()
    orders = _element_orders(ring, units)
    by_order = sorted(range(len(units)), key=lambda i: (-orders[i], units[i]))

    subgroup = {1}
    generators: list[int] = []
    generator_orders: list[int] = []
    while len(subgroup) < len(units):
        for i in by_order:
            candidate, order = int(units[i]), int(orders[i])
            cyclic = _cyclic_subgroup(ring, candidate, order)
            if order > 1 and subgroup.isdisjoint(cyclic[1:]):
                break
        else:
            raise GroupDecompositionFailed(
                f"no independent generator found for R_{ring.size}* at size {len(subgroup)}"
            )
        subgroup = {ring.mul(h, c) for h in subgroup for c in cyclic}
        generators.append(candidate)
        generator_orders.append(order)

    lookup = np.full((ring.size, len(generators)), -1, dtype=np.int64)
    for exponents in itertools.product(*(range(o) for o in generator_orders)):
        element = 1
        for generator, e in zip(generators, exponents):
            element = ring.mul(element, ring.power(generator, e))
        if lookup[element, 0] >= 0:
            raise GroupDecompositionFailed(f"unit {element} has two exponent vectors")
        lookup[element] = exponents
    if np.count_nonzero(lookup[:, 0] >= 0) != len(units):
        raise GroupDecompositionFailed("generators do not cover the unit group")

    structure = UnitGroupStructure(generators=generators, orders=generator_orders)
    structure._exponents = lookup
    logger.info(f"R_{ring.size}* decomposed with cyclic orders {generator_orders}")
    return structure


def unit_group_structure(ring: GaloisRing) -> UnitGroupStructure:
    """Abelian decomposition of the unit group R*, found by brute force (m <= 4)."""
    return _unit_group_structure_cached(ring)


def unit_group_characters(
    ring: GaloisRing, convention: TrivialConvention = TrivialConvention.UNITS
) -> list[CharacterSpec]:
    """All |R*| characters of the unit group, trivial character first."""
    structure = unit_group_structure(ring)
    characters = []
    for ordinal, exponents in enumerate(
        itertools.product(*(range(o) for o in structure.orders))
    ):
        characters.append(
            CharacterSpec(
                kind=CharacterKind.RING_UNIT,
                parameter=ordinal,
                carrier=ring,
                exponents=list(exponents),
                convention=convention,
                structure=structure,
            )
        )
    return characters


def gauss_sum_ring(ring: GaloisRing, psi: CharacterSpec, y) -> complex:
    """Sum over all x in R of psi(x) kappa~(y x)."""
    y = ring.element(y).index
    xs = np.arange(ring.size, dtype=np.int64)
    kappa = phase_power(4, ring.gtrace_array(ring.mul_array(y, xs)))
    return complex_fsum(psi.values(xs) * kappa)


def character_table_deviation(characters: Sequence[CharacterSpec]) -> float:
    """Largest deviation of the unit-group character table from orthonormality."""
    ring = characters[0].carrier
    units = ring.units()
    table = np.stack([character.values(units) for character in characters])
    gram = table @ table.conj().T / len(units)
    return float(np.max(np.abs(gram - np.eye(len(characters)))))


class SumReport(Model):
    kind: str = Field(description="Which exponential sum was evaluated")
    inputs: dict[str, Any] = Field(description="Parameters of the evaluation")
    value: ComplexValue
    magnitude: float
    expected: float | None = Field(
        default=None, description="Exact expected value or magnitude, where known"
    )
    bound: float | None = Field(default=None, description="Applicable upper bound")
    bound_applicable: bool = True
    passed: bool
    note: str | None = None


def report_weil(
    field: GaloisField,
    f: Sequence[int],
    kappa: CharacterSpec,
    tolerance: float = DEFAULT_TOLERANCE,
) -> SumReport:
    value = weil_sum(field, f, kappa)
    degree = _polynomial_degree(f)
    applicable = math.gcd(degree, field.q) == 1 and not kappa.is_trivial
    bound = weil_bound(field, degree)
    return SumReport(
        kind="weil",
        inputs={"q": field.q, "f": [int(c) for c in f], "kappa": kappa.parameter},
        value=value,
        magnitude=abs(value),
        bound=bound,
        bound_applicable=applicable,
        passed=(abs(value) <= bound + tolerance) if applicable else True,
        note=None if applicable else "bound needs gcd(deg f, q) = 1 and nontrivial kappa",
    )


def expected_gauss_field(field: GaloisField, psi: CharacterSpec, kappa: CharacterSpec) -> float:
    """q - 1, -1, 0 or sqrt(q) (a magnitude) depending on which characters are trivial."""
    if psi.is_trivial and kappa.is_trivial:
        return float(field.q - 1)
    if psi.is_trivial:
        return -1.0
    if kappa.is_trivial:
        return 0.0
    return math.sqrt(field.q)


def report_gauss_field(
    field: GaloisField,
    psi: CharacterSpec,
    kappa: CharacterSpec,
    tolerance: float = DEFAULT_TOLERANCE,
) -> SumReport:
    value = gauss_sum_field(field, psi, kappa)
    expected = expected_gauss_field(field, psi, kappa)
    if psi.is_trivial or kappa.is_trivial:
        passed = abs(value - expected) <= tolerance
    else:
        passed = abs(abs(value) - expected) <= tolerance
    return SumReport(
        kind="gauss_field",
        inputs={"q": field.q, "psi": psi.parameter, "kappa": kappa.parameter},
        value=value,
        magnitude=abs(value),
        expected=expected,
        passed=passed,
    )


def report_gamma(ring: GaloisRing, y, tolerance: float = DEFAULT_TOLERANCE) -> SumReport:
    y = ring.element(y).index
    value = gamma_sum(ring, y)
    expected = gamma_expected_magnitude(ring, y)
    return SumReport(
        kind="gamma",
        inputs={"m": ring.m, "y": y},
        value=value,
        magnitude=abs(value),
        expected=expected,
        passed=abs(abs(value) - expected) <= tolerance,
    )


def report_gauss_ring(
    ring: GaloisRing, psi: CharacterSpec, y, tolerance: float = DEFAULT_TOLERANCE
) -> SumReport:
    y = ring.element(y).index
    value = gauss_sum_ring(ring, psi, y)
    bound = float(2**ring.m)
    inputs = {"m": ring.m, "psi": psi.parameter, "y": y, "convention": psi.convention.value}

    if y == 0:
        if psi.is_trivial:
            expected = float(
                ring.size
                if psi.convention is TrivialConvention.ALL_ONES
                else len(ring.units())
            )
        else:
            expected = 0.0
        return SumReport(
            kind="gauss_ring",
            inputs=inputs,
            value=value,
            magnitude=abs(value),
            expected=expected,
            passed=abs(value - expected) <= tolerance,
        )

    if ring.is_unit(y):
        return SumReport(
            kind="gauss_ring",
            inputs=inputs,
            value=value,
            magnitude=abs(value),
            bound=bound,
            passed=abs(value) <= bound + tolerance,
        )

    return SumReport(
        kind="gauss_ring",
        inputs=inputs,
        value=value,
        magnitude=abs(value),
        bound=bound,
        bound_applicable=False,
        passed=True,
        note="|G| <= 2^m holds for unit y; y in 2R is a non-primitive additive character",
    )
