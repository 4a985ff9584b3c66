"""
Complete sets of mutually unbiased bases (odd characteristic from F_q, even
characteristic from the Galois ring R_{4^m}), generalized Bell bases and partial-trace
entanglement checks.
"""

import itertools
import math
from typing import Sequence

import numpy as np
from pydantic import Field, model_validator

from galois_quantum_toolkit.characters import index_phase_character
from galois_quantum_toolkit.fields import GaloisField, GaloisRing
from galois_quantum_toolkit.models import ComplexArray, Model
from galois_quantum_toolkit.utils import (
    DEFAULT_TOLERANCE,
    ToolkitError,
    create_logger,
    parallel_map,
    phase_power,
)

logger = create_logger(__name__)


class EvenCharacteristic(ToolkitError): ...


class DimensionMismatch(ToolkitError): ...


class NonSquareDimension(ToolkitError): ...


class StateVector(Model):
    dim: int = Field(description="Hilbert space dimension")
    amplitudes: ComplexArray = Field(
        description="Amplitudes indexed by the canonical encoding of the basis label",
    )

    @model_validator(mode="after")
    def _check_state(self) -> "StateVector":
        if self.amplitudes.shape != (self.dim,):
            raise ValueError(
                f"expected {self.dim} amplitudes, got shape {self.amplitudes.shape}"
            )
        norm = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm - 1.0) > DEFAULT_TOLERANCE:
            raise ValueError(f"state is not normalized (squared norm {norm})")
        return self

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "StateVector":
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        return cls(dim=len(amplitudes), amplitudes=amplitudes)


class BasisSet(Model):
    dim: int = Field(description="Dimension q of every vector")
    bases: ComplexArray = Field(
        description="Array of shape (bases, q, q); bases[i, b] is the b-th vector of basis i",
    )
    labels: list[int | None] = Field(
        description="The a-label of each basis; None marks the computational basis",
    )
    includes_computational: bool = Field(
        description="Whether the computational basis is the last basis",
    )

    @property
    def basis_count(self) -> int:
        return int(self.bases.shape[0])

    @property
    def is_complete(self) -> bool:
        return self.basis_count == self.dim + 1

    def vector(self, basis: int, b: int) -> StateVector:
        return StateVector(dim=self.dim, amplitudes=self.bases[basis, b].copy())

    @classmethod
    def from_bases(
        cls,
        bases: Sequence[np.ndarray],
        labels: Sequence[int | None] | None = None,
        includes_computational: bool = False,
    ) -> "BasisSet":
        arrays = [np.asarray(basis, dtype=np.complex128) for basis in bases]
        dims = {array.shape for array in arrays}
        if len(dims) != 1:
            raise DimensionMismatch(f"bases have differing shapes {sorted(dims)}")
        (shape,) = dims
        if len(shape) != 2 or shape[0] != shape[1]:
            raise DimensionMismatch(f"a basis must be a q x q array, got {shape}")
        return cls(
            dim=shape[0],
            bases=np.stack(arrays),
            labels=list(labels) if labels is not None else list(range(len(arrays))),
            includes_computational=includes_computational,
        )


class BasisVectorEntry(Model):
    a: int | None = Field(description="Basis label; None for the computational basis")
    b: int = Field(description="Vector label within the basis")
    amplitudes: ComplexArray


class BasisSetExport(Model):
    dim: int
    vectors: list[BasisVectorEntry]


class UnbiasednessReport(Model):
    dim: int
    basis_count: int
    max_abs_deviation: float = Field(
        description="Max over cross-basis pairs of ||<u|v>| - 1/sqrt(q)|",
    )
    max_ortho_deviation: float = Field(
        description="Max entrywise deviation of each basis Gram matrix from identity",
    )
    tolerance: float
    passed: bool


class EntanglementReport(Model):
    dim: int = Field(description="Dimension q of each subsystem")
    max_deviation: float = Field(
        description="Max entrywise deviation of the reduced density operator from I/q",
    )
    reduced_density: ComplexArray
    tolerance: float
    passed: bool


def _computational_basis(q: int) -> np.ndarray:
    return np.eye(q, dtype=np.complex128)


def mub_odd(field: GaloisField, k: int = 0) -> BasisSet:
    """
    q + 1 mutually unbiased bases in dimension q for odd characteristic.

    Vector b of basis a has amplitudes psi_k(n) kappa(a n^2 + b n) / sqrt(q), with the
    quadratic argument computed in F_q and psi_k the index-phase character.

    Args:
        field: A field of odd characteristic
        k: Phase index of psi_k (default 0)

    Returns:
        BasisSet: The q field bases followed by the computational basis
    """
    if field.p == 2:
        raise EvenCharacteristic(
            f"F_{field.q} has characteristic 2; use mub_even with the Galois ring"
        )
    q = field.q
    n = np.arange(q, dtype=np.int64)
    square = field.mul_array(n, n)
    a = n[:, None, None]
    b = n[None, :, None]
    argument = field.add_array(
        field.mul_array(a, square[None, None, :]), field.mul_array(b, n[None, None, :])
    )
    psi = index_phase_character(field, k).values(n)
    bases = phase_power(field.p, field.trace_array(argument)) * psi / math.sqrt(q)

    all_bases = np.concatenate([bases, _computational_basis(q)[None]], axis=0)
    return BasisSet(
        dim=q,
        bases=all_bases,
        labels=list(range(q)) + [None],
        includes_computational=True,
    )


def mub_even(ring: GaloisRing, k: int = 0) -> BasisSet:
    """
    2^m + 1 mutually unbiased bases in dimension 2^m from the Galois ring R_{4^m}.

    Vector b of basis a (a, b in the Teichmueller set) has amplitudes
    psi_k(n) i^gtrace((a + 2b) n) / sqrt(2^m), for n running over the Teichmueller set
    in its fixed order (0, 1, xi, ...). Basis labels are Teichmueller positions.
    """
    teichmuller = np.asarray(ring.teichmuller, dtype=np.int64)
    q = len(teichmuller)
    a = teichmuller[:, None]
    b = teichmuller[None, :]
    shifted = ring.add_array(a, ring.add_array(b, b))
    argument = ring.mul_array(shifted[:, :, None], teichmuller[None, None, :])
    psi = index_phase_character(ring, k).values(teichmuller)
    bases = phase_power(4, ring.gtrace_array(argument)) * psi / math.sqrt(q)

    all_bases = np.concatenate([bases, _computational_basis(q)[None]], axis=0)
    return BasisSet(
        dim=q,
        bases=all_bases,
        labels=list(range(q)) + [None],
        includes_computational=True,
    )


def _ortho_deviation(basis: np.ndarray) -> float:
    gram = basis.conj() @ basis.T
    return float(np.max(np.abs(gram - np.eye(len(basis)))))


def _cross_deviation(first: np.ndarray, second: np.ndarray) -> float:
    overlaps = np.abs(first.conj() @ second.T)
    return float(np.max(np.abs(overlaps - 1.0 / math.sqrt(first.shape[1]))))


def verify_unbiasedness(
    basis_set: BasisSet,
    tolerance: float = DEFAULT_TOLERANCE,
    threads: int | None = None,
) -> UnbiasednessReport:
    """
    Check within-basis orthonormality and |<u|v>| = 1/sqrt(q) across every pair of
    distinct bases, the computational basis included.
    """
    bases = basis_set.bases
    if bases.ndim != 3 or bases.shape[1:] != (basis_set.dim, basis_set.dim):
        raise DimensionMismatch(
            f"bases of shape {bases.shape[1:]} in a set of dimension {basis_set.dim}"
        )

    ortho = max(_ortho_deviation(basis) for basis in bases)
    pairs = list(itertools.combinations(range(len(bases)), 2))
    cross = parallel_map(
        lambda pair: _cross_deviation(bases[pair[0]], bases[pair[1]]),
        pairs,
        threads=threads,
        desc="basis pairs",
    )
    worst = max(cross, default=0.0)
    passed = ortho <= tolerance and worst <= tolerance
    if not passed:
        logger.warning(
            f"Unbiasedness check failed in dimension {basis_set.dim}: "
            f"cross {worst:.3e}, ortho {ortho:.3e}"
        )
    return UnbiasednessReport(
        dim=basis_set.dim,
        basis_count=len(bases),
        max_abs_deviation=worst,
        max_ortho_deviation=ortho,
        tolerance=tolerance,
        passed=passed,
    )


def export_basis_set(basis_set: BasisSet) -> BasisSetExport:
    """Flatten a basis set into (a, b)-keyed vectors for JSON export."""
    vectors = [
        BasisVectorEntry(a=label, b=b, amplitudes=basis_set.bases[i, b])
        for i, label in enumerate(basis_set.labels)
        for b in range(basis_set.dim)
    ]
    return BasisSetExport(dim=basis_set.dim, vectors=vectors)


def bell_fourier(q: int, h: int, k: int) -> StateVector:
    """
    Generalized Bell state (1/sqrt(q)) sum_n omega_q^(k n) |n, n + h> with integer
    arithmetic mod q. The pair (first, second) is stored at index first * q + second.
    """
    if q < 2:
        raise ToolkitError(f"Bell states need q >= 2, got {q}")
    n = np.arange(q)
    amplitudes = np.zeros(q * q, dtype=np.complex128)
    amplitudes[n * q + (n + h) % q] = phase_power(q, k * n) / math.sqrt(q)
    return StateVector(dim=q * q, amplitudes=amplitudes)


def bell_galois(field: GaloisField, a: int, h: int, b: int) -> StateVector:
    """
    Galois Bell state (1/sqrt(q)) sum_n omega_p^tr((a n + b) n) |n, n + h>, with n + h
    computed by field addition.
    """
    if field.p == 2:
        raise EvenCharacteristic(f"Galois Bell states need odd characteristic, got F_{field.q}")
    q = field.q
    a, h, b = (field.element(value).index for value in (a, h, b))
    n = np.arange(q, dtype=np.int64)
    argument = field.mul_array(field.add_array(field.mul_array(a, n), b), n)
    amplitudes = np.zeros(q * q, dtype=np.complex128)
    amplitudes[n * q + field.add_array(n, h)] = phase_power(
        field.p, field.trace_array(argument)
    ) / math.sqrt(q)
    return StateVector(dim=q * q, amplitudes=amplitudes)


def galois_bell_basis(field: GaloisField, a: int, h: int) -> np.ndarray:
    """The q Galois Bell states for fixed (a, h), one row per b."""
    return np.stack(
        [bell_galois(field, a, h, b).amplitudes for b in range(field.q)]
    )


def galois_bell_cross_deviation(field: GaloisField, h: int) -> float:
    """Max of ||<u|v>| - 1/sqrt(q)| between Galois Bell bases with equal h and a != a'."""
    bases = [galois_bell_basis(field, a, h) for a in range(field.q)]
    return max(
        (_cross_deviation(first, second) for first, second in itertools.combinations(bases, 2)),
        default=0.0,
    )


def fourier_bell_gram_deviation(q: int) -> float:
    """Entrywise deviation from identity of the Gram matrix of all q^2 Fourier Bell states."""
    states = np.stack(
        [bell_fourier(q, h, k).amplitudes for h in range(q) for k in range(q)]
    )
    return _ortho_deviation(states)


def reduced_density(state: StateVector) -> np.ndarray:
    """Trace out the second subsystem of a state on C^q (x) C^q."""
    q = math.isqrt(state.dim)
    if q * q != state.dim:
        raise NonSquareDimension(f"dimension {state.dim} is not a perfect square")
    matrix = state.amplitudes.reshape(q, q)
    return matrix @ matrix.conj().T


def entanglement_check(
    state: StateVector, tolerance: float = DEFAULT_TOLERANCE
) -> EntanglementReport:
    rho = reduced_density(state)
    q = rho.shape[0]
    deviation = float(np.max(np.abs(rho - np.eye(q) / q)))
    return EntanglementReport(
        dim=q,
        max_deviation=deviation,
        reduced_density=rho,
        tolerance=tolerance,
        passed=deviation <= tolerance,
    )
