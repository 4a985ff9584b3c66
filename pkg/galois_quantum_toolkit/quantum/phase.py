"""
Quantum phase operators: Pegg-Barnett, the Galois phase operator built from the
mutually unbiased bases of F_q, and the phase-locking operator restricted to the
frequencies coprime to q. Includes the phase expectation values in a pure phase state
and their comparison with the von Mangoldt function.
"""

import math

import numpy as np
from pydantic import Field, model_validator
from tqdm import tqdm

from galois_quantum_toolkit.arithmetic import (
    is_prime_power,
    mangoldt,
    ramanujan_sum,
    totient,
)
from galois_quantum_toolkit.characters import index_phase_character
from galois_quantum_toolkit.fields import GaloisField
from galois_quantum_toolkit.models import ComplexArray, Model
from galois_quantum_toolkit.utils import (
    DEFAULT_TOLERANCE,
    ToolkitError,
    complex_fsum,
    create_logger,
    phase_power,
)

from .mub import EvenCharacteristic, mub_odd

logger = create_logger(__name__)

MANGOLDT_CORRELATION = 0.9


class NotHermitian(ToolkitError): ...


class InvalidDimension(ToolkitError): ...


class HermitianOperator(Model):
    dim: int
    entries: ComplexArray

    @model_validator(mode="after")
    def _check_hermitian(self) -> "HermitianOperator":
        if self.entries.shape != (self.dim, self.dim):
            raise ValueError(f"expected a {self.dim}x{self.dim} matrix")
        deviation = float(np.max(np.abs(self.entries - self.entries.conj().T)))
        if deviation > DEFAULT_TOLERANCE:
            raise NotHermitian(f"operator deviates from Hermitian by {deviation:.3e}")
        return self

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def expectation(self, amplitudes: np.ndarray) -> complex:
        return complex(np.vdot(amplitudes, self.entries @ amplitudes))


class PureState(Model):
    dim: int
    beta: float
    amplitudes: ComplexArray


class PhaseSweepRow(Model):
    q: int
    expectation_closed_form: float
    expectation_spectral: float
    mangoldt_reference: float = Field(description="pi * Lambda(q) / ln q")
    expectation_truncated: float = Field(
        description="Closed form with n, l in 0..phi(q), compared with the reference",
    )
    expectation_beta0: float = Field(
        description="Truncated closed form at beta = 0",
    )
    is_prime_power: bool
    imaginary_residue: float


class PhaseSweep(Model):
    beta: float
    rows: list[PhaseSweepRow]
    local_maxima: list[int] = Field(
        description="Interior q whose expectation exceeds both neighbours",
    )
    maxima_at_prime_powers: bool = Field(
        description="Whether every interior local maximum is a prime power",
    )
    mangoldt_correlation: float | None = Field(
        description="Pearson correlation with pi*Lambda(q)/ln q over prime-power q",
    )
    beta0_below: bool = Field(
        description="Whether the beta = 0 value is below the swept value at every prime power",
    )
    max_imaginary_residue: float
    max_projector_deviation: float = Field(
        description="Largest deviation of the Ramanujan kernel from the coprime projector",
    )
    identities_passed: bool
    mangoldt_profile_passed: bool = Field(
        description=(
            "Whether every interior maximum is a prime power and the correlation "
            f"exceeds {MANGOLDT_CORRELATION}"
        ),
    )


class GaloisExpectation(Model):
    value: float = Field(description="Expectation from the double sum over S(m, n)")
    diagonal_subtotal: float = Field(description="Contribution of the m = n terms")
    direct: float = Field(description="<f|Theta|f> from the spectral operator")
    imaginary_residue: float
    agreement: float = Field(description="|value - direct|")


def _require_dimension(q: int) -> None:
    if q < 2:
        raise InvalidDimension(f"phase operators need dimension >= 2, got {q}")


def _require_odd(field: GaloisField) -> None:
    if field.p == 2:
        raise EvenCharacteristic(
            f"the Galois phase operator is built on odd characteristic, got F_{field.q}"
        )


def fourier_vectors(q: int, theta0: float = 0.0) -> np.ndarray:
    """Columns are |theta_k> = q^(-1/2) sum_n exp(i n theta_k) |n>, theta_k = theta0 + 2 pi k / q."""
    n = np.arange(q)[:, None]
    theta = theta0 + 2 * np.pi * np.arange(q)[None, :] / q
    return np.exp(1j * n * theta) / math.sqrt(q)


def _spectral(vectors: np.ndarray, eigenvalues: np.ndarray) -> np.ndarray:
    return (vectors * eigenvalues[None, :]) @ vectors.conj().T


def pegg_barnett_operator(q: int, theta0: float = 0.0) -> HermitianOperator:
    _require_dimension(q)
    theta = theta0 + 2 * np.pi * np.arange(q) / q
    entries = _spectral(fourier_vectors(q, theta0), theta)
    return HermitianOperator(dim=q, entries=entries)


def pure_phase_state(q: int, beta: float) -> PureState:
    """u_n = exp(i n beta) / sqrt(q)."""
    _require_dimension(q)
    amplitudes = np.exp(1j * beta * np.arange(q)) / math.sqrt(q)
    return PureState(dim=q, beta=beta, amplitudes=amplitudes)


def _s_matrix(field: GaloisField) -> np.ndarray:
    """S(m, n) = sum over b of b * omega_p^tr(b (m - n)), for all pairs of canonical indices."""
    q = field.q
    indices = np.arange(q, dtype=np.int64)
    difference = field.sub_array(indices[:, None], indices[None, :])
    products = field.mul_array(indices[:, None, None], difference[None, :, :])
    phases = phase_power(field.p, field.trace_array(products))
    return np.tensordot(indices.astype(np.float64), phases, axes=(0, 0))


def s_sum(field: GaloisField, n, m) -> complex:
    """Direct sum over b in F_q of b * omega_p^tr(b (n - m)), with b read as its canonical index."""
    n, m = field.element(n).index, field.element(m).index
    difference = field.sub(n, m)
    b = np.arange(field.q, dtype=np.int64)
    phases = phase_power(field.p, field.trace_array(field.mul_array(b, difference)))
    return complex_fsum(b * phases)


def s_sum_closed_form(field: GaloisField, n, m) -> complex:
    """
    q / (omega_p^tr(n - m) - 1), valid for prime q and n != m.

    Only the direct sum is authoritative; this form serves as its oracle on prime fields.
    """
    if field.m != 1:
        raise ToolkitError("the closed form of S(n, m) is used only for prime q")
    n, m = field.element(n).index, field.element(m).index
    if n == m:
        raise ToolkitError("the closed form of S(n, m) needs n != m")
    z = complex(phase_power(field.p, field.trace(field.sub(n, m))))
    return field.q / (z - 1)


def galois_phase_operator(
    field: GaloisField, a, k: int = 0
) -> tuple[HermitianOperator, HermitianOperator]:
    """
    The Galois phase operator on basis a of the odd-characteristic MUBs, built twice:
    spectrally as sum_b theta_b |theta_b^a><theta_b^a| with theta_b = 2 pi b / q, and
    entrywise as (2 pi / q^2) psi_k(n) conj(psi_k(m)) omega_p^tr(a (n^2 - m^2)) S(n, m).

    Returns:
        tuple: (spectral form, matrix-element form)
    """
    _require_odd(field)
    q = field.q
    a = field.element(a).index

    basis = mub_odd(field, k).bases[a]
    theta = 2 * np.pi * np.arange(q) / q
    spectral = _spectral(basis.T, theta)

    n = np.arange(q, dtype=np.int64)
    psi = index_phase_character(field, k).values(n)
    square = field.mul_array(n, n)
    quadratic = field.mul_array(a, field.sub_array(square[:, None], square[None, :]))
    kappa = phase_power(field.p, field.trace_array(quadratic))
    entries = (
        (2 * np.pi / q**2) * psi[:, None] * psi.conj()[None, :] * kappa * _s_matrix(field)
    )
    return (
        HermitianOperator(dim=q, entries=spectral),
        HermitianOperator(dim=q, entries=entries),
    )


def _coprime_frequencies(q: int) -> np.ndarray:
    return np.asarray([k for k in range(1, q) if math.gcd(k, q) == 1], dtype=np.int64)


def lock_index_count(q: int, truncate_to_totient: bool = False) -> int:
    """Indices n, l of the locking sums run over 0..q-1, or over 0..phi(q) when truncated."""
    return totient(q) + 1 if truncate_to_totient else q


def ramanujan_kernel(q: int, truncate_to_totient: bool = False) -> np.ndarray:
    """(1/q) c_q(n - l) over the locking index range."""
    index = np.arange(lock_index_count(q, truncate_to_totient))
    values = np.asarray([ramanujan_sum(q, d) for d in range(q)], dtype=np.float64)
    return values[np.abs(index[:, None] - index[None, :]) % q] / q


def lock_operator(
    q: int, truncate_to_totient: bool = False
) -> tuple[HermitianOperator, HermitianOperator]:
    """
    The phase-locking operator sum over gcd(k, q) = 1 of theta'_k |theta'_k><theta'_k|,
    and the Ramanujan-kernel matrix (1/q) sum c_q(n - l) |n><l|.

    Over the full index range the kernel is the projector onto the coprime-frequency
    subspace; it carries no theta'_k weights.

    Returns:
        tuple: (spectral operator, Ramanujan-kernel matrix)
    """
    _require_dimension(q)
    coprime = _coprime_frequencies(q)
    vectors = fourier_vectors(q)[:, coprime]
    spectral = _spectral(vectors, 2 * np.pi * coprime / q)
    kernel = ramanujan_kernel(q, truncate_to_totient)
    return (
        HermitianOperator(dim=q, entries=spectral),
        HermitianOperator(dim=len(kernel), entries=kernel.astype(np.complex128)),
    )


def coprime_projector(q: int) -> np.ndarray:
    vectors = fourier_vectors(q)[:, _coprime_frequencies(q)]
    return vectors @ vectors.conj().T


def projector_deviation(q: int) -> float:
    """Max of the kernel's deviation from the coprime projector and from idempotency."""
    kernel = ramanujan_kernel(q)
    against_projector = np.max(np.abs(kernel - coprime_projector(q)))
    idempotency = np.max(np.abs(kernel @ kernel - kernel))
    return float(max(against_projector, idempotency))


def _lock_expectation_complex(
    q: int, beta: float, truncate_to_totient: bool = False
) -> complex:
    index = np.arange(lock_index_count(q, truncate_to_totient))
    difference = index[:, None] - index[None, :]
    values = np.asarray([ramanujan_sum(q, d) for d in range(q)], dtype=np.float64)
    kernel = values[np.abs(difference) % q]
    terms = kernel * np.exp(1j * beta * difference)
    return (math.pi / q**2) * complex_fsum(terms.ravel())


def lock_expectation(
    q: int,
    beta: float,
    tolerance: float = DEFAULT_TOLERANCE,
    truncate_to_totient: bool = False,
) -> float:
    """
    (pi / q^2) sum over n, l of c_q(l - n) exp(i beta (n - l)), the closed-form
    phase-locking expectation in the pure phase state of parameter beta.

    Over the full range this is pi times the weight of the state on the coprime
    frequencies, and it vanishes at beta = 0. With n, l in 0..phi(q) it follows the
    normalized von Mangoldt profile used by `lock_sweep`.
    """
    _require_dimension(q)
    value = _lock_expectation_complex(q, beta, truncate_to_totient)
    if abs(value.imag) > tolerance:
        raise ToolkitError(
            f"lock expectation for q={q} has imaginary residue {abs(value.imag):.3e}"
        )
    return value.real


def _coprime_weights(q: int, beta: float) -> tuple[np.ndarray, np.ndarray]:
    coprime = _coprime_frequencies(q)
    vectors = fourier_vectors(q)[:, coprime]
    state = pure_phase_state(q, beta).amplitudes
    weights = np.abs(vectors.conj().T @ state) ** 2
    return 2 * np.pi * coprime / q, weights


def lock_expectation_spectral(q: int, beta: float) -> float:
    """sum over coprime k of theta'_k |<theta'_k|f>|^2."""
    _require_dimension(q)
    theta, weights = _coprime_weights(q, beta)
    return float(np.sum(theta * weights))


def lock_variance(q: int, beta: float) -> float:
    """Spectral phase variance <Theta^2> - <Theta>^2 of the locking operator."""
    _require_dimension(q)
    theta, weights = _coprime_weights(q, beta)
    mean = np.sum(theta * weights)
    return float(np.sum(theta**2 * weights) - mean**2)


def mangoldt_reference(q: int) -> float:
    return math.pi * mangoldt(q) / math.log(q)


def lock_sweep(
    qmax: int = 50,
    beta: float = 1.0,
    tolerance: float = DEFAULT_TOLERANCE,
    progress: bool = False,
) -> PhaseSweep:
    """
    Evaluate the phase-locking expectation for q in [2, qmax] and compare its profile
    with the normalized von Mangoldt function.

    The profile (local maxima, correlation, beta = 0 comparison) is read from the
    expectation with n, l in 0..phi(q); the full-range closed form is its own exactly
    known quantity and is reported alongside. `identities_passed` covers the exact
    identities and the beta = 0 comparison, `mangoldt_profile_passed` the peak
    structure and correlation.
    """
    if qmax < 2:
        raise InvalidDimension(f"qmax must be >= 2, got {qmax}")

    rows: list[PhaseSweepRow] = []
    projector_worst = 0.0
    for q in tqdm(range(2, qmax + 1), desc="lock sweep", disable=not progress):
        value = _lock_expectation_complex(q, beta)
        truncated = _lock_expectation_complex(q, beta, truncate_to_totient=True)
        rows.append(
            PhaseSweepRow(
                q=q,
                expectation_closed_form=value.real,
                expectation_spectral=lock_expectation_spectral(q, beta),
                mangoldt_reference=mangoldt_reference(q),
                expectation_truncated=truncated.real,
                expectation_beta0=_lock_expectation_complex(
                    q, 0.0, truncate_to_totient=True
                ).real,
                is_prime_power=is_prime_power(q),
                imaginary_residue=max(abs(value.imag), abs(truncated.imag)),
            )
        )
        projector_worst = max(projector_worst, projector_deviation(q))

    values = [row.expectation_truncated for row in rows]
    local_maxima = [
        rows[i].q
        for i in range(1, len(rows) - 1)
        if values[i] > values[i - 1] and values[i] > values[i + 1]
    ]
    composite_maxima = [q for q in local_maxima if not is_prime_power(q)]

    prime_rows = [row for row in rows if row.is_prime_power]
    correlation = None
    if len(prime_rows) >= 2:
        profile = np.asarray([row.expectation_truncated for row in prime_rows])
        reference = np.asarray([row.mangoldt_reference for row in prime_rows])
        if np.std(profile) > 0 and np.std(reference) > 0:
            correlation = float(np.corrcoef(profile, reference)[0, 1])

    beta0_below = all(
        row.expectation_beta0 < row.expectation_truncated for row in prime_rows
    )
    residue = max(row.imaginary_residue for row in rows)
    identities_passed = (
        residue <= tolerance and projector_worst <= tolerance and beta0_below
    )
    mangoldt_profile_passed = (
        not composite_maxima
        and correlation is not None
        and correlation > MANGOLDT_CORRELATION
    )
    if composite_maxima:
        logger.warning(f"Local maxima at non-prime-power q: {composite_maxima}")
    if correlation is not None and correlation <= MANGOLDT_CORRELATION:
        logger.warning(
            f"Correlation with the von Mangoldt reference is {correlation:.3f}, "
            f"not above {MANGOLDT_CORRELATION}"
        )

    return PhaseSweep(
        beta=beta,
        rows=rows,
        local_maxima=local_maxima,
        maxima_at_prime_powers=not composite_maxima,
        mangoldt_correlation=correlation,
        beta0_below=beta0_below,
        max_imaginary_residue=residue,
        max_projector_deviation=projector_worst,
        identities_passed=identities_passed,
        mangoldt_profile_passed=mangoldt_profile_passed,
    )


def _galois_expectation_terms(
    field: GaloisField, a: int, k: int, beta: float
) -> np.ndarray:
    q = field.q
    index = np.arange(q, dtype=np.int64)
    # psi_k(m - n) on canonical integer labels
    psi = index_phase_character(field, k).values(index)
    square = field.mul_array(index, index)
    quadratic = field.mul_array(a, field.sub_array(square[:, None], square[None, :]))
    kappa = phase_power(field.p, field.trace_array(quadratic))
    drift = np.exp(1j * beta * (index[None, :] - index[:, None]))
    return (
        (2 * np.pi / q**3)
        * psi[:, None]
        * psi.conj()[None, :]
        * drift
        * kappa
        * _s_matrix(field)
    )


def galois_expectation_report(
    field: GaloisField, a, k: int = 0, beta: float = 0.0
) -> GaloisExpectation:
    _require_odd(field)
    a = field.element(a).index
    terms = _galois_expectation_terms(field, a, k, beta)
    total = complex_fsum(terms.ravel())
    diagonal = complex_fsum(np.diag(terms))

    spectral, _ = galois_phase_operator(field, a, k)
    state = pure_phase_state(field.q, beta).amplitudes
    direct = spectral.expectation(state)
    return GaloisExpectation(
        value=total.real,
        diagonal_subtotal=diagonal.real,
        direct=direct.real,
        imaginary_residue=abs(total.imag),
        agreement=abs(total - direct),
    )


def galois_expectation(field: GaloisField, a, k: int = 0, beta: float = 0.0) -> float:
    """
    Phase expectation of the Galois phase operator in the pure phase state of
    parameter beta, from the double sum (2 pi / q^3) sum over m, n of
    psi_k(m - n) exp(i (n - m) beta) omega_p^tr(a (m^2 - n^2)) S(m, n).
    """
    report = galois_expectation_report(field, a, k, beta)
    if report.imaginary_residue > DEFAULT_TOLERANCE:
        raise ToolkitError(
            f"Galois expectation has imaginary residue {report.imaginary_residue:.3e}"
        )
    return report.value


def galois_expectation_direct(field: GaloisField, a, k: int = 0, beta: float = 0.0) -> float:
    """<f|Theta|f> with the spectral Galois phase operator and the pure phase state f."""
    _require_odd(field)
    spectral, _ = galois_phase_operator(field, a, k)
    return spectral.expectation(pure_phase_state(field.q, beta).amplitudes).real


def galois_expectation_diagonal(q: int) -> float:
    """pi (q - 1) / q, the m = n contribution to the Galois expectation."""
    return math.pi * (q - 1) / q
