import cmath
import math

import numpy as np
import pytest

from galois_quantum_toolkit.arithmetic import is_prime_power, totient
from galois_quantum_toolkit.fields import build_field
from galois_quantum_toolkit.quantum import (
    EvenCharacteristic,
    HermitianOperator,
    InvalidDimension,
    coprime_projector,
    galois_expectation,
    galois_expectation_diagonal,
    galois_expectation_direct,
    galois_expectation_report,
    galois_phase_operator,
    lock_expectation,
    lock_index_count,
    lock_expectation_spectral,
    lock_operator,
    lock_sweep,
    lock_variance,
    mangoldt_reference,
    pegg_barnett_operator,
    projector_deviation,
    pure_phase_state,
    ramanujan_kernel,
    s_sum,
    s_sum_closed_form,
)

ODD_FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2)]


def test_pegg_barnett_spectrum():
    for q in (2, 3, 5, 8):
        operator = pegg_barnett_operator(q)
        assert np.allclose(operator.eigenvalues(), 2 * np.pi * np.arange(q) / q)


def test_pure_phase_state_is_normalized():
    state = pure_phase_state(7, 0.3)
    assert np.sum(np.abs(state.amplitudes) ** 2) == pytest.approx(1.0)


def test_s_sum_over_f5():
    field = build_field(5)
    omega = cmath.exp(2j * math.pi / 5)
    assert abs(s_sum(field, 1, 0) - (-5 / (1 - omega))) < 1e-12


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_s_sum_closed_form_on_prime_fields(p):
    field = build_field(p)
    for n in range(p):
        for m in range(p):
            if n == m:
                assert abs(s_sum(field, n, m) - p * (p - 1) / 2) < 1e-9
            else:
                assert abs(s_sum(field, n, m) - s_sum_closed_form(field, n, m)) < 1e-9


def test_s_sum_closed_form_limits():
    with pytest.raises(ValueError):
        s_sum_closed_form(build_field(3, 2), 1, 0)
    with pytest.raises(ValueError):
        s_sum_closed_form(build_field(5), 2, 2)


@pytest.mark.parametrize("p,m", ODD_FIELDS)
def test_galois_phase_operator_forms_agree(p, m):
    field = build_field(p, m)
    for a in range(field.q):
        for k in (0, 1):
            spectral, entrywise = galois_phase_operator(field, a, k)
            assert np.max(np.abs(spectral.entries - entrywise.entries)) < 1e-9
    assert np.allclose(spectral.eigenvalues(), 2 * np.pi * np.arange(field.q) / field.q)


def test_galois_phase_operator_needs_odd_characteristic():
    with pytest.raises(EvenCharacteristic):
        galois_phase_operator(build_field(2, 2), 1)


@pytest.mark.parametrize("p,m", ODD_FIELDS)
def test_galois_expectation(p, m):
    field = build_field(p, m)
    for beta in (0.0, 0.7, 2.0):
        report = galois_expectation_report(field, 1, 0, beta)
        assert report.agreement < 1e-9
        assert report.imaginary_residue < 1e-9
        assert report.diagonal_subtotal == pytest.approx(galois_expectation_diagonal(field.q))
        assert galois_expectation(field, 1, 0, beta) == pytest.approx(
            galois_expectation_direct(field, 1, 0, beta)
        )


def test_diagonal_subtotal_closed_form():
    assert galois_expectation_diagonal(5) == pytest.approx(4 * math.pi / 5)


def test_ramanujan_kernel_is_coprime_projector():
    for q in range(2, 31):
        assert projector_deviation(q) < 1e-9
        assert np.allclose(ramanujan_kernel(q), coprime_projector(q).real)


def test_truncated_kernel_shape():
    for q in (6, 10, 12):
        size = totient(q) + 1
        kernel = ramanujan_kernel(q, truncate_to_totient=True)
        assert lock_index_count(q, truncate_to_totient=True) == size
        assert kernel.shape == (size, size)
        assert np.allclose(kernel, ramanujan_kernel(q)[:size, :size])
    assert lock_index_count(7, truncate_to_totient=True) == lock_index_count(7) == 7


def test_lock_operator():
    spectral, kernel = lock_operator(9)
    assert spectral.dim == kernel.dim == 9
    assert np.count_nonzero(np.abs(spectral.eigenvalues()) > 1e-9) == totient(9)
    _, truncated = lock_operator(9, truncate_to_totient=True)
    assert truncated.dim == totient(9) + 1


def test_lock_expectation_vanishes_at_zero_drift():
    for q in range(2, 40):
        assert abs(lock_expectation(q, 0.0)) < 1e-9


def test_lock_expectation_is_projector_expectation():
    for q in (4, 7, 12, 25):
        for beta in (0.4, 1.0, 2.5):
            state = pure_phase_state(q, beta).amplitudes
            projected = np.vdot(state, coprime_projector(q) @ state).real
            assert lock_expectation(q, beta) == pytest.approx(math.pi * projected)


def test_lock_spectral_and_variance():
    for q in (5, 8, 12):
        assert lock_expectation_spectral(q, 0.0) == pytest.approx(0.0, abs=1e-9)
        assert lock_expectation_spectral(q, 1.0) > 0
        assert lock_variance(q, 1.0) >= -1e-12


def test_mangoldt_reference():
    assert mangoldt_reference(8) == pytest.approx(math.pi / 3)
    assert mangoldt_reference(7) == pytest.approx(math.pi)
    assert mangoldt_reference(10) == 0.0


def test_lock_expectation_over_totient_range():
    value = lock_expectation(8, 1.0, truncate_to_totient=True)
    assert value == pytest.approx(math.pi * (20 - 8 * math.cos(4)) / 64)
    assert abs(value - mangoldt_reference(8)) < 0.25 * mangoldt_reference(8)
    assert lock_expectation(7, 1.0, truncate_to_totient=True) == pytest.approx(
        lock_expectation(7, 1.0)
    )


def test_lock_sweep_identities():
    sweep = lock_sweep(qmax=50, beta=1.0)
    assert [row.q for row in sweep.rows] == list(range(2, 51))
    assert sweep.beta0_below
    assert sweep.max_projector_deviation < 1e-9
    assert sweep.max_imaginary_residue < 1e-9
    assert sweep.identities_passed
    for row in sweep.rows:
        assert row.expectation_closed_form == pytest.approx(lock_expectation(row.q, 1.0))
        if row.is_prime_power:
            assert row.expectation_beta0 < row.expectation_truncated


def test_lock_sweep_mangoldt_profile():
    sweep = lock_sweep(qmax=50, beta=1.0)
    assert sweep.local_maxima == [
        3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25,
        27, 29, 31, 33, 35, 37, 41, 43, 45, 47, 49,
    ]
    composite = [q for q in sweep.local_maxima if not is_prime_power(q)]
    assert composite == [15, 21, 33, 35, 45]
    assert sweep.mangoldt_correlation == pytest.approx(0.6843, abs=1e-3)
    assert not sweep.maxima_at_prime_powers
    assert not sweep.mangoldt_profile_passed
    rows = {row.q: row for row in sweep.rows}
    assert rows[8].expectation_truncated == pytest.approx(1.238433, abs=1e-5)
    assert rows[13].expectation_truncated == pytest.approx(3.137850, abs=1e-5)
    assert rows[30].expectation_truncated == pytest.approx(0.074984, abs=1e-5)


def test_invalid_dimensions():
    with pytest.raises(InvalidDimension):
        pegg_barnett_operator(1)
    with pytest.raises(InvalidDimension):
        lock_sweep(qmax=1)


def test_hermitian_operator_validation():
    with pytest.raises(ValueError):
        HermitianOperator(dim=2, entries=np.array([[0, 1], [0, 0]], dtype=np.complex128))
