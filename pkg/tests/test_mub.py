import math

import numpy as np
import pytest

from galois_quantum_toolkit.fields import build_field, build_ring
from galois_quantum_toolkit.quantum import (
    BasisSet,
    DimensionMismatch,
    EvenCharacteristic,
    NonSquareDimension,
    StateVector,
    bell_fourier,
    bell_galois,
    entanglement_check,
    export_basis_set,
    fourier_bell_gram_deviation,
    galois_bell_basis,
    galois_bell_cross_deviation,
    mub_even,
    mub_odd,
    reduced_density,
    verify_unbiasedness,
)


@pytest.mark.parametrize("p,m", [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)])
def test_odd_characteristic_bases_are_unbiased(p, m):
    basis_set = mub_odd(build_field(p, m))
    assert basis_set.basis_count == basis_set.dim + 1
    assert basis_set.is_complete
    report = verify_unbiasedness(basis_set)
    assert report.passed, report
    assert report.max_abs_deviation < 1e-9


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_even_characteristic_bases_are_unbiased(m):
    basis_set = mub_even(build_ring(m))
    assert basis_set.dim == 2**m
    assert basis_set.is_complete
    assert verify_unbiasedness(basis_set).passed


@pytest.mark.parametrize("k", [1, 2, 4])
def test_phase_index_keeps_unbiasedness(k):
    assert verify_unbiasedness(mub_odd(build_field(5), k)).passed
    assert verify_unbiasedness(mub_even(build_ring(2), k)).passed


def test_unbiasedness_with_threads():
    report = verify_unbiasedness(mub_odd(build_field(7)), threads=4)
    assert report.passed
    assert report.basis_count == 8


def test_mub_odd_rejects_even_characteristic():
    with pytest.raises(EvenCharacteristic):
        mub_odd(build_field(2, 3))


def test_computational_basis_is_last():
    basis_set = mub_odd(build_field(3))
    assert basis_set.labels == [0, 1, 2, None]
    assert np.allclose(basis_set.bases[-1], np.eye(3))


def test_first_field_basis_is_fourier():
    # a = 0, k = 0: vector b is (omega^(b n))_n / sqrt(q)
    q = 5
    basis_set = mub_odd(build_field(q))
    n = np.arange(q)
    for b in range(q):
        expected = np.exp(2j * np.pi * b * n / q) / math.sqrt(q)
        assert np.allclose(basis_set.bases[0, b], expected)


def test_biased_set_fails():
    first = np.eye(3)
    second = np.eye(3)[[1, 0, 2]]
    report = verify_unbiasedness(BasisSet.from_bases([first, second]))
    assert not report.passed


def test_mismatched_bases_rejected():
    with pytest.raises(DimensionMismatch):
        BasisSet.from_bases([np.eye(2), np.eye(3)])


def test_export_basis_set():
    export = export_basis_set(mub_even(build_ring(1)))
    assert export.dim == 2
    assert len(export.vectors) == 3 * 2
    assert export.vectors[-1].a is None
    data = export.model_dump(mode="json")
    assert data["vectors"][0]["amplitudes"][0] == pytest.approx([1 / math.sqrt(2), 0.0])


def test_fourier_bell_states_are_orthonormal_and_entangled():
    for q in (2, 3, 4, 5):
        assert fourier_bell_gram_deviation(q) < 1e-12
        for h in range(q):
            for k in range(q):
                assert entanglement_check(bell_fourier(q, h, k)).passed


def test_galois_bell_bases():
    for p, m in [(3, 1), (5, 1), (3, 2)]:
        field = build_field(p, m)
        basis = galois_bell_basis(field, 1, 0)
        gram = basis.conj() @ basis.T
        assert np.max(np.abs(gram - np.eye(field.q))) < 1e-12
        for h in range(field.q):
            assert galois_bell_cross_deviation(field, h) < 1e-9
            assert entanglement_check(bell_galois(field, 2, h, 1)).passed


def test_bell_galois_rejects_even_characteristic():
    with pytest.raises(EvenCharacteristic):
        bell_galois(build_field(2, 2), 1, 0, 0)


def test_product_state_is_not_maximally_entangled():
    amplitudes = np.zeros(9, dtype=np.complex128)
    amplitudes[0] = 1.0
    report = entanglement_check(StateVector.from_amplitudes(amplitudes))
    assert not report.passed
    assert report.max_deviation == pytest.approx(2 / 3)


def test_reduced_density_needs_square_dimension():
    with pytest.raises(NonSquareDimension):
        reduced_density(StateVector.from_amplitudes([1.0, 0.0, 0.0]))


def test_state_vector_must_be_normalized():
    with pytest.raises(ValueError):
        StateVector.from_amplitudes([1.0, 1.0])
