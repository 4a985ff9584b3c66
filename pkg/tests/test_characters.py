import math

import numpy as np
import pytest

from galois_quantum_toolkit.characters import (
    InvalidPolynomial,
    MultCharAtZero,
    TrivialConvention,
    additive_character,
    character_table_deviation,
    gamma_sum,
    gauss_sum_field,
    index_phase_character,
    multiplicative_character,
    report_gamma,
    report_gauss_field,
    report_gauss_ring,
    report_weil,
    unit_group_characters,
    unit_group_structure,
    weil_sum,
)
from galois_quantum_toolkit.fields import build_field, build_ring


def random_polynomial(rng, q, degree):
    coeffs = rng.integers(0, q, size=degree + 1).tolist()
    coeffs[-1] = int(rng.integers(1, q))
    return coeffs


@pytest.mark.parametrize("p,m", [(5, 1), (7, 1), (2, 3), (11, 1), (2, 4), (5, 2)])
def test_weil_bound_on_random_cubics(p, m):
    field = build_field(p, m)
    rng = np.random.default_rng(2024)
    for parameter in range(1, field.q):
        kappa = additive_character(field, parameter)
        for _ in range(10):
            report = report_weil(field, random_polynomial(rng, field.q, 3), kappa)
            assert report.bound_applicable
            assert report.passed
            assert report.magnitude <= 2 * math.sqrt(field.q) + 1e-9


@pytest.mark.parametrize("p,m", [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)])
def test_weil_bound_on_seeded_polynomials(p, m):
    field = build_field(p, m)
    degree = 4 if p == 3 else 3
    rng = np.random.default_rng(p * 100 + m)
    for _ in range(200):
        kappa = additive_character(field, int(rng.integers(1, field.q)))
        report = report_weil(field, random_polynomial(rng, field.q, degree), kappa)
        assert report.bound_applicable
        assert report.passed, report
        assert report.magnitude <= (degree - 1) * math.sqrt(field.q) + 1e-9


def test_weil_sum_of_linear_polynomial_vanishes():
    field = build_field(7)
    kappa = additive_character(field, 1)
    for a in range(1, 7):
        for b in range(7):
            assert abs(weil_sum(field, [b, a], kappa)) < 1e-12


def test_weil_bound_not_applicable_when_degree_shares_characteristic():
    field = build_field(3, 2)
    report = report_weil(field, [0, 0, 0, 1], additive_character(field, 1))
    assert not report.bound_applicable
    assert report.passed
    assert report.note is not None


def test_weil_needs_positive_degree():
    field = build_field(5)
    with pytest.raises(InvalidPolynomial):
        weil_sum(field, [3], additive_character(field, 1))


@pytest.mark.parametrize("p,m", [(3, 1), (5, 1), (7, 1), (2, 3), (3, 2), (13, 1)])
def test_gauss_sums_over_fields(p, m):
    field = build_field(p, m)
    for j in range(field.q - 1):
        psi = multiplicative_character(field, j)
        for c in range(field.q):
            report = report_gauss_field(field, psi, additive_character(field, c))
            assert report.passed, report


@pytest.mark.parametrize("p,m", [(3, 1), (5, 1), (7, 1), (2, 3), (3, 2), (13, 1)])
def test_nontrivial_gauss_sums_have_magnitude_sqrt_q(p, m):
    field = build_field(p, m)
    for j in range(1, field.q - 1):
        psi = multiplicative_character(field, j)
        for c in range(1, field.q):
            value = gauss_sum_field(field, psi, additive_character(field, c))
            assert abs(abs(value) - math.sqrt(field.q)) < 1e-9


def test_nontrivial_gauss_sum_magnitude():
    field = build_field(3, 2)
    value = gauss_sum_field(
        field, multiplicative_character(field, 2), additive_character(field, 1)
    )
    assert abs(abs(value) - 3.0) < 1e-12


def test_quadratic_gauss_sum_squared():
    # G(eta)^2 = eta(-1) q for the quadratic character of a prime field
    p = 13
    field = build_field(p)
    eta = multiplicative_character(field, (p - 1) // 2)
    value = gauss_sum_field(field, eta, additive_character(field, 1))
    assert abs(value**2 - p) < 1e-9


def test_additive_characters_are_orthogonal():
    field = build_field(2, 3)
    xs = np.arange(field.q)
    table = np.stack([additive_character(field, c).values(xs) for c in range(field.q)])
    gram = table @ table.conj().T / field.q
    assert np.max(np.abs(gram - np.eye(field.q))) < 1e-12


def test_multiplicative_character_at_zero():
    field = build_field(5)
    with pytest.raises(MultCharAtZero):
        multiplicative_character(field, 1)(0)


def test_index_phase_character():
    field = build_field(5)
    psi = index_phase_character(field, 2)
    assert abs(psi(3) - np.exp(2j * np.pi * 6 / 5)) < 1e-12
    assert index_phase_character(field, 5).is_trivial


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_gamma_sums(m):
    ring = build_ring(m)
    for y in range(ring.size):
        report = report_gamma(ring, y)
        assert report.passed, report


def test_gamma_sum_at_zero_and_on_doubled_teichmuller():
    ring = build_ring(3)
    assert abs(gamma_sum(ring, 0) - 8) < 1e-12
    for t in ring.teichmuller[1:]:
        assert abs(gamma_sum(ring, ring.add(t, t))) < 1e-12


@pytest.mark.parametrize("m", [1, 2, 3])
def test_unit_group_characters(m):
    ring = build_ring(m)
    structure = unit_group_structure(ring)
    units = len(ring.units())
    assert units == 4**m - 2**m
    assert structure.size == units

    characters = unit_group_characters(ring)
    assert len(characters) == units
    assert characters[0].is_trivial
    assert character_table_deviation(characters) < 1e-9


@pytest.mark.parametrize("m", [1, 2, 3])
def test_ring_gauss_sums(m):
    ring = build_ring(m)
    for psi in unit_group_characters(ring):
        for y in range(ring.size):
            report = report_gauss_ring(ring, psi, y)
            assert report.passed, report
            if ring.is_unit(y):
                assert report.magnitude <= 2**m + 1e-9


def test_ring_gauss_sum_trivial_character_conventions():
    ring = build_ring(2)
    units_only = unit_group_characters(ring, TrivialConvention.UNITS)[0]
    all_ones = unit_group_characters(ring, TrivialConvention.ALL_ONES)[0]
    assert report_gauss_ring(ring, units_only, 0).expected == 12
    assert report_gauss_ring(ring, all_ones, 0).expected == 16
    assert report_gauss_ring(ring, all_ones, 0).passed


def test_ring_gauss_bound_not_applied_to_non_units():
    ring = build_ring(2)
    psi = unit_group_characters(ring)[1]
    report = report_gauss_ring(ring, psi, 2)
    assert not report.bound_applicable
    assert report.passed
