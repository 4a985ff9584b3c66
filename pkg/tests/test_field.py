import numpy as np
import pytest

from galois_quantum_toolkit.fields import (
    DiscreteLogUnavailable,
    FieldOp,
    FieldTooLarge,
    InvalidModulus,
    LogOfZero,
    MixedFields,
    NonPrimeP,
    NotIrreducible,
    NotPrimitive,
    ZeroInverse,
    build_field,
    default_modulus,
    discrete_log,
    evaluate_polynomial,
    field_op,
    field_table,
    is_primitive_polynomial,
    parse_polynomial,
    to_galois,
    trace,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)]


def exhaustive_elements(field):
    return list(range(field.q))


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_arithmetic_matches_galois(p, m):
    field = build_field(p, m)
    GF = to_galois(field)
    elements = np.arange(field.q)
    a, b = np.meshgrid(elements, elements, indexing="ij")

    expected_sum = (GF(a) + GF(b)).view(np.ndarray)
    expected_product = (GF(a) * GF(b)).view(np.ndarray)
    assert np.array_equal(field.add_array(a, b), expected_sum)
    assert np.array_equal(field.mul_array(a, b), expected_product)
    assert np.array_equal(field.neg_array(elements), (-GF(elements)).view(np.ndarray))


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_inverse_and_log(p, m):
    field = build_field(p, m)
    for a in range(1, field.q):
        assert field.mul(a, field.inv(a)) == 1
        assert field.exp(discrete_log(field, a)) == a


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_trace_is_additive_and_in_prime_field(p, m):
    field = build_field(p, m)
    for a in exhaustive_elements(field):
        assert 0 <= trace(field, a) < p
        for b in exhaustive_elements(field):
            assert trace(field, field.add(a, b)) == (trace(field, a) + trace(field, b)) % p


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_trace_matches_galois(p, m):
    field = build_field(p, m)
    GF = to_galois(field)
    elements = GF(np.arange(field.q))
    assert np.array_equal(field.trace_array(np.arange(field.q)), elements.field_trace().view(np.ndarray))


def test_trace_is_balanced():
    field = build_field(3, 2)
    counts = np.bincount(field.trace_array(np.arange(field.q)), minlength=3)
    assert counts.tolist() == [3, 3, 3]


def test_default_modulus_has_smallest_encoding():
    assert default_modulus(3, 2) == [2, 1, 1]
    assert default_modulus(2, 3) == [1, 1, 0, 1]
    assert default_modulus(2, 2) == [1, 1, 1]
    assert default_modulus(5, 1) == [2, 1]


def test_primitive_polynomial_check():
    assert is_primitive_polynomial([1, 1, 0, 1], 2)
    assert is_primitive_polynomial([1, 0, 1, 1], 2)
    # x^2 + 1 over F_3 is irreducible with a root of order 4
    assert not is_primitive_polynomial([1, 0, 1], 3)
    assert not is_primitive_polynomial([1, 0, 1], 2)


def test_alpha_generates_multiplicative_group():
    field = build_field(3, 2)
    powers = {field.exp(t) for t in range(field.q - 1)}
    assert powers == set(range(1, field.q))
    assert field.alpha.index == field.spec.primitive_element_index == 3


def test_field_table_f4():
    table = field_table(build_field(2, 2))
    assert [row.power for row in table.rows] == ["0", "1", "α", "α^2"]
    assert [row.index for row in table.rows] == [0, 1, 2, 3]
    assert [row.coefficients for row in table.rows] == ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]
    assert table.rows[0].exponent is None
    assert table.rows[3].polynomial == "1+α"


def test_element_operators():
    field = build_field(2, 3)
    alpha = field.alpha
    assert alpha**7 == field.one
    assert alpha * alpha.inverse() == 1
    assert (alpha + alpha) == field.zero
    assert alpha**3 == alpha + 1
    assert field_op(field, FieldOp.MUL, alpha, alpha) == alpha**2
    assert field_op(field, "pow", alpha, 8) == alpha


def test_evaluate_polynomial():
    field = build_field(5)
    # 1 + 2x + x^2 = (x + 1)^2
    values = evaluate_polynomial(field, [1, 2, 1])
    assert values.tolist() == [(x + 1) ** 2 % 5 for x in range(5)]


def test_explicit_modulus():
    field = build_field(2, 3, [1, 0, 1, 1])
    assert field.modulus == [1, 0, 1, 1]
    assert field.mul(field.alpha.index, field.exp(6)) == 1


def test_non_primitive_modulus_override():
    field = build_field(3, 2, [1, 0, 1], allow_non_primitive=True)
    assert not field.spec.is_primitive
    for a in range(1, field.q):
        assert field.mul(a, field.inv(a)) == 1
    with pytest.raises(DiscreteLogUnavailable):
        discrete_log(field, 2)


def test_construction_errors():
    with pytest.raises(NonPrimeP):
        build_field(4)
    with pytest.raises(NotIrreducible):
        build_field(2, 2, [1, 0, 1])
    with pytest.raises(NotPrimitive):
        build_field(3, 2, [1, 0, 1])
    with pytest.raises(InvalidModulus):
        build_field(2, 3, [1, 1, 1])
    with pytest.raises(FieldTooLarge):
        build_field(2, 21)


def test_arithmetic_errors():
    field = build_field(2, 3)
    with pytest.raises(ZeroInverse):
        field.inv(0)
    with pytest.raises(LogOfZero):
        discrete_log(field, 0)
    with pytest.raises(MixedFields):
        field.alpha + build_field(2, 2).alpha


def test_field_without_tables():
    field = build_field(2, 17)
    assert not field.has_tables
    rng = np.random.default_rng(7)
    for a in rng.integers(1, field.q, size=5).tolist():
        assert field.mul(a, field.inv(a)) == 1
        assert field.exp(discrete_log(field, a)) == a
        assert trace(field, a) in (0, 1)


def test_parse_polynomial():
    assert parse_polynomial("2,1,1", 3) == [2, 1, 1]
    with pytest.raises(InvalidModulus):
        parse_polynomial("1,3", 3)
