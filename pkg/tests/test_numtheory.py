import math

import pytest
import sympy

from galois_quantum_toolkit.arithmetic import (
    NonInvertibleLead,
    NonPositiveArgument,
    arithmetic_profile,
    cyclotomic_poly,
    is_prime_power,
    mangoldt,
    mobius,
    poly_divmod,
    poly_mul,
    prime_power,
    ramanujan_sum,
    ramanujan_sum_direct,
    totient,
    x_power_minus_one,
)


def test_mobius_matches_sympy():
    for n in range(1, 200):
        assert mobius(n) == int(sympy.mobius(n))


def test_mobius_of_one_is_one():
    assert mobius(1) == 1


def test_totient_matches_sympy():
    for n in range(1, 200):
        assert totient(n) == int(sympy.totient(n))


def test_non_positive_arguments_rejected():
    with pytest.raises(NonPositiveArgument):
        mobius(0)
    with pytest.raises(NonPositiveArgument):
        totient(-3)
    with pytest.raises(NonPositiveArgument):
        ramanujan_sum(0, 1)


def test_prime_power_decomposition():
    assert prime_power(1) is None
    assert prime_power(2) == (2, 1)
    assert prime_power(9) == (3, 2)
    assert prime_power(64) == (2, 6)
    assert prime_power(12) is None
    assert [n for n in range(1, 17) if is_prime_power(n)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_mangoldt():
    assert mangoldt(1) == 0.0
    assert mangoldt(8) == pytest.approx(math.log(2))
    assert mangoldt(25) == pytest.approx(math.log(5))
    assert mangoldt(6) == 0.0


def test_ramanujan_closed_form_matches_direct_sum():
    for q in range(1, 65):
        for n in range(-2 * q, 2 * q + 1):
            direct = ramanujan_sum_direct(q, n)
            assert abs(direct - ramanujan_sum(q, n)) < 1e-9


def test_ramanujan_special_values():
    for q in range(1, 40):
        assert ramanujan_sum(q, 0) == totient(q)
        assert ramanujan_sum(q, 1) == mobius(q)


def test_cyclotomic_matches_sympy():
    x = sympy.Symbol("x")
    for n in range(1, 60):
        expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert cyclotomic_poly(n).coeffs == [int(c) for c in expected]


def test_cyclotomic_product_over_divisors():
    for n in range(1, 101):
        product = [1]
        for d in sympy.divisors(n):
            product = poly_mul(product, cyclotomic_poly(d).coeffs)
        assert product == x_power_minus_one(n)


def test_mobius_divisor_sum():
    for n in range(1, 1001):
        assert sum(mobius(d) for d in sympy.divisors(n)) == (1 if n == 1 else 0)


def test_integer_polynomial_division():
    a = poly_mul([1, 1], [-1, 0, 1])
    assert a == [-1, -1, 1, 1]
    assert poly_divmod(a, [-1, 0, 1]) == ([1, 1], [])
    assert poly_divmod([3, 0, 2, 1], [1, 1]) == ([-1, 1, 1], [4])
    assert poly_divmod([], [1, 1]) == ([], [])
    assert poly_mul([0, 0], [1, 2]) == []
    with pytest.raises(NonInvertibleLead):
        poly_divmod([1, 2, 3], [1, 2])


def test_cyclotomic_degree_is_totient():
    for n in range(1, 60):
        assert cyclotomic_poly(n).degree == totient(n)


def test_cyclotomic_rendering():
    assert cyclotomic_poly(1).coeffs == [-1, 1]
    assert str(cyclotomic_poly(6)) == "x^2-x+1"


def test_arithmetic_profile():
    profile = arithmetic_profile(12)
    assert profile.mobius == 0
    assert profile.totient == 4
    assert profile.mangoldt == 0.0
    assert not profile.is_prime_power

    profile = arithmetic_profile(7)
    assert profile.mobius == -1
    assert profile.is_prime_power
