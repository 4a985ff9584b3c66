from .polynomials import (
    NonInvertibleLead as NonInvertibleLead,
    trim as trim,
    poly_mul as poly_mul,
    poly_divmod as poly_divmod,
    poly_mod as poly_mod,
    poly_powmod as poly_powmod,
    x_power_minus_one as x_power_minus_one,
)
from .numtheory import (
    NonPositiveArgument as NonPositiveArgument,
    IntPolynomial as IntPolynomial,
    ArithmeticProfile as ArithmeticProfile,
    mobius as mobius,
    totient as totient,
    mangoldt as mangoldt,
    prime_power as prime_power,
    is_prime_power as is_prime_power,
    ramanujan_sum as ramanujan_sum,
    ramanujan_sum_direct as ramanujan_sum_direct,
    cyclotomic_poly as cyclotomic_poly,
    arithmetic_profile as arithmetic_profile,
)
