from .codes import (
    UnsupportedLength as UnsupportedLength,
    NotADivisor as NotADivisor,
    CodeTooLarge as CodeTooLarge,
    FactorizationFailed as FactorizationFailed,
    WeightMethod as WeightMethod,
    LinearCode as LinearCode,
    DistanceReport as DistanceReport,
    PlaneAxiomsReport as PlaneAxiomsReport,
    poly_mul_fq as poly_mul_fq,
    poly_divmod_fq as poly_divmod_fq,
    xn1_factors as xn1_factors,
    xn1_divisors as xn1_divisors,
    cofactor as cofactor,
    cyclic_code as cyclic_code,
    hamming_code as hamming_code,
    cyclic_extension_matrix as cyclic_extension_matrix,
    is_codeword as is_codeword,
    weight_distribution as weight_distribution,
    min_distance as min_distance,
    shift_word as shift_word,
    codewords as codewords,
    plane_axioms_check as plane_axioms_check,
)
