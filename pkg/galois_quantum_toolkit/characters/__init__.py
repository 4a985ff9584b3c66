from .characters import (
    MultCharAtZero as MultCharAtZero,
    GroupDecompositionFailed as GroupDecompositionFailed,
    InvalidPolynomial as InvalidPolynomial,
    CharacterKind as CharacterKind,
    TrivialConvention as TrivialConvention,
    UnitGroupStructure as UnitGroupStructure,
    CharacterSpec as CharacterSpec,
    SumReport as SumReport,
    additive_character as additive_character,
    multiplicative_character as multiplicative_character,
    index_phase_character as index_phase_character,
    evaluate_character as evaluate_character,
    weil_sum as weil_sum,
    weil_bound as weil_bound,
    gauss_sum_field as gauss_sum_field,
    expected_gauss_field as expected_gauss_field,
    gamma_sum as gamma_sum,
    gamma_expected_magnitude as gamma_expected_magnitude,
    unit_group_structure as unit_group_structure,
    unit_group_characters as unit_group_characters,
    gauss_sum_ring as gauss_sum_ring,
    character_table_deviation as character_table_deviation,
    report_weil as report_weil,
    report_gauss_field as report_gauss_field,
    report_gamma as report_gamma,
    report_gauss_ring as report_gauss_ring,
)
