from .mub import (
    EvenCharacteristic as EvenCharacteristic,
    DimensionMismatch as DimensionMismatch,
    NonSquareDimension as NonSquareDimension,
    StateVector as StateVector,
    BasisSet as BasisSet,
    BasisVectorEntry as BasisVectorEntry,
    BasisSetExport as BasisSetExport,
    UnbiasednessReport as UnbiasednessReport,
    EntanglementReport as EntanglementReport,
    mub_odd as mub_odd,
    mub_even as mub_even,
    verify_unbiasedness as verify_unbiasedness,
    export_basis_set as export_basis_set,
    bell_fourier as bell_fourier,
    bell_galois as bell_galois,
    galois_bell_basis as galois_bell_basis,
    galois_bell_cross_deviation as galois_bell_cross_deviation,
    fourier_bell_gram_deviation as fourier_bell_gram_deviation,
    reduced_density as reduced_density,
    entanglement_check as entanglement_check,
)
from .phase import (
    NotHermitian as NotHermitian,
    InvalidDimension as InvalidDimension,
    HermitianOperator as HermitianOperator,
    PureState as PureState,
    PhaseSweepRow as PhaseSweepRow,
    PhaseSweep as PhaseSweep,
    GaloisExpectation as GaloisExpectation,
    fourier_vectors as fourier_vectors,
    pegg_barnett_operator as pegg_barnett_operator,
    pure_phase_state as pure_phase_state,
    s_sum as s_sum,
    s_sum_closed_form as s_sum_closed_form,
    galois_phase_operator as galois_phase_operator,
    lock_index_count as lock_index_count,
    ramanujan_kernel as ramanujan_kernel,
    lock_operator as lock_operator,
    coprime_projector as coprime_projector,
    projector_deviation as projector_deviation,
    lock_expectation as lock_expectation,
    lock_expectation_spectral as lock_expectation_spectral,
    lock_variance as lock_variance,
    mangoldt_reference as mangoldt_reference,
    MANGOLDT_CORRELATION as MANGOLDT_CORRELATION,
    lock_sweep as lock_sweep,
    galois_expectation as galois_expectation,
    galois_expectation_report as galois_expectation_report,
    galois_expectation_direct as galois_expectation_direct,
    galois_expectation_diagonal as galois_expectation_diagonal,
)
