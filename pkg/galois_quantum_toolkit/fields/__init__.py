from .field import (
    NonPrimeP as NonPrimeP,
    InvalidModulus as InvalidModulus,
    NotIrreducible as NotIrreducible,
    NotPrimitive as NotPrimitive,
    FieldTooLarge as FieldTooLarge,
    ZeroInverse as ZeroInverse,
    MixedFields as MixedFields,
    LogOfZero as LogOfZero,
    TableTooLarge as TableTooLarge,
    DiscreteLogUnavailable as DiscreteLogUnavailable,
    FieldOp as FieldOp,
    FieldSpec as FieldSpec,
    FieldTableRow as FieldTableRow,
    FieldTable as FieldTable,
    GaloisField as GaloisField,
    FieldElement as FieldElement,
    is_primitive_polynomial as is_primitive_polynomial,
    default_modulus as default_modulus,
    build_field as build_field,
    field_op as field_op,
    trace as trace,
    discrete_log as discrete_log,
    field_table as field_table,
    evaluate_polynomial as evaluate_polynomial,
    parse_polynomial as parse_polynomial,
    to_galois as to_galois,
)
from .ring import (
    NotPrimitiveBase as NotPrimitiveBase,
    LiftVerificationFailed as LiftVerificationFailed,
    InvalidRingDegree as InvalidRingDegree,
    MixedRings as MixedRings,
    DecompositionFailed as DecompositionFailed,
    TraceNotScalar as TraceNotScalar,
    NotTeichmuller as NotTeichmuller,
    RingOp as RingOp,
    RingSpec as RingSpec,
    TwoAdicForm as TwoAdicForm,
    RingTableRow as RingTableRow,
    RingTable as RingTable,
    GaloisRing as GaloisRing,
    RingElement as RingElement,
    lift_basic_primitive as lift_basic_primitive,
    build_ring as build_ring,
    ring_op as ring_op,
    two_adic_decompose as two_adic_decompose,
    frobenius as frobenius,
    gtrace as gtrace,
    ring_table as ring_table,
    teichmuller_exponent as teichmuller_exponent,
)
