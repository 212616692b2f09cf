"""Cocks-Pinch pairing-friendly parameters: exact census and heuristic counts."""
from .arith import (
    PrimeStream,
    euler_phi,
    is_prime,
    kronecker,
    mod_inverse,
    mul_mod,
    multiplicative_order,
    pow_mod,
    primes_in_range,
    primitive_kth_roots,
    sqrt_mod,
)
from .cmcurves import CurveParams, build_curve, certify_order, check_order, embedding_degree, j_invariant
from .cockspinch import (
    CountResult,
    SearchParams,
    Triple,
    candidate_residues,
    count_triples,
    generate_one,
    stream_triples,
    triples_for_r,
    verify_triple,
)
from .heuristics import (
    BhConstants,
    Prediction,
    asymptotic_count,
    bateman_horn_density,
    bh_constants,
    integral_asymptotic_ratio,
    pf_field_ratios,
    predicted_count,
)
from .quadfield import (
    FieldInvariants,
    class_number,
    e_factor,
    field_invariants,
    fundamental_discriminant,
    l_value,
    l_value_series,
    roots_of_unity,
)

__version__ = "0.1.0"
