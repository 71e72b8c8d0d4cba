"""Shamir-based homomorphic secret sharing and a context-hiding laboratory."""

from .ctxhide import (
    AdvantageReport,
    Distinguisher,
    HidingVerdict,
    estimate_advantage,
    exact_advantage,
    exact_output_distribution,
    pairing_witness_check,
    preimage_classes,
    run_experiment,
    theorem2_advantage,
    theorem2_distinguisher,
    verify_perfect_hiding,
)
from .equiv import (
    EquivalenceTransform,
    apply_to_point,
    apply_to_polynomial,
    compose,
    identity_transform,
    invert,
    transfer_distinguisher,
)
from .field import FieldElement, PrimeField
from .hss import (
    SchemeParams,
    ShareSet,
    dec,
    eval_all,
    eval_share,
    lagrange_coeffs,
    restrict_shares,
    share,
    share_with_randomness,
)
from .linalg import Matrix
from .poly import Domain, Polynomial, parse_polynomial

__version__ = "0.1.0"
