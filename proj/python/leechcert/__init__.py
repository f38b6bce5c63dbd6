"""Exact-arithmetic certification of lattice packing bounds.

Every number returned is exact: rationals come back as fractions.Fraction.
"""

from ._leechcert import (
    CertificationFailed,
    InputError,
    ResourceLimit,
    adjugate_abs_sum,
    alpha_chain,
    alpha_exact_lp,
    gram,
    intersection_numbers,
    kissing_bound,
    minimal_vector_count,
    minor_abs_sum,
    moment_inverse_norm,
    perfection_rank,
    run_pipeline,
    sigma,
    solve_lp,
    theta,
    verify_certificate,
)

__all__ = [
    "CertificationFailed",
    "InputError",
    "ResourceLimit",
    "adjugate_abs_sum",
    "alpha_chain",
    "alpha_exact_lp",
    "gram",
    "intersection_numbers",
    "kissing_bound",
    "minimal_vector_count",
    "minor_abs_sum",
    "moment_inverse_norm",
    "perfection_rank",
    "run_pipeline",
    "sigma",
    "solve_lp",
    "theta",
    "verify_certificate",
]
