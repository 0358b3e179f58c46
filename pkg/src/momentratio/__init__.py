"""Exact tools for distributions whose normalized moments mu_k/k! take finitely many values."""

from .series import (
    Polynomial,
    TruncatedSeries,
    poly_derivative,
    poly_mul,
    series_exp,
    series_expand_rational,
    series_log,
    series_mul,
    to_rational,
)
from .family import (
    ConstraintViolation,
    MixtureParams,
    cf_eval,
    cumulants_to_moments,
    empirical_ratios,
    family_moments,
    family_ratio_sequence,
    family_weights,
    moments_to_cumulants,
    sample_mixture,
)
from .classify import (
    classify_ratios,
    detect_eventual_periodicity,
    distinct_values,
    hankel_psd,
    szego_reconstruct,
)
from .cumulant_lab import (
    check_complete_monotonicity,
    classify_cumulant_ratios,
    example_g_ratios,
    p3k_chain,
)

__version__ = "0.1.0"
