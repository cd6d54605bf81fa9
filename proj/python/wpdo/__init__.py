"""Weighted periodic and discrete pseudo-differential operator toolkit."""

from ._core import (  # noqa: F401
    WpdoError,
    WeightFunction,
    Symbol,
    weight,
    table_weight,
    verify_growth,
    verify_difference_estimate,
    symbol,
    builtin_torus_names,
    builtin_lattice_names,
    forward_transform,
    inverse_transform,
    l2_norm,
    spectral_derivative,
    apply,
    op_matrix,
    x_bandwidth,
    lattice_apply,
    duality_transfer,
    duality_identity_check,
    bessel_potential,
    compose,
    formal_adjoint,
    parametrix,
    parametrix_residual,
    inverse_cutoff_symbol,
    asymptotic_sum,
    seminorm_estimate,
    forward_difference,
    backward_difference,
    cutoff_psi_scaled,
    lattice_fourier,
    sobolev_operator_norm,
    distance_to_compacts_lower_bound,
    m_ellipticity,
    strong_m_ellipticity,
    cutoff_psi,
    check_S_membership,
    check_M_membership,
    gohberg_d,
    compactness_verdict,
    essential_spectrum_estimate,
    sobolev_norm,
    weighted_l2_lattice_norm,
    garding_constants,
    sharp_garding_constant,
    garding_lattice,
    lambda0_estimate,
    uniqueness_check,
    solve,
)

__all__ = [name for name in dir() if not name.startswith("_")]
