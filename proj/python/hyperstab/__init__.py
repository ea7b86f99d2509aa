"""Boundary feedback stabilization of 2D linear hyperbolic systems."""

from ._core import (
    HyperstabError,
    PotentialSpec,
    SaintVenantParams,
    SscSystem,
    SvControlGains,
    SystemSpec,
    advection_convergence,
    assemble_lmi,
    check_decay_bound,
    check_feasibility,
    classify_definiteness,
    construct_potential,
    diag_control_constant,
    diagonal_system,
    eigen_sym,
    fit_decay,
    load_ssc,
    parse_ssc,
    run_config,
    run_diagonal,
    run_saint_venant,
    saint_venant,
    ssc_to_symmetric,
    sv_feasibility_conditions,
    sv_max_decay_rate,
    validate_ssc,
)

__all__ = [name for name in dir() if not name.startswith("_")]
