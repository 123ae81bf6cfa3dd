"""Randomized two-stage one-step ODE solver under noisy right-hand-side
information: trajectories, Monte-Carlo error estimation, convergence studies,
and stability-region computations."""

from ._randrk import (
    F_quadrature,
    F_value,
    Problem,
    __version__,
    compute_rbar,
    convergence_study,
    in_region,
    interval_endpoints,
    ln_moment2,
    lp_error,
    make_problem,
    mc_verify,
    ms_moment,
    phi_mid,
    phi_ms,
    reference,
    region_area,
    region_grid,
    solve,
    worst_case_error,
)

__all__ = [
    "F_quadrature",
    "F_value",
    "Problem",
    "__version__",
    "compute_rbar",
    "convergence_study",
    "in_region",
    "interval_endpoints",
    "ln_moment2",
    "lp_error",
    "make_problem",
    "mc_verify",
    "ms_moment",
    "phi_mid",
    "phi_ms",
    "reference",
    "region_area",
    "region_grid",
    "solve",
    "worst_case_error",
]
