"""Newtonian-limit fluid hierarchy: Euler-Poisson, slab relativistic Euler, curl-div, symmetrizer."""

from .curl_div import (
    ExpansionTier,
    InconsistentForcing,
    consistent_dE0_dt,
    curl_div_forcing,
    curl_div_solve,
    gradient_part_pairings,
    manufactured_leading_order,
    manufactured_tier,
    remainder_residuals,
    residual_identities,
    residual_norm,
    solve_b1,
)
from .ep import (
    EPState,
    Perturbation,
    dispersion_frequency,
    ep_state,
    ep_step,
    frozen_background,
    linearized_ep_step,
    measure_dispersion,
    perturbation,
)
from .finite_volume import CFLViolation, SolverError
from .grids import GaugeError, Grid1D, Grid3DPeriodic, gauss_field_1d, poisson_solve
from .macro import (
    AsymmetricMatrixError,
    MacroMatrixSet,
    assemble_macro_matrices,
    positive_definiteness_check,
    random_admissible_states,
    symmetrizer_by_quadrature,
)
from .rem import REMState, SlabData, loglog_slope, newtonian_limit_errors, rem_state, rem_step_1d

__all__ = [name for name in dir() if not name.startswith("_")]
