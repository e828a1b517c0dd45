"""Frequency-truncated quasi-reversibility for the Cauchy problem of the 2-D Helmholtz equation."""

from .forward import (DiscreteResonanceError, GridSpec, extract_trace, generate_neumann_data,
                      helmholtz_residual, solve_dirichlet, solve_U)
from .marching import (CauchySlice, StabilizationParams, StepConstraintError, compose_solution,
                       march_once, solve_u_eps_direct, solve_V)
from .noise import NoiseModel, add_noise, check_grid_constraint, discrete_h1_norm, relative_error_E
from .spectral import (FrequencyPartition, ModeClass, SineBasis, apply_P, apply_P1, apply_Q,
                       build_partition, classify_mode, dst_forward, dst_inverse)

__version__ = "0.1.0"

__all__ = [
    "CauchySlice", "DiscreteResonanceError", "FrequencyPartition", "GridSpec", "ModeClass",
    "NoiseModel", "SineBasis", "StabilizationParams", "StepConstraintError", "add_noise",
    "apply_P", "apply_P1", "apply_Q", "build_partition", "check_grid_constraint",
    "classify_mode", "compose_solution", "discrete_h1_norm", "dst_forward", "dst_inverse",
    "extract_trace", "generate_neumann_data", "helmholtz_residual", "march_once",
    "relative_error_E", "solve_dirichlet", "solve_U", "solve_V", "solve_u_eps_direct",
]
