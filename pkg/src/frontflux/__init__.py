"""Self-similar front solutions of the nonlinear heat equation with prescribed flux."""

from .alpha import AlphaSolveReport, bc_residual, paper_condition_n1, solve_alpha, solve_paper_n1
from .errors import FrontfluxError
from .pde import GridSolution, PdeConfig, front_position_numeric, mass_balance_error, pde_solve
from .profiles import Profile, ProfileSource, sample_profile
from .reconstruction import ComparisonReport, compare_profiles, front_position, reconstruct_u
from .series import FrontSeries, beta_closed, build_series, eval_df, eval_f, ode_residual
from .shooting import ShootConfig, integrate_from_front, shoot_alpha
from .similarity import (
    FluxConvention,
    PhysicalParams,
    SimilarityParams,
    cauchy_quadratic_profile,
    exact_alpha_m1,
    exact_profile_m1,
    map_parameters,
    printed_alpha_m1,
)

__version__ = "0.1.0"
