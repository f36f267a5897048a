"""Shared numerical kernels."""
from .linalg import DesignMatrix, check_finite, solve_least_squares
from .lm import FitResult, LMOptions, levenberg_marquardt, r_squared
from .powerlaw import evaluate_power_law, fit_power_law
from .rng import RngStream, derive_seed
from .stats import Description, describe

__all__ = [
    "DesignMatrix", "check_finite", "solve_least_squares",
    "FitResult", "LMOptions", "levenberg_marquardt", "r_squared",
    "evaluate_power_law", "fit_power_law",
    "RngStream", "derive_seed",
    "Description", "describe",
]
