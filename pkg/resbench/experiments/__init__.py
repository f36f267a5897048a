"""Experimental pipeline: protocol runs, error surfaces, sigma_w scaling, functional comparison."""
from .compare import EquivalenceCurve, EquivalencePoint, MatchStatus, functional_compare, match_size
from .curves import CurvePoint, SizeCurve, size_curve
from .powerlaw import HENON_SIGMA, PowerLawFit, fit_optimal_sigma_curve, sigma_for_size
from .protocol import (
    DL_MAX_TAPS, Hyperparams, Protocol, model_seed, run_protocol, series_seed, train_model,
)
from .runner import default_workers, execute
from .sweep import (
    DESK_N_GRID, PAPER_N_GRID, SIGMA_GRID, ErrorSurface, optimal_sigma, refine_grid,
    surface_fit_statistics, sweep_surface,
)

__all__ = [
    "EquivalenceCurve", "EquivalencePoint", "MatchStatus", "functional_compare", "match_size",
    "CurvePoint", "SizeCurve", "size_curve",
    "HENON_SIGMA", "PowerLawFit", "fit_optimal_sigma_curve", "sigma_for_size",
    "DL_MAX_TAPS", "Hyperparams", "Protocol", "model_seed", "run_protocol", "series_seed", "train_model",
    "default_workers", "execute",
    "DESK_N_GRID", "PAPER_N_GRID", "SIGMA_GRID", "ErrorSurface", "optimal_sigma", "refine_grid",
    "surface_fit_statistics", "sweep_surface",
]
