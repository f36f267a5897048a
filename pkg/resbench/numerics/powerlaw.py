import logging
from typing import Sequence

import numpy as np
import scipy.stats

from ..core.errors import ContractViolation
from .linalg import check_finite, solve_least_squares
from .lm import FitResult, LMOptions, levenberg_marquardt, r_squared

logger = logging.getLogger(__name__)

MIN_POINTS = 4
N_STARTS = 5


def evaluate_power_law(params: Sequence[float], N: np.ndarray) -> np.ndarray:
    a, b, c = params
    return a * np.power(np.asarray(N, dtype=float), b) + c


def _jacobian(params: np.ndarray, N: np.ndarray) -> np.ndarray:
    a, b, _ = params
    Nb = np.power(N, b)
    return np.column_stack([Nb, a * Nb * np.log(N), np.ones_like(N)])


def _initial_guess(N: np.ndarray, sigma: np.ndarray, c0: float) -> np.ndarray:
    """(a0, b0) from a log-log line through |sigma - c0| against N."""
    diff = sigma - c0
    mask = np.abs(diff) > 1e-12 * max(1.0, float(np.max(np.abs(sigma))))
    if np.count_nonzero(mask) < 2:
        return np.array([0.0, -1.0, c0])
    design = np.column_stack([np.log(N[mask]), np.ones(np.count_nonzero(mask))])
    slope, intercept = solve_least_squares(design, np.log(np.abs(diff[mask])))
    sign = 1.0 if np.mean(diff[mask]) >= 0 else -1.0
    return np.array([sign * np.exp(intercept), slope, c0])


def fit_power_law(N_values: Sequence[float], sigma_values: Sequence[float]) -> FitResult:
    """Least-squares fit of a * N**b + c.

    Starts from the last sample as asymptote, jitters it over five
    multi-starts and keeps the lowest SSE. The result carries standard
    errors and 95% confidence half-widths for (a, b, c).
    """
    N = np.asarray(N_values, dtype=float)
    sigma = np.asarray(sigma_values, dtype=float)
    if N.ndim != 1 or N.shape != sigma.shape:
        raise ContractViolation("N_values and sigma_values must be 1-D and of equal length")
    if N.size < MIN_POINTS:
        raise ContractViolation(f"power-law fit needs at least {MIN_POINTS} points, got {N.size}")
    check_finite("N_values", N)
    check_finite("sigma_values", sigma)
    if np.any(N <= 0) or np.any(np.diff(N) <= 0):
        raise ContractViolation("N_values must be strictly positive and strictly increasing")

    spread = float(np.ptp(sigma))
    jitter = [0.0, -0.5, 0.5, -1.0, 1.0]

    best: FitResult = None
    for k in range(N_STARTS):
        c0 = float(sigma[-1]) + jitter[k] * spread
        init = _initial_guess(N, sigma, c0)
        result = levenberg_marquardt(
            lambda p: evaluate_power_law(p, N) - sigma,
            lambda p: _jacobian(p, N),
            init,
            LMOptions(),
        )
        logger.debug(f"power-law start {k}: c0={c0:.6g} sse={result.sse:.6g}")
        if best is None or result.sse < best.sse:
            best = result

    params = np.asarray(best.params)
    J = _jacobian(params, N)
    dof = N.size - params.size
    stderr = ci95 = None
    if dof > 0:
        cov = best.sse / dof * np.linalg.pinv(J.T @ J)
        stderr = np.sqrt(np.clip(np.diag(cov), 0.0, None))
        ci95 = stderr * scipy.stats.t.ppf(0.975, dof)

    if not best.converged:
        logger.warning("power-law fit did not converge; returning best-so-far parameters")
    return best.model_copy(update={
        "r_squared": r_squared(best.sse, sigma),
        "stderr": None if stderr is None else stderr.tolist(),
        "ci95": None if ci95 is None else ci95.tolist(),
    })
