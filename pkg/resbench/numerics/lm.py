import logging
from typing import Callable, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..core.errors import NonFiniteInputError
from .linalg import check_finite

logger = logging.getLogger(__name__)

ResidualFn = Callable[[np.ndarray], np.ndarray]
JacobianFn = Callable[[np.ndarray], np.ndarray]


class LMOptions(BaseModel):
    """Damping schedule of the Marquardt iteration.

    The step solves (J^T J + mu I) dp = -J^T r; mu is multiplied by
    `mu_increase` after a rejected step and divided by `mu_decrease`
    after an accepted one.
    """
    mu_init: float = Field(default=1e-3, gt=0)
    mu_increase: float = Field(default=10.0, gt=1)
    mu_decrease: float = Field(default=10.0, gt=1)
    mu_max: float = Field(default=1e10, gt=0)
    ftol: float = Field(default=1e-9, gt=0)
    gtol: float = Field(default=1e-10, ge=0)
    max_iter: int = Field(default=200, ge=1)


class FitResult(BaseModel):
    params: List[float]
    sse: float
    r_squared: float
    iterations: int
    converged: bool
    stderr: Optional[List[float]] = None
    ci95: Optional[List[float]] = None


def r_squared(sse: float, y: np.ndarray) -> float:
    """1 - sse / total sum of squares about the sample mean."""
    y = np.asarray(y, dtype=float)
    sst = float(np.sum((y - y.mean()) ** 2))
    if sst == 0.0:
        return 1.0 if sse <= 1e-24 else 0.0
    return 1.0 - sse / sst


def levenberg_marquardt(
        residual_fn: ResidualFn,
        jacobian_fn: JacobianFn,
        init: np.ndarray,
        opts: Optional[LMOptions] = None,
        target: Optional[np.ndarray] = None,
) -> FitResult:
    """Local minimizer of sum(residual_fn(p)**2).

    `target`, when given, is only used to report R^2 against it.
    Hitting `max_iter` returns the best point so far with converged=False.
    """
    opts = opts or LMOptions()
    p = np.array(init, dtype=float).ravel()
    r = np.asarray(residual_fn(p), dtype=float).ravel()
    check_finite("initial residual", r)
    sse = float(r @ r)
    mu = opts.mu_init
    converged = False
    iteration = 0

    J = np.asarray(jacobian_fn(p), dtype=float)
    if not np.all(np.isfinite(J)):
        raise NonFiniteInputError(f"Jacobian is non-finite at iteration 0 (params={p.tolist()[:8]})")

    while iteration < opts.max_iter:
        iteration += 1
        g = J.T @ r
        if sse == 0.0 or float(np.linalg.norm(g)) <= opts.gtol:
            converged = True
            break

        H = J.T @ J
        accepted = False
        while mu <= opts.mu_max:
            A = H + mu * np.eye(H.shape[0])
            try:
                step = np.linalg.solve(A, -g)
            except np.linalg.LinAlgError:
                mu *= opts.mu_increase
                continue
            p_new = p + step
            r_new = np.asarray(residual_fn(p_new), dtype=float).ravel()
            sse_new = float(r_new @ r_new) if np.all(np.isfinite(r_new)) else np.inf
            if sse_new < sse:
                accepted = True
                break
            mu *= opts.mu_increase

        if not accepted:
            # No damping level decreases the SSE: stationary to working precision.
            logger.debug(f"LM stalled at iteration {iteration} (mu={mu:.3g}, sse={sse:.6g})")
            converged = True
            break

        decrease = (sse - sse_new) / sse
        p, r, sse = p_new, r_new, sse_new
        mu = max(mu / opts.mu_decrease, 1e-20)
        logger.debug(f"LM iteration {iteration}: sse={sse:.6g} mu={mu:.3g}")

        J = np.asarray(jacobian_fn(p), dtype=float)
        if not np.all(np.isfinite(J)):
            raise NonFiniteInputError(f"Jacobian is non-finite at iteration {iteration}")
        if decrease < opts.ftol:
            converged = True
            break

    if not converged:
        logger.info(f"LM hit the iteration cap ({opts.max_iter}) with sse={sse:.6g}")

    r2 = r_squared(sse, target) if target is not None else float("nan")
    return FitResult(
        params=p.tolist(), sse=sse, r_squared=r2,
        iterations=iteration, converged=converged,
    )
