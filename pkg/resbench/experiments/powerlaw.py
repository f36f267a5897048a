import logging
from typing import List, Mapping, Optional

import numpy as np
from pydantic import BaseModel

from ..models import TaskId
from ..numerics import FitResult, evaluate_power_law, fit_power_law

logger = logging.getLogger(__name__)

# The Henon task is insensitive to sigma_w; experiments use a fixed value.
HENON_SIGMA = 0.02
MIN_SIGMA = 1e-4


class PowerLawFit(BaseModel):
    """sigma_w*(N) samples with their a * N**b + c fit."""
    task_id: Optional[TaskId] = None
    n_values: List[int]
    sigma_values: List[float]
    fit: FitResult

    @property
    def a(self) -> float:
        return self.fit.params[0]

    @property
    def b(self) -> float:
        return self.fit.params[1]

    @property
    def c(self) -> float:
        return self.fit.params[2]


def fit_optimal_sigma_curve(samples: Mapping[int, float], task: Optional[TaskId] = None) -> PowerLawFit:
    ns = sorted(samples)
    sigmas = [samples[n] for n in ns]
    fit = fit_power_law(ns, sigmas)
    label = task.value if task is not None else "sigma*"
    logger.info(
        f"{label}: a={fit.params[0]:.4g} b={fit.params[1]:.4g} c={fit.params[2]:.4g} "
        f"SSE={fit.sse:.4g} R2={fit.r_squared:.4f}"
    )
    if task is TaskId.HENON:
        logger.info(f"henon fit is informational; runs use sigma_w={HENON_SIGMA}")
    return PowerLawFit(task_id=task, n_values=ns, sigma_values=sigmas, fit=fit)


def sigma_for_size(fit: Optional[PowerLawFit], n: int, task: TaskId, default: float = HENON_SIGMA) -> float:
    """sigma_w to use for a reservoir of `n` nodes; `default` when there is no fit."""
    if fit is None:
        return default
    if TaskId(task) is TaskId.HENON:
        return HENON_SIGMA
    value = float(evaluate_power_law(fit.fit.params, np.array([n]))[0])
    return max(value, MIN_SIGMA)
