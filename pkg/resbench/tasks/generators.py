import logging
from typing import Callable

import numpy as np

from ..core.errors import ContractViolation, SeriesDivergenceError
from ..models import SeriesPair, TaskId
from ..numerics import RngStream

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 100
HENON_BOUND = 10.0
NARMA_BOUND = 1e3

# alpha, beta, gamma, delta
NARMA_COEFFS = (0.3, 0.05, 1.5, 0.1)
NARMA_ORDERS = {TaskId.NARMA10: 10, TaskId.NARMA20: 20}


def henon_trajectory(T: int, noise: np.ndarray) -> np.ndarray:
    """y_1 .. y_T of y_t = 1 - 1.4 y_{t-1}^2 + 0.3 y_{t-2} + z_t from y_0 = y_-1 = 0."""
    y = np.zeros(T + 2)
    for t in range(2, T + 2):
        y[t] = 1.0 - 1.4 * y[t - 1] ** 2 + 0.3 * y[t - 2] + noise[t - 2]
        if abs(y[t]) > HENON_BOUND:
            return y[2:t + 1]
    return y[2:]


def _with_retries(seed: int, task: TaskId, attempt_fn: Callable[[RngStream], SeriesPair]) -> SeriesPair:
    # stream 0 is the nominal draw, streams 1.. are retry sub-seeds
    for attempt in range(MAX_ATTEMPTS):
        pair = attempt_fn(RngStream(seed=seed, stream_id=attempt))
        if pair is not None:
            if attempt:
                logger.warning(f"{task.value} series for seed {seed} diverged; accepted retry {attempt}")
            return pair
    raise SeriesDivergenceError(f"{task.value} series for seed {seed} diverged in all {MAX_ATTEMPTS} attempts")


def gen_henon(T: int, seed: int, noise_std: float = 0.001) -> SeriesPair:
    """Noisy Henon map, presented as one-step-ahead prediction (u_t = y_t, y_hat_t = y_{t+1})."""
    if T < 3:
        raise ContractViolation(f"Henon series needs T >= 3, got {T}")
    if noise_std < 0:
        raise ContractViolation("noise_std must be nonnegative")

    def attempt(stream: RngStream):
        noise = stream.normal(T + 1, noise_std) if noise_std > 0 else np.zeros(T + 1)
        y = henon_trajectory(T + 1, noise)
        if y.size < T + 1:
            return None
        return SeriesPair(u=y[:-1], y_hat=y[1:], task_id=TaskId.HENON, seed=seed)

    return _with_retries(seed, TaskId.HENON, attempt)


def narma_response(u: np.ndarray, order: int) -> np.ndarray:
    """y_1 .. y_{T+1} of the NARMA recurrence driven by u_1 .. u_T.

    Inputs and outputs before t = 1 are zero. Order 20 wraps every step after
    the first in tanh, so y_1 = delta for both orders. Stops early (shorter result) once |y| exceeds the divergence bound.
    """
    alpha, beta, gamma, delta = NARMA_COEFFS
    u = np.asarray(u, dtype=float)
    T = u.size
    # index k holds time k - order + 1
    u_hist = np.concatenate([np.zeros(order), u])
    y_hist = np.zeros(order + T + 1)
    saturate = order == 20
    for t in range(1, T + 2):
        k = t + order - 1
        window = y_hist[k - order:k]
        value = (
                alpha * y_hist[k - 1]
                + beta * y_hist[k - 1] * window.sum()
                + gamma * u_hist[k - order] * u_hist[k - 1]
                + delta
        )
        y_hist[k] = np.tanh(value) if saturate and t > 1 else value
        if abs(y_hist[k]) > NARMA_BOUND or not np.isfinite(y_hist[k]):
            return y_hist[order:k + 1]
    return y_hist[order:]


def gen_narma(order: int, T: int, seed: int) -> SeriesPair:
    """NARMA10 / NARMA20 with inputs drawn from Uniform[0, 0.5].

    The pair is aligned one step ahead: row t holds u_t and y_{t+1}, whose
    latest inputs are u_t and u_{t-order+1}.
    """
    task = {10: TaskId.NARMA10, 20: TaskId.NARMA20}.get(order)
    if task is None:
        raise ContractViolation(f"NARMA order must be 10 or 20, got {order}")
    if T < order + 1:
        raise ContractViolation(f"NARMA{order} needs T >= {order + 1}, got {T}")

    def attempt(stream: RngStream):
        u = stream.uniform(0.0, 0.5, T)
        y = narma_response(u, order)
        if y.size < T + 1:
            return None
        return SeriesPair(u=u, y_hat=y[1:], task_id=task, seed=seed)

    return _with_retries(seed, task, attempt)


def generate(task: TaskId, T: int, seed: int, noise_std: float = 0.001) -> SeriesPair:
    task = TaskId(task)
    if task is TaskId.HENON:
        return gen_henon(T, seed, noise_std)
    return gen_narma(NARMA_ORDERS[task], T, seed)
