import logging
from typing import Dict

import numpy as np

from ..core.errors import ContractViolation, UndefinedMetricError
from ..numerics import check_finite

logger = logging.getLogger(__name__)

METRICS = ("rnmse", "nrmse", "samp")
# variance normalization used by rnmse / nmse
NORMALIZATION = "population"


def _pair(y, y_hat, min_len: int = 1):
    y = np.asarray(y, dtype=float).ravel()
    y_hat = np.asarray(y_hat, dtype=float).ravel()
    if y.shape != y_hat.shape:
        raise ContractViolation(f"output has {y.size} steps, target has {y_hat.size}")
    if y.size < min_len:
        raise ContractViolation(f"need at least {min_len} steps, got {y.size}")
    check_finite("output", y)
    check_finite("target", y_hat)
    return y, y_hat


def nmse(y, y_hat) -> float:
    y, y_hat = _pair(y, y_hat, min_len=2)
    var = float(np.var(y_hat))
    if var == 0.0:
        raise UndefinedMetricError("target has zero variance")
    return float(np.mean((y - y_hat) ** 2)) / var


def rnmse(y, y_hat) -> float:
    """sqrt(mean((y - y_hat)^2) / var(y_hat)), population variance."""
    return float(np.sqrt(nmse(y, y_hat)))


def nrmse(y, y_hat) -> float:
    """Root mean squared error over the range of the target."""
    y, y_hat = _pair(y, y_hat)
    width = float(np.max(y_hat) - np.min(y_hat))
    if width == 0.0:
        raise UndefinedMetricError("target has zero range")
    return float(np.sqrt(np.mean((y - y_hat) ** 2))) / width


def samp(y, y_hat) -> float:
    """100 * mean(|y - y_hat| / (y + y_hat)).

    The denominator is signed, so signals taking negative values can leave
    [0, 100]; such values are logged, not clamped.
    """
    y, y_hat = _pair(y, y_hat)
    denom = y + y_hat
    zero = np.flatnonzero(denom == 0.0)
    if zero.size:
        raise UndefinedMetricError(f"y + y_hat is zero at step {int(zero[0])}")
    value = 100.0 * float(np.mean(np.abs(y - y_hat) / denom))
    if not 0.0 <= value <= 100.0:
        logger.warning(f"SAMP = {value:.4f} lies outside [0, 100] (signed denominator)")
    return value


def evaluate(y, y_hat) -> Dict[str, float]:
    return {"rnmse": rnmse(y, y_hat), "nrmse": nrmse(y, y_hat), "samp": samp(y, y_hat)}
