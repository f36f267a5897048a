import logging
from typing import Optional, Tuple

import numpy as np

from ..core.errors import UndefinedMetricError
from ..metrics import rnmse
from ..numerics import DesignMatrix, solve_least_squares

logger = logging.getLogger(__name__)


def fit_readout(X: DesignMatrix, targets: np.ndarray) -> Tuple[np.ndarray, float]:
    """Least-squares readout weights and their training SSE."""
    weights = solve_least_squares(X, targets)
    residual = X @ weights - targets
    return weights, float(residual @ residual)


def training_rnmse(prediction: np.ndarray, targets: np.ndarray) -> Optional[float]:
    try:
        return rnmse(prediction, targets)
    except UndefinedMetricError as e:
        logger.warning(f"training RNMSE undefined: {e.detail}")
        return None
