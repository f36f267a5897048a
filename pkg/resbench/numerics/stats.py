from typing import NamedTuple, Sequence

import numpy as np

from ..core.errors import ContractViolation


class Description(NamedTuple):
    mean: float
    std: float
    min: float
    max: float


def describe(samples: Sequence[float]) -> Description:
    """Population statistics (variance divided by the sample count)."""
    values = np.asarray(samples, dtype=float).ravel()
    if values.size == 0:
        raise ContractViolation("describe() needs at least one sample")
    return Description(
        mean=float(values.mean()),
        std=float(values.std()),
        min=float(values.min()),
        max=float(values.max()),
    )
