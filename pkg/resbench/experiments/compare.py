import logging
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from ..core.errors import ContractViolation
from ..models import Architecture, TaskId
from .curves import SizeCurve

logger = logging.getLogger(__name__)

MATCH_TOLERANCE = 0.02


class MatchStatus(str, Enum):
    MATCHED = "matched"
    UNREACHABLE = "unreachable"    # candidate never gets this low
    BELOW_RANGE = "below_range"    # even the smallest candidate beats the reference


class EquivalencePoint(BaseModel):
    reference_size: int
    reference_error: float
    matched_size: Optional[float] = None
    matched_error: Optional[float] = None
    status: MatchStatus


class EquivalenceCurve(BaseModel):
    task_id: Optional[TaskId] = None
    reference: Optional[Architecture] = None
    candidate: Optional[Architecture] = None
    metric: str = "train_rnmse"
    tolerance: float = MATCH_TOLERANCE
    points: List[EquivalencePoint]


def _monotone(sizes: Sequence[float], errors: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    order = np.argsort(sizes)
    s = np.asarray(sizes, dtype=float)[order]
    e = np.minimum.accumulate(np.asarray(errors, dtype=float)[order])
    return s, e


def match_size(sizes: Sequence[float], errors: Sequence[float], target: float):
    """Smallest size where the running-minimum interpolated error reaches `target`."""
    s, e = _monotone(sizes, errors)
    if e[0] <= target:
        return float(s[0]), float(e[0]), MatchStatus.BELOW_RANGE if e[0] < target else MatchStatus.MATCHED
    hit = np.flatnonzero(e <= target)
    if hit.size == 0:
        return None, None, MatchStatus.UNREACHABLE
    k = int(hit[0])
    frac = (e[k - 1] - target) / (e[k - 1] - e[k])
    size = s[k - 1] + frac * (s[k] - s[k - 1])
    return float(size), float(np.interp(size, s, e)), MatchStatus.MATCHED


def functional_compare(
        reference: SizeCurve,
        candidate: SizeCurve,
) -> EquivalenceCurve:
    """Candidate size with the same training RNMSE as each reference size."""
    ref_sizes, ref_errors = reference.training_curve()
    cand_sizes, cand_errors = candidate.training_curve()
    if not ref_sizes or not cand_sizes:
        raise ContractViolation("both curves need at least one size with a training error")
    if reference.task_id is not candidate.task_id:
        raise ContractViolation(
            f"curves come from different tasks ({reference.task_id.value} vs {candidate.task_id.value})"
        )

    points = []
    for size, error in zip(ref_sizes, ref_errors):
        matched, matched_error, status = match_size(cand_sizes, cand_errors, error)
        if status is not MatchStatus.MATCHED:
            logger.warning(f"reference N={size} (RNMSE {error:.4g}): {status.value}")
        points.append(EquivalencePoint(
            reference_size=size, reference_error=error, matched_size=matched,
            matched_error=matched_error, status=status,
        ))
    return EquivalenceCurve(
        task_id=reference.task_id, reference=reference.architecture,
        candidate=candidate.architecture, points=points,
    )
