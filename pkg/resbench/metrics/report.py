import logging
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from ..core.errors import NumericalError
from ..models import Architecture, TaskId
from ..numerics import describe
from .errors import METRICS, NORMALIZATION, nrmse, rnmse, samp

logger = logging.getLogger(__name__)

_METRIC_FNS = {"rnmse": rnmse, "nrmse": nrmse, "samp": samp}
SPLITS = ("train", "test")


class MeanStd(BaseModel):
    mean: Optional[float] = None
    std: Optional[float] = None
    n: int = 0


class SplitStats(BaseModel):
    train: MeanStd = Field(default_factory=MeanStd)
    test: MeanStd = Field(default_factory=MeanStd)


class RunErrors(BaseModel):
    """Metric values of one trained model on one series.

    A value is None when the metric was undefined for that run.
    """
    key: Tuple[int, int]
    train: Dict[str, Optional[float]]
    test: Dict[str, Optional[float]]
    diagnostics: List[str] = Field(default_factory=list)
    converged: bool = True

    @property
    def failed(self) -> bool:
        return any(v is None for split in (self.train, self.test) for v in split.values())


class ErrorReport(BaseModel):
    task_id: TaskId
    model: str
    architecture: Optional[Architecture] = None
    size: Optional[int] = None
    sigma_w: Optional[float] = None
    runs: int
    excluded: int = 0
    rnmse: SplitStats = Field(default_factory=SplitStats)
    nrmse: SplitStats = Field(default_factory=SplitStats)
    samp: SplitStats = Field(default_factory=SplitStats)
    normalization: str = NORMALIZATION
    samp_unit: str = "percent"
    diagnostics: List[str] = Field(default_factory=list)

    def stats(self, metric: str, split: str) -> MeanStd:
        return getattr(getattr(self, metric), split)


def score(y, y_hat) -> Tuple[Dict[str, Optional[float]], List[str]]:
    """All three metrics; undefined ones become None with a diagnostic."""
    values: Dict[str, Optional[float]] = {}
    notes: List[str] = []
    for name in METRICS:
        try:
            values[name] = _METRIC_FNS[name](y, y_hat)
        except NumericalError as e:
            values[name] = None
            notes.append(f"{name}: {e.detail}")
    return values, notes


def aggregate(per_run_errors: Sequence[RunErrors], task_id: TaskId, model: str) -> ErrorReport:
    """Mean and population std per metric and split.

    Runs are reduced in key order, so the result does not depend on the
    order they were produced in. Undefined values are left out of their
    own mean; `excluded` counts runs with at least one such value.
    """
    ordered = sorted(per_run_errors, key=lambda r: r.key)
    report = ErrorReport(task_id=task_id, model=model, runs=len(ordered))
    for run in ordered:
        for note in run.diagnostics:
            report.diagnostics.append(f"run {run.key}: {note}")
    report.excluded = sum(1 for run in ordered if run.failed)
    if report.excluded:
        logger.warning(f"{model} on {task_id.value}: {report.excluded}/{len(ordered)} runs had undefined metrics")

    for metric in METRICS:
        for split in SPLITS:
            values = [getattr(run, split)[metric] for run in ordered]
            values = [v for v in values if v is not None]
            target = report.stats(metric, split)
            target.n = len(values)
            if values:
                stats = describe(values)
                target.mean, target.std = stats.mean, stats.std
    return report
