import logging
from typing import List, Optional, Sequence

from pydantic import BaseModel

from ..metrics import MeanStd, aggregate
from ..models import Architecture, TaskId
from .powerlaw import HENON_SIGMA, PowerLawFit, sigma_for_size
from .protocol import Hyperparams, Protocol, describe_model, protocol_jobs, run_series
from .runner import execute

logger = logging.getLogger(__name__)


class CurvePoint(BaseModel):
    size: int
    sigma_w: Optional[float] = None
    train: MeanStd
    test: MeanStd
    runs: int
    excluded: int = 0


class SizeCurve(BaseModel):
    """Training and testing RNMSE of one architecture as a function of size."""
    task_id: TaskId
    architecture: Architecture
    points: List[CurvePoint]

    def training_curve(self):
        """(sizes, mean training RNMSE) over the points that have a value."""
        usable = [p for p in self.points if p.train.mean is not None]
        return [p.size for p in usable], [p.train.mean for p in usable]


def size_curve(
        arch: Architecture,
        task: TaskId,
        sizes: Sequence[int],
        protocol: Protocol,
        sigma_fit: Optional[PowerLawFit] = None,
        sigma_w: float = HENON_SIGMA,
        workers: Optional[int] = 1,
) -> SizeCurve:
    """run_protocol at each size; ESN sizes take sigma_w*(N) from `sigma_fit` when given."""
    arch, task = Architecture(arch), TaskId(task)
    hypers = []
    for n in sorted(set(int(s) for s in sizes)):
        sigma = sigma_for_size(sigma_fit, n, task, sigma_w) if arch is Architecture.ESN else None
        hypers.append(Hyperparams(size=n, sigma_w=sigma))

    jobs, bounds = [], []
    for hyper in hypers:
        batch = protocol_jobs(arch, hyper, task, protocol)
        bounds.append((len(jobs), len(jobs) + len(batch)))
        jobs.extend(batch)
    logger.info(f"{arch.value} curve on {task.value}: {len(hypers)} sizes, {len(jobs)} series jobs")
    results = execute(run_series, jobs, workers)

    points = []
    for hyper, (lo, hi) in zip(hypers, bounds):
        runs = [run for batch in results[lo:hi] for run in batch]
        report = aggregate(runs, task, describe_model(arch, hyper))
        points.append(CurvePoint(
            size=hyper.size, sigma_w=hyper.sigma_w, train=report.rnmse.train,
            test=report.rnmse.test, runs=report.runs, excluded=report.excluded,
        ))
    return SizeCurve(task_id=task, architecture=arch, points=points)
