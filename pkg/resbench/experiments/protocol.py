import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.errors import AllRunsFailedError, ContractViolation, ResbenchError
from ..metrics import ErrorReport, RunErrors, aggregate, score
from ..models import Architecture, TaskId, TrainedModel
from ..models.delay_line import dl_train
from ..models.esn import esn_init, esn_train
from ..models.narx import narx_train
from ..models.predict import predict
from ..numerics import derive_seed
from ..tasks import generate, make_dataset
from .runner import execute

logger = logging.getLogger(__name__)

DL_MAX_TAPS = 2000


class Protocol(BaseModel):
    """Series counts, lengths and seeds of one experiment."""
    model_config = ConfigDict(frozen=True)

    n_series: int = Field(default=10, ge=1)
    n_series_esn: int = Field(default=20, ge=1)
    series_len: int = Field(default=4000, ge=3)
    train_len: int = Field(default=2000, ge=2)
    esn_instances_per_series: int = Field(default=5, ge=1)
    washout: int = Field(default=0, ge=0)
    surface_runs: int = Field(default=10, ge=1)
    noise_std: float = Field(default=0.001, ge=0)
    base_seed: int = Field(default=42, ge=0)

    @model_validator(mode="after")
    def _lengths(self):
        if self.train_len >= self.series_len:
            raise ValueError(f"train_len ({self.train_len}) must be below series_len ({self.series_len})")
        if self.washout >= self.train_len:
            raise ValueError(f"washout ({self.washout}) must be below train_len ({self.train_len})")
        return self

    def series_count(self, arch: Architecture) -> int:
        return self.n_series_esn if arch is Architecture.ESN else self.n_series

    def instances(self, arch: Architecture) -> int:
        return self.esn_instances_per_series if arch is Architecture.ESN else 1

    def for_surface(self) -> "Protocol":
        """Surface cells average `surface_runs` single-instance runs."""
        return self.model_copy(update={"n_series_esn": self.surface_runs, "esn_instances_per_series": 1})

    @classmethod
    def paper(cls, **overrides) -> "Protocol":
        return cls(**overrides)

    @classmethod
    def desk(cls, **overrides) -> "Protocol":
        values = dict(n_series=5, n_series_esn=5, esn_instances_per_series=2, surface_runs=3)
        values.update(overrides)
        return cls(**values)


class Hyperparams(BaseModel):
    model_config = ConfigDict(frozen=True)

    size: int = Field(ge=1)
    sigma_w: Optional[float] = Field(default=None, gt=0)


class SeriesJob(BaseModel):
    """Train and test every instance of one architecture on one series."""
    model_config = ConfigDict(frozen=True)

    arch: Architecture
    hyper: Hyperparams
    task: TaskId
    series_index: int
    protocol: Protocol


def series_seed(base_seed: int, task: TaskId, series_index: int) -> int:
    # shared by all architectures so they see the same data
    return derive_seed(base_seed, task.value, "series", series_index)


def model_seed(base_seed: int, task: TaskId, arch: Architecture, series_index: int, instance: int) -> int:
    return derive_seed(base_seed, task.value, arch.value, series_index, instance)


def describe_model(arch: Architecture, hyper: Hyperparams) -> str:
    if arch is Architecture.ESN:
        return f"esn(N={hyper.size}, sigma_w={hyper.sigma_w:g})"
    return f"{arch.value}(N={hyper.size})"


def validate_hyperparams(arch: Architecture, hyper: Hyperparams) -> None:
    if arch is Architecture.ESN and hyper.sigma_w is None:
        raise ContractViolation("ESN runs need sigma_w")
    if arch is Architecture.DELAY_LINE and hyper.size > DL_MAX_TAPS:
        raise ContractViolation(f"delay line is capped at {DL_MAX_TAPS} taps, got {hyper.size}")


def train_model(arch: Architecture, hyper: Hyperparams, dataset, seed: int) -> TrainedModel:
    if arch is Architecture.DELAY_LINE:
        return dl_train(hyper.size, dataset)
    if arch is Architecture.NARX:
        return narx_train(hyper.size, dataset, seed)
    return esn_train(esn_init(hyper.size, hyper.sigma_w, seed), dataset)


def _failed_run(key, detail: str) -> RunErrors:
    empty = {"rnmse": None, "nrmse": None, "samp": None}
    return RunErrors(key=key, train=dict(empty), test=dict(empty), diagnostics=[detail], converged=False)


def run_series(job: SeriesJob) -> List[RunErrors]:
    p = job.protocol
    instances = p.instances(job.arch)
    keys = [(job.series_index, j) for j in range(instances)]
    try:
        pair = generate(job.task, p.series_len, series_seed(p.base_seed, job.task, job.series_index), p.noise_std)
        dataset = make_dataset(pair, p.train_len, p.washout)
    except ResbenchError as e:
        logger.warning(f"series {job.series_index} of {job.task.value} unusable: {e.detail}")
        return [_failed_run(key, e.detail) for key in keys]

    runs = []
    for key in keys:
        seed = model_seed(p.base_seed, job.task, job.arch, *key)
        try:
            model = train_model(job.arch, job.hyper, dataset, seed)
            output = predict(model, pair)
        except (ResbenchError, np.linalg.LinAlgError) as e:
            logger.warning(f"run {key} of {describe_model(job.arch, job.hyper)} failed: {e}")
            runs.append(_failed_run(key, str(e)))
            continue
        train, train_notes = score(output[p.washout:p.train_len], pair.y_hat[p.washout:p.train_len])
        test, test_notes = score(output[p.train_len:], pair.y_hat[p.train_len:])
        runs.append(RunErrors(
            key=key, train=train, test=test,
            diagnostics=[f"train {n}" for n in train_notes] + [f"test {n}" for n in test_notes],
            converged=model.training_meta.converged,
        ))
    return runs


def protocol_jobs(arch: Architecture, hyper: Hyperparams, task: TaskId, protocol: Protocol) -> List[SeriesJob]:
    validate_hyperparams(arch, hyper)
    return [
        SeriesJob(arch=arch, hyper=hyper, task=task, series_index=i, protocol=protocol)
        for i in range(protocol.series_count(arch))
    ]


def run_protocol(
        arch: Architecture,
        hyper: Hyperparams,
        task: TaskId,
        protocol: Protocol,
        workers: Optional[int] = 1,
) -> ErrorReport:
    """Train/test `arch` on every protocol series (and instance) and aggregate."""
    arch, task = Architecture(arch), TaskId(task)
    jobs = protocol_jobs(arch, hyper, task, protocol)
    logger.info(f"{describe_model(arch, hyper)} on {task.value}: {len(jobs)} series")
    runs = [run for batch in execute(run_series, jobs, workers) for run in batch]
    report = aggregate(runs, task, describe_model(arch, hyper))
    if report.rnmse.train.n == 0:
        raise AllRunsFailedError(f"every run of {report.model} on {task.value} failed")
    return report.model_copy(update={"architecture": arch, "size": hyper.size, "sigma_w": hyper.sigma_w})
