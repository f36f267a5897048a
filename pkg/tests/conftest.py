import os
import sys

_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, _ROOT)

import numpy as np
import pytest

from resbench.experiments import Protocol
from resbench.models import SeriesPair, TaskId


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("RESBENCH_SEED", "RESBENCH_WORKERS", "RESBENCH_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def tiny_protocol():
    """Short series and few runs; enough to exercise the pipeline."""
    return Protocol(
        n_series=2, n_series_esn=2, series_len=300, train_len=200,
        esn_instances_per_series=2, washout=20, surface_runs=2, base_seed=11,
    )


@pytest.fixture
def linear_pair():
    """Target that a two-tap delay line reproduces exactly."""
    u = np.random.default_rng(0).uniform(0.0, 0.5, 400)
    prev = np.concatenate([[0.0], u[:-1]])
    return SeriesPair(u=u, y_hat=2.0 * u - prev + 0.5, task_id=TaskId.NARMA10, seed=0)
