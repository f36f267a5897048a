import numpy as np
import scipy.linalg

from ..core.errors import ContractViolation
from ..numerics import DesignMatrix
from . import Architecture, Dataset, DelayLine, ModelSpec, SeriesPair, TrainedModel, TrainingMeta
from .readout import fit_readout, training_rnmse


def dl_init(taps: int) -> DelayLine:
    if taps < 1:
        raise ContractViolation(f"delay line needs at least one tap, got {taps}")
    return DelayLine(taps=taps, state=np.zeros(taps))


def dl_push(line: DelayLine, u_t: float) -> DelayLine:
    """Shift every tap one place and put `u_t` in tap 0."""
    state = np.empty_like(line.state)
    state[0] = u_t
    state[1:] = line.state[:-1]
    return line.model_copy(update={"state": state})


def tapped_inputs(u: np.ndarray, taps: int) -> DesignMatrix:
    """Rows [u_t, u_{t-1}, ..., u_{t-taps+1}, 1] with zero pre-series history."""
    if taps < 1:
        raise ContractViolation(f"delay line needs at least one tap, got {taps}")
    u = np.asarray(u, dtype=float)
    lagged = scipy.linalg.toeplitz(u, np.zeros(taps))
    return np.hstack([lagged, np.ones((u.size, 1))])


def dl_run(taps: int, series: SeriesPair, washout: int = 0) -> DesignMatrix:
    """Rows [state; 1] of a zero-initialized delay line pushed with each u_t."""
    if not 0 <= washout < len(series):
        raise ContractViolation(f"washout {washout} leaves no rows of a {len(series)}-step series")
    line = dl_init(taps)
    rows = np.ones((len(series), taps + 1))
    for t, u_t in enumerate(series.u):
        line = dl_push(line, u_t)
        rows[t, :-1] = line.state
    return rows[washout:]


def dl_train(taps: int, dataset: Dataset) -> TrainedModel:
    """Linear readout over the delay-line taps plus bias."""
    X = dl_run(taps, dataset.train, dataset.washout)
    readout, sse = fit_readout(X, dataset.train_targets)
    model = TrainedModel(
        spec=ModelSpec(architecture=Architecture.DELAY_LINE, size=taps, washout=dataset.washout),
        weights={"readout": readout},
        training_meta=TrainingMeta(sse=sse, washout=dataset.washout),
    )
    fitted = dl_forward(model, dataset.train)[dataset.washout:]
    meta = model.training_meta.model_copy(
        update={"train_rnmse": training_rnmse(fitted, dataset.train_targets)}
    )
    return model.model_copy(update={"training_meta": meta})


def dl_forward(model: TrainedModel, series: SeriesPair) -> np.ndarray:
    return tapped_inputs(series.u, model.spec.size) @ model.weights["readout"]
