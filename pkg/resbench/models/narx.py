import logging
from typing import Optional, Tuple

import numpy as np

from ..core.errors import ContractViolation
from ..numerics import LMOptions, RngStream, levenberg_marquardt
from . import (
    Architecture, Dataset, ModelSpec, NarxParams, SeriesPair, TrainedModel,
    TrainingMeta,
)
from .delay_line import tapped_inputs
from .readout import training_rnmse

logger = logging.getLogger(__name__)

INPUT_TAPS = 10


def narx_init(hidden: int, seed: int) -> NarxParams:
    """Weights drawn N(0, (0.5 / sqrt(fan_in))^2)."""
    if hidden < 1:
        raise ContractViolation(f"NARX needs at least one hidden node, got {hidden}")
    fan_in = INPUT_TAPS + 1
    stream = RngStream(seed=seed)
    w_hidden = stream.substream(0).normal((hidden, fan_in), 0.5 / np.sqrt(fan_in))
    w_out = stream.substream(1).normal(hidden + 1, 0.5 / np.sqrt(hidden + 1))
    return NarxParams(input_taps=INPUT_TAPS, hidden=hidden, w_hidden=w_hidden, w_out=w_out, seed=seed)


def pack(params: NarxParams) -> np.ndarray:
    return np.concatenate([params.w_hidden.ravel(), params.w_out])


def unpack(theta: np.ndarray, hidden: int) -> Tuple[np.ndarray, np.ndarray]:
    split = hidden * (INPUT_TAPS + 1)
    return theta[:split].reshape(hidden, INPUT_TAPS + 1), theta[split:]


def network_output(theta: np.ndarray, Z: np.ndarray, hidden: int) -> Tuple[np.ndarray, np.ndarray]:
    """Linear output over tanh hidden units; returns (output, hidden activations)."""
    w_hidden, w_out = unpack(theta, hidden)
    H = np.tanh(Z @ w_hidden.T)
    return H @ w_out[:-1] + w_out[-1], H


def network_jacobian(theta: np.ndarray, Z: np.ndarray, hidden: int) -> np.ndarray:
    """d output / d theta, rows are time steps, columns follow `pack` order."""
    _, w_out = unpack(theta, hidden)
    _, H = network_output(theta, Z, hidden)
    rows = Z.shape[0]
    slope = (1.0 - H ** 2) * w_out[:-1]
    d_hidden = (slope[:, :, None] * Z[:, None, :]).reshape(rows, -1)
    return np.hstack([d_hidden, H, np.ones((rows, 1))])


def standardize_columns(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Per-column mean and std over rows; constant columns keep scale 1."""
    shift = values.mean(axis=0)
    scale = values.std(axis=0)
    return shift, np.where(scale > 0, scale, 1.0)


def fold_scaling(
        w_hidden: np.ndarray, w_out: np.ndarray,
        in_shift: np.ndarray, in_scale: np.ndarray, out_shift: float, out_scale: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """Rewrite weights fitted on standardized taps/targets to act on raw values."""
    taps = w_hidden[:, :-1] / in_scale
    bias = w_hidden[:, -1] - taps @ in_shift
    out = np.append(w_out[:-1] * out_scale, w_out[-1] * out_scale + out_shift)
    return np.column_stack([taps, bias]), out


def narx_train(
        hidden: int, dataset: Dataset, seed: int, opts: Optional[LMOptions] = None
) -> TrainedModel:
    """Batch Levenberg-Marquardt over all training rows, fresh random start.

    The fit runs on standardized taps and targets; the scaling is folded
    back so the stored weights act on raw inputs.
    """
    params = narx_init(hidden, seed)
    Z = tapped_inputs(dataset.train.u, INPUT_TAPS)[dataset.washout:]
    targets = dataset.train_targets

    in_shift, in_scale = standardize_columns(Z[:, :-1])
    y_shift, y_scale = standardize_columns(targets[:, None])
    out_shift, out_scale = float(y_shift[0]), float(y_scale[0])
    Zs = np.column_stack([(Z[:, :-1] - in_shift) / in_scale, Z[:, -1]])
    scaled_targets = (targets - out_shift) / out_scale

    fit = levenberg_marquardt(
        lambda theta: network_output(theta, Zs, hidden)[0] - scaled_targets,
        lambda theta: network_jacobian(theta, Zs, hidden),
        pack(params),
        opts or LMOptions(),
        target=scaled_targets,
    )
    if not fit.converged:
        logger.warning(f"NARX(hidden={hidden}, seed={seed}) did not converge in {fit.iterations} iterations")

    w_hidden, w_out = fold_scaling(
        *unpack(np.asarray(fit.params), hidden), in_shift, in_scale, out_shift, out_scale,
    )
    model = TrainedModel(
        spec=ModelSpec(architecture=Architecture.NARX, size=hidden, seed=seed, washout=dataset.washout),
        weights={"w_hidden": w_hidden, "w_out": w_out},
        training_meta=TrainingMeta(iterations=fit.iterations, washout=dataset.washout, converged=fit.converged),
    )
    fitted = narx_forward(model, dataset.train)[dataset.washout:]
    residual = fitted - targets
    meta = model.training_meta.model_copy(update={
        "sse": float(residual @ residual), "train_rnmse": training_rnmse(fitted, targets),
    })
    return model.model_copy(update={"training_meta": meta})


def narx_params(model: TrainedModel) -> NarxParams:
    return NarxParams(
        input_taps=INPUT_TAPS, hidden=model.spec.size, w_hidden=model.weights["w_hidden"],
        w_out=model.weights["w_out"], seed=model.spec.seed,
    )


def narx_forward(model: TrainedModel, series: SeriesPair) -> np.ndarray:
    params = narx_params(model)
    Z = tapped_inputs(series.u, params.input_taps)
    return network_output(pack(params), Z, params.hidden)[0]
