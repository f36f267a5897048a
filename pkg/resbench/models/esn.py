import numpy as np

from ..core.errors import ContractViolation
from ..numerics import RngStream
from . import (
    Architecture, Dataset, EsnParams, EsnState, ModelSpec, SeriesPair,
    TrainedModel, TrainingMeta,
)
from .readout import fit_readout, training_rnmse


def esn_init(n: int, sigma_w: float, seed: int) -> EsnParams:
    """Fully connected reservoir and input layer, all weights i.i.d. N(0, sigma_w^2).

    No spectral-radius rescaling is applied.
    """
    if n < 1:
        raise ContractViolation(f"reservoir size must be >= 1, got {n}")
    if not sigma_w > 0:
        raise ContractViolation(f"sigma_w must be positive, got {sigma_w}")
    rng = RngStream(seed=seed).generator()
    w_in = rng.normal(0.0, sigma_w, n)
    w_res = rng.normal(0.0, sigma_w, (n, n))
    return EsnParams(n=n, sigma_w=sigma_w, w_in=w_in, w_res=w_res, seed=seed)


def esn_zero_state(params: EsnParams) -> EsnState:
    return EsnState(x=np.zeros(params.n))


def esn_step(params: EsnParams, state: EsnState, u_t: float) -> EsnState:
    """x_j <- tanh(W_res_j . x + W_in_j u_t)"""
    if state.x.shape != (params.n,):
        raise ContractViolation(f"state has shape {state.x.shape}, reservoir has {params.n} nodes")
    return EsnState(x=np.tanh(params.w_res @ state.x + params.w_in * u_t))


def harvest_states(params: EsnParams, u: np.ndarray) -> np.ndarray:
    """Reservoir states driven from zero; row t has already seen u_t."""
    u = np.asarray(u, dtype=float)
    states = np.empty((u.size, params.n))
    state = esn_zero_state(params)
    for t, u_t in enumerate(u):
        state = esn_step(params, state, u_t)
        states[t] = state.x
    return states


def _design(states: np.ndarray) -> np.ndarray:
    # constant bias node, outside the recurrence
    return np.hstack([states, np.ones((states.shape[0], 1))])


def esn_params(model: TrainedModel) -> EsnParams:
    return EsnParams(
        n=model.spec.size, sigma_w=model.spec.sigma_w,
        w_in=model.weights["w_in"], w_res=model.weights["w_res"], seed=model.spec.seed,
    )


def esn_train(params: EsnParams, dataset: Dataset) -> TrainedModel:
    """Readout over [x(t); 1], N + 1 weights, by ordinary least squares."""
    X = _design(harvest_states(params, dataset.train.u))[dataset.washout:]
    w_out, sse = fit_readout(X, dataset.train_targets)
    model = TrainedModel(
        spec=ModelSpec(
            architecture=Architecture.ESN, size=params.n, sigma_w=params.sigma_w,
            seed=params.seed, washout=dataset.washout,
        ),
        weights={"w_in": params.w_in, "w_res": params.w_res, "w_out": w_out},
        training_meta=TrainingMeta(sse=sse, washout=dataset.washout),
    )
    fitted = esn_forward(model, dataset.train)[dataset.washout:]
    meta = model.training_meta.model_copy(
        update={"train_rnmse": training_rnmse(fitted, dataset.train_targets)}
    )
    return model.model_copy(update={"training_meta": meta})


def esn_forward(model: TrainedModel, series: SeriesPair) -> np.ndarray:
    states = harvest_states(esn_params(model), series.u)
    return _design(states) @ model.weights["w_out"]
