import numpy as np
import pytest

from resbench.core.errors import ContractViolation
from resbench.metrics import rnmse
from resbench.models import Architecture, EsnParams, EsnState, SeriesPair, TaskId
from resbench.models.delay_line import dl_init, dl_push, dl_run, dl_train, tapped_inputs
from resbench.models.esn import esn_init, esn_step, esn_train, esn_zero_state, harvest_states
from resbench.models.narx import (
    INPUT_TAPS, fold_scaling, narx_init, narx_train, network_jacobian, network_output, pack,
    standardize_columns, unpack,
)
from resbench.models.predict import predict
from resbench.numerics import LMOptions
from resbench.tasks import gen_narma, make_dataset


class TestDelayLine:
    def test_push_shifts_taps(self):
        line = dl_init(3)
        for value in (1.0, 2.0, 3.0, 4.0):
            line = dl_push(line, value)
        np.testing.assert_array_equal(line.state, [4.0, 3.0, 2.0])

    def test_tapped_inputs_rows(self):
        X = tapped_inputs(np.array([1.0, 2.0, 3.0]), 2)
        np.testing.assert_array_equal(X, [[1, 0, 1], [2, 1, 1], [3, 2, 1]])

    def test_run_drops_washout(self, linear_pair):
        assert dl_run(4, linear_pair, washout=10).shape == (len(linear_pair) - 10, 5)

    def test_fits_linear_target_exactly(self, linear_pair):
        model = dl_train(2, make_dataset(linear_pair, 300, washout=5))
        assert model.training_meta.train_rnmse == pytest.approx(0.0, abs=1e-8)
        np.testing.assert_allclose(model.weights["readout"], [2.0, -1.0, 0.5], atol=1e-8)
        np.testing.assert_allclose(predict(model, linear_pair), linear_pair.y_hat, atol=1e-8)

    def test_run_matches_hand_rows(self):
        pair = SeriesPair(u=[5.0, 7.0, 9.0], y_hat=[0.0, 0.0, 0.0], task_id=TaskId.NARMA10, seed=0)
        np.testing.assert_array_equal(dl_run(3, pair), [[5, 0, 0, 1], [7, 5, 0, 1], [9, 7, 5, 1]])

    def test_run_agrees_with_tapped_inputs(self, linear_pair):
        np.testing.assert_array_equal(dl_run(7, linear_pair), tapped_inputs(linear_pair.u, 7))

    def test_rejects_zero_taps(self, linear_pair):
        with pytest.raises(ContractViolation):
            dl_run(0, linear_pair)


class TestEsn:
    def test_init_is_seeded(self):
        a, b = esn_init(20, 0.1, 3), esn_init(20, 0.1, 3)
        np.testing.assert_array_equal(a.w_res, b.w_res)
        np.testing.assert_array_equal(a.w_in, b.w_in)
        assert a.w_res.shape == (20, 20) and a.w_in.shape == (20,)

    def test_weight_scale(self):
        params = esn_init(200, 0.05, 1)
        assert params.w_res.std() == pytest.approx(0.05, rel=0.05)

    @pytest.mark.parametrize("n, sigma", [(0, 0.1), (10, 0.0), (10, -0.1)])
    def test_rejects_bad_hyperparameters(self, n, sigma):
        with pytest.raises(ContractViolation):
            esn_init(n, sigma, 0)

    def test_states_see_current_input(self):
        params = esn_init(30, 0.1, 2)
        u = np.array([0.3, 0.1, 0.4])
        states = harvest_states(params, u)
        np.testing.assert_allclose(states[0], np.tanh(params.w_in * 0.3))
        stepped = esn_step(params, esn_step(params, esn_zero_state(params), 0.3), 0.1)
        np.testing.assert_allclose(states[1], stepped.x)

    def test_states_are_bounded(self):
        params = esn_init(100, 0.1, 5)
        states = harvest_states(params, np.random.default_rng(0).uniform(0, 0.5, 500))
        assert np.all(np.abs(states) < 1.0)

    def test_states_stay_inside_tanh_range(self):
        rng = np.random.default_rng(1)
        params = esn_init(100, 0.2, 9)
        state = esn_zero_state(params)
        for u_t in rng.normal(0.0, 1.0, 1000):
            state = esn_step(params, state, u_t)
            assert np.all(np.abs(state.x) < 1.0)

    def test_step_hand_values(self):
        single = EsnParams(n=1, sigma_w=1.0, w_in=np.array([1.0]), w_res=np.zeros((1, 1)), seed=0)
        assert esn_step(single, esn_zero_state(single), 0.5).x[0] == pytest.approx(0.462117, abs=1e-6)
        swap = EsnParams(n=2, sigma_w=1.0, w_in=np.zeros(2), w_res=np.array([[0.0, 1.0], [1.0, 0.0]]), seed=0)
        x = esn_step(swap, EsnState(x=np.array([0.3, -0.3])), 0.0).x
        np.testing.assert_allclose(x, [np.tanh(-0.3), np.tanh(0.3)])

    @pytest.mark.parametrize("k", [1e-3, 2.5, 1e3])
    def test_readout_is_linear_in_targets(self, k):
        pair = gen_narma(10, 400, 2)
        scaled = SeriesPair(u=pair.u, y_hat=k * pair.y_hat, task_id=pair.task_id, seed=pair.seed)
        params = esn_init(20, 0.2, 4)
        base = esn_train(params, make_dataset(pair, 300))
        model = esn_train(params, make_dataset(scaled, 300))
        expected = k * base.weights["w_out"]
        assert np.linalg.norm(model.weights["w_out"] - expected) <= 1e-10 * np.linalg.norm(expected)
        out, expected_out = predict(model, scaled), k * predict(base, pair)
        assert np.linalg.norm(out - expected_out) <= 1e-10 * np.linalg.norm(expected_out)

    def test_step_checks_state_size(self):
        params = esn_init(5, 0.1, 0)
        with pytest.raises(ContractViolation):
            esn_step(params, esn_zero_state(esn_init(4, 0.1, 0)), 0.1)

    def test_training_is_deterministic(self):
        pair = gen_narma(10, 400, 1)
        ds = make_dataset(pair, 300, washout=50)
        a = esn_train(esn_init(25, 0.1, 7), ds)
        b = esn_train(esn_init(25, 0.1, 7), ds)
        assert a.weights["w_out"].shape == (26,)
        np.testing.assert_array_equal(predict(a, pair), predict(b, pair))
        assert a.spec.architecture is Architecture.ESN


class TestNarx:
    def test_init_shapes(self):
        params = narx_init(4, 0)
        assert params.w_hidden.shape == (4, INPUT_TAPS + 1)
        assert params.w_out.shape == (5,)

    def test_jacobian_matches_finite_differences(self):
        hidden = 3
        theta = pack(narx_init(hidden, 1))
        Z = np.random.default_rng(2).uniform(0, 0.5, (20, INPUT_TAPS + 1))
        J = network_jacobian(theta, Z, hidden)
        eps = 1e-6
        numeric = np.empty_like(J)
        for k in range(theta.size):
            step = np.zeros_like(theta)
            step[k] = eps
            numeric[:, k] = (network_output(theta + step, Z, hidden)[0]
                             - network_output(theta - step, Z, hidden)[0]) / (2 * eps)
        np.testing.assert_allclose(J, numeric, rtol=1e-5, atol=1e-8)

    def test_fits_smooth_target(self):
        u = np.random.default_rng(3).uniform(0.0, 0.5, 300)
        pair = SeriesPair(u=u, y_hat=np.tanh(2.0 * u - 0.5), task_id=TaskId.NARMA10, seed=0)
        model = narx_train(3, make_dataset(pair, 200), seed=4, opts=LMOptions(max_iter=100))
        assert model.training_meta.train_rnmse < 0.05
        assert model.training_meta.iterations >= 1
        assert predict(model, pair).shape == (300,)

    def test_jacobian_at_random_weights(self):
        rng = np.random.default_rng(11)
        hidden = 4
        Z = np.column_stack([rng.uniform(0.0, 0.5, (30, INPUT_TAPS)), np.ones(30)])
        eps = 1e-6
        for _ in range(10):
            theta = rng.normal(0.0, 1.0, hidden * (INPUT_TAPS + 2) + 1)
            J = network_jacobian(theta, Z, hidden)
            numeric = np.empty_like(J)
            for k in range(theta.size):
                step = np.zeros_like(theta)
                step[k] = eps
                numeric[:, k] = (network_output(theta + step, Z, hidden)[0]
                                 - network_output(theta - step, Z, hidden)[0]) / (2 * eps)
            assert np.linalg.norm(J - numeric) <= 1e-4 * np.linalg.norm(numeric)

    def test_folded_scaling_reproduces_scaled_network(self):
        rng = np.random.default_rng(12)
        hidden = 3
        theta = pack(narx_init(hidden, 5))
        Z = np.column_stack([rng.uniform(0.0, 0.5, (40, INPUT_TAPS)), np.ones(40)])
        in_shift, in_scale = standardize_columns(Z[:, :-1])
        Zs = np.column_stack([(Z[:, :-1] - in_shift) / in_scale, Z[:, -1]])
        w_hidden, w_out = fold_scaling(*unpack(theta, hidden), in_shift, in_scale, 0.3, 0.1)
        raw = network_output(np.concatenate([w_hidden.ravel(), w_out]), Z, hidden)[0]
        np.testing.assert_allclose(raw, network_output(theta, Zs, hidden)[0] * 0.1 + 0.3, rtol=1e-12, atol=1e-12)

    def test_constant_target_is_learned_by_the_bias(self):
        u = np.random.default_rng(13).uniform(0.0, 0.5, 150)
        pair = SeriesPair(u=u, y_hat=np.full(150, 0.7), task_id=TaskId.NARMA10, seed=0)
        dataset = make_dataset(pair, 100)
        model = narx_train(2, dataset, seed=1, opts=LMOptions(max_iter=50))
        np.testing.assert_allclose(predict(model, dataset.train), 0.7, atol=1e-6)

    def test_rejects_empty_hidden_layer(self):
        with pytest.raises(ContractViolation):
            narx_init(0, 0)


@pytest.mark.parametrize("train", [
    lambda ds: dl_train(12, ds),
    lambda ds: esn_train(esn_init(40, 0.08, 3), ds),
    lambda ds: narx_train(3, ds, seed=2, opts=LMOptions(max_iter=30)),
], ids=["dl", "esn", "narx"])
def test_training_error_matches_prediction(train):
    pair = gen_narma(10, 500, 6)
    dataset = make_dataset(pair, 400, washout=25)
    model = train(dataset)
    recomputed = rnmse(predict(model, dataset.train)[dataset.washout:], dataset.train_targets)
    assert model.training_meta.train_rnmse == recomputed
