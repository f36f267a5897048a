import logging

import numpy as np
import pytest

from resbench.core.errors import ContractViolation, NonFiniteInputError, UndefinedMetricError
from resbench.metrics import RunErrors, aggregate, evaluate, nmse, nrmse, rnmse, samp, score
from resbench.models import TaskId


class TestErrorMeasures:
    def test_perfect_prediction(self):
        y = np.array([0.1, 0.4, 0.2, 0.3])
        assert rnmse(y, y) == 0.0
        assert nrmse(y, y) == 0.0
        assert samp(y, y) == 0.0

    def test_mean_predictor_has_unit_rnmse(self):
        target = np.array([0.1, 0.4, 0.2, 0.3])
        assert rnmse(np.full(4, target.mean()), target) == pytest.approx(1.0)

    def test_population_variance(self):
        assert rnmse(np.array([1.0, 1.0]), np.array([0.0, 2.0])) == pytest.approx(1.0)

    def test_nmse_is_squared_rnmse(self):
        rng = np.random.default_rng(0)
        target = rng.normal(size=50)
        out = target + rng.normal(scale=0.1, size=50)
        assert nmse(out, target) == pytest.approx(rnmse(out, target) ** 2)

    def test_nrmse_uses_target_range(self):
        target = np.array([0.0, 1.0, 2.0, 3.0])
        assert nrmse(target + 0.3, target) == pytest.approx(0.1)

    def test_samp_in_percent(self):
        assert samp(np.array([1.0, 2.0]), np.array([1.0, 1.0])) == pytest.approx(100.0 / 6.0)

    def test_normalizations_share_one_rmse(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            target = rng.normal(size=100)
            out = target + rng.normal(scale=0.3, size=100)
            rmse = np.sqrt(np.mean((out - target) ** 2))
            assert nrmse(out, target) * np.ptp(target) == pytest.approx(rmse, abs=1e-12)
            assert rnmse(out, target) * target.std() == pytest.approx(rmse, abs=1e-12)

    def test_common_offset_leaves_unnormalized_error(self):
        rng = np.random.default_rng(8)
        target = rng.uniform(0.0, 1.0, 80)
        out = target + rng.normal(scale=0.05, size=80)
        shifted = rnmse(out + 3.0, target + 3.0) * (target + 3.0).std()
        assert shifted == pytest.approx(rnmse(out, target) * target.std(), abs=1e-12)

    def test_hand_computed_values(self):
        assert rnmse(np.array([1.0, 2.0, 3.0]), np.array([1.0, 2.0, 5.0])) == pytest.approx(
            np.sqrt((4.0 / 3.0) / (78.0 / 27.0)))
        assert nrmse(np.array([0.0, 0.0]), np.array([0.0, 2.0])) == pytest.approx(np.sqrt(2.0) / 2.0)
        assert samp(np.array([1.0]), np.array([3.0])) == pytest.approx(50.0)

    def test_evaluate_returns_all_metrics(self):
        target = np.array([0.2, 0.4, 0.3])
        assert set(evaluate(target * 1.1, target)) == {"rnmse", "nrmse", "samp"}


class TestUndefinedMetrics:
    def test_constant_target(self):
        with pytest.raises(UndefinedMetricError):
            rnmse(np.array([1.0, 2.0]), np.array([1.0, 1.0]))
        with pytest.raises(UndefinedMetricError):
            nrmse(np.array([1.0, 2.0]), np.array([1.0, 1.0]))

    def test_zero_samp_denominator(self):
        with pytest.raises(UndefinedMetricError):
            samp(np.array([1.0, -1.0]), np.array([1.0, 1.0]))

    def test_negative_signals_leave_percent_range(self, caplog):
        with caplog.at_level(logging.WARNING):
            value = samp(np.array([-1.0, -2.0]), np.array([-1.5, -1.0]))
        assert value < 0.0
        assert "outside [0, 100]" in caplog.text

    def test_length_mismatch(self):
        with pytest.raises(ContractViolation):
            rnmse(np.ones(3), np.ones(4))

    def test_non_finite(self):
        with pytest.raises(NonFiniteInputError):
            rnmse(np.array([1.0, np.nan]), np.array([1.0, 2.0]))


def _run(key, train_rnmse, test_rnmse=0.5):
    values = {"rnmse": train_rnmse, "nrmse": 0.1, "samp": 5.0}
    return RunErrors(key=key, train=values, test={"rnmse": test_rnmse, "nrmse": 0.2, "samp": 6.0})


class TestAggregate:
    def test_mean_and_population_std(self):
        report = aggregate([_run((0, 0), 0.2), _run((1, 0), 0.4)], TaskId.NARMA10, "dl(N=10)")
        assert report.rnmse.train.mean == pytest.approx(0.3)
        assert report.rnmse.train.std == pytest.approx(0.1)
        assert report.samp.test.mean == pytest.approx(6.0)
        assert report.runs == 2 and report.excluded == 0

    def test_single_run_has_zero_std(self):
        report = aggregate([_run((0, 0), 0.2)], TaskId.HENON, "dl(N=2)")
        assert report.rnmse.train.std == 0.0

    def test_order_does_not_matter(self):
        runs = [_run((i, j), 0.1 * (i + 1) + 0.01 * j) for i in range(3) for j in range(2)]
        a = aggregate(runs, TaskId.NARMA10, "esn")
        b = aggregate(list(reversed(runs)), TaskId.NARMA10, "esn")
        assert a.model_dump() == b.model_dump()

    def test_undefined_values_are_excluded(self):
        runs = [_run((0, 0), 0.2), _run((1, 0), None)]
        report = aggregate(runs, TaskId.NARMA10, "esn")
        assert report.excluded == 1
        assert report.rnmse.train.n == 1
        assert report.rnmse.train.mean == pytest.approx(0.2)
        assert report.rnmse.test.n == 2

    def test_score_records_undefined_metrics(self):
        values, notes = score(np.array([1.0, 2.0]), np.array([1.0, 1.0]))
        assert values["rnmse"] is None and values["nrmse"] is None
        assert values["samp"] is not None
        assert len(notes) == 2
