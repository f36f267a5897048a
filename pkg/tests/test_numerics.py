import numpy as np
import pytest

from resbench.core.errors import ContractViolation, NonFiniteInputError
from resbench.numerics import (
    LMOptions, RngStream, derive_seed, describe, evaluate_power_law, fit_power_law,
    levenberg_marquardt, r_squared, solve_least_squares,
)


class TestSeeds:
    def test_derive_seed_is_stable(self):
        assert derive_seed(42, "narma10", "series", 3) == derive_seed(42, "narma10", "series", 3)

    def test_derive_seed_separates_parts(self):
        seeds = {derive_seed(42, "narma10", "series", i) for i in range(50)}
        assert len(seeds) == 50
        assert derive_seed(1, 23) != derive_seed(12, 3)

    def test_same_stream_gives_identical_draws(self):
        a = RngStream(seed=7, stream_id=2).normal(100)
        b = RngStream(seed=7, stream_id=2).normal(100)
        np.testing.assert_array_equal(a, b)

    def test_substreams_differ(self):
        s = RngStream(seed=7)
        assert not np.array_equal(s.substream(0).normal(10), s.substream(1).normal(10))

    def test_uniform_bounds(self):
        u = RngStream(seed=3).uniform(0.0, 0.5, 1000)
        assert u.min() >= 0.0 and u.max() <= 0.5


class TestLeastSquares:
    def test_recovers_exact_weights(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(60, 4))
        W = np.array([0.5, -1.0, 2.0, 0.25])
        np.testing.assert_allclose(solve_least_squares(X, X @ W), W, atol=1e-10)

    def test_matrix_targets(self):
        rng = np.random.default_rng(2)
        X = rng.normal(size=(30, 3))
        W = rng.normal(size=(3, 2))
        result = solve_least_squares(X, X @ W)
        assert result.shape == (3, 2)
        np.testing.assert_allclose(result, W, atol=1e-10)

    def test_rank_deficient_gives_minimum_norm(self):
        X = np.ones((5, 2))
        W = solve_least_squares(X, np.full(5, 2.0))
        np.testing.assert_allclose(W, [1.0, 1.0], atol=1e-10)

    def test_underdetermined_gives_minimum_norm(self):
        X = np.array([[1.0, 1.0, 0.0]])
        np.testing.assert_allclose(solve_least_squares(X, np.array([2.0])), [1.0, 1.0, 0.0], atol=1e-10)

    def test_residual_is_orthogonal_to_columns(self):
        rng = np.random.default_rng(5)
        X = rng.normal(size=(200, 12))
        y = rng.normal(size=200)
        residual = y - X @ solve_least_squares(X, y)
        assert np.linalg.norm(X.T @ residual) <= 1e-8 * np.linalg.norm(X) * np.linalg.norm(y)

    def test_no_direction_lowers_the_error(self):
        rng = np.random.default_rng(6)
        X = np.column_stack([rng.uniform(0.0, 0.5, (300, 8)), np.ones(300)])
        y = rng.normal(size=300)
        W = solve_least_squares(X, y)
        best = float(np.sum((X @ W - y) ** 2))
        for _ in range(20):
            d = rng.normal(size=W.size)
            for step in (1e-3, -1e-3):
                assert float(np.sum((X @ (W + step * d) - y) ** 2)) >= best

    def test_hand_solved_systems(self):
        np.testing.assert_allclose(solve_least_squares(np.eye(3), np.array([1.0, 2.0, 3.0])), [1.0, 2.0, 3.0])
        X = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        np.testing.assert_allclose(solve_least_squares(X, np.array([1.0, 1.0, 2.0])), [1.0, 1.0], atol=1e-12)
        W = solve_least_squares(np.ones((2, 1)), np.array([0.0, 2.0]))
        np.testing.assert_allclose(W, [1.0], atol=1e-12)
        assert float(np.sum((np.ones(2) * W[0] - [0.0, 2.0]) ** 2)) == pytest.approx(2.0)

    def test_row_mismatch_is_rejected(self):
        with pytest.raises(ContractViolation):
            solve_least_squares(np.ones((4, 2)), np.ones(3))

    def test_non_finite_input_is_rejected(self):
        X = np.ones((4, 2))
        X[1, 1] = np.nan
        with pytest.raises(NonFiniteInputError):
            solve_least_squares(X, np.ones(4))


class TestLevenbergMarquardt:
    def test_linear_problem_matches_least_squares(self):
        rng = np.random.default_rng(3)
        A = rng.normal(size=(40, 3))
        b = rng.normal(size=40)
        fit = levenberg_marquardt(lambda p: A @ p - b, lambda p: A, np.zeros(3))
        np.testing.assert_allclose(fit.params, solve_least_squares(A, b), atol=1e-6)
        assert fit.converged

    def test_exponential_decay(self):
        x = np.linspace(0.0, 4.0, 30)
        y = 2.0 * np.exp(-0.5 * x)

        def residual(p):
            return p[0] * np.exp(p[1] * x) - y

        def jacobian(p):
            e = np.exp(p[1] * x)
            return np.column_stack([e, p[0] * x * e])

        fit = levenberg_marquardt(residual, jacobian, np.array([1.0, -0.1]), target=y)
        assert fit.params == pytest.approx([2.0, -0.5], rel=1e-4)
        assert fit.r_squared == pytest.approx(1.0)

    def test_scalar_shift(self):
        fit = levenberg_marquardt(lambda p: p - 5.0, lambda p: np.ones((1, 1)), np.zeros(1))
        assert fit.params == pytest.approx([5.0])
        assert fit.sse == pytest.approx(0.0, abs=1e-12)

    def test_two_by_two_system(self):
        A = np.array([[1.0, 1.0], [1.0, -1.0]])
        b = np.array([3.0, 1.0])
        fit = levenberg_marquardt(lambda p: A @ p - b, lambda p: A, np.zeros(2))
        assert fit.params == pytest.approx([2.0, 1.0])

    def test_rosenbrock_valley(self):
        def residual(p):
            return np.array([10.0 * (p[1] - p[0] ** 2), 1.0 - p[0]])

        def jacobian(p):
            return np.array([[-20.0 * p[0], 10.0], [-1.0, 0.0]])

        fit = levenberg_marquardt(residual, jacobian, np.array([-1.2, 1.0]))
        np.testing.assert_allclose(fit.params, [1.0, 1.0], atol=1e-6)
        assert fit.converged

    def test_iteration_cap_reports_not_converged(self):
        x = np.linspace(0.0, 4.0, 30)
        y = 2.0 * np.exp(-0.5 * x)
        fit = levenberg_marquardt(
            lambda p: p[0] * np.exp(p[1] * x) - y,
            lambda p: np.column_stack([np.exp(p[1] * x), p[0] * x * np.exp(p[1] * x)]),
            np.array([0.1, 0.5]),
            LMOptions(max_iter=1),
        )
        assert fit.iterations == 1
        assert not fit.converged

    def test_non_finite_jacobian_raises(self):
        with pytest.raises(NonFiniteInputError):
            levenberg_marquardt(lambda p: p, lambda p: np.full((1, 1), np.inf), np.ones(1))

    def test_r_squared_of_constant_data(self):
        assert r_squared(0.0, np.ones(5)) == 1.0
        assert r_squared(0.1, np.ones(5)) == 0.0


class TestPowerLaw:
    N = np.arange(50, 1001, 50)

    def test_recovers_known_law(self):
        sigma = evaluate_power_law([0.5, -0.4, 0.02], self.N)
        fit = fit_power_law(self.N, sigma)
        np.testing.assert_allclose(evaluate_power_law(fit.params, self.N), sigma, atol=1e-5)
        assert fit.params[1] == pytest.approx(-0.4, abs=0.05)
        assert fit.r_squared > 0.999

    def test_reports_parameter_uncertainty(self):
        noise = np.random.default_rng(4).normal(0.0, 1e-4, self.N.size)
        fit = fit_power_law(self.N, evaluate_power_law([0.5, -0.4, 0.02], self.N) + noise)
        assert len(fit.stderr) == 3 and len(fit.ci95) == 3
        assert all(ci >= se >= 0 for se, ci in zip(fit.stderr, fit.ci95))

    @pytest.mark.parametrize("k", [1e-3, 10.0, 1e3])
    def test_scaling_the_data_scales_a_and_c(self, k):
        sigma = evaluate_power_law([0.306, -0.2609, -0.02537], self.N)
        a, b, c = fit_power_law(self.N, sigma).params
        ka, kb, kc = fit_power_law(self.N, k * sigma).params
        assert ka == pytest.approx(k * a, rel=1e-6)
        assert kb == pytest.approx(b, rel=1e-6)
        assert kc == pytest.approx(k * c, rel=1e-6)

    def test_noisy_rising_law(self):
        noise = np.random.default_rng(9).normal(0.0, 1e-4, self.N.size)
        fit = fit_power_law(self.N, evaluate_power_law([-0.03441, 0.2156, 0.1766], self.N) + noise)
        assert fit.sse <= 1e-5
        assert fit.r_squared >= 0.99

    def test_flat_data(self):
        fit = fit_power_law(self.N, np.full(self.N.size, 0.02))
        assert evaluate_power_law(fit.params, self.N) == pytest.approx(np.full(self.N.size, 0.02), abs=1e-8)
        assert fit.sse == pytest.approx(0.0, abs=1e-12)

    def test_needs_four_points(self):
        with pytest.raises(ContractViolation):
            fit_power_law([10, 20, 30], [0.1, 0.08, 0.07])

    def test_sizes_must_increase(self):
        with pytest.raises(ContractViolation):
            fit_power_law([10, 30, 20, 40], [0.1, 0.08, 0.07, 0.06])


def test_describe_uses_population_std():
    d = describe([1.0, 2.0, 3.0, 4.0])
    assert d.mean == 2.5
    assert d.std == pytest.approx(np.sqrt(1.25))
    assert (d.min, d.max) == (1.0, 4.0)


def test_describe_rejects_empty():
    with pytest.raises(ContractViolation):
        describe([])
