import numpy as np
import pytest
from scipy.optimize import linprog

from grid_extremal.errors import (
    InvalidArgumentError,
    LPInfeasibleError,
    LPUnboundedError,
)
from grid_extremal.simplex import lp_solve


class TestBasics:
    def test_one_variable_absolute_value(self):
        # min t subject to -t <= 0.3 <= t
        res = lp_solve(np.array([[-1.0]]), np.array([-0.3]), np.array([1.0]))
        assert res.objective == pytest.approx(0.3, abs=1e-12)
        assert res.gap <= 1e-9 * 1.3

    def test_empty_constraints_bounded(self):
        res = lp_solve(np.zeros((0, 3)), np.zeros(0), np.array([1.0, 0.0, 2.0]))
        assert res.objective == 0.0
        assert res.x.tolist() == [0.0, 0.0, 0.0]

    def test_empty_constraints_unbounded(self):
        with pytest.raises(LPUnboundedError):
            lp_solve(np.zeros((0, 2)), np.zeros(0), np.array([1.0, -1.0]))

    def test_infeasible(self):
        # x >= 0 with x <= -1
        with pytest.raises(LPInfeasibleError):
            lp_solve(np.array([[1.0]]), np.array([-1.0]), np.array([0.0]))

    def test_unbounded_ray(self):
        with pytest.raises(LPUnboundedError):
            lp_solve(np.array([[-1.0]]), np.array([0.0]), np.array([-1.0]))

    def test_equality_row(self):
        # min x0 + x1 s.t. x0 + x1 = 1
        res = lp_solve(
            np.array([[1.0, 1.0]]), np.array([1.0]), np.array([1.0, 1.0]), equality_rows=[0]
        )
        assert res.objective == pytest.approx(1.0, abs=1e-12)

    def test_shape_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            lp_solve(np.ones((2, 2)), np.ones(3), np.ones(2))

    def test_nonfinite_rejected(self):
        with pytest.raises(InvalidArgumentError):
            lp_solve(np.array([[np.inf]]), np.ones(1), np.ones(1))


class TestAgainstHighs:
    """Random small programs against scipy's independent engine."""

    @pytest.mark.parametrize("seed", range(12))
    def test_random_inequality_lp(self, seed):
        rng = np.random.default_rng(seed)
        m, n = rng.integers(2, 7), rng.integers(2, 5)
        A = rng.uniform(-1, 1, size=(m, n))
        x_feas = rng.uniform(0, 1, size=n)
        b = A @ x_feas + rng.uniform(0.1, 1.0, size=m)  # strictly feasible
        c = rng.uniform(-1, 1, size=n)
        ref = linprog(c, A_ub=A, b_ub=b, bounds=[(0, None)] * n, method="highs")
        if not ref.success:
            pytest.skip("reference reports unbounded")
        res = lp_solve(A, b, c)
        assert res.objective == pytest.approx(ref.fun, rel=1e-8, abs=1e-9)
        assert res.gap <= 1e-9 * (1.0 + abs(res.objective))

    @pytest.mark.parametrize("seed", range(8))
    def test_random_equality_lp(self, seed):
        rng = np.random.default_rng(100 + seed)
        m, n = 3, 6
        A = rng.uniform(-1, 1, size=(m, n))
        x_feas = rng.uniform(0.1, 1, size=n)
        b = A @ x_feas
        c = rng.uniform(0.1, 1, size=n)  # bounded below on the feasible set
        ref = linprog(
            c, A_eq=A, b_eq=b, bounds=[(0, None)] * n, method="highs"
        )
        assert ref.success
        res = lp_solve(A, b, c, equality_rows=range(m))
        assert res.objective == pytest.approx(ref.fun, rel=1e-8, abs=1e-9)

    def test_duals_certify(self):
        rng = np.random.default_rng(5)
        A = rng.uniform(-1, 1, size=(4, 3))
        x_feas = rng.uniform(0, 1, size=3)
        b = A @ x_feas + 0.5
        c = rng.uniform(0.2, 1, size=3)
        res = lp_solve(A, b, c)
        # dual objective matches primal at optimum
        assert abs(res.objective - float(b @ res.y)) <= 1e-9 * (1 + abs(res.objective))
        assert res.max_violation <= 1e-9 * (1 + abs(res.objective))


class TestWarmStart:
    def test_warm_start_skips_phase_one(self):
        # min x0 s.t. x0 + x1 = 1: basis {x1} is feasible
        res = lp_solve(
            np.array([[1.0, 1.0]]),
            np.array([1.0]),
            np.array([1.0, 0.0]),
            equality_rows=[0],
            initial_basis=[1],
        )
        assert res.objective == pytest.approx(0.0, abs=1e-13)
        assert res.iterations == 0

    def test_bad_warm_start_falls_back(self):
        res = lp_solve(
            np.array([[1.0, 1.0]]),
            np.array([1.0]),
            np.array([1.0, 1.0]),
            equality_rows=[0],
            initial_basis=[7],  # nonsense index
        )
        assert res.objective == pytest.approx(1.0, abs=1e-12)

    def test_determinism(self):
        rng = np.random.default_rng(42)
        A = rng.uniform(-1, 1, size=(5, 4))
        b = np.abs(A).sum(axis=1)
        c = rng.uniform(-0.5, 1, size=4)
        r1 = lp_solve(A, b, c)
        r2 = lp_solve(A, b, c)
        assert r1.x.tolist() == r2.x.tolist()
        assert r1.basis == r2.basis
        assert r1.iterations == r2.iterations
