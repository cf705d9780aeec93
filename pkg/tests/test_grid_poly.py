import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from numpy.polynomial import chebyshev as cheb

from grid_extremal.errors import InvalidArgumentError
from grid_extremal.grid_poly import (
    ChebPoly,
    RootProduct,
    eval_log_abs,
    grid_norm,
    make_grid,
    roots_in_window,
    sup_norm_interval,
)


class TestMakeGrid:
    def test_two_points(self):
        g = make_grid(2)
        assert g.points.tolist() == [-1.0, 1.0]

    def test_three_points(self):
        assert make_grid(3).points.tolist() == [-1.0, 0.0, 1.0]

    def test_five_points(self):
        # direct evaluation of (2k - n - 1)/(n - 1)
        assert make_grid(5).points.tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]

    @pytest.mark.parametrize("n", [2, 3, 7, 40, 161])
    def test_invariants(self, n):
        g = make_grid(n)
        assert g.points[0] == -1.0 and g.points[-1] == 1.0
        diffs = np.diff(g.points)
        assert np.all(diffs > 0)
        assert np.allclose(diffs, 2.0 / (n - 1), rtol=0, atol=1e-15)

    @pytest.mark.parametrize("bad", [1, 0, -3])
    def test_rejects_small(self, bad):
        with pytest.raises(InvalidArgumentError):
            make_grid(bad)


class TestEval:
    def test_t2_at_half(self):
        p = ChebPoly([0, 0, 1])
        assert p(0.5) == pytest.approx(-0.5, abs=1e-15)

    def test_zero_coeffs(self):
        assert ChebPoly([0.0])(0.37) == 0.0

    def test_one_plus_t1_at_minus_one(self):
        assert ChebPoly([1, 1])(-1.0) == pytest.approx(0.0, abs=1e-15)

    @settings(max_examples=60, deadline=None)
    @given(
        coeffs=st.lists(
            st.floats(-10, 10, allow_nan=False, allow_infinity=False),
            min_size=1,
            max_size=65,
        ),
        x=st.floats(-1, 1),
    )
    def test_clenshaw_matches_direct_basis_sum(self, coeffs, x):
        p = ChebPoly(coeffs)
        # direct summation: T_j by the three-term recurrence
        d = len(coeffs) - 1
        t_prev, t_cur = 1.0, x
        total = coeffs[0] * t_prev
        if d >= 1:
            total += coeffs[1] * t_cur
        for j in range(2, d + 1):
            t_prev, t_cur = t_cur, 2.0 * x * t_cur - t_prev
            total += coeffs[j] * t_cur
        scale = max(1.0, sum(abs(c) for c in coeffs))
        assert p(x) == pytest.approx(total, rel=1e-12, abs=1e-12 * scale)

    def test_degree_truncation(self):
        p = ChebPoly([1.0, 0.5, 1e-16])
        assert p.degree == 1
        assert ChebPoly([0.0, 0.0]).degree == 0


class TestEvalLogAbs:
    def test_root_product_at_three(self):
        rp = RootProduct(leading=1.0, roots=[-1.0, 1.0])
        logmag, sign = eval_log_abs(rp, 3.0)
        assert logmag == pytest.approx(math.log(8.0), abs=1e-14)
        assert sign == 1

    def test_exact_root_hit(self):
        rp = RootProduct(leading=1.0, roots=[0.0])
        logmag, sign = eval_log_abs(rp, 0.0)
        assert logmag == -math.inf and sign == 0

    def test_three_roots_at_one(self):
        # direct product: (1 + 0.5)(1 - 0)(1 - 0.5) = 0.75
        rp = RootProduct(leading=1.0, roots=[-0.5, 0.0, 0.5])
        logmag, sign = eval_log_abs(rp, 1.0)
        assert logmag == pytest.approx(math.log(0.75), abs=1e-14)
        assert sign == 1

    def test_negative_sign(self):
        rp = RootProduct(leading=1.0, roots=[0.5])
        logmag, sign = eval_log_abs(rp, 0.0)
        assert sign == -1 and logmag == pytest.approx(math.log(0.5), abs=1e-14)

    def test_chebpoly_input(self):
        p = ChebPoly([0, 0, 1.0])
        logmag, sign = eval_log_abs(p, 0.9)
        assert sign == 1
        assert logmag == pytest.approx(math.log(abs(2 * 0.81 - 1)), abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(
        roots=st.lists(st.floats(-1, 1), min_size=1, max_size=12),
        x=st.floats(-3, 3),
    )
    def test_matches_expanded_form(self, roots, x):
        # expanded evaluation only resolves values above its own roundoff,
        # so keep x away from the roots
        assume(all(abs(x - r) > 1e-6 for r in roots))
        rp = RootProduct(leading=1.0, roots=roots)
        p = ChebPoly.from_roots(roots)
        logmag, sign = eval_log_abs(rp, x)
        val = p(x)
        if abs(val) > 1e-250 and math.isfinite(logmag):
            assert logmag == pytest.approx(math.log(abs(val)), abs=1e-8)
            assert sign == (1 if val > 0 else -1)


class TestRootsInWindow:
    def test_t2_roots(self):
        zs = roots_in_window(ChebPoly([0, 0, 1]), -1, 1).zeros
        assert zs == pytest.approx([-math.sqrt(0.5), math.sqrt(0.5)], abs=1e-12)

    def test_constant_no_roots(self):
        assert len(roots_in_window(ChebPoly([1.0]), -1, 1).zeros) == 0

    def test_expanded_product(self):
        # (x - 0.3)(x + 0.7) in the Chebyshev basis
        p = ChebPoly([0.29, 0.4, 0.5])
        zs = roots_in_window(p, -1, 1).zeros
        assert zs == pytest.approx([-0.7, 0.3], abs=1e-12)

    def test_window_filtering(self):
        p = ChebPoly.from_roots([-0.7, 0.3, 2.5])
        zs = roots_in_window(p, -1, 1).zeros
        assert zs == pytest.approx([-0.7, 0.3], abs=1e-10)
        zs_wide = roots_in_window(p, -10, 10).zeros
        assert zs_wide == pytest.approx([-0.7, 0.3, 2.5], abs=1e-9)

    @pytest.mark.parametrize("d", [5, 17, 50])
    def test_separated_products_recovered(self, d):
        # jittered Chebyshev spread: distinct linear factors, separation
        # above 1e-3, in the well-conditioned configuration the grid
        # polynomials actually produce
        rng = np.random.default_rng(20240 + d)
        base = 0.985 * np.cos(np.pi * (2 * np.arange(d) + 1) / (2 * d))[::-1]
        roots = np.sort(base + rng.uniform(-0.2, 0.2, size=d) / d)
        assert np.max(np.abs(roots)) < 1.0
        assert d == 1 or np.min(np.diff(roots)) > 1e-3
        p = ChebPoly.from_roots(roots)
        zs = roots_in_window(p, -1, 1).zeros
        assert len(zs) == d
        assert np.max(np.abs(zs - roots)) < 1e-9

    def test_residual_certified(self):
        zset = roots_in_window(ChebPoly.from_roots([-0.5, 0.1, 0.6]), -1, 1)
        assert zset.residual <= 1e-9

    def test_bisection_cross_check(self):
        # sign-change scan between fine samples agrees with the colleague
        # route (roots chosen off the sampling lattice)
        p = ChebPoly.from_roots([-0.8123, -0.2047, 0.4031, 0.9227])
        xs = np.linspace(-1, 1, 4001)
        vals = p(xs)
        brackets = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
        scan_roots = []
        for i in brackets:
            a, b = xs[i], xs[i + 1]
            fa = p(a)
            for _ in range(60):
                m = 0.5 * (a + b)
                fm = p(m)
                if fa * fm <= 0:
                    b = m
                else:
                    a, fa = m, fm
            scan_roots.append(0.5 * (a + b))
        zs = roots_in_window(p, -1, 1).zeros
        assert np.allclose(zs, scan_roots, atol=1e-9)


class TestSupNorm:
    def test_t3_equioscillation(self):
        val, arg = sup_norm_interval(ChebPoly([0, 0, 0, 1]), -1, 1)
        assert val == pytest.approx(1.0, abs=1e-12)
        assert min(abs(abs(arg) - 1.0), abs(abs(arg) - 0.5)) < 1e-6

    def test_constant(self):
        val, _ = sup_norm_interval(ChebPoly([2.0]), -1, 1)
        assert val == pytest.approx(2.0, abs=1e-15)

    def test_shifted_square(self):
        # x^2 - 1/2 = T_2 / 2: max of |p| is 0.5 at 0 and +-1
        val, arg = sup_norm_interval(ChebPoly([0, 0, 0.5]), -1, 1)
        assert val == pytest.approx(0.5, abs=1e-12)

    def test_degree_two_closed_forms(self):
        # |a x^2 + b x + c| maxima from calculus, degree-exact to 1e-12
        rng = np.random.default_rng(7)
        for _ in range(25):
            a, b, c = rng.uniform(-2, 2, size=3)
            coeffs = [c + a / 2, b, a / 2]  # a x^2 + b x + c in Chebyshev basis
            cands = [-1.0, 1.0]
            if abs(a) > 1e-15:
                crit = -b / (2 * a)
                if -1 <= crit <= 1:
                    cands.append(crit)
            expected = max(abs(a * x * x + b * x + c) for x in cands)
            val, _ = sup_norm_interval(ChebPoly(coeffs), -1, 1)
            assert val == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_subinterval(self):
        val, arg = sup_norm_interval(ChebPoly([0, 1]), 0.2, 0.7)
        assert val == pytest.approx(0.7, abs=1e-13)
        assert arg == pytest.approx(0.7, abs=1e-10)


class TestGridNorm:
    def test_t2_on_three_points(self):
        val, idx = grid_norm(ChebPoly([0, 0, 1]), make_grid(3))
        assert val == pytest.approx(1.0, abs=1e-15)
        assert idx == 0  # lowest attaining index

    def test_shifted_square(self):
        val, _ = grid_norm(ChebPoly([0, 0, 0.5]), make_grid(3))
        assert val == pytest.approx(0.5, abs=1e-15)

    def test_zero_polynomial(self):
        val, idx = grid_norm(ChebPoly([0.0]), make_grid(5))
        assert val == 0.0 and idx == 0

    @settings(max_examples=40, deadline=None)
    @given(
        coeffs=st.lists(st.floats(-5, 5), min_size=1, max_size=12),
        n=st.integers(2, 30),
    )
    def test_grid_norm_below_sup_norm(self, coeffs, n):
        p = ChebPoly(coeffs)
        gval, _ = grid_norm(p, make_grid(n))
        sval, _ = sup_norm_interval(p, -1, 1)
        assert gval <= sval * (1 + 1e-12) + 1e-12


class TestSerialization:
    def test_round_trip_bit_exact(self):
        rng = np.random.default_rng(11)
        coeffs = rng.uniform(-1, 1, size=9)
        coeffs[3] = 0.1 + 2e-17  # not exactly representable decimal
        p = ChebPoly(coeffs)
        blob = json.dumps(p.to_json_dict())
        q = ChebPoly.from_json_dict(json.loads(blob))
        assert q.coeffs.tolist() == p.coeffs.tolist()

    def test_rejects_other_basis(self):
        with pytest.raises(InvalidArgumentError):
            ChebPoly.from_json_dict({"basis": "monomial", "coeffs": [1]})
