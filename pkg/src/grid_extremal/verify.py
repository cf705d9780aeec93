"""Verification suites: every exit criterion as an executable check.

Each check returns a CheckResult with a pass flag and a human-readable
detail string; the CLI ``verify`` subcommand and the acceptance test
module both run these.  Expensive intermediates (ratio solutions, monic
route values) are cached per process so overlapping criteria do not
recompute them.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from . import asymptotics as asy
from . import equilibrium as eq
from .config import DEFAULT_CONFIG, RunConfig
from .grid_poly import make_grid
from .minmax_solver import solve_monic_min
from .ratio_extremal import analyze_structure, solve_ratio_extremal

ALPHA_GRID = tuple(round(0.1 * k, 1) for k in range(1, 10))
ALPHA_TRIPLE = (0.3, 0.5, 0.7)
STRUCTURE_NS = (20, 40, 80)
SWEEP_NS = (40, 80, 160)


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.criterion} [{self.name}]: {self.detail} ({self.seconds:.1f}s)"


def _result(criterion, name, passed, detail, t0) -> CheckResult:
    return CheckResult(
        criterion=criterion,
        name=name,
        passed=bool(passed),
        detail=detail,
        seconds=time.time() - t0,
    )


@lru_cache(maxsize=None)
def _ratio_solution(n: int, alpha: float):
    return solve_ratio_extremal(n, alpha)


@lru_cache(maxsize=None)
def _monic_value(n: int, alpha: float):
    return asy.monic_route_value(n, alpha)


def check_constant_routes(cfg: RunConfig = DEFAULT_CONFIG) -> CheckResult:
    """Criterion 1: the three growth-constant routes agree."""
    t0 = time.time()
    worst_series = worst_integral = 0.0
    for a in ALPHA_GRID:
        c = eq.growth_constant(a)
        worst_series = max(worst_series, abs(c - eq.growth_constant_series(a, 30)))
        worst_integral = max(worst_integral, abs(c - eq.growth_constant_integral(a)))
    edge = abs(eq.growth_constant(1.0 - 1e-9) - math.log(2.0))
    passed = worst_series <= 1e-12 and worst_integral <= 1e-8 and edge <= 1e-7
    detail = (
        f"series diff {worst_series:.2e} (<=1e-12), integral diff "
        f"{worst_integral:.2e} (<=1e-8), edge diff {edge:.2e} (<=1e-7)"
    )
    return _result(1, "constant-routes", passed, detail, t0)


def check_measure_identities(cfg: RunConfig = DEFAULT_CONFIG) -> CheckResult:
    """Criterion 2: density forms agree; mass and bounds hold."""
    t0 = time.time()
    worst_form = worst_mass = 0.0
    bounds_ok = True
    for a in ALPHA_GRID:
        m = eq.equilibrium_measure(a)
        xs = np.linspace(-m.r, m.r, 1002)[1:-1]
        worst_form = max(worst_form, float(np.abs(m.density(xs) - m.density_alt(xs)).max()))
        mass_quad = sum(
            integrate.quad(p.density_scalar, p.a, p.b, limit=200, epsabs=1e-13)[0]
            for p in m.pieces
        )
        worst_mass = max(worst_mass, abs(mass_quad - a))
        allx = np.linspace(-1.0, 1.0, 1001)
        dens = m.density(allx)
        bounds_ok = bounds_ok and bool(
            np.all(dens >= -1e-12) and np.all(dens <= 0.5 + 1e-12)
        )
    passed = worst_form <= 1e-12 and worst_mass <= 1e-10 and bounds_ok
    detail = (
        f"form diff {worst_form:.2e} (<=1e-12), mass diff {worst_mass:.2e} "
        f"(<=1e-10), bounds {'ok' if bounds_ok else 'violated'}"
    )
    return _result(2, "measure-identities", passed, detail, t0)


def check_variational_condition(cfg: RunConfig = DEFAULT_CONFIG) -> CheckResult:
    """Criterion 3: potential constant on the unsaturated support and
    nowhere above that level on [-1, 1]."""
    t0 = time.time()
    worst_spread = worst_excess = 0.0
    for a in ALPHA_TRIPLE:
        m = eq.equilibrium_measure(a)
        xs = np.linspace(-m.r, m.r, 50)
        vals = np.array([eq.potential(m, float(x)) for x in xs])
        level = float(vals.mean())
        worst_spread = max(worst_spread, float(vals.max() - vals.min()))
        xs2 = np.linspace(-1.0, 1.0, 200)
        vals2 = np.array([eq.potential(m, float(x)) for x in xs2])
        worst_excess = max(worst_excess, float((vals2 - level).max()))
    passed = worst_spread < 1e-6 and worst_excess <= 1e-6
    detail = f"support spread {worst_spread:.2e} (<1e-6), excess above level {worst_excess:.2e} (<=1e-6)"
    return _result(3, "variational-condition", passed, detail, t0)


def check_potential_identities(cfg: RunConfig = DEFAULT_CONFIG) -> CheckResult:
    """Criterion 4: potential gap reproduces the constant; closed-form
    derivative matches finite differences; the Cauchy transform matches
    its defining quadrature."""
    t0 = time.time()
    worst_gap = worst_fd = worst_ict = 0.0
    for a in ALPHA_TRIPLE:
        lv = eq.equilibrium_levels(a)
        worst_gap = max(worst_gap, abs(lv.gap - eq.growth_constant(a)))
        m = eq.equilibrium_measure(a)
        r = m.r
        h = 1e-4
        for x in np.linspace(r + 0.2 * (1 - r), 1 - 0.2 * (1 - r), 5):
            fd = (eq.potential(m, float(x + h)) - eq.potential(m, float(x - h))) / (2 * h)
            cl = eq.potential_derivative(a, float(x))
            worst_fd = max(worst_fd, abs(fd - cl) / abs(cl))
        for x in (r + 0.3 * (1 - r), 2.0):
            def f(y, a=a, x=x):
                c = a / math.sqrt(1.0 - y * y)
                return math.acos(min(max(c, -1.0), 1.0)) / (x - y) / math.pi
            quadval, _ = integrate.quad(f, -r, r, limit=200, epsabs=1e-12)
            worst_ict = max(
                worst_ict, abs(quadval - eq.interior_cauchy_transform(a, float(x)))
            )
    passed = worst_gap <= 1e-6 and worst_fd <= 1e-5 and worst_ict <= 1e-7
    detail = (
        f"gap vs constant {worst_gap:.2e} (<=1e-6), derivative fd rel {worst_fd:.2e} "
        f"(<=1e-5), transform vs quadrature {worst_ict:.2e} (<=1e-7)"
    )
    return _result(4, "potential-identities", passed, detail, t0)


def _lebesgue_ratio_oracle(n: int) -> float:
    """Max over [-1, 1] of the grid's Lebesgue function, by barycentric
    evaluation on a dense mesh with golden refinement (independent of
    the LP path)."""
    g = make_grid(n)
    w = np.ones(n)
    for j in range(n):
        for k in range(n):
            if k != j:
                w[j] /= g.points[j] - g.points[k]

    def leb(x: float) -> float:
        diffs = x - g.points
        if np.any(diffs == 0.0):
            return 1.0
        terms = w / diffs
        return float(np.abs(terms).sum() / abs(terms.sum()))

    best = 1.0
    golden = (math.sqrt(5.0) - 1.0) / 2.0
    for k in range(n - 1):
        lo, hi = g.points[k], g.points[k + 1]
        xs = np.linspace(lo, hi, 64)[1:-1]
        vals = [leb(float(x)) for x in xs]
        j = int(np.argmax(vals))
        a = float(xs[max(j - 1, 0)])
        b = float(xs[min(j + 1, len(xs) - 1)])
        x1 = b - golden * (b - a)
        x2 = a + golden * (b - a)
        f1, f2 = leb(x1), leb(x2)
        while b - a > 1e-13:
            if f1 < f2:
                a, x1, f1 = x1, x2, f2
                x2 = a + golden * (b - a)
                f2 = leb(x2)
            else:
                b, x2, f2 = x2, x1, f1
                x1 = b - golden * (b - a)
                f1 = leb(x1)
        best = max(best, max(f1, f2, leb(0.5 * (a + b))))
    return best


def check_analytic_small_cases(cfg: RunConfig = DEFAULT_CONFIG) -> CheckResult:
    """Criterion 5: exact small cases and the full-degree Lebesgue oracle."""
    t0 = time.time()
    monic_err = abs(solve_monic_min(make_grid(3), 2).objective - 0.5)
    # alpha = 0.67 keeps floor(alpha n) = 2 robust to float rounding
    ratio_err = abs(_ratio_solution(3, 0.67).ratio - 1.25)
    worst_leb = 0.0
    for n in range(3, 9):
        sol = solve_ratio_extremal(n, (n - 0.5) / n)  # degree budget n - 1
        oracle = _lebesgue_ratio_oracle(n)
        worst_leb = max(worst_leb, abs(sol.ratio - oracle) / oracle)
    passed = monic_err <= 1e-9 and ratio_err <= 1e-9 and worst_leb <= 1e-8
    detail = (
        f"monic(3,2) err {monic_err:.2e} (<=1e-9), ratio(3) err {ratio_err:.2e} "
        f"(<=1e-9), Lebesgue oracle rel {worst_leb:.2e} (<=1e-8)"
    )
    return _result(5, "analytic-small-cases", passed, detail, t0)


def check_zero_structure(cfg: RunConfig = DEFAULT_CONFIG) -> CheckResult:
    """Criterion 6: zero structure of the ratio maximizer, hard assertions."""
    t0 = time.time()
    failures = []
    for n in STRUCTURE_NS:
        for a in ALPHA_TRIPLE:
            sol = _ratio_solution(n, a)
            rep = analyze_structure(sol)
            d = sol.degree_budget
            ok = (
                rep.all_real_simple
                and rep.count_in_open_interval >= d - 1
                and rep.max_zeros_per_gap <= 1
                and rep.outside_count <= 1
                and rep.separation_ok
            )
            if not ok:
                failures.append(f"(n={n}, alpha={a}): {rep}")
    passed = not failures
    detail = "all 9 (n, alpha) pairs clean" if passed else "; ".join(failures)
    return _result(6, "zero-structure", passed, detail, t0)


def check_convergence(cfg: RunConfig = DEFAULT_CONFIG) -> CheckResult:
    """Criterion 7: 1/n extrapolation of both routes against the constant.

    Tolerances come from the config file (ratio_extrapolation_rel,
    monic_extrapolation_rel).
    """
    t0 = time.time()
    tol_ratio = cfg.tolerance("ratio_extrapolation_rel")
    tol_monic = cfg.tolerance("monic_extrapolation_rel")
    rows_r = [
        (n, _ratio_solution(n, 0.5).log_ratio_over_n) for n in SWEEP_NS
    ]
    rows_m = [(n, _monic_value(n, 0.5)[0]) for n in SWEEP_NS]
    target = eq.growth_constant(0.5)
    ex_r = asy._extrapolate([r[0] for r in rows_r], [r[1] for r in rows_r])
    ex_m = asy._extrapolate([r[0] for r in rows_m], [r[1] for r in rows_m])
    rel_r = abs(ex_r - target) / target
    rel_m = abs(ex_m - target) / target
    passed = rel_r <= tol_ratio and rel_m <= tol_monic
    detail = (
        f"ratio extrapolation {ex_r:.6f} rel {rel_r:.4f} (<={tol_ratio}), "
        f"monic {ex_m:.6f} rel {rel_m:.4f} (<={tol_monic}), target {target:.7f}"
    )
    return _result(7, "convergence", passed, detail, t0)


def check_zero_distribution(cfg: RunConfig = DEFAULT_CONFIG) -> CheckResult:
    """Criterion 8: Kolmogorov distance shrinks with n; saturated mass
    matches the limit."""
    t0 = time.time()
    tol_mass = cfg.tolerance("saturated_mass_abs")
    d50 = asy.zero_distribution_distance(50, 0.5, "monic")
    d200 = asy.zero_distribution_distance(200, 0.5, "monic")
    emp, lim = asy.saturated_mass(200, 0.5, "monic")
    passed = d200 < d50 and abs(emp - lim) <= tol_mass
    detail = (
        f"KS n=50 {d50:.5f} -> n=200 {d200:.5f} (must shrink), saturated mass "
        f"|{emp:.5f} - {lim:.5f}| = {abs(emp - lim):.5f} (<={tol_mass})"
    )
    return _result(8, "zero-distribution", passed, detail, t0)


def check_gap_extremality(cfg: RunConfig = DEFAULT_CONFIG) -> CheckResult:
    """Criterion 9: the equilibrium measure attains the constant in the
    gap functional; bundled competitors stay strictly below."""
    t0 = time.time()
    worst_eq = 0.0
    worst_margin = math.inf
    for a in ALPHA_TRIPLE:
        c = eq.growth_constant(a)
        worst_eq = max(worst_eq, abs(eq.potential_gap(eq.equilibrium_measure(a)) - c))
        for m in eq.non_optimal_measures(a):
            worst_margin = min(worst_margin, c - eq.potential_gap(m))
    passed = worst_eq <= 1e-6 and worst_margin > 1e-4
    detail = (
        f"equilibrium gap err {worst_eq:.2e} (<=1e-6), smallest competitor margin "
        f"{worst_margin:.4f} (>1e-4)"
    )
    return _result(9, "gap-extremality", passed, detail, t0)


def check_route_ordering(cfg: RunConfig = DEFAULT_CONFIG) -> CheckResult:
    """Criterion 10: the monic competitor never beats the ratio optimum."""
    t0 = time.time()
    worst = -math.inf
    pairs = [(n, a) for n in STRUCTURE_NS for a in ALPHA_TRIPLE]
    pairs += [(n, 0.5) for n in SWEEP_NS]
    for n, a in sorted(set(pairs)):
        ratio_val = _ratio_solution(n, a).log_ratio_over_n
        monic_val = _monic_value(n, a)[0]
        worst = max(worst, monic_val - ratio_val)
    passed = worst <= 1e-12
    detail = f"max (monic - ratio) = {worst:.2e} (<=1e-12) over {len(set(pairs))} pairs"
    return _result(10, "route-ordering", passed, detail, t0)


def check_sqrt_regime(cfg: RunConfig = DEFAULT_CONFIG) -> CheckResult:
    """Criterion 11: bounded-degree regime exponents positive and finite."""
    t0 = time.time()
    rep = asy.sqrt_regime(1.0, [25, 49, 100])
    est = [r.exponent_estimate for r in rep.rows]
    passed = all(e > 0.0 and math.isfinite(e) for e in est)
    detail = f"exponent band [{rep.band_min:.4f}, {rep.band_max:.4f}] over n in (25, 49, 100)"
    return _result(11, "sqrt-regime", passed, detail, t0)


_ALL_CHECKS = {
    1: check_constant_routes,
    2: check_measure_identities,
    3: check_variational_condition,
    4: check_potential_identities,
    5: check_analytic_small_cases,
    6: check_zero_structure,
    7: check_convergence,
    8: check_zero_distribution,
    9: check_gap_extremality,
    10: check_route_ordering,
    11: check_sqrt_regime,
}

SUITES = {
    "identities": (1, 2, 3, 4, 9),
    "structure": (5, 6),
    "convergence": (7, 8, 10, 11),
    "all": tuple(range(1, 12)),
}


def run_suite(name: str, cfg: RunConfig = DEFAULT_CONFIG) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(name)
    return [_ALL_CHECKS[k](cfg) for k in SUITES[name]]
