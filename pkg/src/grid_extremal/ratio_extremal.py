"""The polynomial maximizing sup norm over grid norm.

For a degree budget d = floor(alpha * n), the extremal ratio

    max over p of  ||p|| on [-1, 1]  /  ||p|| on the grid

equals the maximum over pin points x* of the pinned objective from
``minmax_solver.solve_pinned_max``: the best value at x* among
polynomials bounded by one on the grid.  That objective is continuous
on each open grid gap and equals 1 at the grid points, so the search
scans a fixed number of probe points per gap and then refines the best
gaps by golden section.

Scans run left to right so each solve can reuse the previous touching
set as a warm start; this is why the scan is sequential rather than
parallel (parallelism lives at the sweep level in ``asymptotics``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import DEFAULT_CONFIG
from .errors import InvalidArgumentError, NumericFailure
from .grid_poly import (
    ChebPoly,
    Grid,
    ZeroSet,
    grid_norm,
    make_grid,
    roots_in_window,
)
from .minmax_solver import MinMaxSolution, solve_pinned_max

# window for locating the at-most-one zero outside [-1, 1]; beyond it
# the degree deficit is reported instead
OUTSIDE_WINDOW = 10.0

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ExtremalSolution:
    """Ratio maximizer for one (n, alpha) pair.

    ``poly`` is normalized to grid norm 1, so ``ratio`` equals both the
    sup norm on [-1, 1] and the value at ``x_star``.  ``zeros`` holds
    the roots inside [-1, 1]; ``outside_zero`` the at-most-one real root
    found in the widened window outside it (None when absent).
    """

    n: int
    alpha: float
    degree_budget: int
    poly: ChebPoly
    x_star: float
    ratio: float
    log_ratio_over_n: float
    zeros: ZeroSet
    outside_zero: Optional[float]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "degree_budget": self.degree_budget,
            "x_star": self.x_star,
            "ratio": self.ratio,
            "log_ratio_over_n": self.log_ratio_over_n,
            "zeros": [float(z) for z in self.zeros.zeros],
            "zero_residual": self.zeros.residual,
            "outside_zero": self.outside_zero,
        }


@dataclass(frozen=True)
class StructureReport:
    """Computed zero-structure facts for an ExtremalSolution.

    All flags are measured on the polynomial, never assumed:
    ``all_real_simple`` states that the number of certified simple real
    roots accounts for the full degree (a deficit of one is a root
    beyond the search window, which parity forces to be real);
    ``separation_ok`` that no open grid gap holds two roots and at most
    one root lies outside [-1, 1].
    """

    all_real_simple: bool
    count_in_open_interval: int
    separation_ok: bool
    max_zeros_per_gap: int
    details: tuple[int, ...]
    outside_count: int

    def to_json_dict(self) -> dict:
        return {
            "all_real_simple": self.all_real_simple,
            "count_in_open_interval": self.count_in_open_interval,
            "separation_ok": self.separation_ok,
            "max_zeros_per_gap": self.max_zeros_per_gap,
            "details": list(self.details),
            "outside_count": self.outside_count,
        }


def phi(g: Grid, degree: int, x_star: float) -> float:
    """Best value at x* among degree-bounded polynomials with grid norm <= 1.

    Thin wrapper over the pinned LP; the per-(n, degree) basis tables it
    needs are cached by the solver module.
    """
    return solve_pinned_max(g, degree, x_star).objective


def _gap_probes(lo: float, hi: float, count: int) -> np.ndarray:
    """Chebyshev-spaced interior probe points for one gap, ascending."""
    theta = np.pi * (2.0 * np.arange(count) + 1.0) / (2.0 * count)
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos(theta)[::-1]


class _ScanState:
    """Threads the previous touching set through a sequential scan."""

    def __init__(self, g: Grid, degree: int):
        self.g = g
        self.degree = degree
        self.points: Optional[tuple[int, ...]] = None

    def solve(self, x: float) -> MinMaxSolution:
        sol = solve_pinned_max(self.g, self.degree, x, start_points=self.points)
        self.points = sol.basis_points
        return sol

    def value(self, x: float) -> float:
        try:
            return self.solve(x).objective
        except NumericFailure:
            return -np.inf


def _refine_gap(
    state: _ScanState, xs: np.ndarray, vals: np.ndarray, lo: float, hi: float, tol: float
) -> tuple[float, float]:
    """Golden-section maximization around the best probe of one gap."""
    j = int(np.argmax(vals))
    a = xs[j - 1] if j > 0 else lo + 1e-3 * (xs[0] - lo)
    b = xs[j + 1] if j < len(xs) - 1 else hi - 1e-3 * (hi - xs[-1])
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = state.value(x1), state.value(x2)
    limit = 200
    while b - a > tol and limit > 0:
        limit -= 1
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = state.value(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = state.value(x1)
    if b - a > tol:
        raise NumericFailure(f"gap refinement did not converge on [{a}, {b}]")
    xm = 0.5 * (a + b)
    fm = state.value(xm)
    cands = [(f1, x1), (f2, x2), (fm, xm)]
    best = max(cands, key=lambda t: t[0])
    return best[1], best[0]


def solve_ratio_extremal(
    n: int,
    alpha: float,
    points_per_gap: Optional[int] = None,
    refine_tolerance: Optional[float] = None,
    degree: Optional[int] = None,
) -> ExtremalSolution:
    """Maximize the sup-to-grid norm ratio for degree budget floor(alpha n).

    Every grid gap is scanned (the location of the maximizer is not
    known a priori); the best gaps are refined by golden section until
    the bracketing interval is below ``refine_tolerance``.  Ties between
    gaps, e.g. the symmetric pair of maximizers, resolve to the smallest
    pin point for determinism.

    Parameters
    ----------
    n : int
        Grid size, at least 3.
    alpha : float
        Degree fraction in (0, 1); the budget is floor(alpha * n).
    points_per_gap, refine_tolerance : optional
        Scan density and refinement width; default from config.
    degree : int, optional
        Explicit degree budget override (used by the bounded-degree
        regime experiments); alpha is still recorded on the solution.
    """
    if n < 3:
        raise InvalidArgumentError(f"need n >= 3, got {n}")
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError(f"alpha must be in (0, 1), got {alpha}")
    d = int(math.floor(alpha * n)) if degree is None else int(degree)
    if d < 1:
        raise InvalidArgumentError(f"degree budget floor(alpha n) = {d} must be >= 1")
    if d > n - 1:
        raise InvalidArgumentError(f"degree budget {d} exceeds n - 1 = {n - 1}")
    M = points_per_gap if points_per_gap is not None else DEFAULT_CONFIG.scan_points_per_gap
    tol = refine_tolerance if refine_tolerance is not None else DEFAULT_CONFIG.refine_tolerance

    g = make_grid(n)
    state = _ScanState(g, d)
    per_gap: list[tuple[float, np.ndarray, np.ndarray, int]] = []
    failures = 0
    for k in range(n - 1):
        lo, hi = float(g.points[k]), float(g.points[k + 1])
        xs = _gap_probes(lo, hi, M)
        vals = np.array([state.value(float(x)) for x in xs])
        if not np.any(np.isfinite(vals)):
            failures += M
            continue
        failures += int(np.count_nonzero(~np.isfinite(vals)))
        per_gap.append((float(np.max(vals)), xs, vals, k))
    if not per_gap:
        raise NumericFailure("every probe point failed; no ratio value available")
    if failures > 0.2 * M * (n - 1):
        raise NumericFailure(f"{failures} probe failures out of {M * (n - 1)}")

    best_probe = max(v for v, _, _, _ in per_gap)
    refined: list[tuple[float, float]] = []
    for v, xs, vals, k in per_gap:
        if v >= best_probe * (1.0 - 1e-3):
            lo, hi = float(g.points[k]), float(g.points[k + 1])
            x_opt, f_opt = _refine_gap(state, xs, vals, lo, hi, tol)
            refined.append((f_opt, x_opt))
    best_val = max(f for f, _ in refined)
    x_star = min(x for f, x in refined if f >= best_val * (1.0 - 1e-9))

    final = state.solve(x_star)
    gmax, _ = grid_norm(final.poly, g)
    if gmax <= 0.0:
        raise NumericFailure("optimal polynomial has zero grid norm")
    poly = ChebPoly(final.poly.coeffs / gmax)
    ratio = final.objective / gmax
    if ratio < 1.0 - 1e-9:
        raise NumericFailure(f"ratio {ratio} < 1; solver inconsistency")
    inside = roots_in_window(poly, -1.0, 1.0, local_window=g.spacing)
    wide = roots_in_window(poly, -OUTSIDE_WINDOW, OUTSIDE_WINDOW, local_window=g.spacing)
    outside = [z for z in wide.zeros if abs(z) > 1.0 + 1e-12]
    outside_zero = float(min(outside, key=abs)) if outside else None
    if len(inside.zeros) < d - 1:
        raise NumericFailure(
            f"only {len(inside.zeros)} certified roots in (-1, 1); expected >= {d - 1}"
        )
    return ExtremalSolution(
        n=n,
        alpha=float(alpha),
        degree_budget=d,
        poly=poly,
        x_star=float(x_star),
        ratio=float(ratio),
        log_ratio_over_n=float(np.log(ratio) / n),
        zeros=inside,
        outside_zero=outside_zero,
    )


def analyze_structure(sol: ExtremalSolution) -> StructureReport:
    """Measure the zero structure of a computed ratio maximizer.

    Checks, on the polynomial itself: roots real and simple (derivative
    bounded away from zero at each root), the count inside (-1, 1), at
    most one root per open grid gap, and at most one root outside
    [-1, 1].
    """
    g = make_grid(sol.n)
    p = sol.poly
    dp = p.derivative()
    wide = roots_in_window(p, -OUTSIDE_WINDOW, OUTSIDE_WINDOW, local_window=g.spacing)
    zeros = np.asarray(wide.zeros)
    effective_degree = p.degree

    h = g.spacing
    simple = []
    for z in zeros:
        xs = np.linspace(z - h, z + h, 33)
        local = max(1.0, float(np.abs(p(xs)).max()))
        simple.append(abs(float(dp(z))) > 1e-8 * local / h)
    all_simple = all(simple) if simple else True

    inside_mask = (zeros > -1.0) & (zeros < 1.0)
    count_inside = int(np.count_nonzero(inside_mask))
    outside_count = int(zeros.size - count_inside)

    gap_counts = np.zeros(sol.n - 1, dtype=int)
    for z in zeros[inside_mask]:
        k = int(np.searchsorted(g.points, z, side="right")) - 1
        k = min(max(k, 0), sol.n - 2)
        gap_counts[k] += 1
    max_per_gap = int(gap_counts.max()) if gap_counts.size else 0

    # a deficit of one root is the root beyond the search window (real by
    # parity: complex roots of a real polynomial come in pairs)
    missing = effective_degree - int(zeros.size)
    all_real_simple = all_simple and missing <= 1
    separation_ok = max_per_gap <= 1 and (outside_count + max(missing, 0)) <= 1

    return StructureReport(
        all_real_simple=bool(all_real_simple),
        count_in_open_interval=count_inside,
        separation_ok=bool(separation_ok),
        max_zeros_per_gap=max_per_gap,
        details=tuple(int(c) for c in gap_counts),
        outside_count=outside_count,
    )


@dataclass(frozen=True)
class EmpiricalCDF:
    """Step distribution of roots, weight 1/n each, mass about d/n.

    Roots outside [-1, 1] are clamped to the nearest endpoint for the
    comparison window; ``clamped`` counts them.
    """

    points: np.ndarray
    weight: float
    total_mass: float
    clamped: int

    def evaluate(self, x: float) -> float:
        return float(np.count_nonzero(self.points <= x) * self.weight)

    def steps(self) -> list[tuple[float, float]]:
        return [
            (float(z), float((i + 1) * self.weight)) for i, z in enumerate(self.points)
        ]


def zero_counting_measure(sol: ExtremalSolution) -> EmpiricalCDF:
    """Empirical distribution of the solution's roots with weight 1/n."""
    zs = list(sol.zeros.zeros)
    clamped = 0
    if sol.outside_zero is not None:
        zs.append(float(np.clip(sol.outside_zero, -1.0, 1.0)))
        clamped = 1
    pts = np.sort(np.asarray(zs, dtype=float))
    w = 1.0 / sol.n
    return EmpiricalCDF(
        points=pts, weight=w, total_mass=w * len(pts), clamped=clamped
    )
