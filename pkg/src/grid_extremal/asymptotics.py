"""Finite-n experiments against the limiting growth constant.

Two computational routes approach the same limit:

- the ratio route maximizes the sup-to-grid norm ratio directly
  (``solve_ratio_extremal``), and
- the monic route takes the degree-floor(alpha n) monic minimizer of
  the grid norm and measures its sup-to-grid ratio, a feasible
  competitor and hence a lower bound for the ratio route.

Per grid size n the normalized statistic is log(ratio) / n; a least
squares fit of a + b/n over the largest grid sizes extrapolates the
n -> infinity value, compared against the closed-form growth constant.
Zero distributions are compared with the equilibrium measure through
the Kolmogorov distance of their distribution functions.

Rows of a sweep are independent; with workers > 1 they run on a thread
pool and are merged in input order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .equilibrium import cdf, equilibrium_measure, growth_constant, saturation_radius
from .errors import InvalidArgumentError, NumericFailure
from .grid_poly import RootProduct, eval_log_abs, make_grid, roots_in_window
from .minmax_solver import solve_monic_min
from .ratio_extremal import solve_ratio_extremal, zero_counting_measure

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SweepRow:
    n: int
    d: int
    ratio: float
    log_ratio_over_n: float
    monic_route_value: Optional[float] = None
    ks_distance: Optional[float] = None

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "ratio": self.ratio,
            "log_ratio_over_n": self.log_ratio_over_n,
            "monic_route_value": self.monic_route_value,
            "ks_distance": self.ks_distance,
        }


@dataclass(frozen=True)
class SweepReport:
    """One route's sweep over grid sizes, with the 1/n extrapolation."""

    alpha: float
    route: str
    rows: tuple[SweepRow, ...]
    extrapolated: float
    target: float
    rel_error: float

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "route": self.route,
            "rows": [r.to_json_dict() for r in self.rows],
            "extrapolated": self.extrapolated,
            "target": self.target,
            "rel_error": self.rel_error,
        }

    def csv_rows(self) -> list[list]:
        head = ["n", "d", "ratio", "log_ratio_over_n", "monic_route_value", "ks_distance"]
        out = [head]
        for r in self.rows:
            out.append(
                [
                    r.n,
                    r.d,
                    r.ratio,
                    r.log_ratio_over_n,
                    "" if r.monic_route_value is None else r.monic_route_value,
                    "" if r.ks_distance is None else r.ks_distance,
                ]
            )
        return out

    def plot_rows(self) -> list[list]:
        """(1/n, statistic) pairs plus the horizontal target value."""
        out = [["inv_n", "log_ratio_over_n", "target"]]
        for r in self.rows:
            stat = r.monic_route_value if self.route == "monic" else r.log_ratio_over_n
            out.append([1.0 / r.n, stat, self.target])
        return out


@dataclass(frozen=True)
class SqrtRegimeRow:
    n: int
    d: int
    ratio: float
    exponent_estimate: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "ratio": self.ratio,
            "exponent_estimate": self.exponent_estimate,
        }


@dataclass(frozen=True)
class SqrtRegimeReport:
    """Bounded-degree regime d = round(c sqrt(n)): the ratio stays a
    bounded power, measured by n log(ratio) / d^2."""

    c: float
    rows: tuple[SqrtRegimeRow, ...]
    band_min: float
    band_max: float

    def to_json_dict(self) -> dict:
        return {
            "c": self.c,
            "rows": [r.to_json_dict() for r in self.rows],
            "band_min": self.band_min,
            "band_max": self.band_max,
        }

    def csv_rows(self) -> list[list]:
        out = [["n", "d", "ratio", "exponent_estimate"]]
        for r in self.rows:
            out.append([r.n, r.d, r.ratio, r.exponent_estimate])
        return out


def _extrapolate(ns: Sequence[int], vals: Sequence[float]) -> float:
    """Least squares fit of a + b/n over the largest three grid sizes."""
    order = np.argsort(ns)
    ns = np.asarray(ns, dtype=float)[order][-3:]
    vals = np.asarray(vals, dtype=float)[order][-3:]
    if len(ns) == 1:
        return float(vals[0])
    X = np.column_stack([np.ones_like(ns), 1.0 / ns])
    coef, *_ = np.linalg.lstsq(X, vals, rcond=None)
    return float(coef[0])


def _degree_budget(n: int, alpha: float) -> int:
    return int(math.floor(alpha * n))


def _ks_distance_points(zeros: np.ndarray, weight: float, alpha: float) -> float:
    """Kolmogorov distance between a step distribution and the
    equilibrium distribution function, exact for monotone targets."""
    m = equilibrium_measure(alpha)
    zs = np.sort(np.clip(zeros, -1.0, 1.0))
    best = 0.0
    for i, z in enumerate(zs):
        F = cdf(m, float(z))
        best = max(best, abs(F - i * weight), abs(F - (i + 1) * weight))
    total = len(zs) * weight
    best = max(best, abs(cdf(m, 1.0) - total), cdf(m, -1.0))
    r = saturation_radius(alpha)
    for x in (-r, r):
        F = cdf(m, float(x))
        Fn = float(np.count_nonzero(zs <= x)) * weight
        best = max(best, abs(F - Fn))
    return float(best)


def _monic_roots(n: int, d: int) -> np.ndarray:
    """Roots of the monic grid minimizer, certified to be d simple real
    roots in (-1, 1) separated by the grid."""
    g = make_grid(n)
    sol = solve_monic_min(g, d)
    zs = roots_in_window(sol.poly, -1.0, 1.0, local_window=g.spacing).zeros
    if len(zs) != d:
        raise NumericFailure(
            f"recovered {len(zs)} roots of the monic minimizer, expected {d} "
            f"(n={n}); root finder breakdown"
        )
    gap_idx = np.searchsorted(g.points, zs, side="right") - 1
    counts = np.bincount(gap_idx, minlength=n - 1)
    if counts.max() > 1:
        raise NumericFailure(
            f"two monic-minimizer roots share a grid gap (n={n}, d={d})"
        )
    return zs


def _log_sup_norm_from_roots(zeros: np.ndarray) -> float:
    """Max over [-1, 1] of sum log |x - z|, exact in the log domain.

    Between consecutive roots the function is strictly concave, so one
    golden-section pass per root gap plus the endpoints is certified.
    """
    rp = RootProduct(leading=1.0, roots=zeros)

    def f(x: float) -> float:
        return eval_log_abs(rp, x)[0]

    knots = [-1.0] + [float(z) for z in zeros if -1.0 < z < 1.0] + [1.0]
    best = max(f(-1.0), f(1.0))
    for a, b in zip(knots, knots[1:]):
        if b - a < 1e-14:
            continue
        lo, hi = a, b
        x1 = hi - _GOLDEN * (hi - lo)
        x2 = lo + _GOLDEN * (hi - lo)
        f1, f2 = f(x1), f(x2)
        while hi - lo > 1e-12:
            if f1 < f2:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + _GOLDEN * (hi - lo)
                f2 = f(x2)
            else:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - _GOLDEN * (hi - lo)
                f1 = f(x1)
        best = max(best, f(0.5 * (lo + hi)))
    return best


def _log_grid_norm_from_roots(zeros: np.ndarray, n: int) -> float:
    g = make_grid(n)
    diffs = np.abs(g.points[:, None] - zeros[None, :])
    if np.any(diffs == 0.0):
        return -np.inf
    return float(np.max(np.sum(np.log(diffs), axis=1)))


def monic_route_value(n: int, alpha: float) -> tuple[float, np.ndarray]:
    """(1/n) log of the sup-to-grid norm ratio of the monic minimizer.

    Computed entirely in the log domain from the root product, so the
    huge norm ratios never overflow; returns the roots as well.
    """
    d = _degree_budget(n, alpha)
    zs = _monic_roots(n, d)
    log_ratio = _log_sup_norm_from_roots(zs) - _log_grid_norm_from_roots(zs, n)
    return log_ratio / n, zs


def _ratio_row(n: int, alpha: float, points_per_gap: Optional[int] = None) -> SweepRow:
    sol = solve_ratio_extremal(n, alpha, points_per_gap=points_per_gap)
    ks = _ks_distance_points(
        zero_counting_measure(sol).points, 1.0 / n, alpha
    )
    return SweepRow(
        n=n,
        d=sol.degree_budget,
        ratio=sol.ratio,
        log_ratio_over_n=sol.log_ratio_over_n,
        ks_distance=ks,
    )


def _monic_row(n: int, alpha: float) -> SweepRow:
    d = _degree_budget(n, alpha)
    value, zs = monic_route_value(n, alpha)
    ks = _ks_distance_points(zs, 1.0 / n, alpha)
    ratio = math.exp(n * value) if n * value < 700.0 else math.inf
    return SweepRow(
        n=n,
        d=d,
        ratio=ratio,
        log_ratio_over_n=value,
        monic_route_value=value,
        ks_distance=ks,
    )


def _run_rows(fn, n_list: Sequence[int], alpha: float, workers: int) -> list[SweepRow]:
    if not n_list:
        raise InvalidArgumentError("empty grid-size list")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(fn, int(n), alpha) for n in n_list]
            return [f.result() for f in futures]
    return [fn(int(n), alpha) for n in n_list]


def sweep_ratio(
    alpha: float,
    n_list: Sequence[int],
    workers: int = 1,
    points_per_gap: Optional[int] = None,
) -> SweepReport:
    """Ratio-route sweep: direct maximization for each grid size."""
    fn = lambda n, a: _ratio_row(n, a, points_per_gap)
    rows = sorted(_run_rows(fn, n_list, alpha, workers), key=lambda r: r.n)
    target = growth_constant(alpha)
    extrap = _extrapolate([r.n for r in rows], [r.log_ratio_over_n for r in rows])
    return SweepReport(
        alpha=float(alpha),
        route="ratio",
        rows=tuple(rows),
        extrapolated=extrap,
        target=target,
        rel_error=abs(extrap - target) / abs(target),
    )


def sweep_monic(alpha: float, n_list: Sequence[int], workers: int = 1) -> SweepReport:
    """Monic-route sweep: the grid minimizer as a feasible competitor."""
    rows = sorted(_run_rows(_monic_row, n_list, alpha, workers), key=lambda r: r.n)
    target = growth_constant(alpha)
    extrap = _extrapolate([r.n for r in rows], [r.monic_route_value for r in rows])
    return SweepReport(
        alpha=float(alpha),
        route="monic",
        rows=tuple(rows),
        extrapolated=extrap,
        target=target,
        rel_error=abs(extrap - target) / abs(target),
    )


def zero_distribution_distance(n: int, alpha: float, source: str = "monic") -> float:
    """Kolmogorov distance between the zero distribution of the chosen
    extremal polynomial (counted with weight 1/n) and the equilibrium
    distribution function."""
    if source == "monic":
        d = _degree_budget(n, alpha)
        zs = _monic_roots(n, d)
        return _ks_distance_points(zs, 1.0 / n, alpha)
    if source == "ratio":
        sol = solve_ratio_extremal(n, alpha)
        return _ks_distance_points(zero_counting_measure(sol).points, 1.0 / n, alpha)
    raise InvalidArgumentError(f"source must be 'monic' or 'ratio', got {source!r}")


def saturated_mass(n: int, alpha: float, source: str = "monic") -> tuple[float, float]:
    """(empirical, limiting) root mass of [r, 1], the right saturated piece."""
    r = saturation_radius(alpha)
    if source == "monic":
        zs = _monic_roots(n, _degree_budget(n, alpha))
    else:
        zs = zero_counting_measure(solve_ratio_extremal(n, alpha)).points
    emp = float(np.count_nonzero(zs >= r)) / n
    return emp, (1.0 - r) / 2.0


def sqrt_regime(c: float, n_list: Sequence[int], workers: int = 1) -> SqrtRegimeReport:
    """Degree proportional to sqrt(n): exponent estimates n log(ratio) / d^2."""
    if not n_list:
        raise InvalidArgumentError("empty grid-size list")
    if c <= 0.0:
        raise InvalidArgumentError(f"need c > 0, got {c}")

    def one(n: int, _alpha: float) -> SqrtRegimeRow:
        d = int(round(c * math.sqrt(n)))
        if d < 1:
            raise InvalidArgumentError(f"round(c sqrt(n)) = {d} < 1 for n = {n}")
        sol = solve_ratio_extremal(n, d / n, degree=d)
        return SqrtRegimeRow(
            n=n,
            d=d,
            ratio=sol.ratio,
            exponent_estimate=n * math.log(sol.ratio) / (d * d),
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(one, int(n), 0.0) for n in n_list]
            rows = [f.result() for f in futures]
    else:
        rows = [one(int(n), 0.0) for n in n_list]
    rows = sorted(rows, key=lambda r: r.n)
    est = [r.exponent_estimate for r in rows]
    return SqrtRegimeReport(
        c=float(c), rows=tuple(rows), band_min=min(est), band_max=max(est)
    )
