"""Finite linear min-max solvers on the equispaced grid.

Two problems are solved, both as dense LPs with certified primal/dual
pairs:

- ``solve_monic_min``: the monic polynomial of given degree minimizing
  the max absolute value over the grid (the discrete Chebyshev
  polynomial of the grid).
- ``solve_pinned_max``: the largest value p(x*) attainable at an
  off-grid point by a polynomial of bounded degree with |p| <= bound on
  the grid.  By rescaling, the objective equals the best ratio of
  interval sup norm to grid norm achievable with attainment at x*.

Each problem is handed to the simplex core in the equivalent
weighted-l1 dual form, whose basis has degree + 1 rows instead of
2 * n, and whose optimal dual vector is exactly the coefficient vector
of the extremal polynomial.  Any degree + 1 grid points with the right
sign pattern form a feasible starting basis, so phase 1 is never
needed; the default reference spreads the points like the touching set
of the optimum (grid density near the endpoints, arctan profile in the
middle), and callers scanning many nearby pin points can thread the
previous touching set through ``start_points`` to cut the pivot count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import chebyshev as _cheb

from .errors import (
    DegenerateProblemError,
    InvalidArgumentError,
    LPIterationLimitError,
    NumericFailure,
)
from .grid_poly import ChebPoly, Grid, grid_norm, make_grid
from .simplex import LPResult, lp_solve

# caps verified by certificate-gap monitoring; beyond them the ratio
# values approach exp(n log 2) and double-precision LPs degrade
GRID_CAP = 400
DEGREE_CAP = 300

_ON_GRID_TOL = 1e-13


@dataclass(frozen=True)
class MinMaxProblem:
    """Description of one finite min-max instance.

    ``fixed_part`` is added to the free coefficient combination (used to
    impose monic-ness); ``pin`` is an optional (point, value) equality
    constraint used by the pinned maximization.
    """

    basis_dim: int
    constraint_points: np.ndarray
    pin: Optional[tuple[float, float]] = None
    fixed_part: Optional[ChebPoly] = None

    def validate(self) -> None:
        pts = np.asarray(self.constraint_points, dtype=float)
        if pts.ndim != 1 or pts.size < 1:
            raise InvalidArgumentError("constraint points must be a 1-d list")
        if np.any(np.diff(pts) <= 0):
            raise InvalidArgumentError("constraint points must be distinct and sorted")
        if self.basis_dim < 1:
            raise InvalidArgumentError("basis dimension must be positive")
        if self.pin is not None:
            x0 = self.pin[0]
            if np.min(np.abs(pts - x0)) < _ON_GRID_TOL:
                raise InvalidArgumentError("pin point coincides with a constraint point")


@dataclass(frozen=True)
class MinMaxSolution:
    """Optimizer of a min-max instance with its LP certificate.

    ``active_set`` lists constraint-point indices where |p| equals the
    grid max within 1e-9 relative; ``signs`` is the sign of p there.
    ``basis_points`` are the grid indices in the final LP basis (the
    touching set proper) and can seed the next related solve.
    """

    poly: ChebPoly
    objective: float
    active_set: tuple[int, ...]
    signs: tuple[int, ...]
    iterations: int
    certificate_gap: float
    basis_points: tuple[int, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "objective": self.objective,
            "active_set": list(self.active_set),
            "signs": list(self.signs),
            "coeffs": [float(v) for v in self.poly.coeffs],
            "iterations": self.iterations,
            "certificate_gap": self.certificate_gap,
        }


@lru_cache(maxsize=64)
def _basis_matrix(n: int, degree: int) -> np.ndarray:
    """Values T_j(xi_k) for j = 0..degree on the n-grid, cached per (n, d)."""
    g = make_grid(n)
    V = _cheb.chebvander(g.points, degree)
    V.flags.writeable = False
    return V


def _warmstart_cdf(alpha: float, x: float) -> float:
    """Distribution function used to spread the warm-start reference.

    Matches the limiting distribution of the touching points of the
    discrete minimax optimum: grid density near the endpoints, an
    arctan profile in the middle.  Only a heuristic; the solver is
    correct from any feasible basis.
    """
    r2 = 1.0 - alpha * alpha
    if r2 <= 0.0:
        return 0.5 * (x + 1.0)
    r = np.sqrt(r2)
    if x <= -r:
        return 0.5 * (x + 1.0)
    if x >= r:
        return alpha - 0.5 * (1.0 - x)
    s = np.sqrt(max(r2 - x * x, 0.0))
    G = (
        x * np.arctan2(alpha, s) + alpha * np.arcsin(x / r) - np.arctan2(alpha * x, s)
    ) / np.pi
    return 0.5 * (1.0 - r) + 0.5 * (r + alpha - 1.0) + G


@lru_cache(maxsize=256)
def _reference_indices_cached(n: int, degree: int) -> tuple[int, ...]:
    d = degree
    if d + 1 > n:
        raise DegenerateProblemError(f"cannot place {d + 1} reference points on {n} nodes")
    alpha = min(max(d / n, 1e-3), 1.0)
    targets = []
    for i in range(d + 1):
        q = alpha * (i + 0.5) / (d + 1)
        lo, hi = -1.0, 1.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if _warmstart_cdf(alpha, mid) < q:
                lo = mid
            else:
                hi = mid
        targets.append(0.5 * (lo + hi))
    idx = np.rint((np.asarray(targets) + 1.0) * (n - 1) / 2.0).astype(int)
    # force strict increase, leaving room for the points still to come
    idx[0] = min(max(idx[0], 0), n - 1 - d)
    for i in range(1, d + 1):
        idx[i] = min(max(idx[i], idx[i - 1] + 1), n - 1 - (d - i))
    return tuple(int(i) for i in idx)


def _reference_indices(n: int, degree: int) -> np.ndarray:
    return np.asarray(_reference_indices_cached(n, degree), dtype=int)


def _alternating_columns(point_idx: np.ndarray, n: int) -> list[int]:
    """Basis columns with strictly alternating signs (+ on the last point)."""
    d = len(point_idx) - 1
    cols = []
    for i, k in enumerate(point_idx):
        s = 1 if (d - i) % 2 == 0 else -1
        cols.append(int(k) if s > 0 else int(n + k))
    return cols


def _pinned_columns(
    point_idx: np.ndarray, points: np.ndarray, x_star: float, n: int
) -> list[int]:
    """Basis columns signed like the Lagrange basis at x* on the point set.

    The basic weights sigma_i * l_i(x*) are then all positive, so the
    basis is feasible for the pinned dual.  The sign pattern alternates
    except across the gap containing x*, where it repeats.
    """
    d = len(point_idx) - 1
    pts = points[point_idx]
    above = int(np.count_nonzero(pts > x_star))
    cols = []
    for i, k in enumerate(point_idx):
        n_above_excl = above - (1 if pts[i] > x_star else 0)
        s = (-1) ** ((d - i) + n_above_excl)
        cols.append(int(k) if s > 0 else int(n + k))
    return cols


def _lp_dual_form(At, bt, ct, d, warm) -> LPResult:
    """Run the dual-form LP from a warm basis with a tight pivot budget.

    Near the precision cliff (ratio values approaching 1/eps) the warm
    basis solve degrades or iteration stalls; both are surfaced as
    NumericFailure rather than a long phase-1 crawl.
    """
    try:
        return lp_solve(
            At,
            bt,
            ct,
            equality_rows=range(d + 1),
            initial_basis=warm,
            max_iter=60 * (d + 2) + 3000,
            require_warm_start=True,
        )
    except LPIterationLimitError as exc:
        raise NumericFailure(
            f"simplex did not certify within its pivot budget (degree {d}); "
            "the instance likely exceeds the double-precision range"
        ) from exc


def _active_set(
    lp: LPResult, p: ChebPoly, g: Grid
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Constraint points where |p| touches the grid max, with signs.

    The LP basis gives the optimal touching set exactly (its dual
    constraints are tight by construction); direct value detection at
    1e-9 relative is merged in to pick up symmetric ties in small,
    well-conditioned problems.
    """
    n = g.n
    found: dict[int, int] = {}
    for col in lp.basis:
        if col < 2 * n:
            k = col % n
            found.setdefault(k, 1 if col < n else -1)
    vals = p(g.points)
    top = float(np.abs(vals).max())
    if top > 0.0:
        for k in np.nonzero(np.abs(vals) >= (1.0 - 1e-9) * top)[0]:
            found.setdefault(int(k), 1 if vals[k] > 0 else -1)
    idx = tuple(sorted(found))
    return idx, tuple(found[k] for k in idx)


def _basis_points(lp: LPResult, n: int) -> tuple[int, ...]:
    return tuple(sorted({col % n for col in lp.basis if col < 2 * n}))


def _check_caps(n: int, degree: int) -> None:
    if n > GRID_CAP or degree > DEGREE_CAP:
        raise InvalidArgumentError(
            f"n <= {GRID_CAP} and degree <= {DEGREE_CAP} in double precision, "
            f"got n={n}, degree={degree}"
        )


def solve_monic_min(g: Grid, degree: int) -> MinMaxSolution:
    """Monic polynomial of the given degree minimizing the grid max.

    The LP is solved for the rescaled polynomial with unit leading
    Chebyshev coefficient (entries stay in [-1, 1]); the reported poly
    and objective are scaled back to the monic normalization.

    Raises
    ------
    DegenerateProblemError
        If degree >= n: a polynomial of degree n vanishes on the whole
        grid, so the minimum degenerates to zero.
    """
    n = g.n
    if degree < 1:
        raise InvalidArgumentError(f"degree must be >= 1, got {degree}")
    if degree >= n:
        raise DegenerateProblemError(
            f"degree {degree} >= grid size {n}: the minimum is degenerate (0)"
        )
    _check_caps(n, degree)
    d = int(degree)
    MinMaxProblem(
        basis_dim=d,
        constraint_points=g.points,
        fixed_part=ChebPoly(np.eye(d + 1)[-1]),
    ).validate()
    V = _basis_matrix(n, d)
    A = V[:, :d]  # free columns T_0..T_{d-1}
    f = V[:, d]  # fixed part: T_d values
    # dual form: min (-f).u + f.v  s.t.  A^T (u - v) = 0,  sum(u + v) = 1
    At = np.zeros((d + 1, 2 * n))
    At[:d, :n] = A.T
    At[:d, n:] = -A.T
    At[d, :] = 1.0
    bt = np.zeros(d + 1)
    bt[d] = 1.0
    ct = np.concatenate([-f, f])

    warm = _alternating_columns(_reference_indices(n, d), n)
    lp = _lp_dual_form(At, bt, ct, d, warm)
    t_scaled = -lp.objective
    q = np.append(lp.y[:d], 1.0)
    scale = float(np.ldexp(1.0, 1 - d))  # leading Chebyshev coeff of x^d
    poly = ChebPoly(scale * q)
    objective = scale * t_scaled

    qpoly = ChebPoly(q)
    gmax, _ = grid_norm(qpoly, g)
    # grid values of size t may come from coefficients many orders larger
    # (the polynomial is huge between the nodes), so re-evaluation noise
    # scales with the coefficient mass, not with t
    eval_noise = 1e-12 * float(np.abs(q).sum()) + 1e-9 * (1.0 + t_scaled)
    if not np.isfinite(objective) or abs(gmax - t_scaled) > eval_noise:
        raise NumericFailure(
            f"monic LP certificate mismatch: grid max {gmax!r} vs objective {t_scaled!r}"
        )
    active, sgn = _active_set(lp, qpoly, g)
    return MinMaxSolution(
        poly=poly,
        objective=objective,
        active_set=active,
        signs=sgn,
        iterations=lp.iterations,
        certificate_gap=lp.gap * scale,
        basis_points=_basis_points(lp, n),
    )


def solve_pinned_max(
    g: Grid,
    degree: int,
    x_star: float,
    bound: float = 1.0,
    start_points: Optional[Sequence[int]] = None,
) -> MinMaxSolution:
    """Maximize p(x*) over degree-bounded polynomials with |p| <= bound on the grid.

    The objective is at least ``bound`` (the constant polynomial is
    feasible), and by scale invariance objective/bound is the best
    ratio of |p(x*)| to grid norm for the given degree budget.

    Parameters
    ----------
    g : Grid
    degree : int
        Degree budget, at most n - 1.
    x_star : float
        Pin point in [-1, 1], not on the grid.
    bound : float
        Grid bound (default 1); the objective scales linearly with it.
    start_points : sequence of int, optional
        degree + 1 grid indices seeding the initial basis, e.g. the
        ``basis_points`` of a solution at a nearby pin point.

    Raises
    ------
    InvalidArgumentError
        If x* lies on the grid (the objective degenerates to the bound
        there) or outside [-1, 1].
    DegenerateProblemError
        If degree >= n (a polynomial vanishing on the grid makes the
        maximum unbounded).
    """
    n = g.n
    x_star = float(x_star)
    if degree < 0:
        raise InvalidArgumentError(f"degree must be >= 0, got {degree}")
    if degree >= n:
        raise DegenerateProblemError(
            f"degree {degree} >= grid size {n}: the maximum is unbounded"
        )
    if not -1.0 <= x_star <= 1.0:
        raise InvalidArgumentError(f"x* must lie in [-1, 1], got {x_star}")
    if float(np.min(np.abs(g.points - x_star))) < _ON_GRID_TOL:
        raise InvalidArgumentError(f"x* = {x_star} lies on the grid")
    if bound <= 0.0 or not np.isfinite(bound):
        raise InvalidArgumentError(f"bound must be positive, got {bound}")
    _check_caps(n, degree)
    d = int(degree)
    MinMaxProblem(
        basis_dim=d + 1, constraint_points=g.points, pin=(x_star, 1.0)
    ).validate()
    V = _basis_matrix(n, d)
    a = _cheb.chebvander(np.array([x_star]), d)[0]
    At = np.hstack([V.T, -V.T])
    ct = np.full(2 * n, float(bound))

    candidates = []
    if start_points is not None and len(start_points) == d + 1:
        candidates.append(np.asarray(sorted(start_points), dtype=int))
    candidates.append(_reference_indices(n, d))
    lp = None
    last_err: Optional[Exception] = None
    for pts in candidates:
        warm = _pinned_columns(pts, g.points, x_star, n)
        try:
            lp = _lp_dual_form(At, a, ct, d, warm)
            break
        except NumericFailure as exc:
            last_err = exc
    if lp is None:
        raise NumericFailure(f"pinned solve failed at x* = {x_star}: {last_err}")
    poly = ChebPoly(lp.y)
    objective = float(lp.objective)

    gmax, _ = grid_norm(poly, g)
    pin_val = float(poly(x_star))
    eval_noise = 1e-12 * float(np.abs(lp.y).sum()) + 1e-9 * (1.0 + abs(objective))
    if gmax > bound + eval_noise or abs(pin_val - objective) > eval_noise:
        raise NumericFailure(
            f"pinned LP certificate mismatch: grid max {gmax!r} (bound {bound}), "
            f"p(x*) {pin_val!r} vs objective {objective!r}"
        )
    active, sgn = _active_set(lp, poly, g)
    return MinMaxSolution(
        poly=poly,
        objective=objective,
        active_set=active,
        signs=sgn,
        iterations=lp.iterations,
        certificate_gap=lp.gap,
        basis_points=_basis_points(lp, n),
    )


__all__ = [
    "MinMaxProblem",
    "MinMaxSolution",
    "solve_monic_min",
    "solve_pinned_max",
    "lp_solve",
    "LPResult",
    "GRID_CAP",
    "DEGREE_CAP",
]
