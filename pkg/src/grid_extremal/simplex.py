"""Dense two-phase simplex solver with deterministic pivoting.

Solves the standard-form program

    minimize    c . x
    subject to  A[i] . x <= b[i]   (rows not listed in equality_rows)
                A[i] . x  = b[i]   (rows listed in equality_rows)
                x >= 0

by the classical tableau method.  Pricing is Dantzig (most negative
reduced cost) with ties broken by lowest column index, and the ratio test
breaks ties by lowest basic-variable index; after a long degenerate stall
the solver switches to Bland's rule outright, which guarantees
termination.  On termination the tableau is rebuilt from a fresh dense
factorization of the final basis (reinversion) and iteration resumes if
the exact reduced costs are not optimal, so accumulated tableau drift
cannot produce a falsely certified optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    InvalidArgumentError,
    LPInfeasibleError,
    LPIterationLimitError,
    LPUnboundedError,
    NumericFailure,
)

_PIV_TOL = 1e-9
_RC_TOL = 1e-10
_STALL_LIMIT = 300
_MAX_REFRESH = 8


@dataclass(frozen=True)
class LPResult:
    """Optimal primal/dual pair for one call to :func:`lp_solve`.

    ``gap`` is the absolute primal-dual objective gap |c.x - b.y|;
    ``max_violation`` additionally folds in primal/dual residuals and
    any negativity of x (callers scale by 1 + |objective|).  ``basis``
    indexes columns of the slack-extended matrix and can be passed back
    as a warm start for a related problem.
    """

    x: np.ndarray
    y: np.ndarray
    objective: float
    gap: float
    iterations: int
    basis: tuple[int, ...]
    max_violation: float = 0.0


def _pivot(T: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    """Pivot on tableau row ``row`` (1-based: row 0 is the objective)."""
    piv = T[row, col]
    T[row] /= piv
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])
    T[:, col] = 0.0
    T[row, col] = 1.0
    basis[row - 1] = col


def _run_simplex(
    T: np.ndarray,
    basis: np.ndarray,
    allowed: np.ndarray,
    max_iter: int,
    iterations_so_far: int,
) -> int:
    """Iterate to tableau optimality.

    T has shape (m+1, ncols+1): row 0 is the reduced-cost row with the
    negated objective in its last entry; rows 1..m are the constraints
    with the right-hand side in the last column.  ``allowed`` masks
    columns permitted to enter (artificials are barred in phase 2).
    """
    m = T.shape[0] - 1
    ncols = T.shape[1] - 1
    it = iterations_so_far
    bland = False
    stall = 0
    last_obj = T[0, -1]
    while True:
        rc = T[0, :ncols]
        if bland:
            elig = np.nonzero((rc < -_RC_TOL) & allowed)[0]
            if elig.size == 0:
                return it
            j = int(elig[0])
        else:
            masked = np.where(allowed, rc, np.inf)
            j = int(np.argmin(masked))
            if masked[j] >= -_RC_TOL:
                return it
        col = T[1:, j]
        pos = col > _PIV_TOL
        if not np.any(pos):
            raise LPUnboundedError("objective unbounded below")
        ratios = np.full(m, np.inf)
        rhs = np.maximum(T[1:, -1], 0.0)
        ratios[pos] = rhs[pos] / col[pos]
        rmin = ratios.min()
        ties = np.nonzero(ratios <= rmin + 1e-9 * (1.0 + abs(rmin)))[0]
        r = int(ties[np.argmin(basis[ties])])  # Bland tie-break on the leaving side
        _pivot(T, basis, r + 1, j)
        it += 1
        if it >= max_iter:
            raise LPIterationLimitError(f"simplex exceeded {max_iter} iterations")
        obj = T[0, -1]
        if obj > last_obj - 1e-13 * (1.0 + abs(last_obj)):
            stall += 1
            if stall >= _STALL_LIMIT:
                bland = True
        else:
            stall = 0
            last_obj = obj


def _price(T: np.ndarray, basis: np.ndarray, costs: np.ndarray) -> None:
    """Recompute the reduced-cost row of T for the given cost vector."""
    cb = costs[basis]
    T[0, :-1] = costs - cb @ T[1:, :-1]
    T[0, -1] = -float(cb @ T[1:, -1])


def _exact_tableau(
    Aext: np.ndarray, bvec: np.ndarray, basis: np.ndarray, costs: np.ndarray
) -> np.ndarray:
    """Tableau rebuilt from fresh dense solves against the basis matrix."""
    B = Aext[:, basis]
    try:
        body = np.linalg.solve(B, Aext)
        rhs = np.linalg.solve(B, bvec)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"basis became singular during reinversion: {exc}") from exc
    m, total = Aext.shape
    T = np.zeros((m + 1, total + 1))
    T[1:, :total] = body
    T[1:, -1] = rhs
    _price(T, basis, costs)
    return T


def _solve_phase(
    Aext: np.ndarray,
    bvec: np.ndarray,
    costs: np.ndarray,
    basis: np.ndarray,
    allowed: np.ndarray,
    max_iter: int,
    iterations: int,
    T: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, int]:
    """Run the simplex with reinversion until the exact tableau is optimal.

    Termination also accepts a fixed point: when a full round of pivots
    returns to the same basis (or leaves the objective unchanged), the
    remaining negative reduced costs are below the conditioning noise of
    the instance and further rounds would only repeat the degenerate
    cycle.
    """
    if T is None:
        T = _exact_tableau(Aext, bvec, basis, costs)
    prev_basis = None
    prev_obj = None
    for refresh in range(_MAX_REFRESH):
        iterations = _run_simplex(T, basis, allowed, max_iter, iterations)
        T = _exact_tableau(Aext, bvec, basis, costs)
        rc_ok = np.all(T[0, :-1][allowed] >= -10 * _RC_TOL)
        rhs_ok = np.all(T[1:, -1] >= -1e-9 * (1.0 + np.abs(bvec).max(initial=0.0)))
        if rc_ok and rhs_ok:
            break
        obj = -T[0, -1]
        basis_set = frozenset(basis.tolist())
        if prev_basis is not None and (
            basis_set == prev_basis
            or abs(obj - prev_obj) <= 1e-12 * (1.0 + abs(obj))
        ):
            break
        prev_basis = basis_set
        prev_obj = obj
    return T, iterations


def lp_solve(
    A: np.ndarray,
    b: np.ndarray,
    c: np.ndarray,
    equality_rows: Iterable[int] = (),
    initial_basis: Optional[Sequence[int]] = None,
    max_iter: Optional[int] = None,
    require_warm_start: bool = False,
) -> LPResult:
    """Solve min c.x subject to mixed <=/= rows and x >= 0.

    Parameters
    ----------
    A, b, c : array_like
        Dense constraint matrix (m x n), right-hand side, and cost vector.
    equality_rows : iterable of int
        Indices of rows that are equalities; all other rows are <=.
    initial_basis : sequence of int, optional
        Column indices (into the slack-extended matrix) forming a basis
        whose basic solution is feasible.  When valid, phase 1 is skipped.
    max_iter : int, optional
        Pivot cap across both phases.
    require_warm_start : bool
        When True, a numerically unusable ``initial_basis`` raises
        ``NumericFailure`` instead of falling back to phase 1 (callers
        that construct mathematically feasible bases use this to fail
        fast when double precision cannot represent the basis solve).

    Raises
    ------
    LPInfeasibleError, LPUnboundedError, LPIterationLimitError, NumericFailure
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    c = np.atleast_1d(np.asarray(c, dtype=float))
    if A.size == 0:
        A = A.reshape(0, c.size)
    m, n = A.shape
    if b.shape != (m,) or c.shape != (n,):
        raise InvalidArgumentError(
            f"shape mismatch: A is {A.shape}, b is {b.shape}, c is {c.shape}"
        )
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b)) and np.all(np.isfinite(c))):
        raise InvalidArgumentError("LP data must be finite")
    eq = np.zeros(m, dtype=bool)
    eq_list = list(equality_rows)
    if eq_list:
        eq[np.asarray(eq_list, dtype=int)] = True

    if m == 0:
        if np.any(c < -_RC_TOL):
            raise LPUnboundedError("no constraints and a negative cost entry")
        return LPResult(
            x=np.zeros(n), y=np.zeros(0), objective=0.0, gap=0.0, iterations=0, basis=()
        )

    # slack-extended standard form: As x = bs, x >= 0
    n_ineq = int(np.count_nonzero(~eq))
    ncols = n + n_ineq
    As = np.zeros((m, ncols))
    As[:, :n] = A
    slack_of_row = np.full(m, -1, dtype=int)
    k = n
    for i in range(m):
        if not eq[i]:
            As[i, k] = 1.0
            slack_of_row[i] = k
            k += 1
    bs = b.copy()
    flipped = bs < 0.0
    As[flipped] *= -1.0
    bs[flipped] = -bs[flipped]
    cs = np.concatenate([c, np.zeros(n_ineq)])

    if max_iter is None:
        max_iter = 50 * (m + ncols + 10)

    iterations = 0
    basis = None
    row_map = list(range(m))

    if initial_basis is not None:
        ib = np.asarray(list(initial_basis), dtype=int)
        if ib.shape == (m,) and len(set(ib.tolist())) == m and np.all(ib < ncols):
            try:
                xb = np.linalg.solve(As[:, ib], bs)
                ok = np.all(xb >= -1e-9 * (1.0 + np.abs(bs).max()))
            except np.linalg.LinAlgError:
                ok = False
            if ok:
                basis = ib.copy()
                allowed = np.ones(ncols, dtype=bool)
                _, iterations = _solve_phase(
                    As, bs, cs, basis, allowed, max_iter, iterations
                )
        if basis is None and require_warm_start:
            raise NumericFailure(
                "warm-start basis is numerically singular or infeasible; "
                "the instance exceeds the double-precision certification range"
            )

    if basis is None:
        # phase 1: slacks of unflipped inequality rows start basic,
        # artificials cover the rest
        need_art = [i for i in range(m) if eq[i] or flipped[i]]
        n_art = len(need_art)
        total = ncols + n_art
        A1 = np.zeros((m, total))
        A1[:, :ncols] = As
        basis = np.empty(m, dtype=int)
        for j, i in enumerate(need_art):
            A1[i, ncols + j] = 1.0
            basis[i] = ncols + j
        for i in range(m):
            if not (eq[i] or flipped[i]):
                basis[i] = slack_of_row[i]
        cost1 = np.zeros(total)
        cost1[ncols:] = 1.0
        allowed = np.ones(total, dtype=bool)
        T, iterations = _solve_phase(A1, bs, cost1, basis, allowed, max_iter, iterations)
        feas = -T[0, -1]
        if feas > 1e-8 * (1.0 + np.abs(bs).max()):
            raise LPInfeasibleError(f"phase-1 objective {feas:.3e} > 0")
        # drive remaining artificials out of the basis
        drop_rows = []
        for i in range(m):
            if basis[i] >= ncols:
                row = T[1 + i, :ncols]
                cand = np.nonzero(np.abs(row) > _PIV_TOL)[0]
                if cand.size:
                    _pivot(T, basis, 1 + i, int(cand[0]))
                    iterations += 1
                else:
                    drop_rows.append(i)
        if drop_rows:
            keep = np.ones(m, dtype=bool)
            keep[drop_rows] = False
            row_map = [i for i in range(m) if i not in drop_rows]
            As_act = As[keep]
            bs_act = bs[keep]
            basis = basis[keep]
        else:
            As_act = As
            bs_act = bs
        allowed = np.ones(ncols, dtype=bool)
        _, iterations = _solve_phase(
            As_act, bs_act, cs, basis, allowed, max_iter, iterations
        )

    # fresh primal/dual from the final basis
    rows = np.asarray(row_map, dtype=int)
    Bfin = As[np.ix_(rows, basis)]
    try:
        xb = np.linalg.solve(Bfin, bs[rows])
        y_rows = np.linalg.solve(Bfin.T, cs[basis])
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"final basis is singular: {exc}") from exc
    x_full = np.zeros(ncols)
    x_full[basis] = xb
    y_std = np.zeros(m)
    y_std[rows] = y_rows

    x = x_full[:n]
    objective = float(c @ x)
    dual_obj = float(bs @ y_std)
    gap = abs(objective - dual_obj)
    # composite diagnostic: primal residual, dual residual, sign of x
    resid_p = As @ x_full - bs
    dual_slack = cs - As.T @ y_std
    max_violation = max(
        gap,
        float(np.abs(resid_p).max(initial=0.0)),
        float(np.maximum(-dual_slack, 0.0).max(initial=0.0)),
        float(np.maximum(-x_full, 0.0).max(initial=0.0)),
    )
    # undo the row flips in the reported duals
    y = y_std.copy()
    y[flipped] = -y[flipped]
    return LPResult(
        x=x,
        y=y,
        objective=objective,
        gap=gap,
        iterations=iterations,
        basis=tuple(int(j) for j in basis),
        max_violation=max_violation,
    )
