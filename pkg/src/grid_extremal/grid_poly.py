"""Grids, Chebyshev-basis polynomials, root extraction, and norms.

Everything downstream (minimax solvers, extremal-ratio search, sweep
harness) is built on the three value types defined here:

- ``Grid``: the n equispaced points (2k - n - 1)/(n - 1), k = 1..n, which
  run from -1 to 1 inclusive.
- ``ChebPoly``: an immutable polynomial in the Chebyshev-T basis on
  [-1, 1].  The basis is evaluated by the Clenshaw recurrence, which is
  also a valid analytic continuation outside [-1, 1].
- ``RootProduct``: a polynomial given by its leading coefficient and full
  real root list, for log-domain evaluation when the expanded form would
  overflow.

All types are frozen; all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np
from numpy.polynomial import chebyshev as _cheb

from .errors import InvalidArgumentError, NumericFailure

# Trailing coefficients below this relative threshold do not count toward
# the degree: below double-precision resolution of the LP solutions.
TRUNCATION_TOL = 1e-13

NEG_INF = float("-inf")


@dataclass(frozen=True)
class Grid:
    """The n equispaced points in [-1, 1] including both endpoints."""

    n: int
    points: np.ndarray

    @property
    def spacing(self) -> float:
        """Constant gap between consecutive points, 2/(n-1)."""
        return 2.0 / (self.n - 1)


def make_grid(n: int) -> Grid:
    """Build the equispaced n-point grid on [-1, 1].

    Parameters
    ----------
    n : int
        Number of points, at least 2.

    Returns
    -------
    Grid
        Points (2k - n - 1)/(n - 1) for k = 1..n, strictly increasing,
        first -1 and last +1, constant spacing 2/(n - 1).
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidArgumentError(f"grid size must be an integer >= 2, got {n!r}")
    k = np.arange(1, n + 1, dtype=float)
    pts = (2.0 * k - n - 1.0) / (n - 1.0)
    pts[0] = -1.0
    pts[-1] = 1.0
    pts.flags.writeable = False
    return Grid(n=int(n), points=pts)


@dataclass(frozen=True)
class ChebPoly:
    """Polynomial on [-1, 1] stored as Chebyshev-T coefficients c_0..c_d."""

    coeffs: np.ndarray = field()

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if c.ndim != 1 or c.size == 0:
            raise InvalidArgumentError("coefficients must be a non-empty 1-d array")
        if not np.all(np.isfinite(c)):
            raise InvalidArgumentError("coefficients must be finite")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        """Index of the last coefficient above the truncation threshold."""
        c = np.abs(self.coeffs)
        top = c.max()
        if top == 0.0:
            return 0
        above = np.nonzero(c > TRUNCATION_TOL * top)[0]
        return int(above[-1]) if above.size else 0

    def __call__(self, x):
        """Evaluate by the Clenshaw recurrence (valid for any real x)."""
        return _cheb.chebval(x, self.coeffs)

    def derivative(self) -> "ChebPoly":
        d = _cheb.chebder(self.coeffs)
        if d.size == 0:
            d = np.zeros(1)
        return ChebPoly(d)

    @classmethod
    def from_roots(cls, roots, leading: float = 1.0) -> "ChebPoly":
        """Expanded Chebyshev form of leading * prod (x - root)."""
        if len(roots) == 0:
            return cls(np.array([float(leading)]))
        return cls(float(leading) * _cheb.chebfromroots(roots))

    def to_json_dict(self) -> dict:
        return {"basis": "chebyshev", "coeffs": [float(c) for c in self.coeffs]}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ChebPoly":
        if obj.get("basis") != "chebyshev":
            raise InvalidArgumentError(f"unsupported basis {obj.get('basis')!r}")
        return cls(np.asarray(obj["coeffs"], dtype=float))


@dataclass(frozen=True)
class RootProduct:
    """Polynomial leading * prod_i (x - roots[i]) kept in factored form."""

    leading: float
    roots: np.ndarray

    def __post_init__(self):
        if self.leading == 0.0 or not np.isfinite(self.leading):
            raise InvalidArgumentError("leading coefficient must be nonzero and finite")
        r = np.atleast_1d(np.asarray(self.roots, dtype=float))
        r = r.copy()
        r.flags.writeable = False
        object.__setattr__(self, "roots", r)


@dataclass(frozen=True)
class ZeroSet:
    """Sorted real roots found in a window, with the worst scaled residual."""

    zeros: np.ndarray
    residual: float


def eval_log_abs(p: Union[ChebPoly, RootProduct], x: float) -> tuple[float, int]:
    """log |p(x)| together with the sign of p(x).

    For a ``RootProduct`` the value is the sum of log |x - root| terms plus
    log |leading|, exact to accumulated rounding and immune to overflow.
    For a ``ChebPoly`` the polynomial is evaluated directly.  When x hits a
    root exactly the magnitude is the -inf sentinel and the sign is 0.
    """
    if isinstance(p, RootProduct):
        diffs = float(x) - p.roots
        if np.any(diffs == 0.0):
            return NEG_INF, 0
        log_mag = float(np.log(np.abs(p.leading)) + np.sum(np.log(np.abs(diffs))))
        neg = int(np.count_nonzero(diffs < 0.0)) + (1 if p.leading < 0 else 0)
        return log_mag, (-1 if neg % 2 else 1)
    v = float(p(x))
    if v == 0.0:
        return NEG_INF, 0
    return float(np.log(abs(v))), (1 if v > 0 else -1)


def _trimmed_coeffs(p: ChebPoly) -> np.ndarray:
    return p.coeffs[: p.degree + 1]


def _companion_real_candidates(coeffs: np.ndarray) -> np.ndarray:
    """Real parts of colleague-matrix eigenvalues that are numerically real."""
    try:
        m = _cheb.chebcompanion(coeffs)
        eig = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
        raise NumericFailure(f"colleague-matrix eigenvalue iteration failed: {exc}") from exc
    keep = np.abs(eig.imag) <= 1e-8 * np.maximum(1.0, np.abs(eig.real))
    return np.sort(eig.real[keep])


def _newton_polish(p: ChebPoly, dp: ChebPoly, z: float, lo: float, hi: float) -> float:
    """Guarded Newton iteration, falling back to bisection brackets."""
    span = hi - lo
    x = z
    for _ in range(30):
        with np.errstate(all="ignore"):
            fx = float(p(x))
            dfx = float(dp(x))
        if not np.isfinite(fx) or not np.isfinite(dfx) or dfx == 0.0:
            break
        step = fx / dfx
        if not np.isfinite(step) or abs(step) > 0.1 * span + 1e-6:
            break
        x_new = x - step
        if x_new < lo - 0.05 * span or x_new > hi + 0.05 * span:
            break
        x = x_new
        if abs(step) < 1e-15 * max(1.0, abs(x)):
            break
    # bisection cleanup when a sign change brackets the polished point
    h = 1e-9 * max(1.0, span)
    a, b = x - h, x + h
    with np.errstate(all="ignore"):
        fa, fb = float(p(a)), float(p(b))
    if np.isfinite(fa) and np.isfinite(fb) and fa * fb < 0.0:
        for _ in range(60):
            m = 0.5 * (a + b)
            fm = float(p(m))
            if fm == 0.0:
                return m
            if fa * fm < 0.0:
                b, fb = m, fm
            else:
                a, fa = m, fm
        x = 0.5 * (a + b)
    return x


def _local_sup(p: ChebPoly, z: float, h: float) -> float:
    xs = np.linspace(z - h, z + h, 65)
    with np.errstate(all="ignore"):
        vals = np.abs(p(xs))
    vals = vals[np.isfinite(vals)]
    return float(vals.max()) if vals.size else 0.0


def roots_in_window(
    p: ChebPoly, lo: float, hi: float, local_window: float | None = None
) -> ZeroSet:
    """All real roots of p in [lo, hi].

    Candidates come from the colleague-matrix (Chebyshev companion)
    eigenvalues, filtered to the window; each is polished by guarded
    Newton/bisection steps.  A candidate is kept only if its residual
    |p(z)| stays below 1e-9 times max(1, local sup norm of p near z).

    Parameters
    ----------
    p : ChebPoly
    lo, hi : float
        Window bounds, lo < hi.
    local_window : float, optional
        Half-width used for the residual scale; callers working against a
        grid should pass the grid spacing.  Defaults to a window-sized
        heuristic.
    """
    if not lo < hi:
        raise InvalidArgumentError(f"need lo < hi, got [{lo}, {hi}]")
    c = _trimmed_coeffs(p)
    if len(c) <= 1:
        return ZeroSet(zeros=np.empty(0), residual=0.0)
    if local_window is None:
        local_window = (hi - lo) / max(16, 2 * len(c))
    dp = p.derivative()
    # eigenvalues of clustered roots can drift a few percent; keep a
    # generous margin before polishing, cut strictly afterwards
    span = hi - lo
    margin = 0.05 * span + 1e-9
    edge = 1e-12 * max(1.0, span)
    cand = _companion_real_candidates(c)
    cand = cand[(cand >= lo - margin) & (cand <= hi + margin)]
    zeros = []
    worst = 0.0
    for z in cand:
        z = _newton_polish(p, dp, float(z), lo, hi)
        if z < lo - edge or z > hi + edge:
            continue
        z = min(max(z, lo), hi)
        scale = max(1.0, _local_sup(p, z, local_window))
        res = abs(float(p(z))) / scale
        if res <= 1e-9:
            zeros.append(z)
            worst = max(worst, res)
    zeros.sort()
    # collapse duplicates produced by clustered eigenvalues
    out = []
    tol = 1e-11 * max(1.0, hi - lo)
    for z in zeros:
        if not out or z - out[-1] > tol:
            out.append(z)
    return ZeroSet(zeros=np.asarray(out), residual=worst)


def _golden_max(f, a: float, b: float, tol: float = 1e-12) -> tuple[float, float]:
    """Golden-section maximization of f on [a, b]."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
    xm = 0.5 * (a + b)
    return xm, f(xm)


def sup_norm_interval(p: ChebPoly, lo: float, hi: float) -> tuple[float, float]:
    """Maximum of |p| over [lo, hi] with an attaining point.

    Two independent routes are compared: critical points of p (roots of
    the derivative via the colleague matrix) plus the endpoints, and a
    dense Chebyshev-spaced sampling with local golden-section refinement.
    Disagreement beyond 1e-6 relative raises ``NumericFailure``.
    """
    if not lo < hi:
        raise InvalidArgumentError(f"need lo < hi, got [{lo}, {hi}]")
    d = p.degree

    def absp(x):
        return abs(float(p(x)))

    # route 1: endpoints + critical points
    candidates = [lo, hi]
    if d >= 2:
        dp = p.derivative()
        crit = roots_in_window(dp, lo, hi).zeros
        candidates.extend(float(z) for z in crit)
    vals = [absp(x) for x in candidates]
    i1 = int(np.argmax(vals))
    v1, x1 = vals[i1], candidates[i1]

    # route 2: dense sampling + refinement of the best bracket
    m = max(30 * (d + 1), 33)
    theta = np.linspace(0.0, np.pi, m)
    xs = 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos(theta)[::-1]
    ys = np.abs(p(xs))
    j = int(np.argmax(ys))
    a = xs[max(j - 1, 0)]
    b = xs[min(j + 1, m - 1)]
    if a < b:
        x2, v2 = _golden_max(absp, float(a), float(b), tol=1e-13 * max(1.0, hi - lo))
    else:
        x2, v2 = float(xs[j]), float(ys[j])
    v2 = max(v2, float(ys[j]))

    scale = max(v1, v2, 1e-300)
    if abs(v1 - v2) > 1e-6 * scale:
        raise NumericFailure(
            f"sup-norm routes disagree: critical-point {v1!r} vs sampled {v2!r} on [{lo}, {hi}]"
        )
    if v2 > v1:
        return v2, float(x2)
    return v1, float(x1)


def grid_norm(p: ChebPoly, g: Grid) -> tuple[float, int]:
    """Maximum of |p| over the grid points, with the lowest attaining index."""
    vals = np.abs(p(g.points))
    idx = int(np.argmax(vals))
    return float(vals[idx]), idx
