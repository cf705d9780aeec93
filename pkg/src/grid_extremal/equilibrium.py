"""Constrained equilibrium measure, potentials, and the growth constant.

The limiting objects behind the grid extremal problems:

- the growth constant C(alpha) = ((1+a)log(1+a) + (1-a)log(1-a))/2 in
  closed form, as a power series, and as a definite integral (three
  independent routes that must agree),
- the constrained equilibrium measure of mass alpha whose density is
  1/2 near the endpoints (the saturated region) and an arctan profile
  in the middle, with r = sqrt(1 - alpha^2) marking the transition,
- logarithmic potentials U(x) = integral of log 1/|x-y| against a
  measure, by adaptive quadrature with substitution at the log
  singularity and exact antiderivatives on constant-density pieces,
- the potential-gap functional (min of U over the unsaturated support
  minus min of U over [-1, 1]) that the equilibrium measure maximizes
  with value C(alpha).

Measures are immutable piecewise densities on [-1, 1]; everything here
is pure and thread-safe.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate

from .errors import InvalidArgumentError, NumericFailure

_SUPP_TOL = 1e-9  # density below 1/2 by this margin counts as unsaturated
_DENSITY_CAP = 0.5 + 1e-12
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def saturation_radius(alpha: float) -> float:
    """Transition point r = sqrt(1 - alpha^2) between density regimes."""
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError(f"alpha must be in (0, 1), got {alpha}")
    return math.sqrt(1.0 - alpha * alpha)


def growth_constant(alpha: float) -> float:
    """((1+a) log(1+a) + (1-a) log(1-a)) / 2, the norm-ratio growth rate.

    Defined for 0 <= alpha < 1 with value 0 at alpha = 0; tends to
    log 2 as alpha approaches 1, where the ratio itself degenerates.
    """
    if not 0.0 <= alpha < 1.0:
        raise InvalidArgumentError(f"alpha must be in [0, 1), got {alpha}")
    if alpha == 0.0:
        return 0.0
    return 0.5 * ((1.0 + alpha) * math.log1p(alpha) + (1.0 - alpha) * math.log1p(-alpha))


def growth_constant_series(alpha: float, terms: int) -> float:
    """Partial sum of sum_k alpha^(2k) / (2k (2k-1)), k = 1..terms."""
    if not 0.0 <= alpha < 1.0:
        raise InvalidArgumentError(f"alpha must be in [0, 1), got {alpha}")
    if terms < 1:
        raise InvalidArgumentError(f"need at least one term, got {terms}")
    a2 = alpha * alpha
    total = 0.0
    power = 1.0
    for k in range(1, terms + 1):
        power *= a2
        total += power / (2 * k * (2 * k - 1))
    return total


def growth_constant_derivative(alpha: float) -> float:
    """d/dalpha of the growth constant: (log(1+a) - log(1-a)) / 2."""
    if not 0.0 <= alpha < 1.0:
        raise InvalidArgumentError(f"alpha must be in [0, 1), got {alpha}")
    return 0.5 * (math.log1p(alpha) - math.log1p(-alpha))


def _quad(f, a: float, b: float, tol: float = 1e-9, limit: int = 200) -> float:
    if b <= a:
        return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, a, b, limit=limit, epsabs=tol * 1e-3, epsrel=1e-12)
    if not np.isfinite(val) or err > tol:
        raise NumericFailure(
            f"quadrature did not converge on [{a}, {b}]: value {val}, error {err}"
        )
    return float(val)


def growth_constant_integral(alpha: float) -> float:
    """The growth constant as the integral over [r, 1] of
    log(alpha + sqrt(x^2 - r^2)) - log(1 - x^2) / 2.

    The integrand vanishes at x = r and has a logarithmic endpoint
    singularity at x = 1, removed by the substitution x = 1 - t^2.
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError(f"alpha must be in (0, 1), got {alpha}")
    r = saturation_radius(alpha)
    r2 = r * r

    def f(x):
        return math.log(alpha + math.sqrt(max(x * x - r2, 0.0))) - 0.5 * math.log1p(
            -x * x
        )

    mid = 0.5 * (r + 1.0)

    def g(t):
        # x = 1 - t^2; log(1 - x^2) = 2 log t + log(2 - t^2)
        x = 1.0 - t * t
        return (
            2.0
            * t
            * (
                math.log(alpha + math.sqrt(max(x * x - r2, 0.0)))
                - math.log(t)
                - 0.5 * math.log(2.0 - t * t)
            )
        )

    return _quad(f, r, mid) + _quad(g, 0.0, math.sqrt(1.0 - mid))


# ---------------------------------------------------------------------------
# piecewise measures


def _arctan_antiderivative(alpha: float, x: float) -> float:
    """Antiderivative of arctan(alpha / sqrt(r^2 - y^2)) / pi on [-r, r].

    Equals (x arctan(a/s) + a arcsin(x/r) - arctan(a x / s)) / pi with
    s = sqrt(r^2 - x^2); exact at the endpoints via arctan2.
    """
    r = saturation_radius(alpha)
    x = min(max(x, -r), r)
    s = math.sqrt(max(r * r - x * x, 0.0))
    return (
        x * math.atan2(alpha, s)
        + alpha * math.asin(min(max(x / r, -1.0), 1.0))
        - math.atan2(alpha * x, s)
    ) / math.pi


@dataclass(frozen=True)
class Piece:
    """One density piece on [a, b].

    Kinds:
    - "uniform": constant density ``height``
    - "arctan": coeff * arctan(alpha / sqrt(r^2 - x^2)) / pi + offset,
      the unsaturated profile of the equilibrium measure (and scaled or
      shifted variants of it)
    - "table": sampled values with linear interpolation
    """

    a: float
    b: float
    kind: str
    height: float = 0.0
    alpha: float = 0.0
    coeff: float = 1.0
    offset: float = 0.0
    xs: Optional[np.ndarray] = None
    ys: Optional[np.ndarray] = None

    def __post_init__(self):
        if not self.a < self.b:
            raise InvalidArgumentError(f"piece needs a < b, got [{self.a}, {self.b}]")
        if self.kind not in ("uniform", "arctan", "table"):
            raise InvalidArgumentError(f"unknown piece kind {self.kind!r}")
        if self.kind == "table":
            xs = np.asarray(self.xs, dtype=float)
            ys = np.asarray(self.ys, dtype=float)
            if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
                raise InvalidArgumentError("table piece needs matching xs/ys, length >= 2")
            if np.any(np.diff(xs) <= 0):
                raise InvalidArgumentError("table xs must be strictly increasing")
            xs.flags.writeable = False
            ys.flags.writeable = False
            object.__setattr__(self, "xs", xs)
            object.__setattr__(self, "ys", ys)

    def density(self, x):
        """Density values at x (scalar or array), zero outside [a, b]."""
        x = np.asarray(x, dtype=float)
        inside = (x >= self.a) & (x <= self.b)
        if self.kind == "uniform":
            vals = np.full_like(x, self.height)
        elif self.kind == "arctan":
            r2 = 1.0 - self.alpha * self.alpha
            s = np.sqrt(np.maximum(r2 - x * x, 0.0))
            vals = self.coeff * np.arctan2(self.alpha, s) / np.pi + self.offset
        else:
            vals = np.interp(x, self.xs, self.ys)
        return np.where(inside, vals, 0.0)

    def density_scalar(self, x: float) -> float:
        """Scalar density without array machinery (quadrature hot path)."""
        if self.kind == "uniform":
            return self.height
        if self.kind == "arctan":
            s = math.sqrt(max(1.0 - self.alpha * self.alpha - x * x, 0.0))
            return self.coeff * math.atan2(self.alpha, s) / math.pi + self.offset
        return float(np.interp(x, self.xs, self.ys))

    def mass(self) -> float:
        if self.kind == "uniform":
            return self.height * (self.b - self.a)
        if self.kind == "arctan":
            G = _arctan_antiderivative
            return self.coeff * (
                G(self.alpha, self.b) - G(self.alpha, self.a)
            ) + self.offset * (self.b - self.a)
        return float(np.trapezoid(self.ys, self.xs))

    def cdf_partial(self, x: float) -> float:
        """Mass of the piece below x."""
        if x <= self.a:
            return 0.0
        if x >= self.b:
            return self.mass()
        if self.kind == "uniform":
            return self.height * (x - self.a)
        if self.kind == "arctan":
            G = _arctan_antiderivative
            return self.coeff * (
                G(self.alpha, x) - G(self.alpha, self.a)
            ) + self.offset * (x - self.a)
        mask = self.xs <= x
        xs = np.append(self.xs[mask], x)
        ys = np.append(self.ys[mask], float(np.interp(x, self.xs, self.ys)))
        return float(np.trapezoid(ys, xs))

    def to_json_dict(self) -> dict:
        if self.kind == "uniform":
            return {"kind": "uniform", "a": self.a, "b": self.b, "height": self.height}
        if self.kind == "arctan":
            return {
                "kind": "arctan",
                "a": self.a,
                "b": self.b,
                "alpha": self.alpha,
                "coeff": self.coeff,
                "offset": self.offset,
            }
        return {
            "kind": "table",
            "a": self.a,
            "b": self.b,
            "xs": [float(v) for v in self.xs],
            "ys": [float(v) for v in self.ys],
        }


class PiecewiseMeasure:
    """Measure on [-1, 1] given by a piecewise-smooth density.

    Instances are validated on construction: the density must stay in
    [0, 1/2] (membership in the constrained class) and the cached total
    mass must match the piece masses to 1e-10.
    """

    def __init__(self, pieces: Sequence[Piece], expected_mass: Optional[float] = None):
        if not pieces:
            raise InvalidArgumentError("a measure needs at least one piece")
        ordered = sorted(pieces, key=lambda p: p.a)
        for p, q in zip(ordered, ordered[1:]):
            if q.a < p.b - 1e-14:
                raise InvalidArgumentError("pieces must not overlap")
        if ordered[0].a < -1.0 - 1e-12 or ordered[-1].b > 1.0 + 1e-12:
            raise InvalidArgumentError("pieces must lie inside [-1, 1]")
        self.pieces: tuple[Piece, ...] = tuple(ordered)
        for p in self.pieces:
            xs = np.linspace(p.a, p.b, 201)[1:-1]
            vals = p.density(xs)
            if np.any(vals < -1e-12) or np.any(vals > _DENSITY_CAP):
                raise InvalidArgumentError(
                    f"piece density leaves [0, 1/2] on [{p.a}, {p.b}]"
                )
        mass = float(sum(p.mass() for p in self.pieces))
        if expected_mass is not None and abs(mass - expected_mass) > 1e-10:
            raise NumericFailure(
                f"measure mass {mass!r} differs from expected {expected_mass!r}"
            )
        self.total_mass: float = mass

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        # pieces do not overlap, so later pieces may overwrite the shared
        # boundary point instead of double counting it
        for p in self.pieces:
            inside = (x >= p.a) & (x <= p.b)
            out = np.where(inside, p.density(x), out)
        return out if out.ndim else float(out)

    def to_json_dict(self) -> dict:
        return {
            "pieces": [p.to_json_dict() for p in self.pieces],
            "total_mass": self.total_mass,
        }


class EquilibriumMeasure(PiecewiseMeasure):
    """The constrained equilibrium measure of mass alpha.

    Density 1/2 on [-1, -r] and [r, 1] (the saturated region) and
    arctan(alpha / sqrt(r^2 - x^2)) / pi on (-r, r), r = sqrt(1-a^2).
    """

    def __init__(self, alpha: float):
        r = saturation_radius(alpha)
        pieces = []
        if r < 1.0 - 1e-14:
            pieces.append(Piece(a=-1.0, b=-r, kind="uniform", height=0.5))
        pieces.append(Piece(a=-r, b=r, kind="arctan", alpha=alpha))
        if r < 1.0 - 1e-14:
            pieces.append(Piece(a=r, b=1.0, kind="uniform", height=0.5))
        super().__init__(pieces, expected_mass=alpha)
        self.alpha = float(alpha)
        self.r = r

    def density_alt(self, x):
        """The equivalent arccos form 1/2 - arccos(alpha/sqrt(1-x^2))/pi on (-r, r)."""
        x = np.asarray(x, dtype=float)
        c = np.clip(self.alpha / np.sqrt(np.maximum(1.0 - x * x, 1e-300)), -1.0, 1.0)
        return 0.5 - np.arccos(c) / np.pi

    def to_json_dict(self) -> dict:
        return {"kind": "mu_alpha", "alpha": self.alpha, "total_mass": self.total_mass}


def equilibrium_measure(alpha: float) -> EquilibriumMeasure:
    """Constrained equilibrium measure of mass alpha, invariants verified."""
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError(f"alpha must be in (0, 1), got {alpha}")
    return EquilibriumMeasure(alpha)


def sigma_measure() -> PiecewiseMeasure:
    """The constraint measure: density 1/2 on all of [-1, 1], mass 1."""
    return PiecewiseMeasure([Piece(a=-1.0, b=1.0, kind="uniform", height=0.5)])


def measure_from_json(obj: dict) -> PiecewiseMeasure:
    """Rebuild a measure from its JSON form (kinds: mu_alpha, uniform,
    truncated_sigma, arctan, table)."""
    if obj.get("kind") == "mu_alpha":
        return equilibrium_measure(float(obj["alpha"]))
    pieces = []
    for po in obj["pieces"]:
        kind = po.get("kind")
        if kind == "uniform":
            pieces.append(
                Piece(a=po["a"], b=po["b"], kind="uniform", height=po["height"])
            )
        elif kind == "truncated_sigma":
            pieces.append(Piece(a=po["a"], b=po["b"], kind="uniform", height=0.5))
        elif kind == "arctan":
            pieces.append(
                Piece(
                    a=po["a"],
                    b=po["b"],
                    kind="arctan",
                    alpha=po["alpha"],
                    coeff=po.get("coeff", 1.0),
                    offset=po.get("offset", 0.0),
                )
            )
        elif kind == "table":
            pieces.append(
                Piece(
                    a=po["a"],
                    b=po["b"],
                    kind="table",
                    xs=np.asarray(po["xs"], dtype=float),
                    ys=np.asarray(po["ys"], dtype=float),
                )
            )
        else:
            raise InvalidArgumentError(f"unknown piece kind {kind!r}")
    return PiecewiseMeasure(pieces)


def cdf(m: PiecewiseMeasure, x: float) -> float:
    """Mass of m below x, for x in [-1, 1]."""
    if not -1.0 - 1e-12 <= x <= 1.0 + 1e-12:
        raise InvalidArgumentError(f"x must lie in [-1, 1], got {x}")
    return float(sum(p.cdf_partial(float(x)) for p in m.pieces))


def _uniform_piece_potential(height: float, a: float, b: float, x: float) -> float:
    """Exact potential of a constant-density piece.

    Uses the antiderivative F(u) = u (log|u| - 1) of log|u|, with
    F(0) = 0, so the log endpoint singularity costs nothing.
    """

    def F(u: float) -> float:
        if u == 0.0:
            return 0.0
        return u * (math.log(abs(u)) - 1.0)

    return -height * (F(b - x) - F(a - x))


def _piece_potential_quad(piece: Piece, x: float, tol: float) -> float:
    """Potential of one piece by quadrature.

    The substitution y = x -+ t^2 turns the log singularity at y = x
    into t log t, which vanishes; the same change of variables is used
    when x lies beyond the piece, where it is merely benign.
    """
    a, b = piece.a, piece.b
    rho = piece.density_scalar

    def left_part():  # mass below x, i.e. y in [a, min(x, b)]
        hi = min(x, b)
        if hi <= a:
            return 0.0
        t0 = math.sqrt(max(x - hi, 0.0))
        t1 = math.sqrt(x - a)
        return _quad(
            lambda t: -4.0 * t * math.log(t) * rho(x - t * t) if t > 0.0 else 0.0,
            t0,
            t1,
            tol=tol,
        )

    def right_part():  # mass above x, i.e. y in [max(x, a), b]
        lo = max(x, a)
        if lo >= b:
            return 0.0
        t0 = math.sqrt(max(lo - x, 0.0))
        t1 = math.sqrt(b - x)
        return _quad(
            lambda t: -4.0 * t * math.log(t) * rho(x + t * t) if t > 0.0 else 0.0,
            t0,
            t1,
            tol=tol,
        )

    return left_part() + right_part()


def _arctan_piece_potential(piece: Piece, x: float, tol: float) -> float:
    """Potential of an arctan piece via the angle substitution y = r sin(t).

    The square-root derivative kinks of the profile at +-r disappear in
    the angle variable; the log singularity at y = x becomes a plain
    log singularity at t = asin(x/r) and is removed by one more
    quadratic substitution around it.
    """
    alpha = piece.alpha
    rp = math.sqrt(1.0 - alpha * alpha)
    if rp <= 0.0:
        return _piece_potential_quad(piece, x, tol)
    clip = lambda v: min(max(v, -1.0), 1.0)
    ta = math.asin(clip(piece.a / rp))
    tb = math.asin(clip(piece.b / rp))

    def g(t: float) -> float:
        y = rp * math.sin(t)
        dy = rp * math.cos(t)
        diff = abs(x - y)
        if diff == 0.0:
            return 0.0
        rho = piece.coeff * math.atan2(alpha, rp * math.cos(t)) / math.pi + piece.offset
        return -math.log(diff) * rho * dy

    if piece.a < x < piece.b:
        tx = math.asin(clip(x / rp))

        def below(s: float) -> float:  # t = tx - s^2
            if s == 0.0:
                return 0.0
            return 2.0 * s * g(tx - s * s)

        def above(s: float) -> float:  # t = tx + s^2
            if s == 0.0:
                return 0.0
            return 2.0 * s * g(tx + s * s)

        return _quad(below, 0.0, math.sqrt(tx - ta), tol=tol) + _quad(
            above, 0.0, math.sqrt(tb - tx), tol=tol
        )
    return _quad(g, ta, tb, tol=tol)


def potential(m: PiecewiseMeasure, x: float, method: str = "auto") -> float:
    """Logarithmic potential of m at x: integral of log 1/|x-y| dm(y).

    Valid for any real x.  Constant-density pieces use the exact
    antiderivative unless ``method="quad"`` forces quadrature (the
    cross-check route used by the tests).
    """
    x = float(x)
    tol = 1e-9
    total = 0.0
    for p in m.pieces:
        if method == "auto" and p.kind == "uniform":
            total += _uniform_piece_potential(p.height, p.a, p.b, x)
        elif method == "auto" and p.kind == "arctan":
            total += _arctan_piece_potential(p, x, tol)
        else:
            total += _piece_potential_quad(p, x, tol)
    return total


def potential_derivative(alpha: float, x: float) -> float:
    """Closed-form derivative of the equilibrium potential on (r, 1):
    log(1 - x^2) / 2 - log(alpha + sqrt(x^2 - r^2)); negative throughout.
    """
    r = saturation_radius(alpha)
    if not r < x < 1.0:
        raise InvalidArgumentError(f"x must lie in (r, 1) = ({r}, 1), got {x}")
    return 0.5 * math.log1p(-x * x) - math.log(
        alpha + math.sqrt(max(x * x - r * r, 0.0))
    )


def interior_cauchy_transform(alpha: float, x: float) -> float:
    """Closed form of (1/pi) integral over (-r, r) of
    arccos(alpha / sqrt(1 - y^2)) / (x - y) dy for x > r:
    log(1 + x) - log(alpha + sqrt(x^2 - r^2)); tends to 0 at +infinity.
    """
    r = saturation_radius(alpha)
    if not x > r:
        raise InvalidArgumentError(f"x must exceed r = {r}, got {x}")
    return math.log1p(x) - math.log(alpha + math.sqrt(max(x * x - r * r, 0.0)))


@dataclass(frozen=True)
class PotentialLevels:
    """Equilibrium potential summary for one alpha.

    ``level`` is the constant value on the unsaturated support (sampled
    at 0), ``at_edge`` the value at r, ``at_endpoint`` the value at 1;
    ``gap`` = at_edge - at_endpoint reproduces the growth constant.
    """

    alpha: float
    level: float
    at_edge: float
    at_endpoint: float
    gap: float

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "level": self.level,
            "at_edge": self.at_edge,
            "at_endpoint": self.at_endpoint,
            "gap": self.gap,
        }


def equilibrium_levels(alpha: float) -> PotentialLevels:
    """Potential values of the equilibrium measure at 0, r, and 1.

    Also verifies by sampling that the potential attains its minimum
    over the saturated region at the endpoints (the closed-form
    derivative is negative on (r, 1)).
    """
    m = equilibrium_measure(alpha)
    r = m.r
    level = potential(m, 0.0)
    at_edge = potential(m, r)
    at_endpoint = potential(m, 1.0)
    for side in (+1.0, -1.0):
        xs = side * np.linspace(r, 1.0, 17)
        vals = np.array([potential(m, float(t)) for t in xs])
        end_val = vals[-1]
        if np.any(vals < end_val - 1e-7):
            raise NumericFailure(
                "potential minimum over the saturated region is not at the endpoint"
            )
    return PotentialLevels(
        alpha=float(alpha),
        level=level,
        at_edge=at_edge,
        at_endpoint=at_endpoint,
        gap=at_edge - at_endpoint,
    )


def _golden_min(f: Callable[[float], float], a: float, b: float, tol: float = 1e-9):
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 > f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    xm = 0.5 * (a + b)
    return xm, f(xm)


def _sampled_min(
    f: Callable[[float], float], a: float, b: float, samples: int
) -> tuple[float, float]:
    """Dense sampling plus golden refinement of the best bracket."""
    if b - a < 1e-14:
        return a, f(a)
    xs = np.linspace(a, b, samples)
    vals = np.array([f(float(t)) for t in xs])
    j = int(np.argmin(vals))
    lo = xs[max(j - 1, 0)]
    hi = xs[min(j + 1, samples - 1)]
    xm, fm = _golden_min(f, float(lo), float(hi))
    if vals[j] < fm:
        return float(xs[j]), float(vals[j])
    return xm, fm


def unsaturated_support(m: PiecewiseMeasure) -> list[tuple[float, float]]:
    """Closure of the set where the density stays below 1/2.

    Regions of [-1, 1] not covered by any piece have density zero and
    therefore belong to the support of the slack measure.
    """
    edges = sorted({-1.0, 1.0} | {p.a for p in m.pieces} | {p.b for p in m.pieces})
    intervals: list[tuple[float, float]] = []
    for a, b in zip(edges, edges[1:]):
        if b - a < 1e-14:
            continue
        xs = np.linspace(a, b, 403)[1:-1]
        vals = np.asarray(m.density(xs))
        mask = vals < 0.5 - _SUPP_TOL
        if np.all(mask):
            intervals.append((a, b))
            continue
        runs = np.nonzero(np.diff(np.concatenate(([0], mask.view(np.int8), [0]))))[0]
        for lo_i, hi_i in zip(runs[::2], runs[1::2]):
            lo = xs[lo_i]
            hi = xs[hi_i - 1]
            intervals.append((float(lo), float(hi)))
    merged: list[tuple[float, float]] = []
    for lo, hi in intervals:
        if merged and lo - merged[-1][1] < 1e-12:
            merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return merged


def potential_gap(m: PiecewiseMeasure) -> float:
    """Min of the potential over the unsaturated support minus its min
    over [-1, 1]; the equilibrium measure uniquely maximizes this.

    Both minima use dense sampling (401 points per interval) with local
    golden refinement; the potential is continuous, so the refinement
    pins the values well below the 1e-6 comparison tolerances.
    """
    supp = unsaturated_support(m)
    if not supp:
        raise InvalidArgumentError(
            "empty unsaturated support: the measure saturates the constraint everywhere"
        )
    U = lambda x: potential(m, x)
    min_supp = min(_sampled_min(U, lo, hi, 401)[1] for lo, hi in supp)
    min_total = _sampled_min(U, -1.0, 1.0, 803)[1]
    return min_supp - min_total


def logarithmic_energy(m: PiecewiseMeasure) -> float:
    """Double integral of log 1/|x-y| against m in both variables.

    Computed as the integral of the potential against m, one piece at a
    time; the potential is continuous so the outer integrand is benign.
    """
    total = 0.0
    for p in m.pieces:
        total += _quad(
            lambda x: float(p.density(x)) * potential(m, x),
            p.a,
            p.b,
            tol=1e-6,
            limit=60,
        )
    return total


def non_optimal_measures(alpha: float) -> list[PiecewiseMeasure]:
    """Five bundled members of the constrained class, none equal to the
    equilibrium measure, used to probe strictness of the gap functional.

    Valid for alpha in (0.25, 0.95): the step construction needs room
    for its shoulder inside [-1, 1].
    """
    if not 0.25 < alpha < 0.95:
        raise InvalidArgumentError(f"bundled family needs alpha in (0.25, 0.95), got {alpha}")
    r = saturation_radius(alpha)
    out = []
    # 1. uniform: alpha * sigma
    out.append(
        PiecewiseMeasure(
            [Piece(a=-1.0, b=1.0, kind="uniform", height=alpha / 2.0)],
            expected_mass=alpha,
        )
    )
    # 2. sigma truncated to [-alpha, alpha]
    out.append(
        PiecewiseMeasure(
            [Piece(a=-alpha, b=alpha, kind="uniform", height=0.5)], expected_mass=alpha
        )
    )
    # 3. even blend of the equilibrium measure with alpha * sigma
    w = 0.5
    out.append(
        PiecewiseMeasure(
            [
                Piece(a=-1.0, b=-r, kind="uniform", height=w * 0.5 + (1 - w) * alpha / 2),
                Piece(
                    a=-r,
                    b=r,
                    kind="arctan",
                    alpha=alpha,
                    coeff=w,
                    offset=(1 - w) * alpha / 2,
                ),
                Piece(a=r, b=1.0, kind="uniform", height=w * 0.5 + (1 - w) * alpha / 2),
            ],
            expected_mass=alpha,
        )
    )
    # 4. wider saturated region with a damped interior profile
    a2 = alpha + 0.2 * (1.0 - alpha)
    r2 = saturation_radius(a2)
    c = (alpha - 1.0 + r2) / (a2 - 1.0 + r2)
    out.append(
        PiecewiseMeasure(
            [
                Piece(a=-1.0, b=-r2, kind="uniform", height=0.5),
                Piece(a=-r2, b=r2, kind="arctan", alpha=a2, coeff=c),
                Piece(a=r2, b=1.0, kind="uniform", height=0.5),
            ],
            expected_mass=alpha,
        )
    )
    # 5. step: saturated shoulders, flat middle (height works out to 3/26)
    s = 1.3 * (1.0 - alpha)
    h = 0.3 * (1.0 - alpha) / (2.0 * s)
    out.append(
        PiecewiseMeasure(
            [
                Piece(a=-1.0, b=-s, kind="uniform", height=0.5),
                Piece(a=-s, b=s, kind="uniform", height=h),
                Piece(a=s, b=1.0, kind="uniform", height=0.5),
            ],
            expected_mass=alpha,
        )
    )
    return out
