"""Independent oracles the tests check the library against.

Everything here deliberately avoids the library's own solution paths:
brute-force lattice searches, explicit Lagrange interpolation, sign
pattern enumeration, and scipy's HiGHS linear programming.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from numpy.polynomial import chebyshev as cheb
from scipy.optimize import linprog


def lattice_monic_oracle(points: np.ndarray, degree: int, spans, steps: int = 241, zooms: int = 6):
    """Minimize max |x^d + sum c_j x^j| over the points by coordinate
    lattice search with repeated zooming.  Only for degree <= 2."""
    assert degree in (1, 2)
    centers = [0.0] * degree
    widths = [2.0] * degree
    best = None
    for _ in range(zooms):
        grids = [np.linspace(c - w, c + w, steps) for c, w in zip(centers, widths)]
        best_val = math.inf
        best_coef = None
        if degree == 1:
            for c0 in grids[0]:
                vals = np.abs(points + c0)
                v = vals.max()
                if v < best_val:
                    best_val, best_coef = v, (c0,)
        else:
            for c1 in grids[1]:
                base = points * points + c1 * points
                for c0 in grids[0]:
                    v = np.abs(base + c0).max()
                    if v < best_val:
                        best_val, best_coef = v, (c0, c1)
        centers = list(best_coef)
        widths = [w * 4.0 / steps for w in widths]
        best = best_val
    return best


def pinned_vertex_oracle(points: np.ndarray, degree: int, x_star: float) -> float:
    """Exact pinned maximum by enumerating candidate active subsets.

    The LP optimum sits at a vertex: the polynomial interpolates +-1 on
    some degree+1 points with signs matching the Lagrange basis at x*.
    Enumerate all subsets, keep the feasible interpolants, return the
    best value.  Exponential; use for small grids only.
    """
    n = len(points)
    best = 1.0
    for subset in itertools.combinations(range(n), degree + 1):
        xs = points[list(subset)]
        # interpolate sigma_i = sign(l_i(x*)) at xs
        val = 0.0
        coeffs = np.zeros(degree + 1)
        for i in range(degree + 1):
            li = np.ones(1)
            denom = 1.0
            for j in range(degree + 1):
                if j == i:
                    continue
                li = np.convolve(li, [-xs[j], 1.0])
                denom *= xs[i] - xs[j]
            li = li / denom
            li_at = float(np.polynomial.polynomial.polyval(x_star, li))
            sigma = 1.0 if li_at >= 0 else -1.0
            coeffs[: len(li)] += sigma * li
            val += abs(li_at)
        # feasibility on the full grid
        grid_vals = np.polynomial.polynomial.polyval(points, coeffs)
        if np.max(np.abs(grid_vals)) <= 1.0 + 1e-9:
            best = max(best, val)
    return best


def lebesgue_function_oracle(points: np.ndarray, x: float) -> float:
    """Lebesgue function via all sign patterns: max over s in {-1, 1}^n
    of the degree n-1 interpolant of s at x."""
    n = len(points)
    ells = []
    for i in range(n):
        li = np.ones(1)
        denom = 1.0
        for j in range(n):
            if j == i:
                continue
            li = np.convolve(li, [-points[j], 1.0])
            denom *= points[i] - points[j]
        ells.append(float(np.polynomial.polynomial.polyval(x, li / denom)))
    best = -math.inf
    for signs in itertools.product((-1.0, 1.0), repeat=n):
        best = max(best, sum(s * e for s, e in zip(signs, ells)))
    return best


def highs_pinned_value(points: np.ndarray, degree: int, x_star: float) -> float:
    """Pinned maximum via scipy's HiGHS solver (independent LP engine)."""
    V = cheb.chebvander(points, degree)
    a = cheb.chebvander(np.array([x_star]), degree)[0]
    A_ub = np.vstack([V, -V])
    b_ub = np.ones(2 * len(points))
    res = linprog(-a, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * (degree + 1), method="highs")
    assert res.status == 0, res.message
    return float(-res.fun)


def golden_max(f, a: float, b: float, tol: float = 1e-11):
    g = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - g * (b - a)
    x2 = a + g * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + g * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - g * (b - a)
            f1 = f(x1)
    xm = 0.5 * (a + b)
    return xm, f(xm)
