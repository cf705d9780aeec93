"""Extremal polynomials on the equispaced n-grid.

Library for the pair of discrete extremal problems on the n-point
equispaced grid in [-1, 1] (the monic minimizer of the grid norm and
the maximizer of the sup-to-grid norm ratio), the constrained
equilibrium measure that governs their asymptotics, and desk-scale
experiments measuring the convergence of (1/n) log(ratio) to its
closed-form limit.
"""

from .asymptotics import (
    SqrtRegimeReport,
    SweepReport,
    SweepRow,
    monic_route_value,
    saturated_mass,
    sqrt_regime,
    sweep_monic,
    sweep_ratio,
    zero_distribution_distance,
)
from .config import DEFAULT_CONFIG, RunConfig, load_config
from .equilibrium import (
    EquilibriumMeasure,
    Piece,
    PiecewiseMeasure,
    PotentialLevels,
    cdf,
    equilibrium_levels,
    equilibrium_measure,
    growth_constant,
    growth_constant_derivative,
    growth_constant_integral,
    growth_constant_series,
    interior_cauchy_transform,
    logarithmic_energy,
    measure_from_json,
    non_optimal_measures,
    potential,
    potential_derivative,
    potential_gap,
    saturation_radius,
    sigma_measure,
    unsaturated_support,
)
from .errors import (
    DegenerateProblemError,
    InvalidArgumentError,
    LPInfeasibleError,
    LPIterationLimitError,
    LPUnboundedError,
    NumericFailure,
)
from .grid_poly import (
    ChebPoly,
    Grid,
    RootProduct,
    ZeroSet,
    eval_log_abs,
    grid_norm,
    make_grid,
    roots_in_window,
    sup_norm_interval,
)
from .minmax_solver import (
    MinMaxProblem,
    MinMaxSolution,
    lp_solve,
    solve_monic_min,
    solve_pinned_max,
)
from .ratio_extremal import (
    EmpiricalCDF,
    ExtremalSolution,
    StructureReport,
    analyze_structure,
    phi,
    solve_ratio_extremal,
    zero_counting_measure,
)

__version__ = "0.1.0"
