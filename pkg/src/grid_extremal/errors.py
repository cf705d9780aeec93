"""Exception taxonomy shared by all modules.

Three top-level failure kinds map onto the CLI exit codes: bad input
(exit 2), a problem that is structurally degenerate (exit 2), and a
numerical computation that did not certify (exit 3).
"""


class InvalidArgumentError(ValueError):
    """An argument is outside the documented domain of an operation."""


class DegenerateProblemError(ValueError):
    """The requested extremal problem is degenerate (e.g. degree >= grid size,
    where a polynomial vanishing on the whole grid makes the optimum 0 or
    the maximization unbounded)."""


class NumericFailure(RuntimeError):
    """A numerical routine failed to reach its certified tolerance."""


class LPInfeasibleError(NumericFailure):
    """The linear program has no feasible point."""


class LPUnboundedError(NumericFailure):
    """The linear program is unbounded below."""


class LPIterationLimitError(NumericFailure):
    """The simplex iteration cap was reached before optimality."""
