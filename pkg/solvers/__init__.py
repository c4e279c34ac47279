"""
Fixed-step, steepest-descent and Newton iteration engines.
"""
from solvers.gradient_solver import (
    ConvergenceTrace,
    IterationRecord,
    NewtonOperator,
    SolverConfig,
    SolverMode,
    grad_least_squares,
    iterate,
    newton_operator,
    steepest_step,
)

__all__ = [
    "ConvergenceTrace",
    "IterationRecord",
    "NewtonOperator",
    "SolverConfig",
    "SolverMode",
    "grad_least_squares",
    "iterate",
    "newton_operator",
    "steepest_step",
]
