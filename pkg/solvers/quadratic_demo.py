"""
Two-dimensional demonstration of the three step-size rules.

The function (x+y)² + (x+1)² + (y+3)² equals ‖A z − b‖² for the system below,
so its minimizer (1/3, −5/3) is the least-squares solution of ``A z = b``.
"""
import logging
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from solvers.gradient_solver import SolverConfig, SolverMode, grad_least_squares, iterate

logger = logging.getLogger(__name__)

DEMO_MATRIX = np.array([[1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
DEMO_RHS = np.array([0.0, -1.0, -3.0])
DEMO_MINIMUM = np.array([1.0 / 3.0, -5.0 / 3.0])


def demo_function(z: np.ndarray) -> float:
    """Evaluate (x+y)² + (x+1)² + (y+3)²."""
    x, y = z
    return float((x + y) ** 2 + (x + 1) ** 2 + (y + 3) ** 2)


def run_quadratic_demo(
    modes: Sequence[SolverMode] = (SolverMode.FIXED_STEP, SolverMode.STEEPEST_DESCENT, SolverMode.NEWTON),
    max_iters: int = 50,
    fixed_mu: float = 0.05,
) -> pd.DataFrame:
    """
    Trajectories of each step-size rule from the origin.

    Args:
        modes: Step-size rules to run
        max_iters: Iteration budget per rule
        fixed_mu: Step of the fixed-step rule

    Returns:
        pd.DataFrame: Columns ``method, iteration, x, y, objective``; iteration 0
        is the starting point
    """
    rows: List[Dict[str, float]] = []
    for mode in modes:
        config = SolverConfig(
            mode=mode,
            fixed_mu=fixed_mu,
            eps_denominator=0.0,
            eps_newton=0.0,
            max_iters=max_iters,
            stop_tol=1e-12,
        )
        path: List[np.ndarray] = []

        def subgrad(z: np.ndarray, i: int) -> np.ndarray:
            path.append(z)
            return grad_least_squares(DEMO_MATRIX, z, DEMO_RHS)

        final, trace = iterate(config, DEMO_MATRIX, DEMO_RHS, subgrad, label=f"demo-{mode.value}")
        path.append(final)

        for i, z in enumerate(path):
            rows.append(
                {"method": mode.value, "iteration": i, "x": z[0], "y": z[1], "objective": demo_function(z)}
            )
        logger.info(
            f"{mode.value}: ({final[0]:.6f}, {final[1]:.6f}) after {len(trace)} iterations, "
            f"error {np.linalg.norm(final - DEMO_MINIMUM):.2e}"
        )

    return pd.DataFrame(rows, columns=["method", "iteration", "x", "y", "objective"])
