"""
Regularization weight schedules.
"""
from typing import Optional, Union

from config import settings
from regularizers.l1_norm import L1Params
from regularizers.total_variation import TvParams
from solvers.gradient_solver import SolverMode


def lambda_schedule(p: Union[L1Params, TvParams], mode: SolverMode, iteration: int) -> float:
    """
    Weight used at a given iteration.

    Newton runs decay the weight geometrically (λ₀·decay^i); fixed-step and
    steepest-descent runs keep it constant.

    Args:
        p: Penalty parameters
        mode: Solver step-size rule
        iteration: Zero-based iteration index

    Returns:
        float: The weight λ for this iteration
    """
    if SolverMode(mode) is SolverMode.NEWTON:
        return p.lam * p.decay ** iteration
    return p.lam


def default_decay(mode: SolverMode, decay: Optional[float] = None) -> float:
    """
    Per-iteration λ decay for a solver mode.

    An explicit ``decay`` wins; otherwise Newton runs use ``settings.NEWTON_DECAY``
    and the other modes keep λ constant.
    """
    if decay is not None:
        return decay
    return settings.NEWTON_DECAY if SolverMode(mode) is SolverMode.NEWTON else 1.0
