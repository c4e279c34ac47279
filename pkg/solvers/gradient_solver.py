"""
Gradient-based iteration engines: fixed step, steepest descent and Newton.

All three share the update ``f ← f − μ·g`` where ``g`` is the (sub)gradient
returned by a caller-supplied callback. The iterate may be a vector or an N×K
array of image columns; step sizes are then computed column by column.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from config import settings
from core_linalg.kernels import SpdFactorization, as_mat, matvec, transpose_matvec
from sensing.observation import ObservationMatrix
from utils.error_handler import ConfigError, DimensionError, DivergenceError

logger = logging.getLogger(__name__)

Operator = Union[ObservationMatrix, np.ndarray]
SubgradientFn = Callable[[np.ndarray, int], np.ndarray]
ObjectiveFn = Callable[[np.ndarray, int], float]
StepScaleFn = Callable[[np.ndarray, np.ndarray, np.ndarray, int], Union[float, np.ndarray]]


class SolverMode(str, Enum):
    """Step-size rule."""

    FIXED_STEP = "fixed"
    STEEPEST_DESCENT = "steepest"
    NEWTON = "newton"


@dataclass(frozen=True)
class SolverConfig:
    """
    Iteration settings.

    ``eps_newton=None`` selects the ridge ``EPS_NEWTON_SCALE·trace(M0ᵀM0)/N``.
    """

    mode: SolverMode = SolverMode(settings.SOLVER_MODE)
    fixed_mu: float = settings.FIXED_MU
    eps_denominator: float = settings.EPS_DENOMINATOR
    eps_newton: Optional[float] = None
    max_iters: int = settings.MAX_ITERS
    stop_tol: float = settings.STOP_TOL
    log_every: int = settings.RESIDUAL_LOG_INTERVAL

    def __post_init__(self):
        try:
            object.__setattr__(self, "mode", SolverMode(self.mode))
        except ValueError as e:
            raise ConfigError(f"unknown solver mode {self.mode!r}") from e
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.eps_denominator < 0:
            raise ConfigError(f"eps_denominator must be >= 0, got {self.eps_denominator}")
        if self.eps_newton is not None and self.eps_newton < 0:
            raise ConfigError(f"eps_newton must be >= 0, got {self.eps_newton}")
        if self.mode is SolverMode.FIXED_STEP and self.fixed_mu <= 0:
            raise ConfigError(f"fixed_mu must be > 0 in fixed-step mode, got {self.fixed_mu}")
        if self.stop_tol < 0:
            raise ConfigError(f"stop_tol must be >= 0, got {self.stop_tol}")


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    residual: float
    objective: float
    delta: float


@dataclass
class ConvergenceTrace:
    """Per-iteration residual, objective and iterate-change history."""

    records: List[IterationRecord] = field(default_factory=list)

    def append(self, record: IterationRecord) -> None:
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def residuals(self) -> np.ndarray:
        return np.array([r.residual for r in self.records])

    @property
    def objectives(self) -> np.ndarray:
        return np.array([r.objective for r in self.records])

    def to_frame(self) -> pd.DataFrame:
        """
        Trace as a DataFrame.

        Returns:
            pd.DataFrame: Columns ``iter, residual, objective, delta``
        """
        return pd.DataFrame(
            {
                "iter": [r.iteration for r in self.records],
                "residual": [r.residual for r in self.records],
                "objective": [r.objective for r in self.records],
                "delta": [r.delta for r in self.records],
            },
            columns=["iter", "residual", "objective", "delta"],
        )

    def to_csv(self, path: Union[str, Path]) -> None:
        """Write the trace as CSV (``iter,residual,objective,delta``)."""
        self.to_frame().to_csv(path, index=False, float_format="%.17g")


def _matrix(obs: Operator) -> np.ndarray:
    if isinstance(obs, ObservationMatrix):
        return obs.mat
    return as_mat(obs, "operator")


def grad_least_squares(obs: Operator, f: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
    Gradient of L(f) = ½‖M0 f − y‖², i.e. ``M0ᵀ(M0 f − y)``.

    Args:
        obs: Observation (or composed reconstruction) matrix
        f: Current iterate (vector or N×K columns)
        y: Measurements with matching shape

    Returns:
        np.ndarray: Gradient with the shape of ``f``
    """
    mat = _matrix(obs)
    residual = matvec(mat, f)
    if residual.shape != np.shape(y):
        raise DimensionError(f"measurements {np.shape(y)} do not match M0 f {residual.shape}")
    return transpose_matvec(mat, residual - y)


def steepest_step(obs: Operator, g: np.ndarray, eps: float = settings.EPS_DENOMINATOR) -> Union[float, np.ndarray]:
    """
    Exact line-search step ⟨g, g⟩ / (⟨g, M0ᵀM0 g⟩ + ε).

    Args:
        obs: Observation (or composed) matrix
        g: Search direction, a vector or N×K columns
        eps: Denominator guard

    Returns:
        float or np.ndarray: Step length (one per column for 2-D ``g``)
    """
    mat = _matrix(obs)
    mg = matvec(mat, g)
    numerator = np.sum(g * g, axis=0)
    denominator = np.sum(mg * mg, axis=0) + eps
    # g in the null space of M0 with eps = 0 gets a zero step
    defined = (numerator > 0) & (denominator > 0)
    step = np.divide(numerator, denominator, out=np.zeros_like(numerator, dtype=np.float64), where=defined)
    if np.ndim(step) == 0:
        return float(step)
    return step


def default_newton_eps(obs: Operator) -> float:
    """Ridge ``EPS_NEWTON_SCALE · trace(M0ᵀM0) / N``."""
    mat = _matrix(obs)
    return settings.EPS_NEWTON_SCALE * float(np.sum(mat * mat)) / mat.shape[1]


class NewtonOperator:
    """Factored (M0ᵀM0 + εI), applied as its inverse. Read-only after construction."""

    def __init__(self, obs: Operator, eps: Optional[float] = None):
        """
        Factor the Newton matrix.

        Args:
            obs: Observation (or composed) matrix
            eps: Ridge; ``None`` selects :func:`default_newton_eps`
        """
        mat = _matrix(obs)
        self.eps = default_newton_eps(mat) if eps is None else float(eps)
        gram = mat.T @ mat
        gram = 0.5 * (gram + gram.T) + self.eps * np.eye(mat.shape[1])
        self._factor = SpdFactorization(gram)
        logger.debug(f"Factored {mat.shape[1]}x{mat.shape[1]} Newton matrix with eps={self.eps:.3e}")

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Return (M0ᵀM0 + εI)⁻¹ v for a vector or a block of columns."""
        return self._factor.solve(v)


def newton_operator(obs: Operator, eps: Optional[float] = None) -> NewtonOperator:
    """Functional form of :class:`NewtonOperator`."""
    return NewtonOperator(obs, eps)


def _least_squares_objective(mat: np.ndarray, y: np.ndarray) -> ObjectiveFn:
    def objective(f: np.ndarray, iteration: int) -> float:
        r = matvec(mat, f) - y
        return 0.5 * float(np.sum(r * r))

    return objective


def iterate(
    config: SolverConfig,
    obs: Operator,
    y: np.ndarray,
    subgrad: SubgradientFn,
    f0: Optional[np.ndarray] = None,
    objective: Optional[ObjectiveFn] = None,
    newton: Optional[NewtonOperator] = None,
    step_scale: Optional[StepScaleFn] = None,
    label: str = "solver",
) -> Tuple[np.ndarray, ConvergenceTrace]:
    """
    Run the gradient iteration until the budget is spent or the iterate stalls.

    Args:
        config: Solver settings
        obs: Observation (or composed) matrix
        y: Measurements (vector, or M×K for column-stacked images)
        subgrad: Callback ``(f, iteration) -> (sub)gradient``; must be pure
        f0: Initial iterate (zeros by default)
        objective: Callback ``(f, iteration) -> value`` for the trace;
            defaults to ½‖M0 f − y‖²
        newton: Pre-factored Newton operator to share across calls
        step_scale: Callback ``(f, g, step, iteration) -> t`` rescaling the
            mode's step to ``t·step`` (a scalar, or one factor per column);
            used when the objective has curvature the step rule does not see
        label: Name used in log lines

    Returns:
        Tuple[np.ndarray, ConvergenceTrace]: Final iterate and trace

    Raises:
        DivergenceError: If an iterate becomes non-finite
    """
    mat = _matrix(obs)
    y = np.asarray(y, dtype=np.float64)
    shape = (mat.shape[1],) + y.shape[1:]
    f = np.zeros(shape) if f0 is None else np.array(f0, dtype=np.float64, copy=True)
    if f.shape != shape:
        raise DimensionError(f"initial iterate {f.shape} does not match expected {shape}")

    objective = objective or _least_squares_objective(mat, y)
    if config.mode is SolverMode.NEWTON and newton is None:
        newton = NewtonOperator(mat, config.eps_newton)

    trace = ConvergenceTrace()
    for i in range(config.max_iters):
        g = subgrad(f, i)
        if g.shape != f.shape:
            raise DimensionError(f"subgradient {g.shape} does not match iterate {f.shape}")

        if config.mode is SolverMode.FIXED_STEP:
            step = config.fixed_mu * g
        elif config.mode is SolverMode.STEEPEST_DESCENT:
            step = steepest_step(mat, g, config.eps_denominator) * g
        else:
            step = newton.apply(g)
        if step_scale is not None:
            step = step_scale(f, g, step, i) * step

        f_next = f - step
        if not np.all(np.isfinite(f_next)):
            logger.error(f"{label}: iterate diverged at iteration {i}")
            raise DivergenceError(f"{label}: non-finite iterate at iteration {i}", trace=trace)

        delta = float(np.linalg.norm(f_next - f))
        f = f_next
        residual = float(np.linalg.norm(matvec(mat, f) - y))
        trace.append(IterationRecord(i, residual, float(objective(f, i)), delta))

        if config.log_every and (i + 1) % config.log_every == 0:
            logger.debug(f"{label}: iter {i + 1} residual={residual:.3e} delta={delta:.3e}")

        if delta < config.stop_tol:
            break

    logger.debug(f"{label}: stopped after {len(trace)} iterations, residual={trace.records[-1].residual:.3e}")
    return f, trace
