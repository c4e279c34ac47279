"""
Phase-transition sweep: empirical ℓ1 recovery success rate over (K, M).
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from config import settings
from recovery.problem import ProblemForm, RecoveryProblem
from recovery.recovery_manager import recover_vector
from regularizers.l1_norm import L1Params
from sensing.observation import Distribution, generate_observation
from sensing.prng import StreamPurpose, derive_seed, stream
from solvers.gradient_solver import SolverConfig, SolverMode
from utils.error_handler import ConfigError, ErrorHandler

logger = logging.getLogger(__name__)

GRID_COLUMNS = ["k", "m", "trials", "successes", "success_rate"]


@dataclass(frozen=True)
class SweepSettings:
    """Per-trial recovery settings of a sweep."""

    iters: int = settings.PHASE_SWEEP_ITERS
    lam: float = settings.L1_LAMBDA
    success_tol: float = settings.PHASE_SUCCESS_TOL
    dist: Distribution = Distribution.NORMAL01


def sparse_signal(n: int, k: int, seed: int) -> np.ndarray:
    """K-sparse length-N signal with a uniformly random support and N(0, 1) values."""
    gen = stream(seed, StreamPurpose.SIGNAL, 0)
    f = np.zeros(n)
    if k:
        support = gen.choice(n, size=k, replace=False)
        f[support] = gen.standard_normal(k)
    return f


def relative_error(recovered: np.ndarray, truth: np.ndarray) -> float:
    """‖f̂ − f‖/‖f‖, or ‖f̂‖ for the zero signal."""
    scale = float(np.linalg.norm(truth))
    err = float(np.linalg.norm(recovered - truth))
    return err / scale if scale > 0 else err


def run_trial(n: int, k: int, m: int, seed: int, sweep: SweepSettings) -> bool:
    """
    Recover one random K-sparse signal from M measurements.

    Returns:
        bool: True when the relative ℓ2 error is below ``sweep.success_tol``
    """
    truth = sparse_signal(n, k, seed)
    obs = generate_observation(m, n, sweep.dist, seed)
    problem = RecoveryProblem(
        form=ProblemForm.TIME_SPARSE_TIME_MEAS,
        obs=obs,
        measurements=obs.measure(truth),
        l1=L1Params(lam=sweep.lam),
    )
    config = SolverConfig(mode=SolverMode.STEEPEST_DESCENT, max_iters=sweep.iters, log_every=0)
    recovered, _ = recover_vector(problem, config)
    return relative_error(recovered, truth) < sweep.success_tol


def run_phase_sweep(
    n: int,
    k_list: Sequence[int],
    m_list: Sequence[int],
    trials: int,
    seed: int = settings.DEFAULT_SEED,
    sweep: Optional[SweepSettings] = None,
    workers: Optional[int] = None,
    error_handler: Optional[ErrorHandler] = None,
) -> pd.DataFrame:
    """
    Success-rate grid over sparsity K and measurement count M.

    Trial ``t`` of cell ``(K, M)`` uses seed ``derive_seed(seed, K, M, t)``.
    Non-critical trial failures are logged and counted as failures; critical
    ones (divergence, unexpected errors) abort the sweep.

    Args:
        n: Signal length
        k_list: Sparsities
        m_list: Measurement counts
        trials: Trials per cell
        seed: Sweep seed
        sweep: Per-trial recovery settings
        workers: Thread-pool size (``settings.MAX_WORKERS`` by default)
        error_handler: Error handler used to classify trial failures

    Returns:
        pd.DataFrame: One row per (K, M) with columns ``GRID_COLUMNS``
    """
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    if n < 1 or any(k < 0 or k > n for k in k_list) or any(m < 1 for m in m_list):
        raise ConfigError(f"need 0 <= K <= N and M >= 1 (N={n}, K={list(k_list)}, M={list(m_list)})")

    sweep = sweep or SweepSettings()
    error_handler = error_handler or ErrorHandler()
    cells: List[Tuple[int, int, int]] = list(product(k_list, m_list, range(trials)))

    def execute(cell: Tuple[int, int, int]) -> bool:
        k, m, t = cell
        try:
            return run_trial(n, k, m, derive_seed(seed, k, m, t), sweep)
        except Exception as e:
            error_handler.handle(e, f"phase sweep K={k} M={m} trial={t}")
            if error_handler.is_critical_error(e):
                raise
            return False

    workers = settings.MAX_WORKERS if workers is None else workers
    if workers <= 1:
        outcomes = [execute(cell) for cell in cells]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(execute, cells))

    frame = pd.DataFrame(cells, columns=["k", "m", "trial"])
    frame["success"] = outcomes
    grid = frame.groupby(["k", "m"], sort=False).agg(trials=("trial", "size"), successes=("success", "sum")).reset_index()
    grid["successes"] = grid["successes"].astype(int)
    grid["success_rate"] = grid["successes"] / grid["trials"]

    for row in grid.itertuples():
        logger.info(f"K={row.k} M={row.m}: success rate {row.success_rate:.2f}")
    return grid[GRID_COLUMNS]


def write_grid(grid: pd.DataFrame, path: Union[str, Path]) -> None:
    """Write a success-rate grid as CSV."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    grid.to_csv(path, index=False, float_format="%.6f")
