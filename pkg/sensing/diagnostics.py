"""
Empirical checks of the uniform uncertainty principle / RIP and of coherence.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from config import settings
from core_linalg.kernels import Vec, matvec
from sensing.observation import ObservationMatrix
from sensing.prng import StreamPurpose, check_seed, stream
from transforms.transform_operator import TransformOperator
from utils.error_handler import ConfigError, DimensionError, NumericalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RipEstimate:
    """Extremes of ‖M0 f‖²/‖f‖² over random k-sparse unit vectors."""

    min_ratio: float
    max_ratio: float
    trials: int
    sparsity_k: int

    @property
    def delta_k(self) -> float:
        """Smallest δ with every observed ratio inside [1 − δ, 1 + δ]."""
        return max(1.0 - self.min_ratio, self.max_ratio - 1.0)

    def uup_constants(self, m: int, n: int) -> Tuple[float, float]:
        """
        Empirical (C1, C2) of the bracket C1·M/N ≤ ratio ≤ C2·M/N.

        Args:
            m: Number of measurements
            n: Signal length

        Returns:
            Tuple[float, float]: (C1, C2)
        """
        scale = n / m
        return self.min_ratio * scale, self.max_ratio * scale


def sparse_trial_vector(n: int, k: int, seed: int, trial: int) -> Vec:
    """
    The unit k-sparse test vector of one RIP trial.

    Support is uniform without replacement, values are standard normal, and the
    vector is normalized to unit ℓ2 norm.

    Args:
        n: Vector length
        k: Sparsity
        seed: Estimator seed
        trial: Trial index

    Returns:
        Vec: Unit-norm k-sparse vector
    """
    gen = stream(seed, StreamPurpose.RIP_TRIAL, trial)
    support = gen.choice(n, size=k, replace=False)
    values = gen.standard_normal(k)
    while not np.any(values):
        values = gen.standard_normal(k)
    f = np.zeros(n)
    f[support] = values / np.linalg.norm(values)
    return f


def _trial_ratio(mat: np.ndarray, k: int, seed: int, trial: int) -> float:
    f = sparse_trial_vector(mat.shape[1], k, seed, trial)
    y = matvec(mat, f)
    return float(np.dot(y, y) / np.dot(f, f))


def rip_ratio_estimate(
    obs: ObservationMatrix,
    k: int,
    trials: int = settings.RIP_TRIALS,
    seed: int = settings.DEFAULT_SEED,
    workers: Optional[int] = None,
) -> RipEstimate:
    """
    Monte-Carlo estimate of the restricted isometry ratios.

    Args:
        obs: Observation matrix
        k: Sparsity of the test vectors
        trials: Number of random test vectors
        seed: Seed of the trial streams
        workers: Thread count (defaults to settings.MAX_WORKERS)

    Returns:
        RipEstimate: Minimum and maximum observed ratios
    """
    if k < 1 or k > obs.n:
        raise DimensionError(f"sparsity k must be in [1, {obs.n}], got {k}")
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    seed = check_seed(seed)

    workers = workers or settings.MAX_WORKERS
    if workers == 1:
        ratios = [_trial_ratio(obs.mat, k, seed, t) for t in range(trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            ratios = list(executor.map(lambda t: _trial_ratio(obs.mat, k, seed, t), range(trials)))

    estimate = RipEstimate(
        min_ratio=float(min(ratios)),
        max_ratio=float(max(ratios)),
        trials=trials,
        sparsity_k=k,
    )
    logger.info(
        f"RIP estimate for {obs.m}x{obs.n}, k={k}: "
        f"[{estimate.min_ratio:.4f}, {estimate.max_ratio:.4f}] over {trials} trials"
    )
    return estimate


def coherence_index(psi: TransformOperator, obs: ObservationMatrix) -> float:
    """
    Mutual coherence χ = √N · max |⟨m̂_j, ψ_k⟩| between measurement rows and basis vectors.

    Args:
        psi: Sparsifying basis (columns of Ψ† are the basis vectors)
        obs: Observation matrix (rows are normalized before comparison)

    Returns:
        float: χ in [1, √N]
    """
    if psi.n != obs.n:
        raise DimensionError(f"basis dimension {psi.n} does not match matrix width {obs.n}")

    row_norms = np.linalg.norm(obs.mat, axis=1)
    if np.any(row_norms == 0.0):
        raise NumericalError("observation matrix has an all-zero row")

    unit_rows = obs.mat / row_norms[:, None]
    # Columns of Ψ† are the rows of Ψ.
    inner = unit_rows @ psi.as_matrix().T
    return float(np.sqrt(obs.n) * np.max(np.abs(inner)))


def recommended_measurements(k: int, n: int, chi: float = 1.0) -> Dict[str, int]:
    """
    Measurement-count rules of thumb for a K-sparse length-N signal.

    Args:
        k: Sparsity
        n: Signal length
        chi: Coherence index between basis and measurement system

    Returns:
        Dict[str, int]: ``chi_k_log2n`` (⌈χ·K·log2 N⌉), ``four_k`` (4K) and
        ``floor_2k`` (the 2K information floor)
    """
    if k < 0 or n < 1:
        raise ConfigError(f"need k >= 0 and n >= 1, got k={k}, n={n}")
    return {
        "chi_k_log2n": int(math.ceil(chi * k * math.log2(n))),
        "four_k": 4 * k,
        "floor_2k": 2 * k,
    }
