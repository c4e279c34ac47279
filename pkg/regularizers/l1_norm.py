"""
ℓ1 penalty: four-case subgradient of L(f) + λ‖f‖₁.
"""
from dataclasses import dataclass

import numpy as np

from config import settings
from utils.error_handler import ConfigError, DimensionError


@dataclass(frozen=True)
class L1Params:
    """
    ℓ1 weight ``lam``, zero threshold ``eps_zero`` and per-iteration
    ``decay`` (applied in Newton mode).
    """

    lam: float = settings.L1_LAMBDA
    eps_zero: float = settings.L1_EPS_ZERO
    decay: float = 1.0

    def __post_init__(self):
        if self.lam < 0:
            raise ConfigError(f"lambda must be >= 0, got {self.lam}")
        if self.eps_zero <= 0:
            raise ConfigError(f"eps_zero must be > 0, got {self.eps_zero}")
        if not 0 < self.decay <= 1:
            raise ConfigError(f"decay must be in (0, 1], got {self.decay}")


def l1_subgradient(grad_l: np.ndarray, f: np.ndarray, p: L1Params) -> np.ndarray:
    """
    Componentwise subgradient of L + λ‖·‖₁.

    With g = ∇L, v = f:

    * |v| ≥ ε            → g + λ·sign(v)
    * |v| < ε, g < −λ    → g + λ
    * |v| < ε, g > λ     → g − λ
    * |v| < ε, |g| ≤ λ   → 0

    Args:
        grad_l: Gradient of the smooth term
        f: Current iterate (same shape)
        p: Penalty parameters

    Returns:
        np.ndarray: Subgradient with the shape of ``f``
    """
    if np.shape(grad_l) != np.shape(f):
        raise DimensionError(f"gradient {np.shape(grad_l)} does not match iterate {np.shape(f)}")

    lam = p.lam
    active = np.abs(f) >= p.eps_zero
    at_zero = np.where(grad_l < -lam, grad_l + lam, np.where(grad_l > lam, grad_l - lam, 0.0))
    return np.where(active, grad_l + lam * np.sign(f), at_zero)


def l1_norm(f: np.ndarray) -> float:
    return float(np.sum(np.abs(f)))
