"""
Isotropic total variation with forward differences, and the gradient of its
ε-smoothed version.

Differences vanish on the last row (vertical) and last column (horizontal);
the adjoint terms of the gradient vanish on the first row/column.
"""
from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np

from config import settings
from utils.error_handler import ConfigError, DimensionError, NumericalError

ImageGrid = np.ndarray


@dataclass(frozen=True)
class TvParams:
    """TV weight ``lam``, smoothing ``eps_smooth`` inside the root, and Newton ``decay``."""

    lam: float = settings.TV_LAMBDA
    eps_smooth: float = settings.TV_EPS_SMOOTH
    decay: float = 1.0

    def __post_init__(self):
        if self.lam < 0:
            raise ConfigError(f"lambda must be >= 0, got {self.lam}")
        # eps_smooth == 0 is accepted; zero-magnitude pixels then contribute 0.
        if self.eps_smooth < 0:
            raise ConfigError(f"eps_smooth must be >= 0, got {self.eps_smooth}")
        if not 0 < self.decay <= 1:
            raise ConfigError(f"decay must be in (0, 1], got {self.decay}")


def as_image(values: Any) -> ImageGrid:
    """
    Validate and convert to a finite float64 image.

    Args:
        values: Array-like N1×N2 pixels

    Returns:
        ImageGrid: float64 image
    """
    img = np.asarray(values, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] < 1 or img.shape[1] < 1:
        raise DimensionError(f"image must be a non-empty 2-D array, got shape {img.shape}")
    if not np.all(np.isfinite(img)):
        raise NumericalError("image contains NaN or Inf")
    return img


def forward_differences(img: ImageGrid) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vertical and horizontal forward differences.

    Args:
        img: Image

    Returns:
        Tuple[np.ndarray, np.ndarray]: (D^v f, D^h f) with
        D^v_{j,k} = f_{j,k} − f_{j+1,k} and D^h_{j,k} = f_{j,k} − f_{j,k+1}
    """
    dv = np.zeros_like(img)
    dh = np.zeros_like(img)
    dv[:-1, :] = img[:-1, :] - img[1:, :]
    dh[:, :-1] = img[:, :-1] - img[:, 1:]
    return dv, dh


def tv_value(img: ImageGrid) -> float:
    """Exact (unsmoothed) total variation Σ √((D^v f)² + (D^h f)²)."""
    dv, dh = forward_differences(as_image(img))
    return float(np.sum(np.sqrt(dv * dv + dh * dh)))


def smoothed_tv_value(img: ImageGrid, eps_smooth: float) -> float:
    """Smoothed total variation Σ √((D^v f)² + (D^h f)² + ε)."""
    dv, dh = forward_differences(as_image(img))
    return float(np.sum(np.sqrt(dv * dv + dh * dh + eps_smooth)))


def tv_gradient(img: ImageGrid, p: TvParams) -> ImageGrid:
    """
    Gradient of the smoothed total variation.

    Per pixel: (D^v_{j,k} + D^h_{j,k})/|∇_{j,k}| − D^v_{j−1,k}/|∇_{j−1,k}|
    − D^h_{j,k−1}/|∇_{j,k−1}|, with |∇| = √((D^v)² + (D^h)² + ε).

    Args:
        img: Image
        p: TV parameters (only ``eps_smooth`` is used)

    Returns:
        ImageGrid: Gradient with the shape of ``img``
    """
    img = as_image(img)
    dv, dh = forward_differences(img)
    magnitude = np.sqrt(dv * dv + dh * dh + p.eps_smooth)

    nonzero = magnitude > 0
    pv = np.divide(dv, magnitude, out=np.zeros_like(dv), where=nonzero)
    ph = np.divide(dh, magnitude, out=np.zeros_like(dh), where=nonzero)

    grad = pv + ph
    grad[1:, :] -= pv[:-1, :]
    grad[:, 1:] -= ph[:, :-1]
    return grad


def tv_column_curvature(img: ImageGrid, direction: ImageGrid, p: TvParams) -> np.ndarray:
    """
    Per-column curvature of a separable quadratic upper bound of the smoothed TV.

    Concavity of the square root bounds TV_ε(f − d) by
    TV_ε(f) − ⟨∇TV_ε(f), d⟩ + ½ Σ |∇d|² / |∇f|; splitting each horizontal
    difference with (a − b)² ≤ 2a² + 2b² makes the quadratic term a sum of
    per-column terms ``c_k``, which this returns. Pixels whose magnitude is
    exactly zero (only possible with ``eps_smooth = 0``) are skipped, matching
    :func:`tv_gradient`.

    Args:
        img: Image at which the bound is taken
        direction: Step ``d`` with the shape of ``img``
        p: TV parameters (only ``eps_smooth`` is used)

    Returns:
        np.ndarray: Nonnegative ``c_k`` for each column
    """
    img = as_image(img)
    direction = np.asarray(direction, dtype=np.float64)
    if direction.shape != img.shape:
        raise DimensionError(f"direction {direction.shape} does not match image {img.shape}")

    dv, dh = forward_differences(img)
    magnitude = np.sqrt(dv * dv + dh * dh + p.eps_smooth)
    weight = np.divide(1.0, magnitude, out=np.zeros_like(magnitude), where=magnitude > 0)

    gv, _ = forward_differences(direction)
    horizontal = weight.copy()
    horizontal[:, -1] = 0.0
    horizontal[:, 1:] += horizontal[:, :-1].copy()
    return np.sum(gv * gv * weight, axis=0) + 2.0 * np.sum(direction * direction * horizontal, axis=0)
