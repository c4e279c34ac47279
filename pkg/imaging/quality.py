"""
Image quality metrics.
"""
import numpy as np

from config import settings
from utils.error_handler import ConfigError, DimensionError


def psnr(a: np.ndarray, b: np.ndarray, peak: float = settings.PSNR_PEAK) -> float:
    """
    Peak signal-to-noise ratio ``10·log10(peak² / MSE)`` in dB.

    Identical images return ``settings.PSNR_CAP_DB`` in place of +∞, and
    results are capped there.

    Args:
        a: First image
        b: Second image (same shape)
        peak: Peak pixel value (1.0 on the internal scale, 255 for 8-bit)

    Returns:
        float: PSNR in dB
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"cannot compare images of shape {a.shape} and {b.shape}")
    if peak <= 0:
        raise ConfigError(f"PSNR peak must be > 0, got {peak}")

    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return settings.PSNR_CAP_DB
    return float(min(10.0 * np.log10(peak * peak / mse), settings.PSNR_CAP_DB))
