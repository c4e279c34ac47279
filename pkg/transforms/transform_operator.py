"""
Orthonormal transform operators Ψ with forward (Ψf) and inverse (Ψ†c) application.

The DCT is the unitary DCT-II from ``scipy.fft``; the Haar transform is the
orthonormal pyramid (averages first, then details from coarsest to finest).
Both accept a 1-D signal or a 2-D array, in which case every column is
transformed independently (images are processed column by column).
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy import fft

from core_linalg.kernels import Mat
from utils.error_handler import ConfigError, DimensionError

logger = logging.getLogger(__name__)

_SQRT2 = np.sqrt(2.0)


class TransformKind(str, Enum):
    """Supported sparsifying bases."""

    IDENTITY = "identity"
    DCT = "dct"
    HAAR = "haar"


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _haar_forward(x: np.ndarray, levels: int) -> np.ndarray:
    coeffs = np.array(x, dtype=np.float64, copy=True)
    length = coeffs.shape[0]
    for _ in range(levels):
        even = coeffs[0:length:2].copy()
        odd = coeffs[1:length:2].copy()
        half = length // 2
        coeffs[:half] = (even + odd) / _SQRT2
        coeffs[half:length] = (even - odd) / _SQRT2
        length = half
    return coeffs


def _haar_inverse(c: np.ndarray, levels: int) -> np.ndarray:
    values = np.array(c, dtype=np.float64, copy=True)
    half = values.shape[0] >> levels
    for _ in range(levels):
        approx = values[:half].copy()
        detail = values[half:2 * half].copy()
        values[0:2 * half:2] = (approx + detail) / _SQRT2
        values[1:2 * half:2] = (approx - detail) / _SQRT2
        half *= 2
    return values


@dataclass(frozen=True)
class TransformOperator:
    """
    An orthonormal basis Ψ of dimension ``n``.

    ``levels`` is the Haar decomposition depth; ``None`` means full depth
    (log2 n). It is ignored for the other kinds.
    """

    kind: TransformKind
    n: int
    levels: Optional[int] = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", TransformKind(self.kind))
        except ValueError as e:
            raise ConfigError(f"unknown transform kind {self.kind!r}") from e
        if self.n < 1:
            raise DimensionError(f"transform dimension must be >= 1, got {self.n}")

        if self.kind is TransformKind.HAAR:
            if not _is_power_of_two(self.n):
                raise ConfigError(f"Haar transform needs a power-of-two length, got {self.n}")
            max_levels = self.n.bit_length() - 1
            levels = max_levels if self.levels is None else self.levels
            if not 0 <= levels <= max_levels:
                raise ConfigError(f"Haar levels must be in [0, {max_levels}], got {levels}")
            object.__setattr__(self, "levels", levels)

    def _check(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=np.float64)
        if values.ndim not in (1, 2) or values.shape[0] != self.n:
            raise DimensionError(f"{self.kind.value} transform of size {self.n} cannot act on shape {values.shape}")
        return values

    def forward(self, f: np.ndarray) -> np.ndarray:
        """
        Compute the coefficients ``Ψ f``.

        Args:
            f: Length-n signal or n×K array of columns

        Returns:
            np.ndarray: Coefficients with the shape of ``f``
        """
        f = self._check(f)
        if self.kind is TransformKind.DCT:
            return fft.dct(f, type=2, norm="ortho", axis=0)
        if self.kind is TransformKind.HAAR:
            return _haar_forward(f, self.levels)
        return f.copy()

    def inverse(self, c: np.ndarray) -> np.ndarray:
        """
        Compute the signal ``Ψ† c``.

        Args:
            c: Length-n coefficients or n×K array of columns

        Returns:
            np.ndarray: Signal with the shape of ``c``
        """
        c = self._check(c)
        if self.kind is TransformKind.DCT:
            return fft.idct(c, type=2, norm="ortho", axis=0)
        if self.kind is TransformKind.HAAR:
            return _haar_inverse(c, self.levels)
        return c.copy()

    def as_matrix(self) -> Mat:
        """
        Explicit n×n matrix Ψ whose product with a vector equals :meth:`forward`.

        Returns:
            Mat: Orthonormal matrix (Ψ† is its transpose)
        """
        return np.ascontiguousarray(self.forward(np.eye(self.n)))


def forward(t: TransformOperator, f: np.ndarray) -> np.ndarray:
    """Functional form of :meth:`TransformOperator.forward`."""
    return t.forward(f)


def inverse(t: TransformOperator, c: np.ndarray) -> np.ndarray:
    """Functional form of :meth:`TransformOperator.inverse`."""
    return t.inverse(c)


def as_matrix(t: TransformOperator) -> Mat:
    """Functional form of :meth:`TransformOperator.as_matrix`."""
    return t.as_matrix()
