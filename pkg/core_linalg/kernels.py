"""
Dense real-valued vector and matrix kernels.

Vectors are 1-D ``float64`` arrays and matrices 2-D row-major ``float64`` arrays.
``matvec``/``transpose_matvec`` also accept a 2-D right-hand side, which is
applied column by column (one image column per array column).
"""
import logging
from typing import Any

import numpy as np
import scipy.linalg as scilin

from utils.error_handler import DimensionError, NumericalError

logger = logging.getLogger(__name__)

Vec = np.ndarray
Mat = np.ndarray


def as_vec(values: Any, name: str = "vector") -> Vec:
    """
    Validate and convert to a finite float64 vector.

    Args:
        values: Array-like input
        name: Name used in error messages

    Returns:
        Vec: Contiguous float64 vector
    """
    vec = np.ascontiguousarray(values, dtype=np.float64)
    if vec.ndim != 1 or vec.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty 1-D vector, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise NumericalError(f"{name} contains NaN or Inf")
    return vec


def as_mat(values: Any, name: str = "matrix") -> Mat:
    """
    Validate and convert to a finite float64 matrix.

    Args:
        values: Array-like input
        name: Name used in error messages

    Returns:
        Mat: Row-major float64 matrix
    """
    mat = np.ascontiguousarray(values, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise NumericalError(f"{name} contains NaN or Inf")
    return mat


def _check_lengths(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape != y.shape:
        raise DimensionError(f"length mismatch: {x.shape} vs {y.shape}")


def matvec(a: Mat, x: np.ndarray) -> np.ndarray:
    """
    Compute ``A x``.

    Args:
        a: M×N matrix
        x: Length-N vector, or N×K block of column vectors

    Returns:
        np.ndarray: Length-M vector (or M×K block)
    """
    if a.ndim != 2 or x.ndim not in (1, 2) or a.shape[1] != x.shape[0]:
        raise DimensionError(f"matvec: cannot apply {a.shape} matrix to {x.shape}")
    return a @ x


def transpose_matvec(a: Mat, r: np.ndarray) -> np.ndarray:
    """
    Compute ``Aᵀ r``.

    Args:
        a: M×N matrix
        r: Length-M vector, or M×K block

    Returns:
        np.ndarray: Length-N vector (or N×K block)
    """
    if a.ndim != 2 or r.ndim not in (1, 2) or a.shape[0] != r.shape[0]:
        raise DimensionError(f"transpose_matvec: cannot apply {a.shape}ᵀ to {r.shape}")
    return a.T @ r


def dot(x: Vec, y: Vec) -> float:
    """Euclidean inner product."""
    _check_lengths(x, y)
    return float(np.dot(x, y))


def norm2(x: Vec) -> float:
    """Euclidean norm, ``sqrt(dot(x, x))``."""
    return float(np.sqrt(dot(x, x)))


def axpy(alpha: float, x: Vec, y: Vec) -> Vec:
    """Return ``alpha * x + y``."""
    _check_lengths(x, y)
    return alpha * x + y


class SpdFactorization:
    """Cholesky factorization of a symmetric positive definite matrix, reusable across solves."""

    def __init__(self, matrix: Mat):
        """
        Factor the matrix.

        Args:
            matrix: Symmetric positive definite N×N matrix

        Raises:
            DimensionError: If the matrix is not square
            NumericalError: If the matrix is not symmetric positive definite
        """
        matrix = as_mat(matrix, "SPD matrix")
        if matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"SPD matrix must be square, got {matrix.shape}")
        if not np.allclose(matrix, matrix.T, rtol=1e-12, atol=0.0):
            raise NumericalError("SPD matrix is not symmetric")

        try:
            self._factor = scilin.cho_factor(matrix, lower=True, check_finite=False)
        except scilin.LinAlgError as e:
            logger.error(f"Cholesky factorization failed: {str(e)}")
            raise NumericalError(f"matrix is not positive definite: {str(e)}") from e

        self.n = matrix.shape[0]

    def solve(self, b: np.ndarray) -> np.ndarray:
        """
        Solve ``A x = b``.

        Args:
            b: Length-N right-hand side, or N×K block

        Returns:
            np.ndarray: Solution with the shape of ``b``
        """
        if b.ndim not in (1, 2) or b.shape[0] != self.n:
            raise DimensionError(f"right-hand side {b.shape} does not match {self.n}×{self.n} system")
        return scilin.cho_solve(self._factor, b, check_finite=False)


def solve_spd(a: Mat, b: Vec) -> Vec:
    """
    Solve an SPD system by direct (Cholesky) factorization.

    Args:
        a: Symmetric positive definite matrix
        b: Right-hand side

    Returns:
        Vec: Solution ``x`` of ``A x = b``
    """
    return SpdFactorization(a).solve(as_vec(b, "right-hand side"))
