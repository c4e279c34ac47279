"""
CSV serialization of matrices and vectors (one row per line, 17 significant digits).
"""
import logging
from pathlib import Path
from typing import Union

import numpy as np

from core_linalg.kernels import Mat, Vec, as_mat
from utils.error_handler import FormatError, NumericalError

logger = logging.getLogger(__name__)

CSV_FORMAT = "%.17g"


def write_matrix_csv(mat: Mat, path: Union[str, Path]) -> None:
    """
    Write a matrix as comma-separated rows.

    Args:
        mat: Matrix to write
        path: Destination file
    """
    np.savetxt(Path(path), np.atleast_2d(mat), delimiter=",", fmt=CSV_FORMAT)


def read_matrix_csv(path: Union[str, Path]) -> Mat:
    """
    Read a matrix written by :func:`write_matrix_csv`.

    Args:
        path: Source file

    Returns:
        Mat: Parsed matrix

    Raises:
        OSError: If the file cannot be read
        FormatError: If the contents are not a rectangular numeric table
    """
    try:
        values = np.loadtxt(Path(path), delimiter=",", dtype=np.float64, ndmin=2)
    except ValueError as e:
        logger.error(f"Error parsing matrix CSV {path}: {str(e)}")
        raise FormatError(f"{path}: malformed matrix CSV ({str(e)})") from e

    try:
        return as_mat(values, str(path))
    except NumericalError as e:
        raise FormatError(str(e)) from e
    except ValueError as e:
        raise FormatError(f"{path}: {str(e)}") from e


def write_vector_csv(vec: Vec, path: Union[str, Path]) -> None:
    """Write a vector, one entry per line."""
    np.savetxt(Path(path), np.asarray(vec).reshape(-1, 1), delimiter=",", fmt=CSV_FORMAT)


def read_vector_csv(path: Union[str, Path]) -> Vec:
    """Read a vector stored one entry per line (a single row is accepted too)."""
    return read_matrix_csv(path).ravel()
