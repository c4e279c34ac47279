"""
Dense float64 vector/matrix kernels.
"""
from core_linalg.kernels import (
    SpdFactorization,
    as_mat,
    as_vec,
    axpy,
    dot,
    matvec,
    norm2,
    solve_spd,
    transpose_matvec,
)

__all__ = [
    "SpdFactorization",
    "as_mat",
    "as_vec",
    "axpy",
    "dot",
    "matvec",
    "norm2",
    "solve_spd",
    "transpose_matvec",
]
