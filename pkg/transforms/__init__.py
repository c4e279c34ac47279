"""
Orthonormal basis operators (identity, DCT-II, Haar).
"""
from transforms.transform_operator import TransformKind, TransformOperator, as_matrix, forward, inverse

__all__ = ["TransformKind", "TransformOperator", "as_matrix", "forward", "inverse"]
