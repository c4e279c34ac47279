"""
ℓ1 subgradient and total-variation regularizers.
"""
from regularizers.l1_norm import L1Params, l1_norm, l1_subgradient
from regularizers.schedule import default_decay, lambda_schedule
from regularizers.total_variation import (
    ImageGrid,
    TvParams,
    as_image,
    forward_differences,
    smoothed_tv_value,
    tv_column_curvature,
    tv_gradient,
    tv_value,
)

__all__ = [
    "ImageGrid",
    "L1Params",
    "TvParams",
    "as_image",
    "default_decay",
    "forward_differences",
    "l1_norm",
    "l1_subgradient",
    "lambda_schedule",
    "smoothed_tv_value",
    "tv_column_curvature",
    "tv_gradient",
    "tv_value",
]
