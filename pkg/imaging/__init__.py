"""
Synthetic test images, PGM I/O and PSNR.
"""
from imaging.pgm_io import read_pgm, write_pgm
from imaging.quality import psnr
from imaging.test_images import ImageKind, TestImageSpec, circle_pixels, diamond_pixels, generate_test_image

__all__ = [
    "ImageKind",
    "TestImageSpec",
    "circle_pixels",
    "diamond_pixels",
    "generate_test_image",
    "psnr",
    "read_pgm",
    "write_pgm",
]
