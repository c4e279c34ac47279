"""
Grayscale PGM (P2 plain / P5 raw) reading and writing.

Pixels live on [0, 1] in memory; files store ``rint(clip(pixel, 0, 1)·maxval)``.
"""
import logging
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from config import settings
from regularizers.total_variation import as_image
from utils.error_handler import ConfigError, FormatError

logger = logging.getLogger(__name__)

MAX_MAXVAL = 65535
_WHITESPACE = b" \t\r\n\v\f"


def _header(data: bytes) -> Tuple[List[bytes], int]:
    """Read magic, width, height and maxval, skipping ``#`` comments."""
    tokens: List[bytes] = []
    pos = 0
    while len(tokens) < 4:
        if pos >= len(data):
            raise FormatError("truncated PGM header")
        byte = data[pos:pos + 1]
        if byte not in _WHITESPACE and byte != b"#":
            end = pos
            while end < len(data) and data[end:end + 1] not in _WHITESPACE and data[end:end + 1] != b"#":
                end += 1
            tokens.append(data[pos:end])
            pos = end
        elif byte == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            pos += 1
    return tokens, pos


def read_pgm(path: Union[str, Path]) -> np.ndarray:
    """
    Read a P2 or P5 PGM file.

    Args:
        path: Image path

    Returns:
        np.ndarray: Image scaled to [0, 1]

    Raises:
        FormatError: On an unsupported magic number or malformed contents
    """
    path = Path(path)
    with open(path, "rb") as f:
        data = f.read()

    tokens, pos = _header(data)
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"{path}: unsupported PGM magic {magic!r}")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as e:
        raise FormatError(f"{path}: malformed PGM header") from e
    if width < 1 or height < 1 or not 0 < maxval <= MAX_MAXVAL:
        raise FormatError(f"{path}: invalid PGM dimensions {width}x{height} or maxval {maxval}")

    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        raster = data[pos + 1:]
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
        if len(raster) < count * dtype.itemsize:
            raise FormatError(f"{path}: raster holds {len(raster)} bytes, expected {count * dtype.itemsize}")
        values = np.frombuffer(raster, dtype=dtype, count=count).astype(np.float64)
    else:
        try:
            values = np.array([int(t) for t in data[pos:].split()], dtype=np.float64)
        except ValueError as e:
            raise FormatError(f"{path}: non-integer sample in P2 raster") from e
        if values.size != count:
            raise FormatError(f"{path}: raster holds {values.size} samples, expected {count}")

    if np.any(values > maxval):
        raise FormatError(f"{path}: sample exceeds maxval {maxval}")

    logger.debug(f"Read {width}x{height} {magic.decode()} image from {path}")
    return values.reshape(height, width) / maxval


def write_pgm(img: np.ndarray, path: Union[str, Path], maxval: int = settings.PGM_MAXVAL, binary: bool = False) -> None:
    """
    Write an image as PGM.

    Pixels are clamped to [0, 1] before quantization.

    Args:
        img: Image on [0, 1]
        path: Destination path
        maxval: Quantization levels (1 to 65535)
        binary: Write P5 instead of plain P2
    """
    if not 0 < maxval <= MAX_MAXVAL:
        raise ConfigError(f"maxval must be in [1, {MAX_MAXVAL}], got {maxval}")
    img = as_image(img)
    quantized = np.rint(np.clip(img, 0.0, 1.0) * maxval).astype(np.int64)
    height, width = quantized.shape

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = f"{'P5' if binary else 'P2'}\n{width} {height}\n{maxval}\n".encode("ascii")
    with open(path, "wb") as f:
        f.write(header)
        if binary:
            dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
            f.write(quantized.astype(dtype).tobytes())
        else:
            for row in quantized:
                f.write((" ".join(str(v) for v in row) + "\n").encode("ascii"))

    logger.debug(f"Wrote {width}x{height} image to {path}")
