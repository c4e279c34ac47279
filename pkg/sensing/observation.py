"""
Observation (measurement) matrices: generation, measurement and persistence.
"""
import json
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from core_linalg.kernels import Mat, as_mat, matvec
from core_linalg.matrix_io import read_matrix_csv, write_matrix_csv
from sensing.prng import StreamPurpose, check_seed, stream
from utils.error_handler import ConfigError, DimensionError, FormatError

logger = logging.getLogger(__name__)


class Distribution(str, Enum):
    """Entry distribution of a random observation matrix."""

    NORMAL01 = "normal01"
    UNIFORM01 = "uniform01"
    BERNOULLI_PM1 = "bernoulli_pm1"


@dataclass(frozen=True, eq=False)
class ObservationMatrix:
    """
    An M×N measurement operator with its provenance.

    ``distribution`` and ``seed`` are ``None`` for matrices supplied directly
    (e.g. identity rows in tests) rather than generated.
    """

    mat: Mat
    distribution: Optional[Distribution] = None
    seed: Optional[int] = None
    normalized: bool = False

    def __post_init__(self):
        mat = as_mat(self.mat, "observation matrix").copy()
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @property
    def m(self) -> int:
        return self.mat.shape[0]

    @property
    def n(self) -> int:
        return self.mat.shape[1]

    @classmethod
    def from_array(cls, values: Any) -> "ObservationMatrix":
        """Wrap an explicit matrix without generation provenance."""
        return cls(mat=np.array(values, dtype=np.float64))

    def measure(self, f: np.ndarray) -> np.ndarray:
        """
        Take measurements ``y = M0 f``.

        Args:
            f: Length-N signal, or N×K image (one measurement vector per column)

        Returns:
            np.ndarray: Length-M measurements (or M×K)
        """
        return measure(self, f)

    def sidecar(self) -> Dict[str, Any]:
        """
        Provenance record written next to the CSV.

        Returns:
            Dict[str, Any]: ``{"m", "n", "dist", "seed", "normalized"}``
        """
        return {
            "m": self.m,
            "n": self.n,
            "dist": self.distribution.value if self.distribution else None,
            "seed": self.seed,
            "normalized": self.normalized,
        }

    def save(self, csv_path: Union[str, Path]) -> Path:
        """
        Write the matrix as CSV plus a JSON sidecar with the same stem.

        Args:
            csv_path: Destination CSV path

        Returns:
            Path: Path of the written sidecar
        """
        csv_path = Path(csv_path)
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        write_matrix_csv(self.mat, csv_path)

        sidecar_path = csv_path.with_suffix(".json")
        with open(sidecar_path, "w", encoding="utf-8") as f:
            json.dump(self.sidecar(), f, indent=2, sort_keys=True)
            f.write("\n")

        logger.info(f"Saved {self.m}x{self.n} observation matrix to {csv_path}")
        return sidecar_path

    @classmethod
    def load(cls, csv_path: Union[str, Path]) -> "ObservationMatrix":
        """
        Load a matrix; when a sidecar exists, verify the CSV against regeneration.

        Args:
            csv_path: Source CSV path

        Returns:
            ObservationMatrix: Loaded matrix

        Raises:
            FormatError: If the CSV disagrees with its sidecar
        """
        csv_path = Path(csv_path)
        mat = read_matrix_csv(csv_path)

        sidecar_path = csv_path.with_suffix(".json")
        if not sidecar_path.exists():
            return cls(mat=mat)

        try:
            with open(sidecar_path, "r", encoding="utf-8") as f:
                meta = json.load(f)
        except json.JSONDecodeError as e:
            raise FormatError(f"{sidecar_path}: invalid JSON ({e.msg})") from e

        if meta.get("dist") is None:
            return cls(mat=mat)

        try:
            expected = generate_observation(
                int(meta["m"]),
                int(meta["n"]),
                Distribution(meta["dist"]),
                int(meta["seed"]),
                normalize=bool(meta.get("normalized", False)),
            )
        except (KeyError, ValueError) as e:
            raise FormatError(f"{sidecar_path}: invalid sidecar ({str(e)})") from e

        if mat.shape != expected.mat.shape or not np.array_equal(mat, expected.mat):
            raise FormatError(f"{csv_path} does not match the matrix regenerated from {sidecar_path}")

        logger.debug(f"Verified {csv_path} against sidecar provenance")
        return expected


def _draw_column(gen: np.random.Generator, m: int, dist: Distribution) -> np.ndarray:
    if dist is Distribution.NORMAL01:
        return gen.standard_normal(m)
    if dist is Distribution.UNIFORM01:
        return gen.random(m)
    return gen.integers(0, 2, size=m).astype(np.float64) * 2.0 - 1.0


def generate_observation(
    m: int,
    n: int,
    dist: Union[Distribution, str],
    seed: int,
    normalize: bool = False,
) -> ObservationMatrix:
    """
    Generate a random observation matrix.

    Column ``j`` is drawn from the stream ``(seed, MATRIX_COLUMN, j)``, so the
    matrix is a pure function of ``(m, n, dist, seed)``, and the first rows of
    a taller matrix with the same seed coincide with a shorter one.

    Args:
        m: Number of measurements (rows)
        n: Signal length (columns)
        dist: Entry distribution
        seed: Unsigned seed
        normalize: Divide entries by sqrt(m)

    Returns:
        ObservationMatrix: Generated matrix with provenance
    """
    if m < 1 or n < 1:
        raise DimensionError(f"observation matrix needs m, n >= 1, got {m}x{n}")
    try:
        dist = Distribution(dist)
    except ValueError as e:
        raise ConfigError(f"unknown distribution {dist!r}") from e
    seed = check_seed(seed)

    mat = np.empty((m, n), dtype=np.float64)
    for j in range(n):
        mat[:, j] = _draw_column(stream(seed, StreamPurpose.MATRIX_COLUMN, j), m, dist)

    if normalize:
        mat /= np.sqrt(m)

    return ObservationMatrix(mat=mat, distribution=dist, seed=seed, normalized=normalize)


def measure(obs: ObservationMatrix, f: np.ndarray) -> np.ndarray:
    """
    Apply the observation matrix, ``y = M0 f``.

    Args:
        obs: Observation matrix
        f: Length-N signal or N×K image

    Returns:
        np.ndarray: Measurements
    """
    return matvec(obs.mat, np.asarray(f, dtype=np.float64))
