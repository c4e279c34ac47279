"""
Recovery reports and their on-disk layout.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from config import settings
from core_linalg.matrix_io import write_matrix_csv, write_vector_csv
from imaging.pgm_io import write_pgm
from solvers.gradient_solver import ConvergenceTrace, SolverMode

logger = logging.getLogger(__name__)


@dataclass
class RecoveryReport:
    """
    Outcome of one recovery run.

    ``traces`` holds one trace per recovered column, or a single joint trace
    when ``joint`` is set (TV image recovery).
    """

    recovered: np.ndarray
    traces: List[ConvergenceTrace]
    psnr_vs_reference: Optional[float] = None
    total_iterations: int = 0
    elapsed_ms: float = 0.0
    form: Any = None
    regularizer: Any = None
    lam: Optional[float] = None
    mode: Optional[SolverMode] = None
    seeds: List[Optional[int]] = field(default_factory=list)
    joint: bool = False

    def __post_init__(self):
        expected = 1 if self.joint or self.recovered.ndim == 1 else self.recovered.shape[1]
        if len(self.traces) != expected:
            raise ValueError(f"expected {expected} traces, got {len(self.traces)}")

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready summary (everything except the arrays).

        Returns:
            Dict[str, Any]: form, regularizer, lambda, iterations, psnr, elapsed_ms, seeds
        """
        return {
            "form": getattr(self.form, "value", self.form),
            "regularizer": getattr(self.regularizer, "value", self.regularizer),
            "lambda": self.lam,
            "mode": getattr(self.mode, "value", self.mode),
            "iterations": self.total_iterations,
            "psnr": self.psnr_vs_reference,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "seeds": self.seeds,
        }

    def save(self, directory: Union[str, Path], maxval: int = settings.PGM_MAXVAL) -> Path:
        """
        Write the report directory.

        Layout: ``recovered.pgm`` (images) or ``recovered.csv`` (vectors),
        ``trace_col_<k>.csv`` per column or ``trace_joint.csv``, and ``report.json``.

        Args:
            directory: Output directory (created if missing)
            maxval: PGM maxval for the recovered image

        Returns:
            Path: The report directory
        """
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)

        if self.recovered.ndim == 2:
            write_pgm(self.recovered, directory / "recovered.pgm", maxval=maxval)
            write_matrix_csv(self.recovered, directory / "recovered.csv")
        else:
            write_vector_csv(self.recovered, directory / "recovered.csv")

        if self.joint:
            self.traces[0].to_csv(directory / "trace_joint.csv")
        else:
            for k, trace in enumerate(self.traces):
                trace.to_csv(directory / f"trace_col_{k}.csv")

        with open(directory / "report.json", "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)
            f.write("\n")

        logger.info(f"Wrote recovery report to {directory}")
        return directory
