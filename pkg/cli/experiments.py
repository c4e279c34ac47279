"""
Experiment runner: measure → recover → report over a sweep of observation rows
and seeded trials.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List

import numpy as np
import pandas as pd

from cli.experiment_config import ExperimentConfig
from config import settings
from imaging.pgm_io import read_pgm
from imaging.test_images import ImageKind, TestImageSpec, generate_test_image
from recovery.problem import ProblemForm, RecoveryProblem, RegularizerKind, measure_for_form
from recovery.recovery_manager import add_measurement_noise, recover_image
from recovery.report import RecoveryReport
from regularizers.l1_norm import L1Params
from regularizers.schedule import default_decay
from regularizers.total_variation import TvParams
from sensing.observation import Distribution, generate_observation
from sensing.prng import derive_seed
from solvers.gradient_solver import SolverConfig, SolverMode
from transforms.transform_operator import TransformKind, TransformOperator
from utils.error_handler import ResourceError
from utils.logger import setup_logger

# Frozen column order of summary.csv.
SUMMARY_COLUMNS = ["image", "rows", "trial", "seed", "psnr", "iterations", "elapsed_ms"]


@dataclass(frozen=True)
class RunSpec:
    """One (image, rows, trial) cell of an experiment."""

    image: str
    rows: int
    trial: int
    seed: int


class ExperimentRunner:
    """Runs a configured experiment and collects its reports."""

    def __init__(self, config: ExperimentConfig):
        """
        Initialize the runner.

        Args:
            config: Validated experiment configuration
        """
        self.logger = setup_logger("ExperimentRunner", settings.LOG_LEVEL)
        self.config = config
        self.output_dir = Path(config.output_dir)

        self.solver_config = SolverConfig(
            mode=SolverMode(config.mode),
            fixed_mu=config.fixed_mu,
            eps_newton=config.eps_newton,
            max_iters=config.iters,
            stop_tol=config.stop_tol,
        )
        decay = default_decay(SolverMode(config.mode), config.decay)
        self.l1 = L1Params(lam=config.lam, eps_zero=config.eps_zero, decay=decay)
        self.tv = TvParams(lam=config.lam, eps_smooth=config.eps_smooth, decay=decay)
        self.regularizer = RegularizerKind(config.regularizer)
        self.form = ProblemForm(config.form)

        self.logger.info(
            f"Experiment '{config.preset}': rows={config.rows}, trials={config.trials}, "
            f"{config.regularizer}/{config.mode}, {config.iters} iterations"
        )

    def load_images(self) -> Dict[str, np.ndarray]:
        """
        Reference images: user-supplied PGM files, else the configured synthetic image.

        Returns:
            Dict[str, np.ndarray]: Images keyed by name

        Raises:
            ResourceError: If an image file is missing, or the ``general``
                preset has neither an image nor ``synthetic``
        """
        images: Dict[str, np.ndarray] = {}
        for name in self.config.images:
            path = Path(name)
            if not path.exists():
                raise ResourceError(
                    f"input image {path} not found; standard test images (e.g. Cameraman, Boats) "
                    f"are not bundled and must be supplied as 8-bit PGM files"
                )
            images[path.stem] = read_pgm(path)

        if images:
            return images

        if self.config.preset == "general" and not self.config.synthetic:
            raise ResourceError(
                "the general preset needs --image PATH (a grayscale PGM such as Cameraman) "
                "or --synthetic to use the built-in blocks image"
            )

        spec = TestImageSpec(kind=ImageKind(self.config.image_kind), size=self.config.image_size)
        return {spec.kind.value: generate_test_image(spec)}

    def plan(self, images: Dict[str, np.ndarray]) -> List[RunSpec]:
        """Enumerate the (image, rows, trial) cells with their trial seeds."""
        return [
            RunSpec(image=name, rows=m, trial=t, seed=derive_seed(self.config.seed, t))
            for name in images
            for m in self.config.rows
            for t in range(self.config.trials)
        ]

    def build_problem(self, run: RunSpec, image: np.ndarray) -> RecoveryProblem:
        """
        Measure an image for one run.

        Args:
            run: The run cell
            image: Reference image (N rows × K columns)

        Returns:
            RecoveryProblem: Problem holding the (optionally noisy) measurements
        """
        n = image.shape[0]
        dist = Distribution(self.config.dist)
        obs = generate_observation(run.rows, n, dist, run.seed, normalize=self.config.normalize)
        psi = TransformOperator(TransformKind(self.config.transform), n)

        column_observations = None
        if self.config.per_column_seeds:
            column_observations = [
                generate_observation(run.rows, n, dist, derive_seed(run.seed, k), normalize=self.config.normalize)
                for k in range(image.shape[1])
            ]
            y = np.column_stack(
                [measure_for_form(self.form, col_obs, psi, image[:, k]) for k, col_obs in enumerate(column_observations)]
            )
        else:
            y = measure_for_form(self.form, obs, psi, image)

        y = add_measurement_noise(y, self.config.noise_sigma, run.seed)
        return RecoveryProblem(
            form=self.form,
            obs=obs,
            measurements=y,
            psi=psi,
            regularizer=self.regularizer,
            l1=self.l1,
            tv=self.tv,
            column_observations=column_observations,
        )

    def run_one(self, run: RunSpec, image: np.ndarray, column_workers: int) -> RecoveryReport:
        """Measure, recover and score one cell."""
        problem = self.build_problem(run, image)
        return recover_image(
            problem,
            self.solver_config,
            reference=image,
            peak=self.config.peak,
            workers=column_workers,
        )

    def run(self) -> pd.DataFrame:
        """
        Run every cell, write report directories and ``summary.csv``.

        Cells run concurrently for TV (single-threaded per image); L1 cells run
        one after another with their columns spread over the workers.

        Returns:
            pd.DataFrame: Summary with columns ``SUMMARY_COLUMNS``
        """
        images = self.load_images()
        runs = self.plan(images)

        def execute(run: RunSpec) -> RecoveryReport:
            column_workers = 1 if self.regularizer is RegularizerKind.TV else self.config.workers
            try:
                return self.run_one(run, images[run.image], column_workers)
            except Exception as e:
                self.logger.error(f"Run {run} failed: {str(e)}")
                raise

        if self.regularizer is RegularizerKind.TV and self.config.workers > 1:
            with ThreadPoolExecutor(max_workers=self.config.workers) as executor:
                reports = list(executor.map(execute, runs))
        else:
            reports = [execute(run) for run in runs]

        rows = []
        for run, report in zip(runs, reports):
            report.save(self.output_dir / run.image / f"rows_{run.rows}" / f"trial_{run.trial}")
            rows.append(
                {
                    "image": run.image,
                    "rows": run.rows,
                    "trial": run.trial,
                    "seed": run.seed,
                    "psnr": report.psnr_vs_reference,
                    "iterations": report.total_iterations,
                    "elapsed_ms": round(report.elapsed_ms, 3),
                }
            )

        summary = pd.DataFrame(rows, columns=SUMMARY_COLUMNS)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        summary.to_csv(self.output_dir / "summary.csv", index=False, float_format="%.6f")

        for m, group in summary.groupby("rows"):
            psnrs = group["psnr"]
            self.logger.info(
                f"rows={m}: median PSNR {psnrs.median():.2f} dB "
                f"(min {psnrs.min():.2f}, max {psnrs.max():.2f}) over {len(group)} runs"
            )
        return summary


def median_psnr_by_rows(summary: pd.DataFrame) -> Dict[int, float]:
    """Median PSNR per observation-row count."""
    medians = summary.groupby("rows")["psnr"].median()
    return {int(m): float(v) for m, v in medians.items() if not math.isnan(v)}
