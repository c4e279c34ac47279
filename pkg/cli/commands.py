"""
Command implementations behind the ``cs-recovery`` verbs.

Each ``cmd_*`` performs one pipeline stage and returns an exit code; errors
propagate to :func:`main.run`, which maps them through ``ErrorHandler``.
"""
import logging
import time
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np

from cli.experiment_config import ExperimentConfig, preset_config
from cli.experiments import ExperimentRunner
from cli.phase_sweep import SweepSettings, run_phase_sweep, write_grid
from config import settings
from core_linalg.matrix_io import read_matrix_csv, write_matrix_csv, write_vector_csv
from imaging.pgm_io import read_pgm
from imaging.quality import psnr
from recovery.problem import ProblemForm, RecoveryProblem, RegularizerKind, measure_for_form
from recovery.recovery_manager import add_measurement_noise, recover_image, recover_vector
from recovery.report import RecoveryReport
from regularizers.l1_norm import L1Params
from regularizers.schedule import default_decay
from regularizers.total_variation import TvParams
from sensing.diagnostics import coherence_index
from sensing.observation import Distribution, ObservationMatrix, generate_observation
from solvers.gradient_solver import SolverConfig, SolverMode
from solvers.quadratic_demo import run_quadratic_demo
from transforms.transform_operator import TransformKind, TransformOperator
from utils.error_handler import EXIT_OK, ConfigError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _read_signal(path: PathLike) -> np.ndarray:
    """A PGM image, a single-column CSV vector, or a multi-column CSV image."""
    path = Path(path)
    if path.suffix.lower() == ".pgm":
        return read_pgm(path)
    values = read_matrix_csv(path)
    return values[:, 0] if values.shape[1] == 1 else values


def _write_signal(values: np.ndarray, path: PathLike) -> None:
    if values.ndim == 1:
        write_vector_csv(values, path)
    else:
        write_matrix_csv(values, path)


def cmd_gen_matrix(m: int, n: int, dist: str, seed: int, out: PathLike, normalize: bool = False) -> int:
    """Generate an observation matrix and write ``out`` plus its JSON sidecar."""
    obs = generate_observation(m, n, Distribution(dist), seed, normalize=normalize)
    obs.save(out)
    return EXIT_OK


def cmd_measure(
    matrix: PathLike,
    signal: PathLike,
    out: PathLike,
    form: str = ProblemForm.TIME_SPARSE_TIME_MEAS.value,
    transform: str = TransformKind.IDENTITY.value,
    noise_sigma: float = 0.0,
    seed: int = settings.DEFAULT_SEED,
) -> int:
    """
    Measure a signal or image (columns) with a stored matrix.

    Forms (b)/(d) measure the transform coefficients of the signal.
    """
    obs = ObservationMatrix.load(matrix)
    f = _read_signal(signal)
    psi = TransformOperator(TransformKind(transform), obs.n)
    y = measure_for_form(ProblemForm(form), obs, psi, f)
    y = add_measurement_noise(y, noise_sigma, seed)
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    _write_signal(y, out)
    logger.info(f"Wrote {y.shape[0]} measurements to {out}")
    return EXIT_OK


def cmd_recover(
    matrix: PathLike,
    measurements: PathLike,
    out_dir: PathLike,
    form: str = ProblemForm.TIME_SPARSE_TIME_MEAS.value,
    transform: str = TransformKind.IDENTITY.value,
    regularizer: str = RegularizerKind.L1.value,
    mode: str = settings.SOLVER_MODE,
    lam: float = settings.L1_LAMBDA,
    decay: Optional[float] = None,
    iters: int = settings.MAX_ITERS,
    reference: Optional[PathLike] = None,
    peak: float = settings.PSNR_PEAK,
    workers: Optional[int] = None,
) -> int:
    """
    Recover a vector or image from stored measurements and write a report directory.

    ``decay=None`` selects the mode default (see :func:`default_decay`).
    """
    obs = ObservationMatrix.load(matrix)
    y = _read_signal(measurements)
    decay = default_decay(SolverMode(mode), decay)
    problem = RecoveryProblem(
        form=ProblemForm(form),
        obs=obs,
        measurements=y,
        psi=TransformOperator(TransformKind(transform), obs.n),
        regularizer=RegularizerKind(regularizer),
        l1=L1Params(lam=lam, decay=decay),
        tv=TvParams(lam=lam, decay=decay),
    )
    config = SolverConfig(mode=SolverMode(mode), max_iters=iters)
    ref = _read_signal(reference) if reference is not None else None

    if problem.is_image:
        report = recover_image(problem, config, reference=ref, peak=peak, workers=workers)
    else:
        start = time.perf_counter()
        f, trace = recover_vector(problem, config)
        report = RecoveryReport(
            recovered=f,
            traces=[trace],
            psnr_vs_reference=psnr(ref, f, peak) if ref is not None else None,
            total_iterations=len(trace),
            elapsed_ms=(time.perf_counter() - start) * 1000.0,
            form=problem.form,
            regularizer=problem.regularizer,
            lam=lam,
            mode=config.mode,
            seeds=[obs.seed],
        )
    report.save(out_dir)
    return EXIT_OK


def cmd_experiment(
    preset: Optional[str] = None,
    config_path: Optional[PathLike] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> int:
    """
    Run a named preset or a JSON experiment config; flags in ``overrides`` win.
    """
    if config_path is not None:
        config = ExperimentConfig.from_file(config_path)
        if preset is not None and preset != config.preset:
            raise ConfigError(f"config {config_path} is preset {config.preset!r}, not {preset!r}")
    elif preset is not None:
        config = preset_config(preset)
    else:
        raise ConfigError("experiment needs a preset name or --config")

    config = config.with_overrides(**(overrides or {}))
    summary = ExperimentRunner(config).run()
    print(summary.to_string(index=False))
    return EXIT_OK


def cmd_phase_sweep(
    n: int,
    k_list: Sequence[int],
    m_list: Sequence[int],
    trials: int,
    seed: int,
    out: PathLike,
    iters: int = settings.PHASE_SWEEP_ITERS,
    workers: Optional[int] = None,
) -> int:
    """Write the success-rate grid of an ℓ1 phase-transition sweep."""
    grid = run_phase_sweep(n, k_list, m_list, trials, seed, sweep=SweepSettings(iters=iters), workers=workers)
    write_grid(grid, out)
    print(grid.to_string(index=False))
    return EXIT_OK


def cmd_coherence(psi_kind: str, matrix: PathLike) -> int:
    """Print the coherence index χ between a basis and a stored matrix."""
    obs = ObservationMatrix.load(matrix)
    chi = coherence_index(TransformOperator(TransformKind(psi_kind), obs.n), obs)
    print(f"{chi:.6f}")
    return EXIT_OK


def cmd_psnr(first: PathLike, second: PathLike, peak: float = settings.PSNR_PEAK) -> int:
    """Print the PSNR between two images (PGM or CSV)."""
    print(f"{psnr(_read_signal(first), _read_signal(second), peak):.4f}")
    return EXIT_OK


def cmd_demo_quadratic(out: Optional[PathLike] = None, max_iters: int = 50, fixed_mu: float = 0.05) -> int:
    """Trajectories of the three step-size rules on the 2-D quadratic."""
    frame = run_quadratic_demo(max_iters=max_iters, fixed_mu=fixed_mu)
    if out is not None:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(out, index=False, float_format="%.17g")
        logger.info(f"Wrote quadratic demo trajectories to {out}")
    final = frame.groupby("method", sort=False).tail(1)
    print(final.to_string(index=False))
    return EXIT_OK
