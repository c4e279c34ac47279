"""
Command-line entry point for the compressive-sensing recovery toolkit.

Verbs: gen-matrix, measure, recover, experiment, phase-sweep, coherence, psnr,
demo-quadratic. Exit codes: 0 success, 1 usage/config, 2 I/O, 3 missing
resource, 4 numerical failure.
"""
import argparse
import logging
import sys
from typing import List, Optional

from cli import commands
from cli.experiment_config import PRESETS
from config import settings
from imaging.test_images import ImageKind
from recovery.problem import ProblemForm, RegularizerKind
from sensing.observation import Distribution
from solvers.gradient_solver import SolverMode
from transforms.transform_operator import TransformKind
from utils.error_handler import EXIT_USAGE, ErrorHandler, UsageError
from utils.logger import configure_logging

logger = logging.getLogger(__name__)

FORMS = [form.value for form in ProblemForm]
TRANSFORMS = [kind.value for kind in TransformKind]
DISTRIBUTIONS = [dist.value for dist in Distribution]
MODES = [mode.value for mode in SolverMode]
REGULARIZERS = [kind.value for kind in RegularizerKind]


class CliParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as ``UsageError`` (exit code 1)."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> CliParser:
    parser = CliParser(prog="cs-recovery", description="Gradient-based compressive-sensing recovery toolkit")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Logging level (default from CS_LOG_LEVEL)")
    parser.add_argument("--log-file", default=settings.LOG_FILE, help="Also log to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-matrix", help="Generate an observation matrix (CSV + JSON sidecar)")
    p.add_argument("--m", type=int, required=True, help="Rows (measurements)")
    p.add_argument("--n", type=int, required=True, help="Columns (signal length)")
    p.add_argument("--dist", choices=DISTRIBUTIONS, default=settings.DEFAULT_DISTRIBUTION)
    p.add_argument("--seed", type=int, default=settings.DEFAULT_SEED, help="Seed (default from CS_SEED)")
    p.add_argument("--normalize", action="store_true", help="Scale entries by 1/sqrt(m)")
    p.add_argument("--out", required=True, help="Output CSV path")

    p = sub.add_parser("measure", help="Measure a signal or image with a stored matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--signal", required=True, help="CSV vector/matrix or PGM image")
    p.add_argument("--out", required=True)
    p.add_argument("--form", choices=FORMS, default=ProblemForm.TIME_SPARSE_TIME_MEAS.value)
    p.add_argument("--transform", choices=TRANSFORMS, default=TransformKind.IDENTITY.value)
    p.add_argument("--noise-sigma", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)

    p = sub.add_parser("recover", help="Recover a signal or image from stored measurements")
    p.add_argument("--matrix", required=True)
    p.add_argument("--measurements", required=True)
    p.add_argument("--out-dir", required=True, help="Report directory")
    p.add_argument("--form", choices=FORMS, default=ProblemForm.TIME_SPARSE_TIME_MEAS.value)
    p.add_argument("--transform", choices=TRANSFORMS, default=TransformKind.IDENTITY.value)
    p.add_argument("--regularizer", choices=REGULARIZERS, default=RegularizerKind.L1.value)
    p.add_argument("--mode", choices=MODES, default=settings.SOLVER_MODE)
    p.add_argument("--lam", type=float, default=settings.L1_LAMBDA)
    p.add_argument("--decay", type=float, help="Newton λ decay (default: mode-dependent)")
    p.add_argument("--iters", type=int, default=settings.MAX_ITERS)
    p.add_argument("--reference", help="Ground truth for the PSNR field")
    p.add_argument("--peak", type=float, default=settings.PSNR_PEAK)
    p.add_argument("--workers", type=int)

    p = sub.add_parser("experiment", help="Run a preset or JSON-configured experiment")
    p.add_argument("preset", nargs="?", choices=sorted(PRESETS))
    p.add_argument("--config", help="JSON experiment config (see docs/experiment_config.md)")
    p.add_argument("--seed", type=int)
    p.add_argument("--iters", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--rows", type=int, nargs="+")
    p.add_argument("--dist", choices=DISTRIBUTIONS)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--regularizer", choices=REGULARIZERS)
    p.add_argument("--lam", type=float)
    p.add_argument("--decay", type=float)
    p.add_argument("--image", dest="images", action="append", help="Input PGM image (repeatable)")
    p.add_argument("--image-kind", choices=[kind.value for kind in ImageKind])
    p.add_argument("--image-size", type=int)
    p.add_argument("--synthetic", action="store_const", const=True, help="Use the built-in synthetic image")
    p.add_argument("--normalize", action="store_const", const=True)
    p.add_argument("--per-column-seeds", action="store_const", const=True)
    p.add_argument("--noise-sigma", type=float)
    p.add_argument("--peak", type=float)
    p.add_argument("--out-dir", dest="output_dir")
    p.add_argument("--workers", type=int)

    p = sub.add_parser("phase-sweep", help="Empirical L1 success-rate grid over (K, M)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, nargs="+", required=True)
    p.add_argument("--m", type=int, nargs="+", required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    p.add_argument("--iters", type=int, default=settings.PHASE_SWEEP_ITERS)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", required=True)

    p = sub.add_parser("coherence", help="Print the coherence index between a basis and a matrix")
    p.add_argument("--psi", choices=TRANSFORMS, default=TransformKind.IDENTITY.value)
    p.add_argument("--matrix", required=True)

    p = sub.add_parser("psnr", help="Print the PSNR between two images")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--peak", type=float, default=settings.PSNR_PEAK)

    p = sub.add_parser("demo-quadratic", help="Step-size rules on a 2-D quadratic")
    p.add_argument("--out", help="CSV path for the trajectories")
    p.add_argument("--iters", type=int, default=50)
    p.add_argument("--fixed-mu", type=float, default=0.05)

    return parser


EXPERIMENT_OVERRIDES = [
    "seed", "iters", "trials", "rows", "dist", "mode", "regularizer", "lam", "decay", "images",
    "image_kind", "image_size", "synthetic", "normalize", "per_column_seeds", "noise_sigma", "peak",
    "output_dir", "workers",
]


def dispatch(args: argparse.Namespace) -> int:
    if args.command == "gen-matrix":
        return commands.cmd_gen_matrix(args.m, args.n, args.dist, args.seed, args.out, normalize=args.normalize)
    if args.command == "measure":
        return commands.cmd_measure(
            args.matrix, args.signal, args.out, args.form, args.transform, args.noise_sigma, args.seed
        )
    if args.command == "recover":
        return commands.cmd_recover(
            args.matrix,
            args.measurements,
            args.out_dir,
            form=args.form,
            transform=args.transform,
            regularizer=args.regularizer,
            mode=args.mode,
            lam=args.lam,
            decay=args.decay,
            iters=args.iters,
            reference=args.reference,
            peak=args.peak,
            workers=args.workers,
        )
    if args.command == "experiment":
        overrides = {name: getattr(args, name) for name in EXPERIMENT_OVERRIDES}
        return commands.cmd_experiment(args.preset, args.config, overrides)
    if args.command == "phase-sweep":
        return commands.cmd_phase_sweep(
            args.n, args.k, args.m, args.trials, args.seed, args.out, iters=args.iters, workers=args.workers
        )
    if args.command == "coherence":
        return commands.cmd_coherence(args.psi, args.matrix)
    if args.command == "psnr":
        return commands.cmd_psnr(args.first, args.second, args.peak)
    return commands.cmd_demo_quadratic(args.out, args.iters, args.fixed_mu)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one verb and map failures to exit codes.

    Args:
        argv: Arguments (``sys.argv[1:]`` by default)

    Returns:
        int: Process exit code
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE

    configure_logging(args.log_level.upper(), args.log_file)
    try:
        return dispatch(args)
    except Exception as e:
        code = ErrorHandler().handle(e, args.command)
        print(f"error: {str(e)}", file=sys.stderr)
        return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
