"""
Experiment configuration: named presets, JSON documents and flag overrides.

The schema is documented in ``docs/experiment_config.md``.
"""
import logging
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from config import settings
from imaging.test_images import ImageKind
from recovery.problem import ProblemForm, RegularizerKind
from sensing.observation import Distribution
from solvers.gradient_solver import SolverMode
from transforms.transform_operator import TransformKind
from utils.config_loader import ConfigLoader
from utils.error_handler import ConfigError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentConfig:
    """A fully specified experiment: problem, solver, test image, output and seed."""

    preset: str = "custom"
    seed: int = settings.DEFAULT_SEED
    rows: List[int] = field(default_factory=lambda: [20])
    trials: int = 1
    dist: str = settings.DEFAULT_DISTRIBUTION
    normalize: bool = settings.NORMALIZE_OBSERVATION
    per_column_seeds: bool = False
    noise_sigma: float = 0.0
    form: str = ProblemForm.TIME_SPARSE_TIME_MEAS.value
    transform: str = TransformKind.IDENTITY.value
    regularizer: str = RegularizerKind.L1.value
    mode: str = settings.SOLVER_MODE
    lam: float = settings.L1_LAMBDA
    decay: Optional[float] = None
    eps_zero: float = settings.L1_EPS_ZERO
    eps_smooth: float = settings.TV_EPS_SMOOTH
    eps_newton: Optional[float] = None
    fixed_mu: float = settings.FIXED_MU
    stop_tol: float = settings.STOP_TOL
    iters: int = settings.MAX_ITERS
    image_kind: str = ImageKind.DIAMOND.value
    image_size: int = 64
    images: List[str] = field(default_factory=list)
    synthetic: bool = False
    peak: float = settings.PSNR_PEAK
    output_dir: str = str(settings.RUNS_DIR)
    workers: int = settings.MAX_WORKERS

    def __post_init__(self):
        _check_types(self)
        for name, enum in (
            ("dist", Distribution),
            ("form", ProblemForm),
            ("transform", TransformKind),
            ("regularizer", RegularizerKind),
            ("mode", SolverMode),
            ("image_kind", ImageKind),
        ):
            try:
                enum(getattr(self, name))
            except ValueError as e:
                allowed = ", ".join(member.value for member in enum)
                raise ConfigError(f"{name} must be one of {allowed}; got {getattr(self, name)!r}") from e

        if not self.rows or any(m < 1 for m in self.rows):
            raise ConfigError(f"rows must be a non-empty list of positive counts, got {self.rows}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.iters < 1:
            raise ConfigError(f"iters must be >= 1, got {self.iters}")
        if self.noise_sigma < 0:
            raise ConfigError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.regularizer == RegularizerKind.TV.value:
            if self.form != ProblemForm.TIME_SPARSE_TIME_MEAS.value:
                raise ConfigError("TV regularization is only defined for form (a)")
            if self.per_column_seeds:
                raise ConfigError("per_column_seeds is only supported with the l1 regularizer")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        """
        Build a config from a JSON document, starting from its ``preset``.

        Args:
            data: Parsed configuration document

        Returns:
            ExperimentConfig: Validated configuration

        Raises:
            ConfigError: On unknown keys or ill-typed values
        """
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown experiment config keys: {', '.join(unknown)}")

        base = preset_config(data["preset"]) if "preset" in data else cls()
        return base.with_overrides(**data)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ExperimentConfig":
        """Load and validate a JSON experiment config."""
        config = cls.from_dict(ConfigLoader(path).load())
        logger.info(f"Loaded experiment config {path} (preset {config.preset})")
        return config

    def with_overrides(self, **overrides: Any) -> "ExperimentConfig":
        """
        Return a copy with the given values replaced; ``None`` values are ignored.

        Args:
            overrides: Field values (e.g. parsed command-line flags)

        Returns:
            ExperimentConfig: Validated copy
        """
        known = {f.name for f in fields(self)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise ConfigError(f"unknown experiment config keys: {', '.join(unknown)}")
        changes = {k: v for k, v in overrides.items() if v is not None}
        if changes.get("regularizer") == RegularizerKind.TV.value and self.regularizer != RegularizerKind.TV.value:
            # switching an L1 preset to TV also switches to its time-domain steepest-descent setup
            changes.setdefault("form", ProblemForm.TIME_SPARSE_TIME_MEAS.value)
            changes.setdefault("transform", TransformKind.IDENTITY.value)
            changes.setdefault("mode", SolverMode.STEEPEST_DESCENT.value)
            changes.setdefault("lam", settings.TV_LAMBDA)
            changes.setdefault("decay", None)
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


_FIELD_TYPES = {
    "preset": "str",
    "seed": "int",
    "rows": "list[int]",
    "trials": "int",
    "dist": "str",
    "normalize": "bool",
    "per_column_seeds": "bool",
    "noise_sigma": "float",
    "form": "str",
    "transform": "str",
    "regularizer": "str",
    "mode": "str",
    "lam": "float",
    "decay": "float?",
    "eps_zero": "float",
    "eps_smooth": "float",
    "eps_newton": "float?",
    "fixed_mu": "float",
    "stop_tol": "float",
    "iters": "int",
    "image_kind": "str",
    "image_size": "int",
    "images": "list[str]",
    "synthetic": "bool",
    "peak": "float",
    "output_dir": "str",
    "workers": "int",
}

_SCALAR_TYPES = {
    "int": (int,),
    "float": (int, float),
    "bool": (bool,),
    "str": (str,),
}


def _check_types(config: ExperimentConfig) -> None:
    for name, type_name in _FIELD_TYPES.items():
        value = getattr(config, name)
        if type_name.endswith("?"):
            if value is None:
                continue
            type_name = type_name[:-1]
        if type_name.startswith("list["):
            inner = type_name[5:-1]
            if not isinstance(value, list) or not all(_is_a(v, inner) for v in value):
                raise ConfigError(f"{name} must be a list of {inner}, got {value!r}")
        elif not _is_a(value, type_name):
            raise ConfigError(f"{name} must be {type_name}, got {value!r}")


def _is_a(value: Any, type_name: str) -> bool:
    if type_name != "bool" and isinstance(value, bool):
        return False
    return isinstance(value, _SCALAR_TYPES[type_name])


PRESETS: Dict[str, Dict[str, Any]] = {
    "diamond": {
        "image_kind": "diamond",
        "image_size": 64,
        "rows": [10, 12, 15, 20],
        "dist": "uniform01",
        "form": "a",
        "transform": "identity",
        "regularizer": "l1",
        "mode": "newton",
        "lam": settings.NEWTON_LAMBDA,
        "decay": settings.NEWTON_DECAY,
        "iters": 20000,
    },
    "circle": {
        "image_kind": "circle",
        "image_size": 64,
        "rows": [15, 20, 25, 30],
        "dist": "uniform01",
        "form": "a",
        "transform": "identity",
        "regularizer": "l1",
        "mode": "steepest",
        "lam": settings.L1_LAMBDA,
        "iters": 20000,
    },
    "geometric": {
        "image_kind": "geometric",
        "image_size": 64,
        "rows": [20],
        "dist": "uniform01",
        "form": "a",
        "transform": "identity",
        "regularizer": "tv",
        "mode": "steepest",
        "lam": settings.TV_LAMBDA,
        "eps_smooth": 1e-6,
        "iters": 100000,
        "peak": 255.0,
    },
    "general": {
        "image_kind": "blocks",
        "image_size": 256,
        "rows": [100],
        "dist": "normal01",
        "form": "c",
        "transform": settings.GENERAL_WAVELET,
        "regularizer": "l1",
        "mode": "newton",
        "lam": settings.NEWTON_LAMBDA,
        "decay": settings.NEWTON_DECAY,
        "iters": 5000,
    },
}


def preset_config(name: str) -> ExperimentConfig:
    """
    Configuration of a named preset.

    Args:
        name: ``diamond``, ``circle``, ``geometric`` or ``general``

    Returns:
        ExperimentConfig: Preset configuration with base defaults elsewhere
    """
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}")
    return ExperimentConfig(preset=name, **PRESETS[name])
