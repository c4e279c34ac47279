"""
The four compressive-sensing problem forms and their canonical reconstruction systems.

Each form is reduced to ``min ‖z‖₁ s.t. B z = c``:

======  ==========================  =============  =======  ============
form    sparsity / measurement      B              z        back to f
======  ==========================  =============  =======  ============
a       time / time                 M0             f        f = z
b       time / transform            M0 Ψ           f        f = z
c       transform / time            M0 Ψ†          Ψ f      f = Ψ† z
d       transform / transform       M0             Ψ f      f = Ψ† z
======  ==========================  =============  =======  ============
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from regularizers.l1_norm import L1Params
from regularizers.total_variation import TvParams
from sensing.observation import ObservationMatrix
from transforms.transform_operator import TransformKind, TransformOperator
from utils.error_handler import ConfigError, DimensionError

logger = logging.getLogger(__name__)


class ProblemForm(str, Enum):
    TIME_SPARSE_TIME_MEAS = "a"
    TIME_SPARSE_TRANS_MEAS = "b"
    TRANS_SPARSE_TIME_MEAS = "c"
    TRANS_SPARSE_TRANS_MEAS = "d"

    @property
    def measures_transform(self) -> bool:
        """Measurements are taken of the transform coefficients (ỹ = M0 Ψ f)."""
        return self in (ProblemForm.TIME_SPARSE_TRANS_MEAS, ProblemForm.TRANS_SPARSE_TRANS_MEAS)

    @property
    def sparse_in_transform(self) -> bool:
        """The recovered variable is the coefficient vector f̃ = Ψ f."""
        return self in (ProblemForm.TRANS_SPARSE_TIME_MEAS, ProblemForm.TRANS_SPARSE_TRANS_MEAS)


class RegularizerKind(str, Enum):
    L1 = "l1"
    TV = "tv"


@dataclass
class RecoveryProblem:
    """
    A recovery task: form, operators, measurements and regularizer.

    ``measurements`` is a length-M vector, or an M×K array holding the
    measurements of K image columns. ``column_observations`` optionally gives
    each column its own matrix (L1 image recovery only).
    """

    form: ProblemForm
    obs: ObservationMatrix
    measurements: np.ndarray
    psi: Optional[TransformOperator] = None
    regularizer: RegularizerKind = RegularizerKind.L1
    l1: L1Params = field(default_factory=L1Params)
    tv: TvParams = field(default_factory=TvParams)
    column_observations: Optional[List[ObservationMatrix]] = None

    def __post_init__(self):
        self.form = ProblemForm(self.form)
        self.regularizer = RegularizerKind(self.regularizer)
        if self.psi is None:
            self.psi = TransformOperator(TransformKind.IDENTITY, self.obs.n)
        self.measurements = np.asarray(self.measurements, dtype=np.float64)

        if self.psi.n != self.obs.n:
            raise DimensionError(f"transform size {self.psi.n} does not match matrix width {self.obs.n}")
        if self.measurements.ndim not in (1, 2) or self.measurements.shape[0] != self.obs.m:
            raise DimensionError(
                f"measurements {self.measurements.shape} do not match {self.obs.m} observation rows"
            )
        if self.regularizer is RegularizerKind.TV and self.form is not ProblemForm.TIME_SPARSE_TIME_MEAS:
            raise ConfigError("TV regularization is only defined for form (a)")

        if self.column_observations is not None:
            if self.regularizer is RegularizerKind.TV:
                raise ConfigError("per-column observation matrices are only supported with L1")
            if not self.is_image or len(self.column_observations) != self.measurements.shape[1]:
                raise DimensionError("need exactly one observation matrix per measured column")
            for obs in self.column_observations:
                if obs.mat.shape != self.obs.mat.shape:
                    raise DimensionError(f"column matrix {obs.mat.shape} differs from {self.obs.mat.shape}")

    @property
    def is_image(self) -> bool:
        return self.measurements.ndim == 2

    @property
    def columns(self) -> int:
        return self.measurements.shape[1] if self.is_image else 1

    def observation_for_column(self, column: int) -> ObservationMatrix:
        if self.column_observations is None:
            return self.obs
        return self.column_observations[column]


@dataclass(frozen=True)
class ReconstructionSystem:
    """Canonical ``B z = c`` system plus the map from ``z`` back to the time domain."""

    matrix: np.ndarray
    form: ProblemForm
    psi: TransformOperator

    def to_time_domain(self, z: np.ndarray) -> np.ndarray:
        """
        Map the canonical variable back to the signal.

        Args:
            z: Canonical solution (vector or columns)

        Returns:
            np.ndarray: Time-domain signal
        """
        if self.form.sparse_in_transform:
            return self.psi.inverse(z)
        return np.array(z, copy=True)


def build_system(form: ProblemForm, obs: ObservationMatrix, psi: TransformOperator) -> ReconstructionSystem:
    """
    Compose the reconstruction matrix for one observation matrix.

    Args:
        form: Problem form
        obs: Observation matrix
        psi: Sparsifying basis

    Returns:
        ReconstructionSystem: Matrix B and back-mapping
    """
    if psi.n != obs.n:
        raise DimensionError(f"transform size {psi.n} does not match matrix width {obs.n}")

    form = ProblemForm(form)
    if psi.kind is TransformKind.IDENTITY or form in (
        ProblemForm.TIME_SPARSE_TIME_MEAS,
        ProblemForm.TRANS_SPARSE_TRANS_MEAS,
    ):
        matrix = np.array(obs.mat, copy=True)
    elif form is ProblemForm.TIME_SPARSE_TRANS_MEAS:
        matrix = obs.mat @ psi.as_matrix()
    else:
        matrix = obs.mat @ psi.as_matrix().T

    return ReconstructionSystem(matrix=matrix, form=form, psi=psi)


def reconstruction_matrix(problem: RecoveryProblem) -> ReconstructionSystem:
    """
    Effective system of a problem (using its shared observation matrix).

    Args:
        problem: Recovery problem

    Returns:
        ReconstructionSystem: Matrix B and back-mapping
    """
    return build_system(problem.form, problem.obs, problem.psi)


def measure_for_form(form: ProblemForm, obs: ObservationMatrix, psi: TransformOperator, f: np.ndarray) -> np.ndarray:
    """
    Acquire measurements the way a form expects them.

    Forms (a)/(c) measure the signal (y = M0 f); forms (b)/(d) measure its
    transform coefficients (ỹ = M0 Ψ f).

    Args:
        form: Problem form
        obs: Observation matrix
        psi: Sparsifying basis
        f: Signal or image columns

    Returns:
        np.ndarray: Measurements
    """
    f = np.asarray(f, dtype=np.float64)
    if ProblemForm(form).measures_transform:
        return obs.measure(psi.forward(f))
    return obs.measure(f)
