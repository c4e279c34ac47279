"""
Problem forms, the recovery pipeline and recovery reports.
"""
from recovery.problem import (
    ProblemForm,
    ReconstructionSystem,
    RecoveryProblem,
    RegularizerKind,
    build_system,
    measure_for_form,
    reconstruction_matrix,
)
from recovery.recovery_manager import add_measurement_noise, recover_image, recover_vector
from recovery.report import RecoveryReport

__all__ = [
    "ProblemForm",
    "ReconstructionSystem",
    "RecoveryProblem",
    "RecoveryReport",
    "RegularizerKind",
    "add_measurement_noise",
    "build_system",
    "measure_for_form",
    "reconstruction_matrix",
    "recover_image",
    "recover_vector",
]
