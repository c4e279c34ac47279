"""
Observation matrices, measurement, and UUP/RIP/coherence diagnostics.
"""
from sensing.diagnostics import RipEstimate, coherence_index, recommended_measurements, rip_ratio_estimate
from sensing.observation import Distribution, ObservationMatrix, generate_observation, measure

__all__ = [
    "Distribution",
    "ObservationMatrix",
    "RipEstimate",
    "coherence_index",
    "generate_observation",
    "measure",
    "recommended_measurements",
    "rip_ratio_estimate",
]
