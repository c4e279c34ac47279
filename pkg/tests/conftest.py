"""
Shared fixtures for the recovery toolkit tests.
"""
import numpy as np
import pytest

from sensing.observation import ObservationMatrix, generate_observation


@pytest.fixture
def rng():
    """Seeded generator for test data (independent of the toolkit's streams)."""
    return np.random.default_rng(20240611)


@pytest.fixture
def identity_obs():
    """4×4 identity-valued observation matrix."""
    return ObservationMatrix.from_array(np.eye(4))


@pytest.fixture
def uniform_obs():
    """12×64 Uniform[0, 1) observation matrix."""
    return generate_observation(12, 64, "uniform01", seed=7)


@pytest.fixture
def overdetermined_system(rng):
    """Consistent 20×5 Gaussian system (A, x, y) with a unique least-squares solution."""
    a = rng.standard_normal((20, 5))
    x = rng.standard_normal(5)
    return a, x, a @ x
