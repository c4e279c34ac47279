"""
Deterministic random streams for reproducible experiments.

Every random quantity is drawn from a numpy ``Philox`` (Philox-4×64-10,
counter-based) generator whose 128-bit key is built from three fields::

    key = (seed << 64) | (purpose << 32) | index

``seed`` is the user seed (unsigned, < 2**64), ``purpose`` separates the kinds of
draws (matrix columns, RIP trials, noise, test signals) and ``index`` is the
column, trial or cell number. A stream therefore depends only on
``(seed, purpose, index)``, never on how many other streams were used before
it, which keeps parallel loops schedule-independent. The key is used directly,
so the same triple yields bit-identical draws on every platform numpy supports.
"""
from enum import IntEnum

import numpy as np

from utils.error_handler import ConfigError

_MAX_SEED = 2 ** 64
_MAX_INDEX = 2 ** 32


class StreamPurpose(IntEnum):
    """Separates independent families of draws that share a seed."""

    MATRIX_COLUMN = 0
    RIP_TRIAL = 1
    NOISE = 2
    SIGNAL = 3


def check_seed(seed: int) -> int:
    """
    Validate an unsigned 64-bit seed.

    Args:
        seed: Candidate seed

    Returns:
        int: The seed as a Python int
    """
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ConfigError(f"seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if not 0 <= seed < _MAX_SEED:
        raise ConfigError(f"seed must be in [0, 2**64), got {seed}")
    return seed


def stream(seed: int, purpose: StreamPurpose, index: int = 0) -> np.random.Generator:
    """
    Create the generator for one ``(seed, purpose, index)`` stream.

    Args:
        seed: User seed
        purpose: Family of draws
        index: Column, trial or cell index

    Returns:
        np.random.Generator: Philox-backed generator
    """
    seed = check_seed(seed)
    if not 0 <= index < _MAX_INDEX:
        raise ConfigError(f"stream index must be in [0, 2**32), got {index}")
    key = (seed << 64) | (int(purpose) << 32) | int(index)
    return np.random.Generator(np.random.Philox(key=key))


def derive_seed(seed: int, *indices: int) -> int:
    """
    Derive a child seed, e.g. for trial ``t`` or image column ``k``.

    Args:
        seed: Parent seed
        indices: Child coordinates

    Returns:
        int: Unsigned 64-bit child seed
    """
    entropy = [check_seed(seed)] + [int(i) for i in indices]
    state = np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)
    return int(state[0])
