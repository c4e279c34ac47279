"""
Production-specific settings that override the main settings.
"""
from .settings import *

# Experiment runs must be pinned to a seed
if os.getenv("CS_SEED") is None:
    raise ValueError("Production runs require CS_SEED to be set")

# Experiment-scale budgets
MAX_ITERS = 20000
PHASE_SWEEP_ITERS = 50000
RIP_TRIALS = 5000

# Production logging
LOG_LEVEL = "INFO"
LOG_FILE = LOGS_DIR / "cs_recovery.log"
RESIDUAL_LOG_INTERVAL = 5000
