"""
Development-specific settings that override the main settings.
"""
from .settings import *

# Desk-scale budgets
MAX_ITERS = 2000
PHASE_SWEEP_ITERS = 2000
RIP_TRIALS = 200
RESIDUAL_LOG_INTERVAL = 100

# Development logging
LOG_LEVEL = "DEBUG"
LOG_FILE = LOGS_DIR / "cs_recovery_dev.log"
