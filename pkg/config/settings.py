"""
Global configuration settings for the compressive-sensing recovery toolkit.
"""
import os
from pathlib import Path

# Base paths
BASE_DIR = Path(__file__).resolve().parent.parent
RUNS_DIR = BASE_DIR / "runs"
LOGS_DIR = BASE_DIR / "logs"

# Reproducibility
DEFAULT_SEED = int(os.getenv("CS_SEED", "0"))

# Sensing
DEFAULT_DISTRIBUTION = "uniform01"
NORMALIZE_OBSERVATION = False
RIP_TRIALS = 1000

# Solver
SOLVER_MODE = "steepest"
MAX_ITERS = 20000  # fixed budget of the diamond experiment
STOP_TOL = 1e-8
FIXED_MU = 1e-3
EPS_DENOMINATOR = 1e-12
EPS_NEWTON_SCALE = 1e-4  # ridge = scale * trace(M0^T M0) / N
RESIDUAL_LOG_INTERVAL = 1000

# Regularizers
L1_LAMBDA = 0.005
L1_EPS_ZERO = 1e-10
NEWTON_LAMBDA = 0.01
NEWTON_DECAY = 0.995
TV_LAMBDA = 0.01
TV_EPS_SMOOTH = 1e-8

# Imaging
PSNR_PEAK = 1.0
PSNR_CAP_DB = 300.0
PGM_MAXVAL = 255
GENERAL_WAVELET = "haar"

# Phase sweep
PHASE_SUCCESS_TOL = 1e-2
PHASE_SWEEP_ITERS = 50000  # steepest-descent l1 at N=64, M=24 settles well past 5000

# Performance
MAX_WORKERS = int(os.getenv("CS_MAX_WORKERS", str(os.cpu_count() or 4)))

# Logging
LOG_LEVEL = os.getenv("CS_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_FILE = None
