# config.py
"""Configuration settings for the inertia conjecture toolkit."""

import os
from pathlib import Path

# Directory settings
BASE_DIR = Path(__file__).parent
FIXTURES_FILE = BASE_DIR / "fixtures.json"


def env_int(name: str, default: int, minimum: int = 1) -> int:
    """Integer environment override; unset or malformed values fall back to ``default``."""
    try:
        return max(minimum, int(os.environ.get(name, default)))
    except ValueError:
        return default


# Graph limits
MAX_ORDER = 4096
ENUMERATE_CAP = 7
CYCLE_LIMIT = 16
ISOMORPHISM_LIMIT = 32

# Exact arithmetic is mandatory up to this matrix dimension
EXACT_LIMIT = 512

# Float path
ENERGY_TOLERANCE = 1e-6
FLOAT_RESIDUAL_FLOOR = 1e-12
APPROXIMATE_ZERO = 1e-8

# Second energy inequality applies when the spectral radius reaches this value
LARGE_LAMBDA_THRESHOLD = 3.3
LARGE_LAMBDA_SLACK = 1.1

# Sampling
RNG_ALGORITHM = "numpy.PCG64"
DEFAULT_SEED = 0

# Scanning
DEFAULT_CHECKS = ("main",)
DEFAULT_JOBS = env_int("INERTIA_JOBS", 1)
BATCH_FACTOR = 64  # graphs in flight per worker before the writer drains

# Logging configuration
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_LEVEL = os.environ.get("INERTIA_LOG_LEVEL", "WARNING").upper()
LOG_FILE = os.environ.get("INERTIA_LOG_FILE")
