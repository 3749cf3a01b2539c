"""
Django settings for the branched project.

The project has no database, URL routing or middleware. Django provides the
application registry, the logging configuration and the management-command
entry point used by the CLI verbs.
"""

import logging
import os
from pathlib import Path

logger = logging.getLogger(__name__)

# Load environment variables in development
try:
    from .env_config import load_dotenv
except ImportError:
    logger.warning(
        "Environment variables not loaded. Please create .env file in development."
    )


BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get("SECRET_KEY", "branched-insecure-local-only")

DEBUG = os.environ.get("DEBUG", "True").lower() == "true"

ALLOWED_HOSTS: list[str] = []


# Application definition

INSTALLED_APPS = [
    "common",
    "algebra",
    "stochastic",
]

# Symbolic and Monte Carlo work is stateless; no database is configured.
DATABASES: dict = {}

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# Run configuration shared by every CLI verb.
# Flags on a command override a --config file, which overrides these values.
BRANCHED = {
    "BOUND": int(os.environ.get("BRANCHED_BOUND", "5")),
    "ALPHABET": os.environ.get("BRANCHED_ALPHABET", ""),
    "TOL": float(os.environ.get("BRANCHED_TOL", "1e-9")),
    "MC_TRIALS": int(os.environ.get("BRANCHED_MC_TRIALS", "100")),
    "FORMAT": os.environ.get("BRANCHED_FORMAT", "text"),
    "SEED": int(os.environ.get("BRANCHED_SEED", "7")),
    "WORKERS": int(os.environ.get("BRANCHED_WORKERS", "4")),
    "STATISTIC": os.environ.get("BRANCHED_STATISTIC", "rms"),
    "TEST_FUNCTION": os.environ.get("BRANCHED_TEST_FUNCTION", "sin(x)"),
}

LOG_LEVEL = os.environ.get("BRANCHED_LOG_LEVEL", "WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {module} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "INFO",
    },
    "loggers": {
        "django": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": False,
        },
        "algebra": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
        "stochastic": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
        "common": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
}
