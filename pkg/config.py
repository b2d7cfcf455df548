"""
Configuration for Nefwall
"""
import logging
import os
import sys

from dotenv import load_dotenv

from errors import ConfigurationError

load_dotenv()

# Flask Configuration
SECRET_KEY = os.getenv("SECRET_KEY", "nefwall-secret-key-2025")
DEBUG = os.getenv("DEBUG", "False").lower() == "true"
HOST = os.getenv("HOST", "127.0.0.1")
PORT = int(os.getenv("PORT", "5000"))

# Paths
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
OUTPUT_DIR = os.path.join(BASE_DIR, "output")

# Enumeration limits
DEFAULT_MAX_DEPTH = 16
LOG_LEVEL = os.getenv("NEFWALL_LOG_LEVEL", "WARNING").upper()

LOG_FORMAT = "[%(name)s] %(message)s"


def max_depth() -> int:
    """Chain expansion cap, read from NEFWALL_MAX_DEPTH on every call."""
    raw = os.getenv("NEFWALL_MAX_DEPTH", str(DEFAULT_MAX_DEPTH))
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"NEFWALL_MAX_DEPTH must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigurationError(f"NEFWALL_MAX_DEPTH must be positive, got {value}")
    return value


def setup_logging(level: str = None) -> None:
    """Send log records to stderr; stdout carries rendered tables only."""
    name = (level or LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(name), int):
        raise ConfigurationError(f"unknown log level {name!r}")
    logging.basicConfig(stream=sys.stderr, format=LOG_FORMAT, level=name, force=True)
