"""
Configuration loader for the lpp_two_time project.
Handles environment variables and process-level settings.
"""

import os
from pathlib import Path
from typing import List

from dotenv import load_dotenv

# Load environment variables
load_dotenv(dotenv_path=".env", override=True)


class Config:
    """Process-level settings for the library and CLI."""

    ENVIRONMENT = os.getenv("ENVIRONMENT", "development")

    # Artifacts
    OUTPUT_DIR = os.getenv("LPP_OUTPUT_DIR", "artifacts")
    CONFIG_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config")

    # Logging Configuration
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE = os.getenv("LOG_FILE")
    LOG_STRUCTURED = os.getenv("LOG_STRUCTURED", "false").lower() == "true"
    LOG_COLORED = os.getenv("LOG_COLORED", "true").lower() == "true"

    # Performance Configuration
    MAX_WORKERS = int(os.getenv("MAX_WORKERS", str(os.cpu_count() or 1)))
    ENABLE_CACHING = os.getenv("ENABLE_CACHING", "true").lower() == "true"
    CACHE_MAX_ENTRIES = int(os.getenv("CACHE_MAX_ENTRIES", "4096"))

    @classmethod
    def validate(cls) -> List[str]:
        """Return a list of problems with the current settings (empty when valid)."""
        problems = []
        if cls.MAX_WORKERS < 1:
            problems.append(f"MAX_WORKERS must be >= 1, got {cls.MAX_WORKERS}")
        if cls.CACHE_MAX_ENTRIES < 1:
            problems.append(f"CACHE_MAX_ENTRIES must be >= 1, got {cls.CACHE_MAX_ENTRIES}")
        if cls.LOG_LEVEL.upper() not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            problems.append(f"LOG_LEVEL not recognised: {cls.LOG_LEVEL}")
        return problems

    @classmethod
    def output_path(cls, name: str) -> Path:
        """Resolve an artifact file name inside the default output directory."""
        directory = Path(cls.OUTPUT_DIR)
        directory.mkdir(parents=True, exist_ok=True)
        return directory / name
