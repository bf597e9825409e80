"""
Configuration management system for the lpp_two_time project.
Provides environment-specific numeric defaults, validation, and runtime updates.
"""

import os
import json
from dataclasses import dataclass, asdict, fields, replace
from enum import Enum
from pathlib import Path
from threading import Lock
from typing import Any, Dict, Optional

import yaml

from config import Config
from domain.exceptions import ParameterDomainError
from utils.logger import get_logger


class Environment(Enum):
    """Application environments."""
    DEVELOPMENT = "development"
    PRODUCTION = "production"
    TESTING = "testing"


@dataclass(frozen=True)
class GridConfig:
    """Nyström grids for the two-time operator and for F2."""
    L: float = 10.0
    nodes_per_side: int = 60
    f2_L: float = 14.0
    f2_nodes: int = 80


@dataclass(frozen=True)
class ContourConfig:
    """Trapezoid rule on the u-circle."""
    radius: float = 2.0
    u_nodes: int = 64
    use_conjugate_symmetry: bool = True


@dataclass(frozen=True)
class KernelConfig:
    """Auxiliary s/lambda integrals and the damping parameter."""
    s_cutoff: float = 40.0
    s_panels: int = 10
    s_nodes: int = 200
    delta_margin: float = 1.0
    delta_cap: float = 6.0


@dataclass(frozen=True)
class MonteCarloConfig:
    """Replica batching for the simulators."""
    batch_size: int = 2000
    samples: int = 100_000


@dataclass(frozen=True)
class FiniteConfig:
    """Arithmetic mode of the exact finite-N formula."""
    exact_max_N: int = 4
    float_dps: int = 60


@dataclass(frozen=True)
class LoggingConfig:
    """Logging configuration."""
    level: str = "INFO"
    file: Optional[str] = None
    structured: bool = False
    colored: bool = True


@dataclass(frozen=True)
class PerformanceConfig:
    """Worker pool configuration."""
    max_workers: int = 4
    enable_caching: bool = True
    cache_max_entries: int = 4096


SECTION_TYPES = {
    "grid": GridConfig,
    "contour": ContourConfig,
    "kernel": KernelConfig,
    "monte_carlo": MonteCarloConfig,
    "finite": FiniteConfig,
    "logging": LoggingConfig,
    "performance": PerformanceConfig,
}


def validate_sections(sections: Dict[str, Any]) -> None:
    """Check every numeric section against its admissible range."""
    grid = sections["grid"]
    contour = sections["contour"]
    kernel = sections["kernel"]
    mc = sections["monte_carlo"]
    finite = sections["finite"]
    perf = sections["performance"]

    problems = []
    if not 0 < grid.L <= 40:
        problems.append(f"grid.L must lie in (0, 40], got {grid.L}")
    if not 4 <= grid.nodes_per_side <= 400:
        problems.append(f"grid.nodes_per_side must lie in [4, 400], got {grid.nodes_per_side}")
    if not 0 < grid.f2_L <= 40 or not 4 <= grid.f2_nodes <= 800:
        problems.append("grid.f2_L / grid.f2_nodes out of range")
    if not 1 < contour.radius <= 10:
        problems.append(f"contour.radius must lie in (1, 10], got {contour.radius}")
    if contour.u_nodes % 2 or not 16 <= contour.u_nodes <= 1024:
        problems.append(f"contour.u_nodes must be even in [16, 1024], got {contour.u_nodes}")
    if kernel.s_cutoff <= 0 or kernel.s_panels < 1 or kernel.s_nodes < kernel.s_panels:
        problems.append("kernel.s_cutoff / s_panels / s_nodes inconsistent")
    if kernel.s_nodes % kernel.s_panels:
        problems.append("kernel.s_nodes must be a multiple of kernel.s_panels")
    if not 0 < kernel.delta_margin <= 6:
        problems.append(f"kernel.delta_margin must lie in (0, 6], got {kernel.delta_margin}")
    if mc.batch_size < 1 or mc.samples < 1:
        problems.append("monte_carlo.batch_size and samples must be positive")
    if finite.exact_max_N < 1 or finite.float_dps < 16:
        problems.append("finite.exact_max_N >= 1 and finite.float_dps >= 16 required")
    if perf.max_workers < 1:
        problems.append(f"performance.max_workers must be >= 1, got {perf.max_workers}")

    if problems:
        raise ParameterDomainError("; ".join(problems))


class ConfigurationManager:
    """Centralized configuration management system."""

    _instance = None
    _lock = Lock()

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if hasattr(self, '_initialized'):
            return

        self.logger = get_logger(__name__)
        self.environment = self._detect_environment()
        self._config: Dict[str, Any] = {}
        self._config_file: Optional[Path] = None
        self._initialized = True

        self._load_configuration()

    def _detect_environment(self) -> Environment:
        """Detect the current environment."""
        env = os.getenv("ENVIRONMENT", Config.ENVIRONMENT).lower()
        try:
            return Environment(env)
        except ValueError:
            self.logger.warning(f"Unknown environment '{env}', defaulting to development")
            return Environment.DEVELOPMENT

    def _load_configuration(self):
        """Load configuration from various sources."""
        self._load_from_env()
        self._load_from_files()
        self._apply_environment_overrides()
        validate_sections(self._config)
        self.logger.debug(f"Configuration loaded for environment: {self.environment.value}")

    def _load_from_env(self):
        """Load defaults, then the process-level settings from the environment."""
        self._config = {name: section() for name, section in SECTION_TYPES.items()}
        self._config["logging"] = LoggingConfig(
            level=Config.LOG_LEVEL,
            file=Config.LOG_FILE,
            structured=Config.LOG_STRUCTURED,
            colored=Config.LOG_COLORED,
        )
        self._config["performance"] = PerformanceConfig(
            max_workers=Config.MAX_WORKERS,
            enable_caching=Config.ENABLE_CACHING,
            cache_max_entries=Config.CACHE_MAX_ENTRIES,
        )

    def _load_from_files(self):
        """Load configuration from the YAML/JSON file of the current environment."""
        config_dir = Path(Config.CONFIG_DIR)
        candidates = [
            config_dir / f"{self.environment.value}.yaml",
            config_dir / f"{self.environment.value}.json",
        ]

        for config_file in candidates:
            if not config_file.exists():
                continue
            try:
                with open(config_file, 'r') as f:
                    if config_file.suffix in ('.yaml', '.yml'):
                        file_config = yaml.safe_load(f) or {}
                    else:
                        file_config = json.load(f)
            except (OSError, yaml.YAMLError, json.JSONDecodeError) as e:
                self.logger.error(f"Failed to load configuration from {config_file}: {e}")
                continue

            self._merge_config(file_config)
            self._config_file = config_file
            self.logger.debug(f"Loaded configuration from {config_file}")
            break

    def _merge_config(self, file_config: Dict[str, Any]):
        """Merge file values into the dataclass sections; unknown keys are rejected."""
        for section, values in file_config.items():
            if section not in SECTION_TYPES or not isinstance(values, dict):
                continue
            known = {f.name for f in fields(SECTION_TYPES[section])}
            unknown = set(values) - known
            if unknown:
                raise ParameterDomainError(
                    f"Unknown keys in configuration section '{section}': {sorted(unknown)}")
            self._config[section] = replace(self._config[section], **values)

    def _apply_environment_overrides(self):
        """Apply environment-specific configuration overrides."""
        if self.environment == Environment.TESTING:
            self._config["logging"] = replace(self._config["logging"], level="WARNING",
                                              colored=False)
        elif self.environment == Environment.PRODUCTION:
            self._config["logging"] = replace(self._config["logging"], structured=True,
                                              colored=False)

    def _get_nested_value(self, path: str) -> Any:
        """Get a nested value from configuration using dot notation."""
        section, _, key = path.partition('.')
        value = self._config.get(section)
        if value is None or not key:
            return value
        return getattr(value, key, None)

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value."""
        value = self._get_nested_value(key)
        return default if value is None else value

    def get_section(self, section: str) -> Any:
        """Get an entire configuration section."""
        return self._config[section]

    def set(self, key: str, value: Any) -> None:
        """Set a configuration value at runtime (validated)."""
        section, _, name = key.partition('.')
        if section not in SECTION_TYPES or not name:
            raise ParameterDomainError(f"Unknown configuration key: {key}")
        updated = dict(self._config)
        updated[section] = replace(self._config[section], **{name: value})
        validate_sections(updated)
        self._config = updated
        self.logger.info(f"Configuration updated: {key} = {value}")

    def reload(self) -> None:
        """Reload configuration from files."""
        self.logger.info("Reloading configuration...")
        self._load_configuration()

    def get_environment(self) -> Environment:
        """Get the current environment."""
        return self.environment

    def is_testing(self) -> bool:
        """Check if running in testing environment."""
        return self.environment == Environment.TESTING

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        result: Dict[str, Any] = {"environment": self.environment.value}
        for key, value in self._config.items():
            result[key] = asdict(value)
        return result


config_manager = ConfigurationManager()


def get_config(key: str, default: Any = None) -> Any:
    """Get a configuration value."""
    return config_manager.get(key, default)


def get_section(section: str) -> Any:
    """Get a configuration section."""
    return config_manager.get_section(section)


def set_config(key: str, value: Any) -> None:
    """Set a configuration value."""
    config_manager.set(key, value)


def reload_config() -> None:
    """Reload configuration."""
    config_manager.reload()
