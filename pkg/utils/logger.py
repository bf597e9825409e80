"""
Centralized logging system for the lpp_two_time project.
Provides structured logging with different levels and formatters.
"""

import logging
import sys
import json
from datetime import datetime, timezone
from typing import Any, Dict, Optional
from pathlib import Path


class StructuredFormatter(logging.Formatter):
    """Custom formatter for structured logging."""

    def format(self, record):
        log_entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno
        }

        if hasattr(record, 'extra_fields'):
            log_entry.update(record.extra_fields)

        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_entry, ensure_ascii=False, default=str)


class ColoredFormatter(logging.Formatter):
    """Colored formatter for console output."""

    COLORS = {
        'DEBUG': '\033[36m',     # Cyan
        'INFO': '\033[32m',      # Green
        'WARNING': '\033[33m',   # Yellow
        'ERROR': '\033[31m',     # Red
        'CRITICAL': '\033[35m',  # Magenta
        'RESET': '\033[0m'
    }

    def format(self, record):
        log_color = self.COLORS.get(record.levelname, self.COLORS['RESET'])
        reset_color = self.COLORS['RESET']
        # work on a copy so file handlers keep the plain level name
        record = logging.makeLogRecord(record.__dict__)
        record.levelname = f"{log_color}{record.levelname}{reset_color}"
        return super().format(record)


class LppLogger:
    """Centralized logger for the lpp_two_time library and CLI."""

    _loggers: Dict[str, logging.Logger] = {}
    _initialized = False

    @classmethod
    def setup_logging(cls,
                      log_level: str = "INFO",
                      log_file: Optional[str] = None,
                      structured: bool = False,
                      colored: bool = True,
                      force: bool = False):
        """Setup the logging configuration."""
        if cls._initialized and not force:
            return

        if log_file:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)

        level = getattr(logging, log_level.upper(), logging.INFO)
        root_logger = logging.getLogger()
        root_logger.setLevel(level)
        root_logger.handlers.clear()

        # stderr keeps stdout free for the one-line CLI summary
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)

        if structured:
            console_formatter = StructuredFormatter()
        elif colored:
            console_formatter = ColoredFormatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
        else:
            console_formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )

        console_handler.setFormatter(console_formatter)
        root_logger.addHandler(console_handler)

        if log_file:
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setLevel(logging.DEBUG)
            if structured:
                file_formatter = StructuredFormatter()
            else:
                file_formatter = logging.Formatter(
                    '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
                )
            file_handler.setFormatter(file_formatter)
            root_logger.addHandler(file_handler)

        cls._initialized = True

    @classmethod
    def get_logger(cls, name: str) -> logging.Logger:
        """Get a logger instance for a specific module."""
        if name not in cls._loggers:
            cls._loggers[name] = logging.getLogger(name)
        return cls._loggers[name]

    @classmethod
    def log_evaluation(cls, logger: logging.Logger, form: str, params: Dict[str, Any],
                       value: float, imag_residue: float,
                       duration: Optional[float] = None):
        """Log a two-time distribution evaluation."""
        extra_fields = {
            "evaluation_form": form,
            "evaluation_params": params,
            "evaluation_value": value,
            "evaluation_imag_residue": imag_residue,
            "evaluation_duration": duration
        }
        logger.info(f"{form}-form evaluation: F={value:.10f} (imag {imag_residue:.2e})",
                    extra={"extra_fields": extra_fields})

    @classmethod
    def log_mc_run(cls, logger: logging.Logger, target: Dict[str, Any],
                   value: float, std_error: float, samples: int, seed: int):
        """Log a Monte-Carlo estimate."""
        extra_fields = {
            "mc_target": target,
            "mc_value": value,
            "mc_std_error": std_error,
            "mc_samples": samples,
            "mc_seed": seed
        }
        logger.info(f"Monte-Carlo estimate {value:.6f} +/- {std_error:.2e} "
                    f"({samples} samples, seed {seed})",
                    extra={"extra_fields": extra_fields})

    @classmethod
    def log_verification(cls, logger: logging.Logger, suite: str, check: str,
                         passed: bool, details: Optional[Dict] = None):
        """Log the outcome of a single verification check."""
        extra_fields = {
            "verify_suite": suite,
            "verify_check": check,
            "verify_passed": passed,
            "verify_details": details
        }
        if passed:
            logger.info(f"Check passed: {suite}/{check}", extra={"extra_fields": extra_fields})
        else:
            logger.error(f"Check failed: {suite}/{check}", extra={"extra_fields": extra_fields})

    @classmethod
    def log_performance(cls, logger: logging.Logger, operation: str, duration: float,
                        details: Optional[Dict] = None):
        """Log performance metrics."""
        extra_fields = {
            "performance_operation": operation,
            "performance_duration": duration,
            "performance_details": details
        }
        logger.info(f"Performance: {operation} took {duration:.3f}s",
                    extra={"extra_fields": extra_fields})


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance for a specific module."""
    return LppLogger.get_logger(name)


def setup_logging(log_level: str = "INFO", log_file: Optional[str] = None,
                  structured: bool = False, colored: bool = True, force: bool = False):
    """Setup the logging configuration."""
    LppLogger.setup_logging(log_level, log_file, structured, colored, force)


def log_evaluation(logger: logging.Logger, form: str, params: Dict[str, Any],
                   value: float, imag_residue: float, duration: Optional[float] = None):
    """Log a two-time distribution evaluation."""
    LppLogger.log_evaluation(logger, form, params, value, imag_residue, duration)


def log_mc_run(logger: logging.Logger, target: Dict[str, Any], value: float,
               std_error: float, samples: int, seed: int):
    """Log a Monte-Carlo estimate."""
    LppLogger.log_mc_run(logger, target, value, std_error, samples, seed)


def log_verification(logger: logging.Logger, suite: str, check: str,
                     passed: bool, details: Optional[Dict] = None):
    """Log the outcome of a single verification check."""
    LppLogger.log_verification(logger, suite, check, passed, details)


def log_performance(logger: logging.Logger, operation: str, duration: float,
                    details: Optional[Dict] = None):
    """Log performance metrics."""
    LppLogger.log_performance(logger, operation, duration, details)
