"""
Utils module for lpp_two_time.
"""

from .logger import (
    get_logger, setup_logging, log_evaluation, log_mc_run, log_verification,
    log_performance, LppLogger
)
from .cache import CacheManager, MemoCache, memoized, cache_manager
from .performance_monitor import PerformanceMonitor, performance_timer
from .artifacts import write_csv, write_json, read_csv_config

__all__ = [
    "get_logger", "setup_logging", "log_evaluation", "log_mc_run", "log_verification",
    "log_performance", "LppLogger",
    "CacheManager", "MemoCache", "memoized", "cache_manager",
    "PerformanceMonitor", "performance_timer",
    "write_csv", "write_json", "read_csv_config",
]
