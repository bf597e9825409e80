"""
Caching system for the lpp_two_time project.
Provides a thread-safe in-memory LRU memo cache for expensive pure evaluations.
"""

import hashlib
from collections import OrderedDict
from functools import wraps
from threading import Lock
from typing import Any, Callable, Optional

import numpy as np

from config import Config
from utils.logger import get_logger


class MemoCache:
    """Thread-safe in-memory LRU cache."""

    def __init__(self, max_entries: int = 4096):
        self._cache: "OrderedDict[str, Any]" = OrderedDict()
        self._lock = Lock()
        self.max_entries = max_entries
        self.hits = 0
        self.misses = 0
        self.logger = get_logger(__name__)

    def get(self, key: str) -> Optional[Any]:
        """Get a value from the cache."""
        with self._lock:
            if key not in self._cache:
                self.misses += 1
                return None
            self._cache.move_to_end(key)
            self.hits += 1
            return self._cache[key]

    def set(self, key: str, value: Any) -> None:
        """Set a value in the cache, evicting the least recently used entry when full."""
        with self._lock:
            self._cache[key] = value
            self._cache.move_to_end(key)
            while len(self._cache) > self.max_entries:
                self._cache.popitem(last=False)

    def delete(self, key: str) -> bool:
        """Delete a value from the cache."""
        with self._lock:
            return self._cache.pop(key, None) is not None

    def clear(self) -> None:
        """Clear all cache entries."""
        with self._lock:
            self._cache.clear()
            self.hits = self.misses = 0

    def size(self) -> int:
        """Get the number of cache entries."""
        with self._lock:
            return len(self._cache)


def _key_part(arg: Any) -> str:
    if isinstance(arg, np.ndarray):
        digest = hashlib.md5(np.ascontiguousarray(arg).tobytes()).hexdigest()
        return f"nd{arg.shape}{arg.dtype}:{digest}"
    return repr(arg)


class CacheManager:
    """Centralized cache management system."""

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
        self._cache: Optional[MemoCache] = None
        self._initialized = True

        if Config.ENABLE_CACHING:
            self._cache = MemoCache(max_entries=Config.CACHE_MAX_ENTRIES)

    @property
    def enabled(self) -> bool:
        return self._cache is not None

    def get(self, key: str) -> Optional[Any]:
        if not self._cache:
            return None
        return self._cache.get(key)

    def set(self, key: str, value: Any) -> None:
        if not self._cache:
            return
        self._cache.set(key, value)

    def clear(self) -> None:
        if self._cache:
            self._cache.clear()

    def stats(self) -> dict:
        """Hit/miss counters of the active cache."""
        if not self._cache:
            return {"enabled": False}
        return {"enabled": True, "hits": self._cache.hits, "misses": self._cache.misses,
                "entries": self._cache.size()}

    def generate_key(self, prefix: str, *args, **kwargs) -> str:
        """Generate a cache key from prefix and arguments (arrays are hashed by content)."""
        key_parts = [prefix] + [_key_part(arg) for arg in args]
        if kwargs:
            key_parts.extend(f"{k}={_key_part(v)}" for k, v in sorted(kwargs.items()))
        return hashlib.md5(":".join(key_parts).encode()).hexdigest()


def memoized(prefix: str, key_func: Optional[Callable[..., str]] = None,
             cache: Optional[MemoCache] = None):
    """Decorator memoizing a pure function's results in the shared cache.

    ``cache`` gives the function its own bounded store; keys and the
    ENABLE_CACHING switch still come from the shared manager.
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            manager = CacheManager()
            if not manager.enabled:
                return func(*args, **kwargs)
            store = cache if cache is not None else manager

            if key_func:
                cache_key = key_func(prefix, *args, **kwargs)
            else:
                cache_key = manager.generate_key(prefix, *args, **kwargs)

            cached_result = store.get(cache_key)
            if cached_result is not None:
                return cached_result

            result = func(*args, **kwargs)
            store.set(cache_key, result)
            return result

        return wrapper
    return decorator


cache_manager = CacheManager()
