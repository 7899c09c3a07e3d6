"""Process-wide memo for expensive arithmetic objects."""

import logging
import threading
from typing import Any, Callable, Dict, Hashable, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


class ComputationCache:
    """A thread-safe singleton holding sieves, fundamental units and unit systems.

    Values are immutable once stored, so callers share them freely.
    """

    _instance: Optional["ComputationCache"] = None
    _lock: threading.Lock = threading.Lock()
    _initialized: bool = False

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            with self._lock:
                if not self._initialized:
                    self._data: Dict[Hashable, Any] = {}
                    self._data_lock: threading.RLock = threading.RLock()
                    self._hits = 0
                    self._misses = 0
                    self._initialized = True

    def get(self, key: Hashable, default: Any = None) -> Any:
        with self._data_lock:
            return self._data.get(key, default)

    def set(self, key: Hashable, value: Any) -> None:
        with self._data_lock:
            self._data[key] = value

    def get_or_create(self, key: Hashable, factory: Callable[[], T]) -> T:
        """Return the cached value for key, building it with factory on a miss.

        The factory runs under the cache lock, so two threads never compute
        the same key twice.
        """
        with self._data_lock:
            if key in self._data:
                self._hits += 1
                return self._data[key]
            self._misses += 1
            logger.debug(f"cache miss for {key!r}")
            value = factory()
            self._data[key] = value
            return value

    def delete(self, key: Hashable) -> bool:
        with self._data_lock:
            if key in self._data:
                del self._data[key]
                return True
            return False

    def clear(self) -> None:
        with self._data_lock:
            self._data.clear()
            self._hits = 0
            self._misses = 0

    def stats(self) -> Dict[str, int]:
        with self._data_lock:
            return {"entries": len(self._data), "hits": self._hits, "misses": self._misses}
