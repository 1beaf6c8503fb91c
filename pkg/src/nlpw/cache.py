"""Thread-safe memo tables for nlpw."""

import logging
import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Any, Callable, Dict, Hashable, Optional

from .config import config_manager

logger = logging.getLogger(__name__)

_MISSING = object()


@dataclass(frozen=True)
class MemoStats:
    """Counters of one memo table."""

    name: str
    hits: int
    misses: int
    evictions: int
    size: int
    max_size: int

    @property
    def hit_ratio(self) -> float:
        lookups = self.hits + self.misses
        return self.hits / lookups if lookups else 0.0


class MemoTable:
    """Bounded LRU table of pure-function values.

    Keys are parameter tuples; entries never expire since a key fully
    determines its value.
    """

    def __init__(self, max_size: Optional[int] = None, name: str = "default"):
        self.max_size = max_size or config_manager.get_cache_config().max_size
        self.name = name
        self._values: "OrderedDict[Hashable, Any]" = OrderedDict()
        self._lock = threading.RLock()
        self._hits = self._misses = self._evictions = 0

    def get(self, key: Hashable, default: Any = None) -> Any:
        with self._lock:
            if key not in self._values:
                self._misses += 1
                return default
            self._values.move_to_end(key)
            self._hits += 1
            return self._values[key]

    def put(self, key: Hashable, value: Any) -> None:
        with self._lock:
            self._values[key] = value
            self._values.move_to_end(key)
            while len(self._values) > self.max_size:
                self._values.popitem(last=False)
                self._evictions += 1

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """Return the stored value, computing and storing it on a miss.

        ``compute`` runs outside the lock; two threads racing on one key both
        compute and store the same value.
        """
        value = self.get(key, _MISSING)
        if value is _MISSING:
            value = compute()
            self.put(key, value)
        return value

    def clear(self) -> None:
        with self._lock:
            self._evictions += len(self._values)
            self._values.clear()

    def __contains__(self, key: Hashable) -> bool:
        with self._lock:
            return key in self._values

    def __len__(self) -> int:
        with self._lock:
            return len(self._values)

    def stats(self) -> MemoStats:
        with self._lock:
            return MemoStats(
                name=self.name,
                hits=self._hits,
                misses=self._misses,
                evictions=self._evictions,
                size=len(self._values),
                max_size=self.max_size,
            )


class MemoRegistry:
    """Named memo tables shared across the package (``pi_pq``, ``H``)."""

    def __init__(self):
        self._tables: Dict[str, MemoTable] = {}
        self._lock = threading.Lock()

    def table(self, name: str) -> MemoTable:
        with self._lock:
            if name not in self._tables:
                self._tables[name] = MemoTable(name=name)
            return self._tables[name]

    def stats(self) -> Dict[str, MemoStats]:
        with self._lock:
            tables = dict(self._tables)
        return {name: table.stats() for name, table in tables.items()}

    def clear(self) -> None:
        with self._lock:
            tables = list(self._tables.values())
        for table in tables:
            table.clear()
        logger.debug(f"Cleared {len(tables)} memo tables")


memo_tables = MemoRegistry()
