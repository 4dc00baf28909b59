import logging
from collections import OrderedDict
from typing import Any, Callable, Dict, Hashable

logger = logging.getLogger(__name__)


class CacheDict(OrderedDict):
    """
    Least-recently-used mapping bounded to `cache_len` entries.

    Used to memoize symbolic connections and condition systems, which are
    pure functions of (family, eta, point, connection, structure).
    """

    def __init__(self, *args, cache_len: int = 10, **kwargs):
        if cache_len <= 0:
            raise ValueError(f"cache_len must be positive, got {cache_len}")
        self.cache_len = cache_len
        self.hits = 0
        self.misses = 0
        super().__init__(*args, **kwargs)

    def __setitem__(self, key: Hashable, value: Any) -> None:
        super().__setitem__(key, value)
        super().move_to_end(key)
        while len(self) > self.cache_len:
            evicted = next(iter(self))
            logger.debug("evicting %r from cache", evicted)
            super().__delitem__(evicted)

    def __getitem__(self, key: Hashable) -> Any:
        value = super().__getitem__(key)
        super().move_to_end(key)
        return value

    def get_or_compute(self, key: Hashable, factory: Callable[[], Any]) -> Any:
        if key in self:
            self.hits += 1
            return self[key]
        self.misses += 1
        value = factory()
        self[key] = value
        return value

    def stats(self) -> Dict[str, int]:
        return {"size": len(self), "hits": self.hits, "misses": self.misses}
