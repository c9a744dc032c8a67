"""Persistent table of Kostka numbers with an in-memory layer."""

from __future__ import annotations

import json
import logging
import threading
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

logger = logging.getLogger(__name__)


def _key(lam: Sequence[int], mu: Sequence[int]) -> str:
    return ",".join(map(str, lam)) + "|" + ",".join(map(str, mu))


class KostkaCache:
    """Stores K_{λμ} keyed by ``"λ|μ"`` so repeated runs re-use earlier expansions.

    Readers never block; insertion and saving go through a single lock. With no
    ``cache_file`` the table lives in memory only.
    """

    def __init__(self, cache_file: Optional[Path] = None) -> None:
        self.cache_file = Path(cache_file).expanduser().resolve() if cache_file else None
        self._values: Dict[str, int] = {}
        self._lock = threading.Lock()
        self._dirty = False
        self._load()

    def _load(self) -> None:
        if self.cache_file is None or not self.cache_file.exists():
            return
        try:
            payload = json.loads(self.cache_file.read_text(encoding="utf-8"))
            stored = payload.get("values", {}) if isinstance(payload, dict) else None
            if not isinstance(stored, dict):
                raise ValueError("expected an object with a 'values' table")
            values = {str(k): int(v) for k, v in stored.items()}
        except (OSError, ValueError, TypeError) as exc:
            logger.warning("⚠ Ignoring unreadable Kostka cache at %s: %s", self.cache_file, exc)
            return
        self._values = values
        logger.debug("Loaded %s Kostka numbers from %s", len(self._values), self.cache_file)

    def get(self, lam: Sequence[int], mu: Sequence[int]) -> Optional[int]:
        return self._values.get(_key(lam, mu))

    def get_or_compute(
        self,
        lam: Sequence[int],
        mu: Sequence[int],
        compute: Callable[[], int],
    ) -> int:
        key = _key(lam, mu)
        value = self._values.get(key)
        if value is not None:
            return value
        value = compute()
        with self._lock:
            if key not in self._values:
                self._values[key] = value
                self._dirty = True
        return value

    def save(self) -> None:
        if self.cache_file is None:
            return
        with self._lock:
            if not self._dirty:
                return
            self.cache_file.parent.mkdir(parents=True, exist_ok=True)
            payload = {"version": 1, "values": dict(sorted(self._values.items()))}
            self.cache_file.write_text(json.dumps(payload, indent=2), encoding="utf-8")
            self._dirty = False
        logger.debug("Saved %s Kostka numbers to %s", len(self._values), self.cache_file)

    @property
    def count(self) -> int:
        return len(self._values)
