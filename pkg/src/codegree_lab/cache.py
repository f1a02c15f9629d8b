"""On-disk cache of character tables keyed by canonical spec strings."""
from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

from filelock import FileLock

from .chartab import FORMAT_VERSION, CharacterTable
from .perm import PermGroup

log = logging.getLogger(__name__)

ENV_VAR = "CODEGREE_LAB_CACHE"


def resolve_cache_dir(cli_value: str | os.PathLike | None) -> Path | None:
    """The environment variable wins over the command-line value."""
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(cli_value) if cli_value else None


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def checksum(payload: dict) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


class TableCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = FileLock(str(self.directory / ".write.lock"))

    @staticmethod
    def key(spec: str) -> str:
        return f"{spec}#v{FORMAT_VERSION}"

    def path(self, spec: str) -> Path:
        digest = hashlib.sha256(self.key(spec).encode()).hexdigest()[:32]
        return self.directory / f"{digest}.json"

    def load(self, spec: str, group: PermGroup | None = None) -> CharacterTable | None:
        path = self.path(spec)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text())
            if entry.get("key") != self.key(spec):
                log.info("ignoring cache entry with a different key for %s", spec)
                return None
            if entry.get("checksum") != checksum(entry["payload"]):
                log.warning("checksum mismatch in cache entry for %s; recomputing", spec)
                return None
            return CharacterTable.from_json(entry["payload"], group=group)
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("unreadable cache entry for %s (%s); recomputing", spec, exc)
            return None

    def store(self, T: CharacterTable) -> Path:
        payload = T.to_json()
        entry = {"key": self.key(T.spec), "checksum": checksum(payload), "payload": payload}
        path = self.path(T.spec)
        with self._lock:
            tmp = path.with_suffix(".tmp")
            tmp.write_text(canonical_json(entry))
            tmp.replace(path)
        return path


def table_for_spec(spec, cache: TableCache | None = None, prime: int | None = None,
                   cap: int | None = None) -> CharacterTable:
    """Build the group of ``spec`` and return its table, through the cache when given."""
    from .builders import build
    from .chartab import character_table
    from .perm import DEFAULT_CAP
    G = build(spec)
    key = str(spec)
    if cache is not None and prime is None:
        T = cache.load(key, group=G)
        if T is not None:
            return T
    T = character_table(G, prime=prime, cap=cap or DEFAULT_CAP)
    if cache is not None and prime is None:
        cache.store(T)
    return T
