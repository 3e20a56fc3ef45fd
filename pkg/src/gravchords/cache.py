"""Optional on-disk cache: one JSON file per key.

File names are content addresses of (module name, key, hash of the module
source), so editing a module silently invalidates what it stored. Anything
unreadable is treated as a miss.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from functools import lru_cache
from pathlib import Path

ENV_VAR = "GRAVCHORDS_CACHE_DIR"
_directory: Path | None = None
_explicit = False


def set_cache_dir(path) -> None:
    """Use ``path`` for the cache; ``None`` disables it."""
    global _directory, _explicit
    _directory = Path(path) if path else None
    _explicit = True


def cache_dir() -> Path | None:
    if _explicit:
        return _directory
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


@lru_cache(maxsize=None)
def source_hash(module: str) -> str:
    path = Path(__file__).with_name(f"{module}.py")
    try:
        data = path.read_bytes()
    except OSError:
        data = module.encode()
    return hashlib.sha256(data).hexdigest()[:16]


def _path(module: str, key) -> Path | None:
    root = cache_dir()
    if root is None:
        return None
    blob = json.dumps([module, repr(key), source_hash(module)]).encode()
    return root / module / (hashlib.sha256(blob).hexdigest() + ".json")


def get(module: str, key):
    path = _path(module, key)
    if path is None or not path.exists():
        return None
    try:
        record = json.loads(path.read_text())
        if record.get("key") != repr(key):
            return None
        return record["value"]
    except (OSError, ValueError, KeyError, AttributeError):
        return None


def put(module: str, key, value) -> None:
    path = _path(module, key)
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"key": repr(key), "value": value}, fh, sort_keys=True)
        os.replace(tmp, path)
    except OSError:
        pass
