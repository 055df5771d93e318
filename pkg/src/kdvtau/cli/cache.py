"""On-disk cache of generated documents.

Files are written to a temporary name and renamed into place, so concurrent
invocations never observe a partial file.  Each file carries a checksum of
its payload; a mismatch means the entry is discarded and recomputed.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Callable

log = logging.getLogger(__name__)

ENV_VAR = "KDVTAU_CACHE"


class CacheCorruption(Exception):
    pass


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def checksum(payload: Any) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def resolve_cache_dir(cli_value: str | None) -> Path | None:
    """Environment variable overrides the command-line value; None disables caching."""
    value = os.environ.get(ENV_VAR) or cli_value
    return Path(value) if value else None


def entry_path(cache_dir: Path, key: dict[str, Any]) -> Path:
    digest = checksum(key)[:16]
    return cache_dir / f"{key['command']}-{key['variable_set']}-n{key['n']}-{digest}.json"


def load(path: Path, key: dict[str, Any]) -> Any:
    with path.open() as fh:
        blob = json.load(fh)
    if blob.get("key") != key or blob.get("checksum") != checksum(blob.get("payload")):
        raise CacheCorruption(f"checksum mismatch in {path}")
    return blob["payload"]


def store(path: Path, key: dict[str, Any], payload: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    blob = {"key": key, "checksum": checksum(payload), "payload": payload}
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(blob, fh, sort_keys=True, indent=1)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def cached(cache_dir: Path | None, key: dict[str, Any], compute: Callable[[], Any]) -> Any:
    if cache_dir is None:
        return compute()
    path = entry_path(cache_dir, key)
    if path.exists():
        try:
            return load(path, key)
        except (CacheCorruption, ValueError, KeyError) as exc:
            log.warning("discarding cache entry: %s", exc)
    payload = compute()
    store(path, key, payload)
    return payload
