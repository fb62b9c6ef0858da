"""On-disk cache of computed presentations."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Callable

from ..gcw import GCWComplex
from ..groupalg import GModule


def _digest(data) -> str:
    return hashlib.sha256(json.dumps(data, sort_keys=True, ensure_ascii=True).encode()).hexdigest()


class Cache:
    """JSON files keyed by (kind, group, complex hash, module hash, degree).

    Writes go through a temporary file and an atomic rename, so concurrent
    workers never see partial entries.
    """

    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def complex_hash(X: GCWComplex) -> str:
        return _digest(X.to_json())[:16]

    @staticmethod
    def module_hash(M: GModule) -> str:
        data = M.to_json()
        data.pop("name", None)
        return _digest(data)[:16]

    @staticmethod
    def key(kind: str, group: str, complex_hash: str, module_hash: str, degree: int) -> str:
        return _digest([kind, group, complex_hash, module_hash, degree])

    def get(self, key: str):
        path = self.dir / f"{key}.json"
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text())["value"]
        except (json.JSONDecodeError, KeyError):
            return None

    def put(self, key: str, value) -> None:
        fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"value": value}, fh)
        os.replace(tmp, self.dir / f"{key}.json")

    def get_or_compute(self, key: str, compute: Callable[[], object]):
        hit = self.get(key)
        if hit is not None:
            return hit
        value = compute()
        self.put(key, value)
        return value
