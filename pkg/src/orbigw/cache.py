"""
Content-addressed JSON cache with atomic writes.

Cache keys are SHA-256 hashes of the canonical (sorted-keys) JSON of the
inputs, so equal configurations share files and byte-identical reruns are
guaranteed.  Writes go through a temporary file in the same directory and a
rename, which keeps concurrent runs safe.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def config_hash(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()[:16]


class Cache:
    def __init__(self, directory: str | Path | None):
        self.directory = Path(directory) if directory else None
        if self.directory:
            self.directory.mkdir(parents=True, exist_ok=True)

    def path(self, kind: str, key_obj) -> Path | None:
        if not self.directory:
            return None
        return self.directory / f"{kind}-{config_hash(key_obj)}.json"

    def load(self, kind: str, key_obj):
        p = self.path(kind, key_obj)
        if p and p.exists():
            with open(p, "r", encoding="utf-8") as fh:
                return json.load(fh)
        return None

    def store(self, kind: str, key_obj, payload) -> None:
        p = self.path(kind, key_obj)
        if not p:
            return
        fd, tmp = tempfile.mkstemp(dir=str(p.parent), suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(canonical_json(payload))
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
