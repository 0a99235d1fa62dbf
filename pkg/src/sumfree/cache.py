"""Append-only JSON-lines result cache.

One record per line so interrupted runs never corrupt earlier results.
Reads are forgiving: unknown fields are kept, corrupt lines are skipped
with a warning, and duplicate (kind, parameters) keys resolve to the
last written record.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, asdict
from datetime import datetime, timezone

ENV_VAR = "SUMFREE_CACHE"
DEFAULT_PATH = "sumfree-cache.jsonl"


@dataclass(frozen=True)
class CacheRecord:
    kind: str
    parameters: dict
    result: dict
    version: str
    timestamp: str

    def key(self) -> tuple[str, str]:
        return self.kind, json.dumps(self.parameters, sort_keys=True)


def resolve_path(explicit: str | None = None) -> str:
    return explicit or os.environ.get(ENV_VAR) or DEFAULT_PATH


def make_record(kind: str, parameters: dict, result: dict, version: str) -> CacheRecord:
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return CacheRecord(kind=kind, parameters=parameters, result=result,
                       version=version, timestamp=stamp)


def append_record(path: str, record: CacheRecord) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(asdict(record), sort_keys=True) + "\n")


def load_records(path: str) -> dict[tuple[str, str], CacheRecord]:
    """Latest record per (kind, parameters) key; corrupt lines are skipped."""
    records: dict[tuple[str, str], CacheRecord] = {}
    if not os.path.exists(path):
        return records
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                rec = CacheRecord(
                    kind=raw["kind"],
                    parameters=raw["parameters"],
                    result=raw["result"],
                    version=raw.get("version", "unknown"),
                    timestamp=raw.get("timestamp", ""),
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                sys.stderr.write(f"warning: {path}:{lineno}: skipping bad cache line ({exc})\n")
                continue
            records[rec.key()] = rec
    return records


def lookup(path: str, kind: str, parameters: dict) -> CacheRecord | None:
    key = (kind, json.dumps(parameters, sort_keys=True))
    return load_records(path).get(key)
