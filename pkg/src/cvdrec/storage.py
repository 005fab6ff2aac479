"""Append-only assessment store.

One JSON document per line; records are immutable once written. An
in-memory index maps ids to file offsets, rebuilt by scanning the file at
open time. A process-wide lock serializes appends; no cross-process
coordination is attempted (single-writer deployment).
"""

from __future__ import annotations

import json
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path


def new_id() -> str:
    return uuid.uuid4().hex


def utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class StoreError(RuntimeError):
    pass


class AssessmentStore:
    """JSON-lines persistence for assessment records."""

    def __init__(self, path: str | Path):
        self._path = Path(path)
        self._lock = threading.Lock()
        self._offsets: dict[str, int] = {}
        self._path.parent.mkdir(parents=True, exist_ok=True)
        if self._path.exists():
            self._rebuild_index()
        else:
            self._path.touch()

    @property
    def path(self) -> Path:
        return self._path

    def _rebuild_index(self) -> None:
        offset = 0
        with self._path.open("rb") as fh:
            for line in fh:
                stripped = line.strip()
                if stripped:
                    try:
                        record = json.loads(stripped)
                    except json.JSONDecodeError as err:
                        raise StoreError(
                            f"corrupt store line at byte {offset}: {err}") from err
                    record_id = record.get("id")
                    if record_id:
                        self._offsets[record_id] = offset
                offset += len(line)

    def append(self, record: dict) -> str:
        """Write one record; assigns id and created_at if absent."""
        record = dict(record)
        record.setdefault("id", new_id())
        record.setdefault("created_at", utc_now())
        line = json.dumps(record, ensure_ascii=False,
                          separators=(",", ":")) + "\n"
        encoded = line.encode("utf-8")
        with self._lock:
            if record["id"] in self._offsets:
                raise StoreError(f"duplicate record id {record['id']}")
            with self._path.open("ab") as fh:
                offset = fh.tell()
                fh.write(encoded)
                fh.flush()
            self._offsets[record["id"]] = offset
        return record["id"]

    def get(self, record_id: str) -> dict | None:
        with self._lock:
            offset = self._offsets.get(record_id)
        if offset is None:
            return None
        with self._path.open("rb") as fh:
            fh.seek(offset)
            return json.loads(fh.readline())

    def __len__(self) -> int:
        with self._lock:
            return len(self._offsets)
