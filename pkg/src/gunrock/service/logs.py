"""Append-only JSONL conversation logging with a crash-tolerant reader.

One self-contained JSON object per line, flushed per write, so
concurrent sessions interleave safely and a truncated final line never
costs more than itself.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator

LOG_VERSION = 1

logger = logging.getLogger(__name__)


@dataclass
class ConversationRecord:
    """In-memory view of one session, mirrored in the log file."""

    session_id: str
    user_ref: str
    turns: list[dict] = field(default_factory=list)
    rating: int | None = None
    started_at: str = ""
    ended_at: str | None = None

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "user_ref": self.user_ref,
            "turns": self.turns,
            "rating": self.rating,
            "started_at": self.started_at,
            "ended_at": self.ended_at,
        }


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


class LogWriter:
    """Serialized appends; I/O failures surface to health, not to users."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self.healthy = True

    def append(self, record: dict):
        line = json.dumps({"log_version": LOG_VERSION, **record}, ensure_ascii=False)
        with self._lock:
            try:
                with open(self.path, "a", encoding="utf-8") as f:
                    f.write(line + "\n")
                    f.flush()
                self.healthy = True
            except OSError:
                logger.exception("conversation log append failed")
                self.healthy = False


def read_log_lines(path: str | Path) -> Iterator[dict]:
    """Parse a JSONL log, skipping damaged lines (e.g. a truncated tail)."""
    skipped = 0
    with open(path, encoding="utf-8") as f:
        for raw in f:
            raw = raw.strip()
            if not raw:
                continue
            try:
                yield json.loads(raw)
            except json.JSONDecodeError:
                skipped += 1
    if skipped:
        logger.warning("skipped %d malformed log line(s) in %s", skipped, path)
