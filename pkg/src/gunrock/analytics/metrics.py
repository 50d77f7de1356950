"""Conversation-log metric extraction for the engagement analyses."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

logger = logging.getLogger(__name__)

HAS_PET_VALUES = ("yes", "no", "na", "not_asked")
DEFAULT_MIN_USER_TURNS = 3


@dataclass
class ConversationMetrics:
    session_id: str
    user_turns: int
    mean_word_count: float
    duration_min: float
    backstory_queries: int
    has_pet: str
    rating: int | None


def _parse_ts(value: str | None) -> datetime | None:
    if not value:
        return None
    try:
        return datetime.fromisoformat(value)
    except ValueError:
        return None


def load_logs(
    path: str | Path, min_user_turns: int = DEFAULT_MIN_USER_TURNS
) -> list[ConversationMetrics]:
    """One metrics row per conversation with at least ``min_user_turns``.

    Malformed lines are skipped with a warning count; line order within
    a session does not matter (turns are keyed by their seq number).
    """
    sessions: dict[str, dict] = {}
    order: list[str] = []
    skipped = 0
    with open(path, encoding="utf-8") as f:
        for raw in f:
            raw = raw.strip()
            if not raw:
                continue
            try:
                line = json.loads(raw)
            except json.JSONDecodeError:
                skipped += 1
                continue
            sid = line.get("session_id")
            if not sid:
                skipped += 1
                continue
            if sid not in sessions:
                sessions[sid] = {"turns": [], "start": None, "end": None,
                                 "rating": None, "attrs": {}}
                order.append(sid)
            bucket = sessions[sid]
            kind = line.get("type")
            if kind == "turn":
                bucket["turns"].append(line)
            elif kind == "session_start":
                bucket["start"] = line.get("ts")
            elif kind == "session_end":
                bucket["end"] = line.get("ts")
                bucket["rating"] = line.get("rating")
                bucket["attrs"] = line.get("attributes") or {}
    if skipped:
        logger.warning("load_logs: skipped %d malformed line(s)", skipped)

    rows: list[ConversationMetrics] = []
    for sid in order:
        bucket = sessions[sid]
        turns = sorted(bucket["turns"], key=lambda t: t.get("seq", 0))
        user_texts = [t.get("text", "") for t in turns if t.get("role") == "user"]
        user_turns = len(user_texts)
        if user_turns < min_user_turns:
            continue
        word_counts = [len(t.split()) for t in user_texts]
        mean_wc = sum(word_counts) / len(word_counts) if word_counts else 0.0
        backstory = sum(
            1 for t in turns if t.get("role") == "system" and t.get("backstory")
        )
        has_pet = "not_asked"
        attrs = bucket["attrs"]
        if attrs.get("has_pet") in HAS_PET_VALUES:
            has_pet = attrs["has_pet"]
        else:
            for t in turns:
                value = (t.get("attrs") or {}).get("has_pet")
                if value in HAS_PET_VALUES:
                    has_pet = value
        start = _parse_ts(bucket["start"]) or _parse_ts(
            turns[0].get("ts") if turns else None
        )
        end = _parse_ts(bucket["end"]) or _parse_ts(
            turns[-1].get("ts") if turns else None
        )
        duration_min = (
            max(0.0, (end - start).total_seconds() / 60.0) if start and end else 0.0
        )
        rating = bucket["rating"]
        if not (isinstance(rating, int) and 1 <= rating <= 5):
            rating = None
        rows.append(
            ConversationMetrics(
                session_id=sid,
                user_turns=user_turns,
                mean_word_count=mean_wc,
                duration_min=duration_min,
                backstory_queries=backstory,
                has_pet=has_pet,
                rating=rating,
            )
        )
    return rows
