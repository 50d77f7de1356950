"""Local persona backstory, fact store, and entity descriptions.

Everything is read-only after ingest. A pluggable client interface
(``KnowledgeClient``) lets a live knowledge-graph backend replace the
local store without touching the pipeline; the timeout wrapper
guarantees a lookup can never stall a turn.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor, TimeoutError as FutureTimeout
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

from gunrock.errors import ConfigError
from gunrock.text import STOPWORDS, normalize

logger = logging.getLogger(__name__)

MATCH_THRESHOLD = 0.6


@dataclass(frozen=True)
class PersonaEntry:
    id: str
    question_patterns: tuple[str, ...]
    response: str
    reasoning: str | None = None


@dataclass(frozen=True)
class FactRecord:
    subject: str
    predicate: str
    object_text: str
    source_tag: str


@dataclass
class KnowledgeStore:
    persona: dict[str, PersonaEntry] = field(default_factory=dict)
    facts: dict[str, list[FactRecord]] = field(default_factory=dict)
    domains: dict[str, str] = field(default_factory=dict)  # phrase -> domain

    @property
    def counts(self) -> dict[str, int]:
        return {
            "persona_entries": len(self.persona),
            "facts": sum(len(v) for v in self.facts.values()),
            "gazetteer_phrases": len(self.domains),
        }


def _content_tokens(text: str) -> frozenset[str]:
    return frozenset(w for w in normalize(text).split() if w not in STOPWORDS)


def _parse_persona(path: Path) -> dict[str, PersonaEntry]:
    entries: dict[str, PersonaEntry] = {}
    pattern_owner: dict[str, str] = {}
    violations: list[str] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (3, 4) or not parts[0] or not parts[2]:
            raise ConfigError(f"{path}:{lineno}: expected id, patterns, response[, reasoning]")
        pid, patterns_raw, response = parts[0], parts[1], parts[2]
        reasoning = parts[3] if len(parts) == 4 and parts[3].strip() else None
        patterns = tuple(normalize(p) for p in patterns_raw.split("|") if p.strip())
        if not patterns:
            raise ConfigError(f"{path}:{lineno}: entry {pid!r} has no patterns")
        if pid in entries:
            raise ConfigError(f"{path}:{lineno}: duplicate persona id {pid!r}")
        for p in patterns:
            if p in pattern_owner:
                violations.append(
                    f"pattern {p!r} appears in both {pattern_owner[p]!r} and {pid!r}"
                )
            pattern_owner[p] = pid
        entries[pid] = PersonaEntry(pid, patterns, response, reasoning)
    if violations:
        raise ConfigError(f"{path}: duplicate persona patterns", violations)
    return entries


def _parse_facts(path: Path) -> dict[str, list[FactRecord]]:
    facts: dict[str, list[FactRecord]] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4 or not parts[0] or not parts[1]:
            raise ConfigError(f"{path}:{lineno}: expected subject, predicate, object, source")
        rec = FactRecord(parts[0].strip().lower(), parts[1].strip(), parts[2].strip(), parts[3].strip())
        facts.setdefault(rec.subject, []).append(rec)
    return facts


def ingest_knowledge(directory: str | Path) -> KnowledgeStore:
    """Load persona.tsv, facts.tsv, and gazetteers/ from a data directory."""
    base = Path(directory)
    store = KnowledgeStore()
    persona_path = base / "persona.tsv"
    facts_path = base / "facts.tsv"
    if persona_path.exists():
        store.persona = _parse_persona(persona_path)
    if facts_path.exists():
        store.facts = _parse_facts(facts_path)
    gz_dir = base / "gazetteers"
    if gz_dir.is_dir():
        from gunrock.phonetics.index import load_gazetteer

        for gz_file in sorted(gz_dir.glob("*.tsv")):
            for phrase, domain in load_gazetteer(gz_file):
                store.domains.setdefault(phrase, domain)
    logger.info("knowledge store loaded: %s", store.counts)
    return store


def query_backstory(
    store: KnowledgeStore, question: str, last_persona_id: str | None = None
) -> tuple[str, str] | None:
    """Best persona response for a question, or a why-follow-up's reasoning.

    Matching is keyword overlap against each entry's patterns after
    stopword removal; case and punctuation are ignored.
    """
    q = normalize(question)
    if q in ("why", "why is that", "how come"):
        if last_persona_id and last_persona_id in store.persona:
            entry = store.persona[last_persona_id]
            if entry.reasoning:
                return entry.reasoning, entry.id
        return None
    q_tokens = _content_tokens(q)
    if not q_tokens:
        return None
    best: tuple[float, int, str] | None = None  # (overlap, pattern_len, id)
    for entry in store.persona.values():
        for pattern in entry.question_patterns:
            p_tokens = _content_tokens(pattern)
            if not p_tokens:
                continue
            overlap = len(q_tokens & p_tokens) / len(p_tokens)
            if overlap < MATCH_THRESHOLD:
                continue
            key = (overlap, len(p_tokens), entry.id)
            if best is None or key > best:
                best = key
    if best is None:
        return None
    entry = store.persona[best[2]]
    return entry.response, entry.id


def query_facts(
    store: KnowledgeStore, subject: str, predicate_hint: str | None = None
) -> list[FactRecord]:
    records = store.facts.get(normalize(subject), [])
    if predicate_hint:
        records = [r for r in records if r.predicate == predicate_hint]
    return list(records)


def describe_noun_phrase(store: KnowledgeStore, np: str) -> tuple[str, str] | None:
    """(entity_type, one-line description) for a noun phrase, if known."""
    key = normalize(np)
    descriptions = [r for r in store.facts.get(key, []) if r.predicate == "description"]
    if not descriptions:
        return None
    from gunrock.nlu.masking import entity_type_for

    domain = store.domains.get(key, "")
    return entity_type_for(domain) if domain else "other", descriptions[0].object_text


class KnowledgeClient(Protocol):
    """Pluggable external lookup: a live backend may replace the store."""

    def describe(self, np: str) -> tuple[str, str] | None: ...


class LocalKnowledgeClient:
    def __init__(self, store: KnowledgeStore):
        self.store = store

    def describe(self, np: str) -> tuple[str, str] | None:
        return describe_noun_phrase(self.store, np)


class TimeoutKnowledgeClient:
    """Wrap any client with a hard deadline; a miss beats a stalled turn."""

    def __init__(self, inner: KnowledgeClient, timeout_s: float = 0.5):
        self.inner = inner
        self.timeout_s = timeout_s
        self._pool = ThreadPoolExecutor(max_workers=2)

    def describe(self, np: str) -> tuple[str, str] | None:
        future = self._pool.submit(self.inner.describe, np)
        try:
            return future.result(timeout=self.timeout_s)
        except FutureTimeout:
            logger.warning("knowledge lookup timed out for %r", np)
            return None
