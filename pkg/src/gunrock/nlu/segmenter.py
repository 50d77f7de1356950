"""Break-token segmentation of masked utterance text.

ASR transcripts arrive as one long unpunctuated word stream; these
rules insert boundaries at discourse markers, standalone answers,
question starts, conjunction+subject clause starts, and new
pronoun-subject clauses. Placeholder tokens are atomic and never
split from their span (they are single tokens by construction).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files
from pathlib import Path

_PLACEHOLDER_RE = re.compile(r"^ENT_\d+$")


@dataclass(frozen=True)
class Segment:
    """One semantically complete unit of an utterance."""

    index: int
    text: str
    token_span: tuple[int, int]


@dataclass(frozen=True)
class SegmentationRules:
    discourse_markers: frozenset[str]
    standalone_answers: frozenset[str]
    wh_words: frozenset[str]
    aux_words: frozenset[str]
    subject_pronouns: frozenset[str]
    conjunctions: frozenset[str]
    clause_verbs: frozenset[str]
    no_split_before_subject_after: frozenset[str]


def default_rules_path() -> Path:
    return Path(str(files("gunrock").joinpath("data/segmentation_rules.json")))


@lru_cache(maxsize=4)
def load_rules(path: str | None = None) -> SegmentationRules:
    p = Path(path) if path else default_rules_path()
    raw = json.loads(p.read_text(encoding="utf-8"))
    return SegmentationRules(
        discourse_markers=frozenset(raw["discourse_markers"]),
        standalone_answers=frozenset(raw["standalone_answers"]),
        wh_words=frozenset(raw["wh_words"]),
        aux_words=frozenset(raw["aux_words"]),
        subject_pronouns=frozenset(raw["subject_pronouns"]),
        conjunctions=frozenset(raw["conjunctions"]),
        clause_verbs=frozenset(raw["clause_verbs"]),
        no_split_before_subject_after=frozenset(raw["no_split_before_subject_after"]),
    )


def _is_placeholder(word: str) -> bool:
    return bool(_PLACEHOLDER_RE.match(word))


def break_points(words: list[str], rules: SegmentationRules) -> set[int]:
    """Indices i such that a break is inserted before words[i]."""
    n = len(words)
    breaks: set[int] = set()
    for i, w in enumerate(words):
        if i == 0:
            continue
        prev = words[i - 1]
        nxt = words[i + 1] if i + 1 < n else None

        # Discourse markers open a new unit (unless utterance-final).
        if w in rules.discourse_markers and nxt is not None:
            breaks.add(i)
        # Mid-utterance question starts: wh-word with an aux nearby, or
        # aux directly followed by a subject pronoun.
        if w in rules.wh_words and any(
            words[j] in rules.aux_words for j in range(i + 1, min(i + 3, n))
        ):
            breaks.add(i)
        # Aux + pronoun starts a question, unless it is the inverted aux
        # of a wh-phrase just before it ("what movie | would you ...").
        if (
            w in rules.aux_words
            and nxt in rules.subject_pronouns
            and not any(
                words[j] in rules.wh_words for j in range(max(0, i - 4), i)
            )
        ):
            breaks.add(i)
        # Conjunction followed by a subject pronoun or masked entity.
        if w in rules.conjunctions and nxt is not None and (
            nxt in rules.subject_pronouns or _is_placeholder(nxt)
        ):
            breaks.add(i)
        # New pronoun-subject clause ("... question | i don't think ...").
        if (
            w in rules.subject_pronouns
            and nxt in rules.clause_verbs
            and prev not in rules.no_split_before_subject_after
        ):
            breaks.add(i)

    # Standalone interjections/answers become their own unit: break after
    # the first token of a segment when it is a marker or answer word.
    # Iterate to a fixpoint since new breaks create new segment starts.
    standalone = rules.discourse_markers | rules.standalone_answers
    while True:
        starts = {0} | breaks
        added = False
        for s in starts:
            if s + 1 < n and s + 1 not in breaks and words[s] in standalone:
                breaks.add(s + 1)
                added = True
        if not added:
            return breaks


def segment_text(masked_text: str, rules: SegmentationRules | None = None) -> list[Segment]:
    """Split masked text into ordered segments partitioning its tokens."""
    rules = rules or load_rules()
    words = masked_text.split()
    if not words:
        return []
    breaks = sorted(break_points(words, rules))
    bounds = [0] + breaks + [len(words)]
    segments = []
    for k in range(len(bounds) - 1):
        s, e = bounds[k], bounds[k + 1]
        if s == e:
            continue
        segments.append(
            Segment(index=len(segments), text=" ".join(words[s:e]), token_span=(s, e))
        )
    return segments
