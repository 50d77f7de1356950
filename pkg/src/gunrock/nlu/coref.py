"""Pronoun resolution by ranked entity mentions.

Pronouns from a closed set are rewritten to the top-ranked
type-compatible mention, looking both at earlier segments of the same
turn and at mentions from previous turns.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace

# Pronoun -> compatible entity types. "they/them" bind to anything.
_PRONOUN_TYPES: dict[str, frozenset[str] | None] = {
    "he": frozenset({"person"}),
    "him": frozenset({"person"}),
    "his": frozenset({"person"}),
    "she": frozenset({"person"}),
    "her": frozenset({"person"}),
    "it": frozenset({"title", "event", "place", "animal", "other"}),
    "they": None,
    "them": None,
}
_PHRASE_PRONOUNS = ("that one", "this one")

TYPE_MATCH_WEIGHT = 2.0
RECENCY_WEIGHT = 1.0
FREQUENCY_WEIGHT = 0.5


@dataclass(frozen=True)
class EntityMention:
    """One sighting of a named entity in the conversation."""

    surface: str
    canonical: str
    entity_type: str
    turn_index: int
    segment_index: int
    rank_score: float = 0.0


def mention_rank(
    mention: EntityMention,
    current_turn: int,
    frequency: int,
    type_compatible: bool,
) -> float:
    turns_since = max(0, current_turn - mention.turn_index)
    return (
        TYPE_MATCH_WEIGHT * (1.0 if type_compatible else 0.0)
        + RECENCY_WEIGHT / (1 + turns_since)
        + FREQUENCY_WEIGHT * math.log(1 + frequency)
    )


def rank_candidates(
    context: list[EntityMention],
    wanted_types: frozenset[str] | None,
    current_turn: int,
) -> list[tuple[float, EntityMention]]:
    """Type-compatible mentions with rank scores, best first.

    Later context positions win rank ties (recency of mention order).
    """
    freq: dict[str, int] = {}
    for m in context:
        freq[m.canonical] = freq.get(m.canonical, 0) + 1
    best_by_canonical: dict[str, tuple[float, int, EntityMention]] = {}
    for pos, m in enumerate(context):
        if wanted_types is not None and m.entity_type not in wanted_types:
            continue
        score = mention_rank(m, current_turn, freq[m.canonical], True)
        prev = best_by_canonical.get(m.canonical)
        if prev is None or (score, pos) > (prev[0], prev[1]):
            best_by_canonical[m.canonical] = (score, pos, m)
    ranked = sorted(best_by_canonical.values(), key=lambda t: (-t[0], -t[1]))
    return [(score, replace(m, rank_score=score)) for score, _, m in ranked]


def _resolve_text(
    text: str, context: list[EntityMention], current_turn: int
) -> str:
    for phrase in _PHRASE_PRONOUNS:
        if phrase in text:
            ranked = rank_candidates(
                context, _PRONOUN_TYPES["it"], current_turn
            )
            if ranked:
                text = text.replace(phrase, ranked[0][1].canonical)
    words = text.split()
    out = []
    for w in words:
        types = _PRONOUN_TYPES.get(w)
        if w in _PRONOUN_TYPES:
            ranked = rank_candidates(context, types, current_turn)
            if ranked:
                out.append(ranked[0][1].canonical)
                continue
        out.append(w)
    return " ".join(out)


def resolve_coreference(
    segments: list,
    context: list[EntityMention],
    current_turn: int = 0,
    current_turn_mentions: list[EntityMention] | None = None,
):
    """Rewrite closed-set pronouns in each segment to their antecedents.

    ``context`` holds mentions from prior turns in conversation order;
    ``current_turn_mentions`` from this turn join the candidate pool for
    segments at or after their own segment index. Unresolvable pronouns
    stay in place.
    """
    from gunrock.nlu.segmenter import Segment

    current = current_turn_mentions or []
    resolved = []
    for seg in segments:
        visible = context + [
            m for m in current if m.segment_index <= seg.index
        ]
        new_text = _resolve_text(seg.text, visible, current_turn)
        if new_text != seg.text:
            seg = Segment(index=seg.index, text=new_text, token_span=seg.token_span)
        resolved.append(seg)
    return resolved
