"""Full utterance analysis: correction, masking, segmentation,
coreference, and per-segment annotation, in one deterministic pass."""

from __future__ import annotations

from dataclasses import dataclass, field

from gunrock.errors import InvalidInputError
from gunrock.nlu.acts import DialogActTag, classify_dialog_acts, load_tagset
from gunrock.nlu.affect import AffectLexicons, annotate_sentiment_topic, load_lexicons
from gunrock.nlu.chunker import chunk_noun_phrases
from gunrock.nlu.coref import EntityMention, resolve_coreference
from gunrock.nlu.masking import MaskTable, mask_entities, unmask
from gunrock.nlu.segmenter import Segment, SegmentationRules, load_rules, segment_text
from gunrock.phonetics.correct import (
    DEFAULT_RATE_BOUNDS,
    Correction,
    TimedToken,
    correct_utterance,
)
from gunrock.phonetics.index import PhoneticIndex


@dataclass
class NluContext:
    """Per-session inputs the pipeline needs beyond the tokens."""

    gazetteers: list[PhoneticIndex] = field(default_factory=list)
    correction_indexes: list[PhoneticIndex] = field(default_factory=list)
    prior_mentions: list[EntityMention] = field(default_factory=list)
    prior_system_act: str | None = None
    turn_index: int = 0
    rules: SegmentationRules | None = None
    lexicons: AffectLexicons | None = None
    tagset: frozenset[str] | None = None
    rate_bounds: tuple[float, float] = DEFAULT_RATE_BOUNDS


@dataclass
class NluResult:
    segments: list[Segment]
    mask_table: MaskTable
    mentions: list[EntityMention]
    noun_phrases: list[list[str]]
    acts: list[list[DialogActTag]]
    sentiment: list[float]
    topics: list[list[tuple[str, float]]]
    corrected_text: str = ""
    corrections: list[Correction] = field(default_factory=list)

    def acts_flat(self) -> set[str]:
        return {tag.label for tags in self.acts for tag in tags}

    def segment_acts(self, index: int) -> set[str]:
        return {tag.label for tag in self.acts[index]}

    def has_entity(self, index: int) -> bool:
        return any(m.segment_index == index for m in self.mentions)


def _mentions_from_mask(
    masked_text: str, table: MaskTable, segments: list[Segment], turn_index: int
) -> list[EntityMention]:
    words = masked_text.split()
    seg_of_token: dict[int, int] = {}
    for seg in segments:
        for t in range(seg.token_span[0], seg.token_span[1]):
            seg_of_token[t] = seg.index
    mentions = []
    for pos, w in enumerate(words):
        if w in table.placeholders:
            phrase, entity_type, _domain = table.placeholders[w]
            mentions.append(
                EntityMention(
                    surface=phrase,
                    canonical=phrase,
                    entity_type=entity_type,
                    turn_index=turn_index,
                    segment_index=seg_of_token.get(pos, 0),
                )
            )
    return mentions


def analyze_utterance(tokens: list[TimedToken], ctx: NluContext) -> NluResult:
    """Run the full understanding pipeline over one user utterance."""
    if not tokens:
        raise InvalidInputError("empty utterance")
    if not any(any(c.isalnum() for c in t.word) for t in tokens):
        raise InvalidInputError("utterance has no word content")

    corrected_text, corrections = correct_utterance(
        tokens, ctx.correction_indexes, ctx.rate_bounds
    )
    masked, table = mask_entities(corrected_text, ctx.gazetteers)
    rules = ctx.rules or load_rules()
    masked_segments = segment_text(masked, rules)
    mentions = _mentions_from_mask(masked, table, masked_segments, ctx.turn_index)

    surface_segments = [
        Segment(index=s.index, text=unmask(s.text, table), token_span=s.token_span)
        for s in masked_segments
    ]
    resolved = resolve_coreference(
        surface_segments,
        ctx.prior_mentions,
        current_turn=ctx.turn_index,
        current_turn_mentions=mentions,
    )

    atomic = {p for gz in ctx.gazetteers for p, _ in gz.phrases}
    tagset = ctx.tagset or load_tagset()
    lexicons = ctx.lexicons or load_lexicons()
    noun_phrases, acts, sentiment, topics = [], [], [], []
    for seg in resolved:
        noun_phrases.append(chunk_noun_phrases(seg.text, atomic))
        acts.append(classify_dialog_acts(seg.text, ctx.prior_system_act, tagset))
        s, t = annotate_sentiment_topic(seg.text, lexicons)
        sentiment.append(s)
        topics.append(t)

    result = NluResult(
        segments=resolved,
        mask_table=table,
        mentions=mentions,
        noun_phrases=noun_phrases,
        acts=acts,
        sentiment=sentiment,
        topics=topics,
        corrected_text=corrected_text,
        corrections=corrections,
    )
    n = len(resolved)
    assert all(
        len(lst) == n for lst in (noun_phrases, acts, sentiment, topics)
    ), "per-segment annotation misalignment"
    return result
