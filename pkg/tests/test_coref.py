"""Pronoun resolution by entity ranking."""

import math

from gunrock.nlu.coref import (
    EntityMention,
    mention_rank,
    rank_candidates,
    resolve_coreference,
)
from gunrock.nlu.segmenter import Segment


def mention(canonical, etype, turn, seg=0):
    return EntityMention(canonical, canonical, etype, turn, seg)


def seg(i, text):
    return Segment(index=i, text=text, token_span=(0, len(text.split())))


def test_him_resolves_to_person():
    segments = [seg(0, "i really like him")]
    context = [mention("bradley cooper", "person", 0)]
    out = resolve_coreference(segments, context, current_turn=1)
    assert out[0].text == "i really like bradley cooper"


def test_type_mismatch_left_unresolved():
    segments = [seg(0, "i really like it")]
    context = [mention("bradley cooper", "person", 0)]
    out = resolve_coreference(segments, context, current_turn=1)
    assert out[0].text == "i really like it"


def test_it_resolves_to_title():
    segments = [seg(0, "when i watched it")]
    context = [mention("a star is born", "title", 0)]
    out = resolve_coreference(segments, context, current_turn=1)
    assert out[0].text == "when i watched a star is born"


def test_within_turn_mention_visible_to_later_segments():
    segments = [seg(0, "ENT was great"), seg(1, "i really like him")]
    current = [mention("bradley cooper", "person", 3, seg=0)]
    out = resolve_coreference(segments, [], current_turn=3, current_turn_mentions=current)
    assert out[1].text == "i really like bradley cooper"


def test_current_turn_mentions_not_visible_to_earlier_segments():
    segments = [seg(0, "i really like him")]
    current = [mention("bradley cooper", "person", 3, seg=2)]
    out = resolve_coreference(segments, [], current_turn=3, current_turn_mentions=current)
    assert out[0].text == "i really like him"


def test_rank_formula_hand_check():
    m = mention("x", "person", turn=2)
    # 2.0 * 1 + 1 / (1 + 3) + 0.5 * log(1 + 2)
    expected = 2.0 + 0.25 + 0.5 * math.log(3)
    assert mention_rank(m, current_turn=5, frequency=2, type_compatible=True) == (
        expected
    )


def test_recent_and_frequent_mention_wins():
    # Enumerated by hand from the rank formula: "b" is both more recent
    # (turn 4 vs 1) and more frequent (2 vs 1 mentions).
    context = [
        mention("a", "person", 1),
        mention("b", "person", 2),
        mention("b", "person", 4),
    ]
    ranked = rank_candidates(context, frozenset({"person"}), current_turn=4)
    rank_b = 2.0 + 1.0 / 1 + 0.5 * math.log(3)
    rank_a = 2.0 + 1.0 / 4 + 0.5 * math.log(2)
    assert ranked[0][1].canonical == "b"
    assert ranked[0][0] == rank_b
    assert dict((m.canonical, s) for s, m in ranked)["a"] == rank_a


def test_argmax_property_over_candidates():
    context = [
        mention("a", "person", 0),
        mention("b", "person", 2),
        mention("c", "title", 3),
        mention("b", "person", 3),
    ]
    ranked = rank_candidates(context, frozenset({"person"}), current_turn=4)
    scores = [s for s, _ in ranked]
    assert scores == sorted(scores, reverse=True)
    assert all(m.entity_type == "person" for _, m in ranked)


def test_segments_without_pronouns_unchanged():
    segments = [seg(0, "the weather is nice")]
    context = [mention("bradley cooper", "person", 0)]
    out = resolve_coreference(segments, context, current_turn=1)
    assert out[0].text == "the weather is nice"


def test_unresolvable_pronoun_stays():
    out = resolve_coreference([seg(0, "i like him")], [], current_turn=0)
    assert out[0].text == "i like him"
