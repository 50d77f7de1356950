"""Composed utterance analysis over the published conversation."""

import pytest

from gunrock.errors import InvalidInputError
from gunrock.nlu.coref import EntityMention
from gunrock.nlu.pipeline import NluContext, analyze_utterance
from gunrock.phonetics.correct import TimedToken, uniform_tokens

from conftest import TABLE1_USER_TURNS


@pytest.fixture()
def ctx(resources):
    return NluContext(
        gazetteers=resources.all_gazetteers(),
        correction_indexes=resources.correction_indexes,
        prior_system_act="yes_no_question",
        turn_index=2,
        rules=resources.rules,
        lexicons=resources.lexicons,
        tagset=resources.tagset,
    )


def test_user3_five_segments_with_correction(ctx):
    result = analyze_utterance(uniform_tokens(TABLE1_USER_TURNS[2], 300), ctx)
    assert len(result.segments) == 5
    assert [c.replacement for c in result.corrections] == ["a star is born"]
    assert any(
        m.canonical == "a star is born" and m.entity_type == "title"
        for m in result.mentions
    )
    assert result.segments[4].text == "i think that a star is born is good"


def test_user5_three_segments_with_coref(ctx, resources):
    ctx5 = NluContext(
        gazetteers=resources.all_gazetteers(),
        correction_indexes=resources.correction_indexes,
        prior_mentions=[EntityMention("a star is born", "a star is born", "title", 2, 4)],
        prior_system_act="open_question",
        turn_index=4,
        rules=resources.rules,
        lexicons=resources.lexicons,
        tagset=resources.tagset,
    )
    result = analyze_utterance(uniform_tokens(TABLE1_USER_TURNS[4], 300), ctx5)
    assert len(result.segments) == 3
    assert result.segments[2].text == "i really like bradley cooper"
    assert any(m.canonical == "bradley cooper" for m in result.mentions)


def test_single_word_stop_carries_command(ctx):
    result = analyze_utterance(uniform_tokens("stop", 300), ctx)
    assert len(result.segments) == 1
    assert "command" in result.segment_acts(0)


def test_annotation_lists_align(ctx):
    for text in TABLE1_USER_TURNS:
        result = analyze_utterance(uniform_tokens(text, 300), ctx)
        n = len(result.segments)
        assert len(result.noun_phrases) == n
        assert len(result.acts) == n
        assert len(result.sentiment) == n
        assert len(result.topics) == n
        assert all(result.acts[i] for i in range(n))


def test_deterministic(ctx):
    tokens = uniform_tokens(TABLE1_USER_TURNS[2], 300)
    first = analyze_utterance(tokens, ctx)
    second = analyze_utterance(tokens, ctx)
    assert [s.text for s in first.segments] == [s.text for s in second.segments]
    assert first.corrected_text == second.corrected_text
    assert [
        [t.label for t in tags] for tags in first.acts
    ] == [[t.label for t in tags] for tags in second.acts]


def test_degenerate_input_rejected(ctx):
    with pytest.raises(InvalidInputError):
        analyze_utterance([], ctx)
    with pytest.raises(InvalidInputError):
        analyze_utterance([TimedToken("...", 0, 100)], ctx)


def test_mask_table_restores_exact_text(ctx):
    result = analyze_utterance(
        uniform_tokens("i like the movie a star is born", 300), ctx
    )
    joined = " ".join(s.text for s in result.segments)
    assert "a star is born" in joined
