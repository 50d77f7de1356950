"""Break-token insertion against the published conversation's splits."""

from hypothesis import given, strategies as st

from gunrock.nlu.segmenter import load_rules, segment_text


def texts(segments):
    return [s.text for s in segments]


def test_five_way_split():
    masked = (
        "ha it's a tough question i don't think i have a good one to recommend "
        "wait i think that ENT_0 is good"
    )
    assert texts(segment_text(masked)) == [
        "ha",
        "it's a tough question",
        "i don't think i have a good one to recommend",
        "wait",
        "i think that ENT_0 is good",
    ]


def test_three_way_split():
    masked = (
        "when i watched it the music was amazing and ENT_0 was super talented "
        "in the movie i really like him"
    )
    assert texts(segment_text(masked)) == [
        "when i watched it the music was amazing",
        "and ENT_0 was super talented in the movie",
        "i really like him",
    ]


def test_standalone_answer_split():
    assert texts(segment_text("sure that would be great")) == [
        "sure",
        "that would be great",
    ]


def test_single_word():
    assert texts(segment_text("ten")) == ["ten"]


def test_no_rule_fires_single_segment():
    assert texts(segment_text("let's chat")) == ["let's chat"]


def test_question_not_split_on_inverted_aux():
    assert texts(segment_text("what movie would you recommend to me")) == [
        "what movie would you recommend to me"
    ]


def test_empty_input():
    assert segment_text("") == []


_words = st.lists(
    st.sampled_from(
        "ha wait i you think don't have movie good the a was music ENT_0 ENT_1 "
        "and but when really like him sure ten question one to recommend".split()
    ),
    min_size=1,
    max_size=25,
)


@given(words=_words)
def test_segments_partition_tokens(words):
    rules = load_rules()
    segments = segment_text(" ".join(words), rules)
    rebuilt = []
    prev_end = 0
    for seg in segments:
        start, end = seg.token_span
        assert start == prev_end, "gap or overlap between segments"
        assert seg.text.split() == words[start:end]
        rebuilt.extend(seg.text.split())
        prev_end = end
    assert prev_end == len(words)
    assert rebuilt == words


@given(words=_words)
def test_placeholders_never_straddle_boundaries(words):
    segments = segment_text(" ".join(words))
    for seg in segments:
        for tok in seg.text.split():
            if tok.startswith("ENT_"):
                assert tok in ("ENT_0", "ENT_1")  # stays one token
