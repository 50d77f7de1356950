"""Sentiment scoring and topic keyword detection."""

from gunrock.nlu.affect import annotate_sentiment_topic


def test_positive_music_segment():
    sentiment, topics = annotate_sentiment_topic("the music was amazing")
    assert sentiment > 0
    assert ("music", 1.0) in topics


def test_no_hits():
    sentiment, topics = annotate_sentiment_topic("ten")
    assert sentiment == 0.0
    assert topics == []


def test_negation_flips_next_hit():
    # "don't ... good": the negation flips the following lexicon hit.
    sentiment, _ = annotate_sentiment_topic("i don't think i have a good one")
    assert sentiment <= 0


def test_plain_positive_unflipped():
    sentiment, _ = annotate_sentiment_topic("i have a good one")
    assert sentiment > 0


def test_mixed_sentiment_ratio():
    sentiment, _ = annotate_sentiment_topic("good good bad")
    assert abs(sentiment - (2 - 1) / 3) < 1e-12


def test_topics_normalized():
    _, topics = annotate_sentiment_topic("i love this movie and that book")
    weights = dict(topics)
    assert abs(sum(weights.values()) - 1.0) < 1e-12
    assert set(weights) == {"movies", "books"}


def test_reading_triggers_books():
    _, topics = annotate_sentiment_topic("i just finished reading harry potter")
    assert topics and topics[0][0] == "books"
