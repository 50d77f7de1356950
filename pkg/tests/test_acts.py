"""Dialog act rule cascade."""

import pytest

from gunrock.errors import ConfigError
from gunrock.nlu.acts import classify_dialog_acts, load_tagset


def labels(text, prior=None):
    return [t.label for t in classify_dialog_acts(text, prior)]


def test_tagset_has_23_labels():
    assert len(load_tagset()) == 23


def test_sure_after_yes_no_question():
    assert labels("sure", prior="yes_no_question") == ["pos_answer"]


def test_bare_short_affirmation_without_context():
    assert "pos_answer" in labels("sure")


def test_open_question():
    assert labels("what movie would you recommend to me") == ["open_question"]


def test_statement_plus_opinion():
    assert labels("i think that a star is born is good") == ["statement", "opinion"]


def test_stop_is_command():
    assert "command" in labels("stop")


def test_negative_answer():
    assert "neg_answer" in labels("no", prior="yes_no_question")


def test_personal_question():
    got = labels("do you like jeopardy")
    assert "personal_question" in got
    assert "yes_no_question" in got


def test_whats_contraction_is_question():
    got = labels("what's your favorite color")
    assert "personal_question" in got


def test_factual_question():
    got = labels("what is the capital of france")
    assert "factual_question" in got


def test_topic_switch():
    assert "topic_switch" in labels("let's talk about animals")


def test_greeting():
    assert labels("let's chat") == ["greeting"]


def test_subordinate_when_clause_not_question():
    got = labels("when i watched it the music was amazing")
    assert "open_question" not in got
    assert "opinion" in got


def test_number_is_statement():
    assert "statement" in labels("ten")


def test_every_segment_gets_at_least_one_tag():
    for text in ["zzz qqq", "hmm", "and then i", "tell me a joke", "thanks"]:
        assert len(classify_dialog_acts(text)) >= 1


def test_back_channel():
    assert "back_channel" in labels("hmm")


def test_hold():
    assert "hold" in labels("wait")


def test_nonsense_for_non_alpha():
    assert labels("123 456") == ["nonsense"]


def test_confidences_in_range():
    for tag in classify_dialog_acts("i think that a star is born is good"):
        assert 0.0 <= tag.confidence <= 1.0


def test_bad_tagset_rejected(tmp_path):
    p = tmp_path / "tags.txt"
    p.write_text("statement\nopinion\n", encoding="utf-8")
    with pytest.raises(ConfigError) as excinfo:
        load_tagset(str(p))
    assert excinfo.value.violations
