"""Rule chunker output on the fixture sentences."""

from gunrock.nlu.chunker import chunk_noun_phrases, noun_trunk_spans

TITLES = {"a star is born", "harry potter"}


def test_music_design_sentence():
    # Hand-applied grammar: DT NN NN run, then the bare pronoun.
    nps = chunk_noun_phrases("the music design really stood out to me")
    assert nps == ["the music design", "me"]


def test_known_title_kept_atomic():
    assert chunk_noun_phrases("a star is born", TITLES) == ["a star is born"]


def test_no_nominal_material():
    assert chunk_noun_phrases("wait") == []


def test_interjection_only():
    assert chunk_noun_phrases("ha") == []


def test_oov_words_default_nominal():
    spans = noun_trunk_spans("i think that stars born is good".split())
    phrases = [" ".join("i think that stars born is good".split()[s:e]) for s, e in spans]
    assert "stars born" in phrases


def test_pronouns_excluded_from_trunk_spans():
    spans = noun_trunk_spans("i like him".split())
    assert spans == []


def test_atomic_phrase_inside_sentence():
    words = "i just finished reading harry potter".split()
    spans = noun_trunk_spans(words, TITLES)
    assert (4, 6) in spans
