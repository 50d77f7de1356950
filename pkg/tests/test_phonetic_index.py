"""Index construction rules and retrievability guarantees."""

import pytest

from gunrock.errors import ConfigError
from gunrock.phonetics.index import (
    build_phonetic_index,
    load_gazetteer,
    phrase_code,
)
from gunrock.phonetics.metaphone import encode_double_metaphone
from gunrock.text import STOPWORDS


def test_content_words_indexed():
    idx = build_phonetic_index([("a star is born", "movie")])
    star = encode_double_metaphone("star")
    born = encode_double_metaphone("born")
    hits_star = {p for p, _, _ in idx.lookup(star.primary)}
    hits_born = {p for p, _, _ in idx.lookup(born.primary)}
    assert "a star is born" in hits_star
    assert "a star is born" in hits_born


def test_stopwords_not_indexed_for_multiword_phrases():
    idx = build_phonetic_index([("a star is born", "movie")])
    a_code = encode_double_metaphone("a")
    assert idx.lookup(a_code.primary) == frozenset()


def test_whole_phrase_code_indexed():
    idx = build_phonetic_index([("a star is born", "movie")])
    pri, _ = phrase_code("a star is born")
    assert any(p == "a star is born" for p, _, _ in idx.lookup(pri))


def test_empty_index():
    idx = build_phonetic_index([])
    assert len(idx) == 0
    assert idx.lookup("STR") == frozenset()
    assert idx.max_ngram == 1


def test_duplicate_entries_idempotent():
    once = build_phonetic_index([("frozen", "movie")])
    twice = build_phonetic_index([("frozen", "movie"), ("frozen", "movie")])
    assert once.entries == twice.entries
    assert once.phrases == twice.phrases


def test_thousand_titles_all_retrievable():
    # Synthetic titles: every content word's primary code must retrieve
    # its phrase (exhaustive re-encode check).
    adjectives = ["silent", "crimson", "golden", "broken", "hidden",
                  "midnight", "savage", "gentle", "electric", "frozen"]
    nouns = ["river", "mountain", "garden", "empire", "shadow",
             "voyage", "kingdom", "harbor", "signal", "meadow"]
    tails = ["returns", "rising", "forever", "awakens", "protocol",
             "legacy", "chronicles", "redemption", "horizon", "paradox"]
    titles = [
        f"{a} {n} {t}"
        for a in adjectives for n in nouns for t in tails
    ]
    assert len(titles) == 1000
    idx = build_phonetic_index([(t, "movie") for t in titles])
    for title in titles:
        for word in title.split():
            if word in STOPWORDS:
                continue
            code = encode_double_metaphone(word)
            assert any(p == title for p, _, _ in idx.lookup(code.primary)), (
                title, word, code.primary,
            )


def test_gazetteer_parsing(tmp_path):
    path = tmp_path / "kb.tsv"
    path.write_text("# comment\nfrozen\tmovie\n\nmoana\tmovie\n", encoding="utf-8")
    assert load_gazetteer(path) == [("frozen", "movie"), ("moana", "movie")]


def test_gazetteer_rejects_malformed_line(tmp_path):
    path = tmp_path / "kb.tsv"
    path.write_text("frozen movie no tab\n", encoding="utf-8")
    with pytest.raises(ConfigError) as excinfo:
        load_gazetteer(path)
    assert "1" in str(excinfo.value)
