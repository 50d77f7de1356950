"""Small shared text helpers: stopwords, number words, syllables."""

from __future__ import annotations

import re

STOPWORDS = frozenset(
    """a an the is are was were am be been being of in on at to from by
    for with about as into and or but if then that this these those it
    its do does did have has had not no so than too very i you he she
    they we me him her them my your his their our mine yours theirs
    what which who whom when where why how there here up down out off
    just can will would could should may might must let us""".split()
)

_NUMBER_WORDS = {
    "zero": 0, "one": 1, "two": 2, "three": 3, "four": 4, "five": 5,
    "six": 6, "seven": 7, "eight": 8, "nine": 9, "ten": 10,
}

_PUNCT_RE = re.compile(r"[^\w\s']")
_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")


def normalize(text: str) -> str:
    """Lowercase and drop punctuation except apostrophes and underscores."""
    return _PUNCT_RE.sub(" ", text.lower()).strip()


def tokenize(text: str) -> list[str]:
    return normalize(text).split()


def content_words(words: list[str]) -> list[str]:
    return [w for w in words if w not in STOPWORDS]


def syllable_count(word: str) -> int:
    """Crude syllable estimate: number of vowel groups, at least 1."""
    return max(1, len(_VOWEL_GROUP_RE.findall(word.lower())))


def phrase_syllables(phrase: str) -> int:
    return sum(syllable_count(w) for w in phrase.split())


def extract_number(text: str) -> int | None:
    """First integer found in ``text``, reading digits or number words."""
    for tok in text.lower().split():
        tok = tok.strip(".,!?")
        if tok.isdigit():
            return int(tok)
        if tok in _NUMBER_WORDS:
            return _NUMBER_WORDS[tok]
    return None
