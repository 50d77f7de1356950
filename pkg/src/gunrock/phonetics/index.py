"""Phonetic knowledge-base index for sound-alike phrase lookup.

Every gazetteer phrase is indexed under the Double Metaphone codes of
each of its content words and under the concatenated whole-phrase code,
so a noisy transcript span can be matched against it through any of its
words or through the span as a whole.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from gunrock.errors import ConfigError, InvalidInputError
from gunrock.phonetics.metaphone import encode_double_metaphone
from gunrock.text import STOPWORDS

PRIMARY = "p"
SECONDARY = "s"


@dataclass(frozen=True)
class PhoneticIndex:
    """Immutable code -> {(phrase, domain, code_kind)} map."""

    entries: dict[str, frozenset[tuple[str, str, str]]]
    phrases: frozenset[tuple[str, str]]
    max_ngram: int = 1

    def lookup(self, code: str) -> frozenset[tuple[str, str, str]]:
        if not code:
            return frozenset()
        return self.entries.get(code, frozenset())

    def has_phrase(self, phrase: str) -> bool:
        return any(p == phrase for p, _ in self.phrases)

    def __len__(self) -> int:
        return len(self.phrases)


def _word_codes(word: str):
    try:
        code = encode_double_metaphone(word)
    except InvalidInputError:
        return None
    return code


def phrase_code(phrase: str) -> tuple[str, str]:
    """Word-wise concatenation of primary and secondary codes."""
    pri = sec = ""
    for w in phrase.split():
        code = _word_codes(w)
        if code is None:
            continue
        pri += code.primary
        sec += code.secondary
    return pri, sec


def build_phonetic_index(entries: list[tuple[str, str]]) -> PhoneticIndex:
    """Index (phrase, domain_tag) pairs for phonetic lookup.

    Duplicate entries are idempotent. An empty entry list yields an
    empty index.
    """
    table: dict[str, set[tuple[str, str, str]]] = {}
    phrases: set[tuple[str, str]] = set()
    max_ngram = 1

    def add(code: str, phrase: str, domain: str, kind: str):
        if code:
            table.setdefault(code, set()).add((phrase, domain, kind))

    for phrase, domain in entries:
        phrase = phrase.strip().lower()
        if not phrase:
            raise InvalidInputError("empty phrase in index entries")
        words = phrase.split()
        phrases.add((phrase, domain))
        max_ngram = max(max_ngram, len(words))
        for w in words:
            if w in STOPWORDS and len(words) > 1:
                continue
            code = _word_codes(w)
            if code is None:
                continue
            add(code.primary, phrase, domain, PRIMARY)
            add(code.secondary, phrase, domain, SECONDARY)
        if len(words) > 1:
            pri, sec = phrase_code(phrase)
            add(pri, phrase, domain, PRIMARY)
            add(sec, phrase, domain, SECONDARY)

    frozen = {code: frozenset(vals) for code, vals in table.items()}
    return PhoneticIndex(entries=frozen, phrases=frozenset(phrases), max_ngram=max_ngram)


def load_gazetteer(path: str | Path) -> list[tuple[str, str]]:
    """Read a ``phrase<TAB>domain`` gazetteer file (# starts a comment)."""
    path = Path(path)
    entries = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip():
            raise ConfigError(f"{path}:{lineno}: expected 'phrase<TAB>domain', got {raw!r}")
        entries.append((parts[0].strip().lower(), parts[1].strip()))
    return entries
