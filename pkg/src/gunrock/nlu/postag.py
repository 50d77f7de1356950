"""Lexicon-backed POS tagging with suffix fallbacks for OOV words.

Stands in for a full parser at desk scale: the chunker only needs
coarse tags, and unknown words (the usual home of ASR damage) default
to nouns so they stay visible to the corrector.
"""

from __future__ import annotations

from functools import lru_cache
from importlib.resources import files
from pathlib import Path

from gunrock.errors import ConfigError

NOMINAL_TAGS = frozenset({"NN", "NNS", "NNP", "CD"})
NP_RUN_TAGS = NOMINAL_TAGS | {"DT", "PRP$", "JJ", "JJR", "JJS"}


def default_lexicon_path() -> Path:
    return Path(str(files("gunrock").joinpath("data/pos_lexicon.tsv")))


@lru_cache(maxsize=4)
def load_lexicon(path: str | None = None) -> dict[str, str]:
    p = Path(path) if path else default_lexicon_path()
    lex: dict[str, str] = {}
    for lineno, raw in enumerate(p.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ConfigError(f"{p}:{lineno}: expected 'word<TAB>tag'")
        lex[parts[0].lower()] = parts[1]
    return lex


def tag_word(word: str, lexicon: dict[str, str] | None = None) -> str:
    lex = lexicon if lexicon is not None else load_lexicon()
    w = word.lower()
    if w in lex:
        return lex[w]
    if w.isdigit():
        return "CD"
    if w.startswith("ent_") and w[4:].isdigit():
        return "NNP"  # entity placeholder: atomic proper noun
    if w.endswith("ly") and len(w) > 3:
        return "RB"
    if w.endswith("ing") and len(w) > 4:
        return "VBG"
    if w.endswith("ed") and len(w) > 3:
        return "VBN"
    if w.endswith("s") and not w.endswith("ss") and len(w) > 3:
        return "NNS"
    return "NN"


def tag_words(words: list[str], lexicon: dict[str, str] | None = None) -> list[str]:
    lex = lexicon if lexicon is not None else load_lexicon()
    return [tag_word(w, lex) for w in words]
