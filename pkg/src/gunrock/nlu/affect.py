"""Lexicon sentiment scoring and keyword topic detection.

Sentiment is (pos - neg) / (pos + neg) over lexicon hits; a negation
token flips the polarity of the next hit in the segment. Topics are
normalized keyword-gazetteer weights over the configured topic labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files
from pathlib import Path

from gunrock.errors import ConfigError

NEGATIONS = frozenset(
    "not no never don't didn't doesn't can't won't isn't wasn't aren't couldn't wouldn't shouldn't".split()
)


@dataclass(frozen=True)
class AffectLexicons:
    positive: frozenset[str]
    negative: frozenset[str]
    topic_keywords: dict[str, str]  # keyword -> topic label


def _data_path(name: str) -> Path:
    return Path(str(files("gunrock").joinpath(f"data/{name}")))


def _read_words(path: Path) -> frozenset[str]:
    return frozenset(
        line.strip().lower()
        for line in path.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    )


@lru_cache(maxsize=4)
def load_lexicons(config_dir: str | None = None) -> AffectLexicons:
    base = Path(config_dir) if config_dir else _data_path("")
    positive = _read_words(base / "sentiment_positive.txt")
    negative = _read_words(base / "sentiment_negative.txt")
    keywords: dict[str, str] = {}
    kw_path = base / "topic_keywords.tsv"
    for lineno, raw in enumerate(kw_path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ConfigError(f"{kw_path}:{lineno}: expected 'topic<TAB>keyword'")
        keywords[parts[1].lower()] = parts[0]
    return AffectLexicons(positive, negative, keywords)


def annotate_sentiment_topic(
    text: str, lexicons: AffectLexicons | None = None
) -> tuple[float, list[tuple[str, float]]]:
    """Return (sentiment in [-1, 1], normalized topic weights)."""
    lex = lexicons or load_lexicons()
    words = [w.strip(".,!?") for w in text.lower().split()]

    pos = neg = 0
    pending_negations = 0
    for w in words:
        if w in NEGATIONS:
            pending_negations += 1
            continue
        polarity = 0
        if w in lex.positive:
            polarity = 1
        elif w in lex.negative:
            polarity = -1
        if polarity == 0:
            continue
        if pending_negations:
            polarity = -polarity
            pending_negations -= 1
        if polarity > 0:
            pos += 1
        else:
            neg += 1
    sentiment = 0.0 if pos + neg == 0 else (pos - neg) / (pos + neg)

    counts: dict[str, int] = {}
    for w in words:
        topic = lex.topic_keywords.get(w)
        if topic:
            counts[topic] = counts.get(topic, 0) + 1
    total = sum(counts.values())
    topics = sorted(
        ((t, c / total) for t, c in counts.items()), key=lambda tw: (-tw[1], tw[0])
    )
    return sentiment, topics
