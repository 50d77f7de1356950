"""Rule-based speech markup: interjections and fillers as SSML tags.

Insertions come from a configured whitelist and are wrapped whole
(including their punctuation) in ``<say-as>`` elements, so stripping
every element recovers the exact plain text. At most one insertion is
made per response.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from pathlib import Path

from gunrock.errors import ConfigError

_TAG_RE = re.compile(r'<say-as interpret-as="[a-z]+">[^<]*</say-as> ?')
_TAG_BEFORE_SPACE_RE = re.compile(r' <say-as interpret-as="[a-z]+">[^<]*</say-as>')
_SENTENCE_END_RE = re.compile(r"[.!?]\s+")


@dataclass(frozen=True)
class MarkupRule:
    """Insert one whitelisted token when the response context matches."""

    act_class: str | None  # None matches any class
    sentiment: str | None  # "positive" | "negative" | "neutral" | None=any
    insert_kind: str  # "interjection" | "filler"
    placement: str  # "prefix" | "infix" | "suffix"
    pool: tuple[str, ...]


@dataclass(frozen=True)
class MarkupConfig:
    whitelist: frozenset[str]
    rules: tuple[MarkupRule, ...]


def load_markup_rules(path: str | Path) -> MarkupConfig:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    whitelist = frozenset(w.lower() for w in raw["interjections"])
    rules = []
    for i, r in enumerate(raw.get("rules", [])):
        pool = tuple(w.lower() for w in r["pool"])
        stray = [w for w in pool if w not in whitelist]
        if stray:
            raise ConfigError(f"markup rule {i} uses non-whitelisted insertions", stray)
        if r.get("placement") not in ("prefix", "infix", "suffix"):
            raise ConfigError(f"markup rule {i} has bad placement {r.get('placement')!r}")
        rules.append(
            MarkupRule(
                act_class=r.get("act_class"),
                sentiment=r.get("sentiment"),
                insert_kind=r.get("insert", "interjection"),
                placement=r["placement"],
                pool=pool,
            )
        )
    return MarkupConfig(whitelist=whitelist, rules=tuple(rules))


def _sentiment_label(sentiment: float) -> str:
    if sentiment > 0:
        return "positive"
    if sentiment < 0:
        return "negative"
    return "neutral"


def _wrap(token: str, kind: str) -> str:
    return f'<say-as interpret-as="{kind}">{token}</say-as>'


def add_speech_markup(
    text: str,
    context: tuple[str, float],
    config: MarkupConfig | None = None,
    rng: random.Random | None = None,
) -> str:
    """Insert at most one interjection/filler per the first matching rule.

    ``context`` is (act_class, sentiment). With no config or no matching
    rule the text passes through unchanged.
    """
    if config is None or not config.rules:
        return text
    act_class, sentiment = context
    label = _sentiment_label(sentiment)
    rng = rng or random.Random(0)
    for rule in config.rules:
        if rule.act_class is not None and rule.act_class != act_class:
            continue
        if rule.sentiment is not None and rule.sentiment != label:
            continue
        token = rng.choice(sorted(rule.pool))
        if rule.placement == "prefix":
            spoken = token.capitalize() + ("," if rule.insert_kind == "interjection" else ".")
            return _wrap(spoken, rule.insert_kind) + " " + text
        if rule.placement == "suffix":
            spoken = token.capitalize() + "!"
            return text + " " + _wrap(spoken, rule.insert_kind)
        # infix: after the first sentence boundary, else fall back to prefix.
        m = _SENTENCE_END_RE.search(text)
        spoken = token.capitalize() + "."
        if m is None:
            return _wrap(spoken, rule.insert_kind) + " " + text
        cut = m.end()
        return text[:cut] + _wrap(spoken, rule.insert_kind) + " " + text[cut:]
    return text


def strip_markup(marked: str) -> str:
    """Exact inverse of add_speech_markup: drop tags and their one space.

    Space-before-tag (suffix/infix placements) must be handled first,
    otherwise stripping a suffix tag leaves its leading space behind.
    """
    out = _TAG_BEFORE_SPACE_RE.sub("", marked)
    out = _TAG_RE.sub("", out)
    return out
