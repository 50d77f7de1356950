"""Transcript correction by phonetic code matching against knowledge bases.

Noun-phrase spans of the utterance are matched against indexed phrases
through windowed Double Metaphone codes; surviving candidates are rate
checked against the span's audio duration (spoken-duration plausibility)
and applied as the maximum-score set of non-overlapping replacements.
"""

from __future__ import annotations

from dataclasses import dataclass

from gunrock.errors import InvalidInputError
from gunrock.phonetics.index import PRIMARY, SECONDARY, PhoneticIndex, phrase_code
from gunrock.text import STOPWORDS, phrase_syllables

# Match-quality ladder: exact primary > primary/secondary cross > secondary only.
SCORE_EXACT_PRIMARY = 1.0
SCORE_CROSS = 0.8
SCORE_SECONDARY = 0.6

# Plausible speaking-rate window, syllables per second.
DEFAULT_RATE_BOUNDS = (1.0, 9.0)

# Codes shorter than this are too promiscuous to count as match evidence
# (two-letter codes collide across half the lexicon).
MIN_WINDOW_CODE_LEN = 3


@dataclass(frozen=True)
class TimedToken:
    """One ASR word with start/end timestamps in milliseconds."""

    word: str
    start_ms: int
    end_ms: int

    def __post_init__(self):
        if not self.word or any(c.isspace() for c in self.word):
            raise InvalidInputError(f"bad token word {self.word!r}")
        if self.end_ms < self.start_ms:
            raise InvalidInputError(
                f"token {self.word!r} ends ({self.end_ms}) before it starts ({self.start_ms})"
            )


@dataclass(frozen=True)
class Correction:
    """A proposed span replacement; span end is exclusive."""

    token_span: tuple[int, int]
    original: str
    replacement: str
    matched_code: str
    score: float
    domain: str = ""


def uniform_tokens(text: str, ms_per_word: int = 300) -> list[TimedToken]:
    """Synthesize evenly spaced timestamps for plain-text input.

    300 ms/word (~200 wpm) keeps synthesized spans inside the
    speaking-rate plausibility window used by the timestep filter.
    """
    tokens = []
    t = 0
    for w in text.lower().split():
        tokens.append(TimedToken(w, t, t + ms_per_word))
        t += ms_per_word
    return tokens


def _window_score(window_kind: str, entry_kind: str) -> float:
    if window_kind == PRIMARY and entry_kind == PRIMARY:
        return SCORE_EXACT_PRIMARY
    if window_kind == SECONDARY and entry_kind == SECONDARY:
        return SCORE_SECONDARY
    return SCORE_CROSS


def propose_corrections(
    tokens: list[TimedToken],
    noun_phrases: list[tuple[int, int]],
    index: PhoneticIndex,
) -> list[Correction]:
    """Candidate corrections for each noun-phrase span, best first.

    A span whose surface form is already a canonical phrase yields
    nothing. Candidates are scored by code-match quality, with ties
    broken by word-count closeness and then alphabetically.
    """
    words = [t.word for t in tokens]
    out: list[Correction] = []
    for start, end in noun_phrases:
        if not (0 <= start < end <= len(words)):
            raise InvalidInputError(f"span ({start}, {end}) out of bounds")
        surface = " ".join(words[start:end])
        if index.has_phrase(surface):
            continue
        span_len = end - start
        best: dict[str, tuple[float, str, str]] = {}
        for width in range(1, min(index.max_ngram, span_len) + 1):
            for i in range(start, end - width + 1):
                window = words[i : i + width]
                if all(w in STOPWORDS for w in window):
                    continue
                pri, sec = phrase_code(" ".join(window))
                for code, kind in ((pri, PRIMARY), (sec, SECONDARY)):
                    if len(code) < MIN_WINDOW_CODE_LEN:
                        continue
                    for phrase, domain, entry_kind in index.lookup(code):
                        if phrase == surface:
                            continue
                        score = _window_score(kind, entry_kind)
                        prev = best.get(phrase)
                        if prev is None or score > prev[0]:
                            best[phrase] = (score, code, domain)
        ranked = sorted(
            best.items(),
            key=lambda kv: (
                -kv[1][0],
                abs(len(kv[0].split()) - span_len),
                kv[0],
            ),
        )
        for phrase, (score, code, domain) in ranked:
            out.append(
                Correction(
                    token_span=(start, end),
                    original=surface,
                    replacement=phrase,
                    matched_code=code,
                    score=score,
                    domain=domain,
                )
            )
    return out


def filter_by_timesteps(
    corrections: list[Correction],
    tokens: list[TimedToken],
    rate_bounds: tuple[float, float] = DEFAULT_RATE_BOUNDS,
) -> list[Correction]:
    """Drop corrections whose replacement could not fit the span's audio.

    The replacement's estimated syllable count divided by the span
    duration must fall inside ``rate_bounds`` (syllables/second).
    Bounds of (0, inf) disable the filter.
    """
    lo, hi = rate_bounds
    kept = []
    for corr in corrections:
        start, end = corr.token_span
        duration_s = (tokens[end - 1].end_ms - tokens[start].start_ms) / 1000.0
        syllables = phrase_syllables(corr.replacement)
        if duration_s <= 0:
            rate = float("inf")
        else:
            rate = syllables / duration_s
        if lo <= rate <= hi:
            kept.append(corr)
    return kept


def _max_score_subset(corrections: list[Correction]) -> list[Correction]:
    """Weighted interval scheduling over token spans, maximizing total score."""
    if not corrections:
        return []
    # Deterministic ordering keeps DP tie-breaks stable: earlier spans,
    # then higher scores, then alphabetical replacement.
    items = sorted(
        corrections, key=lambda c: (c.token_span[1], c.token_span[0], -c.score, c.replacement)
    )
    n = len(items)
    best_score = [0.0] * (n + 1)
    chosen: list[list[Correction]] = [[] for _ in range(n + 1)]
    for k in range(1, n + 1):
        corr = items[k - 1]
        # last compatible item: span end <= this span's start
        j = k - 1
        while j > 0 and items[j - 1].token_span[1] > corr.token_span[0]:
            j -= 1
        take = best_score[j] + corr.score
        if take > best_score[k - 1]:
            best_score[k] = take
            chosen[k] = chosen[j] + [corr]
        else:
            best_score[k] = best_score[k - 1]
            chosen[k] = chosen[k - 1]
    return sorted(chosen[n], key=lambda c: c.token_span)


def correct_utterance(
    tokens: list[TimedToken],
    indexes: list[PhoneticIndex],
    rate_bounds: tuple[float, float] = DEFAULT_RATE_BOUNDS,
) -> tuple[str, list[Correction]]:
    """Correct an utterance against the given knowledge bases.

    Returns the corrected text plus the applied corrections. With no
    matches the text is simply the joined input.
    """
    if not tokens:
        raise InvalidInputError("empty token list")
    from gunrock.nlu.chunker import noun_trunk_spans

    words = [t.word for t in tokens]
    atomic = {p for idx in indexes for p, _ in idx.phrases}
    spans = noun_trunk_spans(words, atomic_phrases=atomic)

    candidates: list[Correction] = []
    for idx in indexes:
        candidates.extend(propose_corrections(tokens, spans, idx))
    candidates = filter_by_timesteps(candidates, tokens, rate_bounds)

    # Keep only each span's best candidate before resolving overlaps.
    per_span: dict[tuple[int, int], Correction] = {}
    for corr in candidates:
        prev = per_span.get(corr.token_span)
        if prev is None or _ranks_before(corr, prev):
            per_span[corr.token_span] = corr
    applied = _max_score_subset(list(per_span.values()))

    pieces: list[str] = []
    cursor = 0
    for corr in applied:
        start, end = corr.token_span
        pieces.extend(words[cursor:start])
        pieces.append(corr.replacement)
        cursor = end
    pieces.extend(words[cursor:])
    return " ".join(pieces), applied


def _ranks_before(a: Correction, b: Correction) -> bool:
    span_words = a.token_span[1] - a.token_span[0]
    key = lambda c: (
        -c.score,
        abs(len(c.replacement.split()) - span_words),
        c.replacement,
    )
    return key(a) < key(b)
