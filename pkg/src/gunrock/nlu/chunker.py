"""Rule-based noun-phrase chunking over the POS lexicon.

Known entity phrases are kept atomic: a gazetteer phrase present in the
token stream is always one chunk, never split by tag patterns.
"""

from __future__ import annotations

from gunrock.nlu.postag import NOMINAL_TAGS, NP_RUN_TAGS, tag_words


def _atomic_spans(words: list[str], atomic_phrases: set[str]) -> list[tuple[int, int]]:
    """Longest-match spans of known phrases, scanned left to right."""
    if not atomic_phrases:
        return []
    by_len = sorted({len(p.split()) for p in atomic_phrases}, reverse=True)
    spans = []
    i = 0
    n = len(words)
    while i < n:
        matched = False
        for width in by_len:
            if i + width > n:
                continue
            if " ".join(words[i : i + width]) in atomic_phrases:
                spans.append((i, i + width))
                i += width
                matched = True
                break
        if not matched:
            i += 1
    return spans


def noun_trunk_spans(
    words: list[str],
    atomic_phrases: set[str] | None = None,
    include_pronouns: bool = False,
) -> list[tuple[int, int]]:
    """Maximal noun-phrase token spans (end exclusive), in order.

    A span is an atomic known phrase, or a run of determiner/possessive/
    adjective/nominal tags containing at least one nominal. With
    ``include_pronouns``, bare personal pronouns chunk as well.
    """
    atomic = _atomic_spans(words, atomic_phrases or set())
    blocked = set()
    for s, e in atomic:
        blocked.update(range(s, e))

    tags = tag_words(words)
    spans: list[tuple[int, int]] = []
    i = 0
    n = len(words)
    while i < n:
        if i in blocked:
            i += 1
            continue
        if include_pronouns and tags[i] == "PRP":
            spans.append((i, i + 1))
            i += 1
            continue
        if tags[i] in NP_RUN_TAGS:
            j = i
            has_nominal = False
            while j < n and j not in blocked and tags[j] in NP_RUN_TAGS:
                if tags[j] in NOMINAL_TAGS:
                    has_nominal = True
                j += 1
            if has_nominal:
                spans.append((i, j))
            i = j
        else:
            i += 1
    return sorted(spans + atomic)


def chunk_noun_phrases(
    text: str,
    atomic_phrases: set[str] | None = None,
    include_pronouns: bool = True,
) -> list[str]:
    """Noun phrases of a segment as surface strings."""
    words = text.lower().split()
    spans = noun_trunk_spans(words, atomic_phrases, include_pronouns=include_pronouns)
    return [" ".join(words[s:e]) for s, e in spans]
