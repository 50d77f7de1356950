"""Entity masking: hide known multi-word phrases behind atomic placeholders.

Masking runs before segmentation so a named entity can never be split
across a break token. Unmasking restores the exact original text.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gunrock.errors import InvalidInputError
from gunrock.phonetics.index import PhoneticIndex

PLACEHOLDER_PREFIX = "ENT_"

# Gazetteer domain -> coarse entity type used by coreference.
ENTITY_TYPE_BY_DOMAIN = {
    "movie": "title",
    "book": "title",
    "show": "title",
    "person": "person",
    "music_artist": "person",
    "animal": "animal",
    "place": "place",
    "event": "event",
}


def entity_type_for(domain: str) -> str:
    return ENTITY_TYPE_BY_DOMAIN.get(domain, "other")


@dataclass
class MaskTable:
    """placeholder id -> (surface phrase, entity type, gazetteer domain)."""

    placeholders: dict[str, tuple[str, str, str]] = field(default_factory=dict)

    def add(self, phrase: str, entity_type: str, domain: str) -> str:
        pid = f"{PLACEHOLDER_PREFIX}{len(self.placeholders)}"
        self.placeholders[pid] = (phrase, entity_type, domain)
        return pid

    def surface(self, pid: str) -> str:
        return self.placeholders[pid][0]

    def __len__(self) -> int:
        return len(self.placeholders)


def mask_entities(
    text: str, gazetteers: list[PhoneticIndex]
) -> tuple[str, MaskTable]:
    """Replace longest-match known phrases with unique placeholders."""
    if not text.strip():
        raise InvalidInputError("cannot mask empty text")
    phrase_domains: dict[str, str] = {}
    for gz in gazetteers:
        for phrase, domain in gz.phrases:
            phrase_domains.setdefault(phrase, domain)
    widths = sorted({len(p.split()) for p in phrase_domains}, reverse=True)

    words = text.split()
    table = MaskTable()
    out: list[str] = []
    i = 0
    while i < len(words):
        matched = False
        for width in widths:
            if i + width > len(words):
                continue
            candidate = " ".join(words[i : i + width])
            domain = phrase_domains.get(candidate)
            if domain is not None:
                pid = table.add(candidate, entity_type_for(domain), domain)
                out.append(pid)
                i += width
                matched = True
                break
        if not matched:
            out.append(words[i])
            i += 1
    return " ".join(out), table


def unmask(text: str, table: MaskTable) -> str:
    """Inverse of mask_entities for text containing placeholder tokens."""
    words = [
        table.surface(w) if w in table.placeholders else w for w in text.split()
    ]
    return " ".join(words)
