"""Template bank: non-repeating selection, slot filling, composition.

One dialog-state key maps to several surface variants; selection is
uniform over the variants a session has not used yet, and the used-set
resets once the key is exhausted so variety cycles instead of running
dry.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from pathlib import Path

from gunrock.errors import (
    ConfigError,
    InvalidInputError,
    MissingTemplateError,
    UnfilledSlotError,
)

ACT_CLASSES = frozenset(
    {"fact", "opinion", "experience", "question", "acknowledgement", "grounding"}
)
_SLOT_RE = re.compile(r"\{([a-z_][a-z0-9_]*)\}")


@dataclass(frozen=True)
class Template:
    id: str
    dialog_state_key: str
    act_class: str
    pattern: str

    @property
    def slots(self) -> tuple[str, ...]:
        return tuple(_SLOT_RE.findall(self.pattern))


class TemplateBank:
    """Immutable registry of templates grouped by dialog-state key."""

    def __init__(self, templates: list[Template]):
        self._by_key: dict[str, list[Template]] = {}
        seen: set[tuple[str, str]] = set()
        for t in templates:
            if t.act_class not in ACT_CLASSES:
                raise ConfigError(
                    f"template {t.id!r} has unknown act class {t.act_class!r}"
                )
            if (t.dialog_state_key, t.id) in seen:
                raise ConfigError(
                    f"duplicate template id {t.id!r} under key {t.dialog_state_key!r}"
                )
            if t.pattern.count("{") != len(t.slots) or t.pattern.count("}") != len(t.slots):
                raise ConfigError(f"template {t.id!r} has malformed slot syntax")
            seen.add((t.dialog_state_key, t.id))
            self._by_key.setdefault(t.dialog_state_key, []).append(t)

    def keys(self) -> list[str]:
        return sorted(self._by_key)

    def has_key(self, key: str) -> bool:
        return key in self._by_key

    def group(self, key: str) -> list[Template]:
        if key not in self._by_key:
            raise MissingTemplateError(f"no templates for dialog-state key {key!r}")
        return list(self._by_key[key])

    def classes_for(self, key: str) -> set[str]:
        return {t.act_class for t in self.group(key)}

    def select(
        self, key: str, used: dict[str, set[str]], rng: random.Random
    ) -> Template:
        """Uniform draw among unused variants; reset the key on exhaustion.

        ``used`` is the caller-owned per-session map of used template ids
        and is updated in place.
        """
        group = self.group(key)
        used_ids = used.setdefault(key, set())
        unused = [t for t in group if t.id not in used_ids]
        if not unused:
            used_ids.clear()
            unused = group
        choice = rng.choice(sorted(unused, key=lambda t: t.id))
        used_ids.add(choice.id)
        return choice


def fill_slots(template: Template, bindings: dict[str, str]) -> str:
    """Substitute every {slot}; missing bindings raise UnfilledSlotError."""
    def sub(match: re.Match) -> str:
        slot = match.group(1)
        if slot not in bindings:
            raise UnfilledSlotError(slot)
        return str(bindings[slot])

    return _SLOT_RE.sub(sub, template.pattern)


def unfill_slots(filled: str, template: Template, bindings: dict[str, str]) -> str:
    """Inverse of fill_slots given the same bindings (used by tests)."""
    out = filled
    for slot in template.slots:
        out = out.replace(str(bindings[slot]), "{" + slot + "}", 1)
    return out


def compose_response(parts: list[str]) -> str:
    """Join filled parts with spaces, normalizing terminal punctuation."""
    cleaned = [p.strip() for p in parts if p and p.strip()]
    if not cleaned:
        raise InvalidInputError("nothing to compose: all parts empty")
    normalized = []
    for p in cleaned:
        if p[-1] not in ".!?":
            p = p + "."
        normalized.append(p)
    return " ".join(normalized)


def load_templates(path: str | Path) -> TemplateBank:
    """Read a key<TAB>id<TAB>act_class<TAB>pattern template file."""
    path = Path(path)
    templates = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ConfigError(f"{path}:{lineno}: expected key, id, act_class, pattern")
        templates.append(Template(parts[1], parts[0], parts[2], parts[3]))
    return TemplateBank(templates)
