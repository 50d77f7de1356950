"""Per-session dialog state and user-attribute tracking."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from gunrock.nlu.coref import EntityMention

SIGNAL_VALUES = ("continue", "stop")


@dataclass(frozen=True)
class ModuleSignal:
    value: str  # "continue" | "stop"

    @property
    def is_stop(self) -> bool:
        return self.value == "stop"


@dataclass
class DialogState:
    """Everything a session carries between turns.

    ``module_states`` remembers where each module left off, so a module
    interrupted by a topic switch quietly resumes instead of restarting.
    """

    session_id: str
    active_module: str | None = None
    module_states: dict[str, str] = field(default_factory=dict)
    attributes: dict[str, str] = field(default_factory=dict)
    used_templates: dict[str, set[str]] = field(default_factory=dict)
    mention_history: list[EntityMention] = field(default_factory=list)
    turn_count: int = 0

    @property
    def module_state(self) -> str | None:
        if self.active_module is None:
            return None
        return self.module_states.get(self.active_module)

    def apply_attr_updates(self, updates: dict[str, str | None]):
        for key, value in updates.items():
            if value is None:
                self.attributes.pop(key, None)
            else:
                self.attributes[key] = value


_FAVORITE_RE = re.compile(
    r"\bmy favorite (movie|film|book|animal|song|food|sport|game|color) (?:is|was) (.+)$"
)
_NAME_RE = re.compile(r"\bmy name is (\w+)")
_FAVORITE_KEY = {"film": "movie"}


def update_user_attributes(state: DialogState, nlu) -> DialogState:
    """Fold a turn's NLU output into the session state.

    Appends entity mentions, bumps the turn counter, and extracts simple
    preference/name slots. An existing key is only overwritten by a new
    extraction of the same kind.
    """
    state.turn_count += 1
    state.mention_history.extend(nlu.mentions)
    for i, seg in enumerate(nlu.segments):
        text = seg.text.lower()
        m = _NAME_RE.search(text)
        if m:
            state.attributes["user_name"] = m.group(1)
        m = _FAVORITE_RE.search(text)
        if m and "opinion" in nlu.segment_acts(i):
            category = _FAVORITE_KEY.get(m.group(1), m.group(1))
            value = m.group(2).strip().rstrip(".!?")
            seg_mentions = [x for x in nlu.mentions if x.segment_index == i]
            if seg_mentions:
                value = seg_mentions[-1].canonical
            state.attributes[f"favorite_{category}"] = value
    return state
