"""Declarative finite-state transducer specs for topic dialog modules.

A flow is data: states, an entry state, and ordered transitions whose
guards are predicates over the turn's NLU result plus session
attributes. First matching transition wins; every state must carry an
always-true fallback so a step can never get stuck.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from gunrock.errors import ConfigError

FLOW_VERSION = 1

SIGNAL_CONTINUE = "continue"
SIGNAL_STOP = "stop"
_SIGNALS = {SIGNAL_CONTINUE, SIGNAL_STOP, "none"}


@dataclass(frozen=True)
class Guard:
    """Conjunction of the conditions present; ``always`` matches anything."""

    always: bool = False
    acts_any: tuple[str, ...] = ()
    topics_any: tuple[str, ...] = ()
    entity_types_any: tuple[str, ...] = ()
    sentiment: str | None = None  # "positive" | "negative"
    text_regex: str | None = None
    has_unknown_word: bool = False
    attr_present: tuple[str, ...] = ()
    attr_absent: tuple[str, ...] = ()
    attr_equals: tuple[tuple[str, str], ...] = ()
    correction_below: float | None = None

    def matches(self, nlu, attributes: dict[str, str]) -> re.Match | bool | None:
        """False when unmatched; a Match (or True) when matched."""
        if self.always:
            return True
        acts = nlu.acts_flat()
        if self.acts_any and not (set(self.acts_any) & acts):
            return False
        if self.topics_any:
            seen = {t for tw in nlu.topics for t, _ in tw}
            if not (set(self.topics_any) & seen):
                return False
        if self.entity_types_any:
            types = {m.entity_type for m in nlu.mentions}
            if not (set(self.entity_types_any) & types):
                return False
        if self.sentiment == "positive" and not any(s > 0 for s in nlu.sentiment):
            return False
        if self.sentiment == "negative" and not any(s < 0 for s in nlu.sentiment):
            return False
        if self.has_unknown_word and _first_unknown_word(nlu) is None:
            return False
        for key in self.attr_present:
            if key not in attributes:
                return False
        for key in self.attr_absent:
            if key in attributes:
                return False
        for key, value in self.attr_equals:
            if attributes.get(key) != value:
                return False
        if self.correction_below is not None:
            if not any(c.score < self.correction_below for c in nlu.corrections):
                return False
        match: re.Match | bool = True
        if self.text_regex is not None:
            match = None
            for seg in nlu.segments:
                m = re.search(self.text_regex, seg.text)
                if m:
                    match = m
                    break
            if match is None:
                return False
        return match


@dataclass(frozen=True)
class AttrOp:
    """Attribute read/write descriptor attached to a transition."""

    op: str  # "set" | "set_from" | "copy" | "clear"
    key: str = ""
    value: str = ""
    source: str = ""  # "entity:<type>" | "number" | "first_unknown_word" | "regex:<n>"
    from_key: str = ""
    default: str | None = None

    def apply(
        self, nlu, attributes: dict[str, str], guard_match
    ) -> dict[str, str | None]:
        if self.op == "set":
            return {self.key: self.value}
        if self.op == "copy":
            if self.from_key in attributes:
                return {self.key: attributes[self.from_key]}
            return {}
        if self.op == "clear":
            return {self.key: None}
        if self.op == "set_from":
            value = self._extract(nlu, guard_match)
            if value is None:
                value = self.default
            return {self.key: value} if value is not None else {}
        raise ConfigError(f"unknown attr op {self.op!r}")

    def _extract(self, nlu, guard_match) -> str | None:
        if self.source.startswith("entity:"):
            wanted = self.source.split(":", 1)[1]
            for m in reversed(nlu.mentions):
                if m.entity_type == wanted:
                    return m.canonical
            return None
        if self.source == "number":
            from gunrock.text import extract_number

            for seg in nlu.segments:
                n = extract_number(seg.text)
                if n is not None:
                    return str(n)
            return None
        if self.source == "first_unknown_word":
            return _first_unknown_word(nlu)
        if self.source.startswith("regex:"):
            group = int(self.source.split(":", 1)[1])
            if isinstance(guard_match, re.Match) and group <= guard_match.re.groups:
                return guard_match.group(group)
            return None
        raise ConfigError(f"unknown attr source {self.source!r}")


def _first_unknown_word(nlu) -> str | None:
    """First out-of-lexicon, non-stopword token: the usual home of names."""
    from gunrock.nlu.postag import load_lexicon
    from gunrock.text import STOPWORDS

    lexicon = load_lexicon()
    for seg in nlu.segments:
        for w in seg.text.split():
            lw = w.lower().strip(".,!?")
            if not lw or lw in STOPWORDS or lw in lexicon:
                continue
            if lw.startswith("ent_") or not lw.isalpha():
                continue
            return lw
    return None


@dataclass(frozen=True)
class Transition:
    from_state: str
    guard: Guard
    to_state: str
    response_key: str  # "+"-joined template group keys
    signal: str = SIGNAL_CONTINUE
    attr_ops: tuple[AttrOp, ...] = ()

    @property
    def response_parts(self) -> tuple[str, ...]:
        return tuple(k for k in self.response_key.split("+") if k)


@dataclass(frozen=True)
class FlowSpec:
    module_id: str
    topic: str | None
    states: frozenset[str]
    entry_state: str
    transitions: tuple[Transition, ...]

    def transitions_from(self, state: str) -> list[Transition]:
        return [t for t in self.transitions if t.from_state == state]


def _parse_guard(raw: dict) -> Guard:
    known = {
        "always", "acts_any", "topics_any", "entity_types_any", "sentiment",
        "text_regex", "has_unknown_word", "attr_present", "attr_absent",
        "attr_equals", "correction_below",
    }
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown guard fields: {sorted(unknown)}")
    return Guard(
        always=raw.get("always", False),
        acts_any=tuple(raw.get("acts_any", ())),
        topics_any=tuple(raw.get("topics_any", ())),
        entity_types_any=tuple(raw.get("entity_types_any", ())),
        sentiment=raw.get("sentiment"),
        text_regex=raw.get("text_regex"),
        has_unknown_word=raw.get("has_unknown_word", False),
        attr_present=tuple(raw.get("attr_present", ())),
        attr_absent=tuple(raw.get("attr_absent", ())),
        attr_equals=tuple((k, v) for k, v in raw.get("attr_equals", {}).items()),
        correction_below=raw.get("correction_below"),
    )


def _parse_attr_op(raw: dict) -> AttrOp:
    return AttrOp(
        op=raw["op"],
        key=raw.get("key", ""),
        value=raw.get("value", ""),
        source=raw.get("source", ""),
        from_key=raw.get("from", ""),
        default=raw.get("default"),
    )


def validate_flow(flow: FlowSpec, template_keys: set[str] | None = None) -> list[str]:
    """All invariant violations for a flow, empty when valid."""
    problems: list[str] = []
    if flow.entry_state not in flow.states:
        problems.append(f"entry state {flow.entry_state!r} not in states")
    states_with_fallback = set()
    for i, t in enumerate(flow.transitions):
        where = f"transition {i} ({t.from_state} -> {t.to_state})"
        if t.from_state not in flow.states:
            problems.append(f"{where}: unknown source state {t.from_state!r}")
        if t.to_state not in flow.states:
            problems.append(f"{where}: unknown target state {t.to_state!r}")
        if t.signal not in _SIGNALS:
            problems.append(f"{where}: bad signal {t.signal!r}")
        if t.guard.always:
            states_with_fallback.add(t.from_state)
        if t.guard.text_regex is not None:
            try:
                re.compile(t.guard.text_regex)
            except re.error as exc:
                problems.append(f"{where}: bad regex: {exc}")
        if template_keys is not None:
            for part in t.response_parts:
                if part not in template_keys:
                    problems.append(f"{where}: unknown response key {part!r}")
        if not t.response_parts:
            problems.append(f"{where}: empty response key")
    for state in sorted(flow.states - states_with_fallback):
        problems.append(f"state {state!r} has no always-matching fallback transition")
    return problems


def load_flow(path: str | Path, template_keys: set[str] | None = None) -> FlowSpec:
    """Parse and validate one flow file; raises ConfigError listing every problem."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}")
    if raw.get("flow_version") != FLOW_VERSION:
        raise ConfigError(f"{path}: unsupported flow_version {raw.get('flow_version')!r}")
    transitions = tuple(
        Transition(
            from_state=t["from"],
            guard=_parse_guard(t.get("guard", {})),
            to_state=t["to"],
            response_key=t["response_key"],
            signal=t.get("signal", SIGNAL_CONTINUE),
            attr_ops=tuple(_parse_attr_op(op) for op in t.get("attr_ops", ())),
        )
        for t in raw.get("transitions", ())
    )
    flow = FlowSpec(
        module_id=raw["module_id"],
        topic=raw.get("topic"),
        states=frozenset(raw["states"]),
        entry_state=raw["entry"],
        transitions=transitions,
    )
    problems = validate_flow(flow, template_keys)
    if problems:
        raise ConfigError(f"{path}: invalid flow {flow.module_id!r}", problems)
    return flow
