"""Two-level dialog management.

The high level picks the central segment of a multi-segment turn and
routes it to a topic module; the low level steps that module's FST.
Stop signals cascade through module reselection and always terminate at
the retrieval backup.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from gunrock.dialog.flow import SIGNAL_STOP, FlowSpec, Transition
from gunrock.dialog.state import DialogState, ModuleSignal
from gunrock.nlu.acts import QUESTION_ACTS

logger = logging.getLogger(__name__)

RETRIEVAL_MODULE = "retrieval"
HANDOFF_ATTR = "handoff_topic"

# Gazetteer domain -> topic module, for segments whose only topical
# evidence is a named entity.
_DOMAIN_TOPIC = {
    "movie": "movies",
    "book": "books",
    "animal": "animals",
    "music_artist": "music",
    "place": "travel",
}


@dataclass(frozen=True)
class FstOutcome:
    new_state: str
    response_key: str
    signal: ModuleSignal
    attr_updates: dict[str, str | None]
    transition: Transition


@dataclass
class TurnPlan:
    """What the engine should say and remember after one DM pass."""

    module_id: str
    state_id: str
    response_keys: tuple[str, ...]
    central_segment: int
    trigger_topic: str | None
    signals: dict[str, str] = field(default_factory=dict)


def _segment_topic(nlu, index: int) -> str | None:
    if nlu.topics[index]:
        return nlu.topics[index][0][0]
    # Fall back to the gazetteer domain of an entity in the segment.
    for _pid, (phrase, _etype, domain) in nlu.mask_table.placeholders.items():
        for m in nlu.mentions:
            if m.segment_index == index and m.canonical == phrase:
                topic = _DOMAIN_TOPIC.get(domain)
                if topic:
                    return topic
    return None


def select_central_element(nlu) -> tuple[int, str | None]:
    """Pick the segment that should drive routing, plus its topic.

    Priority: explicit topic switch, entity + question/opinion, entity,
    longest question, last segment. Later segments win ties (recency).
    """
    n = len(nlu.segments)
    indexed = list(range(n))

    def last_where(pred) -> int | None:
        hits = [i for i in indexed if pred(i)]
        return hits[-1] if hits else None

    switch = last_where(lambda i: "topic_switch" in nlu.segment_acts(i))
    if switch is not None:
        return switch, _segment_topic(nlu, switch) or RETRIEVAL_MODULE

    def has_entity(i):
        return nlu.has_entity(i)

    def is_opinion_or_question(i):
        acts = nlu.segment_acts(i)
        return bool(acts & (QUESTION_ACTS | {"opinion"}))

    pick = last_where(lambda i: has_entity(i) and is_opinion_or_question(i))
    if pick is None:
        pick = last_where(has_entity)
    if pick is None:
        questions = [i for i in indexed if nlu.segment_acts(i) & QUESTION_ACTS]
        if questions:
            pick = max(questions, key=lambda i: (len(nlu.segments[i].text.split()), i))
    if pick is None:
        pick = n - 1
    return pick, _segment_topic(nlu, pick)


def route_topic_module(
    trigger_topic: str | None,
    state: DialogState,
    registry: dict[str, FlowSpec],
) -> str:
    """Map a trigger topic onto a module; honors switches from any state."""
    if trigger_topic and trigger_topic in registry:
        return trigger_topic
    if state.active_module and state.active_module in registry:
        return state.active_module
    return RETRIEVAL_MODULE


def fst_step(
    flow: FlowSpec,
    state: DialogState,
    nlu,
    rng_seed: int = 0,
) -> FstOutcome:
    """Fire the first matching transition from the session's state.

    Pure in its inputs: the DialogState is read, never written. The
    totality invariant (validated fallback) guarantees an outcome.
    """
    current = state.module_states.get(flow.module_id, flow.entry_state)
    if current not in flow.states:
        current = flow.entry_state
    for t in flow.transitions_from(current):
        match = t.guard.matches(nlu, state.attributes)
        if match:
            updates: dict[str, str | None] = {}
            for op in t.attr_ops:
                updates.update(op.apply(nlu, state.attributes, match))
            signal = ModuleSignal("stop" if t.signal == SIGNAL_STOP else "continue")
            return FstOutcome(t.to_state, t.response_key, signal, updates, t)
    raise AssertionError(
        f"flow {flow.module_id!r} state {current!r} has no matching transition"
    )


def select_response_module(
    signals: dict[str, ModuleSignal],
    routed: str,
    registry: dict[str, FlowSpec],
    attributes: dict[str, str] | None = None,
) -> str:
    """Routed module unless it stopped; then handoff target, then retrieval."""
    if routed in signals and signals[routed].is_stop:
        attributes = attributes or {}
        handoff = attributes.get(HANDOFF_ATTR)
        if handoff and handoff in registry and not (
            handoff in signals and signals[handoff].is_stop
        ):
            return handoff
        return RETRIEVAL_MODULE
    return routed


def run_dialog_turn(
    state: DialogState,
    nlu,
    registry: dict[str, FlowSpec],
    rng_seed: int = 0,
) -> TurnPlan:
    """High- and low-level DM for one turn, committing state changes."""
    central, trigger = select_central_element(nlu)
    routed = route_topic_module(trigger, state, registry)
    signals: dict[str, ModuleSignal] = {}
    module = routed
    outcome: FstOutcome | None = None
    for _hop in range(len(registry) + 1):
        outcome = fst_step(registry[module], state, nlu, rng_seed)
        state.apply_attr_updates(outcome.attr_updates)
        signals[module] = outcome.signal
        state.module_states[module] = outcome.new_state
        if not outcome.signal.is_stop:
            break
        next_module = select_response_module(signals, module, registry, state.attributes)
        state.attributes.pop(HANDOFF_ATTR, None)
        if next_module == module:
            break
        module = next_module
    assert outcome is not None
    state.active_module = module
    return TurnPlan(
        module_id=module,
        state_id=outcome.new_state,
        response_keys=outcome.transition.response_parts,
        central_segment=central,
        trigger_topic=trigger,
        signals={m: s.value for m, s in signals.items()},
    )
