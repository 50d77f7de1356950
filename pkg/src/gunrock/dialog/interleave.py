"""Static check that topical flows interleave facts with engagement.

A state's response classes are the template act classes reachable
through its outgoing transitions. Every state that can emit a fact must
have an opinion- or question-class state within graph distance 1
(itself included, since composite keys usually pair a fact with a
follow-up question).
"""

from __future__ import annotations

from gunrock.dialog.flow import FlowSpec
from gunrock.generation.templates import TemplateBank

ENGAGE_CLASSES = frozenset({"opinion", "question", "experience"})


def state_classes(flow: FlowSpec, state: str, bank: TemplateBank) -> set[str]:
    classes: set[str] = set()
    for t in flow.transitions_from(state):
        for part in t.response_parts:
            if bank.has_key(part):
                classes |= bank.classes_for(part)
    return classes


def check_interleaving(flow: FlowSpec, bank: TemplateBank) -> list[str]:
    """Violations of the fact/engagement alternation, empty when clean."""
    problems = []
    successors = {
        s: {t.to_state for t in flow.transitions_from(s)} for s in flow.states
    }
    for state in sorted(flow.states):
        classes = state_classes(flow, state, bank)
        if "fact" not in classes:
            continue
        neighborhood = {state} | successors[state]
        if not any(
            state_classes(flow, n, bank) & ENGAGE_CLASSES for n in neighborhood
        ):
            problems.append(
                f"{flow.module_id}:{state} emits facts with no opinion/question "
                f"state within distance 1"
            )
    return problems
