"""Turn orchestration: NLU, dialog management, knowledge, generation.

One ConversationEngine serves many concurrent sessions; each session's
turns are serialized behind its own lock, and all shared resources are
immutable after load.
"""

from __future__ import annotations

import json
import logging
import random
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from gunrock.dialog.manager import TurnPlan, run_dialog_turn
from gunrock.dialog.state import DialogState, update_user_attributes
from gunrock.errors import (
    InvalidInputError,
    SessionNotFoundError,
    UnfilledSlotError,
)
from gunrock.generation.markup import add_speech_markup
from gunrock.generation.templates import Template, compose_response, fill_slots
from gunrock.knowledge.store import query_backstory, query_facts
from gunrock.nlu.pipeline import NluContext, NluResult, analyze_utterance
from gunrock.phonetics.correct import TimedToken, uniform_tokens
from gunrock.service.config import EngineConfig, EngineResources, load_resources
from gunrock.service.logs import ConversationRecord, LogWriter, utc_now

logger = logging.getLogger(__name__)

LAST_PERSONA_ATTR = "last_persona_id"
PERSONA_MODULE = "persona"


@dataclass
class SessionRuntime:
    state: DialogState
    user_ref: str
    rng: random.Random
    record: ConversationRecord
    lock: threading.Lock = field(default_factory=threading.Lock)
    prior_system_act: str | None = None
    seq: int = 0


class UserStore:
    """Tiny JSON key-value store for cross-session user attributes."""

    def __init__(self, path: Path):
        self.path = path
        self._lock = threading.Lock()

    def load(self, user_ref: str) -> dict[str, str]:
        try:
            data = json.loads(self.path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return {}
        return dict(data.get(user_ref, {}))

    def save(self, user_ref: str, attrs: dict[str, str]):
        with self._lock:
            try:
                data = json.loads(self.path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError):
                data = {}
            data[user_ref] = attrs
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text(
                json.dumps(data, ensure_ascii=False, indent=0), encoding="utf-8"
            )


class ConversationEngine:
    def __init__(self, config: EngineConfig | None = None, resources: EngineResources | None = None):
        self.config = config or EngineConfig()
        self.resources = resources or load_resources(self.config.config_dir)
        self.log = LogWriter(self.config.log_path)
        self.users = UserStore(self.config.resolved_user_store)
        self.sessions: dict[str, SessionRuntime] = {}
        self._lock = threading.Lock()
        self._session_counter = 0

    # -- session lifecycle -------------------------------------------------

    def open_session(self, user_ref: str) -> tuple[str, str]:
        session_id = uuid.uuid4().hex
        with self._lock:
            self._session_counter += 1
            seed = self.config.seed * 1_000_003 + self._session_counter
        state = DialogState(session_id=session_id)
        persisted = self.users.load(user_ref)
        state.attributes.update(persisted)
        runtime = SessionRuntime(
            state=state,
            user_ref=user_ref,
            rng=random.Random(seed),
            record=ConversationRecord(session_id, user_ref, started_at=utc_now()),
        )
        greeting = self._greeting(runtime)
        with self._lock:
            self.sessions[session_id] = runtime
        self.log.append(
            {"type": "session_start", "session_id": session_id, "user_ref": user_ref, "ts": runtime.record.started_at}
        )
        self._log_system_turn(
            runtime, greeting, self._ssml(greeting), "greeting", "greet", (),
            backstory=False, corrections=0, segments=0, attrs=dict(state.attributes),
        )
        return session_id, greeting

    def _greeting(self, runtime: SessionRuntime) -> str:
        state = runtime.state
        if "last_topic" in state.attributes:
            key = "retrieval.greet_returning"
            state.attributes["pending_topic"] = state.attributes["last_topic"]
            runtime.prior_system_act = "yes_no_question"
        else:
            key = "retrieval.greet_new"
            runtime.prior_system_act = "open_question"
        template = self.resources.templates.select(key, state.used_templates, runtime.rng)
        return fill_slots(template, dict(state.attributes))

    def _runtime(self, session_id: str) -> SessionRuntime:
        runtime = self.sessions.get(session_id)
        if runtime is None:
            raise SessionNotFoundError(f"unknown session {session_id!r}")
        return runtime

    def close_session(self, session_id: str, rating: int | None = None) -> ConversationRecord:
        if rating is not None and (not isinstance(rating, int) or not 1 <= rating <= 5):
            raise InvalidInputError(f"rating must be an integer in 1..5, got {rating!r}")
        runtime = self._runtime(session_id)
        with runtime.lock:
            record = runtime.record
            record.rating = rating
            record.ended_at = utc_now()
            state = runtime.state
            flow = self.resources.flows.get(state.active_module or "")
            persisted = self.users.load(runtime.user_ref)
            if flow is not None and flow.topic:
                persisted["last_topic"] = flow.topic
            if "user_name" in state.attributes:
                persisted["user_name"] = state.attributes["user_name"]
            self.users.save(runtime.user_ref, persisted)
            self.log.append(
                {
                    "type": "session_end",
                    "session_id": session_id,
                    "rating": rating,
                    "attributes": dict(state.attributes),
                    "ts": record.ended_at,
                }
            )
            with self._lock:
                del self.sessions[session_id]
            return record

    # -- turn handling -----------------------------------------------------

    def handle_turn(
        self, session_id: str, tokens: list[TimedToken] | None = None, text: str | None = None
    ) -> tuple[str, str, dict]:
        runtime = self._runtime(session_id)
        with runtime.lock:
            if tokens is None:
                if not text or not text.strip():
                    raise InvalidInputError("empty turn text")
                tokens = uniform_tokens(text)
            if not tokens:
                raise InvalidInputError("empty token list")
            return self._turn_locked(runtime, tokens)

    def _turn_locked(self, runtime: SessionRuntime, tokens: list[TimedToken]):
        state = runtime.state
        ctx = NluContext(
            gazetteers=self.resources.all_gazetteers(),
            correction_indexes=self.resources.correction_indexes,
            prior_mentions=list(state.mention_history),
            prior_system_act=runtime.prior_system_act,
            turn_index=state.turn_count,
            rules=self.resources.rules,
            lexicons=self.resources.lexicons,
            tagset=self.resources.tagset,
            rate_bounds=self.config.rate_bounds,
        )
        nlu = analyze_utterance(tokens, ctx)
        user_text = " ".join(t.word for t in tokens)
        self._log_user_turn(runtime, user_text, tokens)

        update_user_attributes(state, nlu)

        persona_hit = self._try_backstory(state, nlu)
        if persona_hit is not None:
            response, persona_id = persona_hit
            state.attributes[LAST_PERSONA_ATTR] = persona_id
            ssml = self._ssml(response)
            runtime.prior_system_act = "statement"
            debug = self._debug(nlu, None, backstory=True)
            self._log_system_turn(
                runtime, response, ssml, PERSONA_MODULE, "backstory", (),
                backstory=True, corrections=len(nlu.corrections), segments=len(nlu.segments),
                attrs=dict(state.attributes),
            )
            return response, ssml, debug

        state.attributes.pop(LAST_PERSONA_ATTR, None)
        plan = run_dialog_turn(state, nlu, self.resources.flows, self.config.seed)
        response, first_template = self._render(runtime, plan, nlu)
        central_sentiment = nlu.sentiment[plan.central_segment] if nlu.segments else 0.0
        marked = add_speech_markup(
            response,
            (first_template.act_class if first_template else "fact", central_sentiment),
            self.resources.markup,
            runtime.rng,
        )
        ssml = self._ssml(marked)
        runtime.prior_system_act = self._question_act(response)
        debug = self._debug(nlu, plan, backstory=False)
        self._log_system_turn(
            runtime, response, ssml, plan.module_id, plan.state_id, plan.response_keys,
            backstory=False, corrections=len(nlu.corrections), segments=len(nlu.segments),
            attrs=dict(state.attributes),
        )
        return response, ssml, debug

    # -- helpers -----------------------------------------------------------

    def _try_backstory(self, state: DialogState, nlu: NluResult) -> tuple[str, str] | None:
        last_persona = state.attributes.get(LAST_PERSONA_ATTR)
        for i in reversed(range(len(nlu.segments))):
            seg_text = nlu.segments[i].text
            acts = nlu.segment_acts(i)
            is_why = seg_text.strip().strip("?") in ("why", "how come")
            personalish = acts & {"personal_question"} or (
                acts & {"yes_no_question", "open_question"} and " you" in f" {seg_text}"
            )
            if not (personalish or (is_why and last_persona)):
                continue
            hit = query_backstory(
                self.resources.knowledge, seg_text, last_persona_id=last_persona
            )
            if hit is not None:
                return hit
        return None

    def _bindings(self, state: DialogState, nlu: NluResult, rng: random.Random) -> dict[str, str]:
        b: dict[str, str] = dict(state.attributes)
        if "movie_rating" in state.attributes:
            b["rating"] = state.attributes["movie_rating"]
        titles = [m for m in state.mention_history if m.entity_type == "title"]
        if "movie_title" not in b and titles:
            b["movie_title"] = titles[-1].canonical
        persons = [m for m in nlu.mentions if m.entity_type == "person"] or [
            m for m in state.mention_history if m.entity_type == "person"
        ]
        if persons:
            person = persons[-1].canonical
            b.setdefault("person_name", person)
            facts = [
                r for r in query_facts(self.resources.knowledge, person)
                if r.predicate != "description"
            ]
            if facts:
                b["person_fact"] = facts[0].object_text
        if "movie_title" in b:
            for predicate in ("release_year", "actor_name", "actor_role"):
                recs = query_facts(self.resources.knowledge, b["movie_title"], predicate)
                if recs:
                    b[predicate] = recs[0].object_text
            movie_facts = query_facts(self.resources.knowledge, b["movie_title"], "fact")
            if movie_facts:
                b["movie_fact"] = rng.choice(movie_facts).object_text
        animal_subject = state.attributes.get("pet_type", "")
        animal_facts = query_facts(self.resources.knowledge, animal_subject or "cat", "fact")
        if not animal_facts:
            animal_facts = query_facts(self.resources.knowledge, "cat", "fact")
        if animal_facts:
            b["animal_fact"] = rng.choice(animal_facts).object_text
        nps = [np for seg_nps in nlu.noun_phrases for np in seg_nps]
        known = {m.canonical for m in nlu.mentions}
        unknown_nps = [np for np in nps if np not in known and len(np.split()) > 1]
        if unknown_nps:
            b.setdefault("candidate_title", unknown_nps[-1])
        return b

    def _render(
        self, runtime: SessionRuntime, plan: TurnPlan, nlu: NluResult
    ) -> tuple[str, Template | None]:
        state = runtime.state
        bindings = self._bindings(state, nlu, runtime.rng)
        parts: list[str] = []
        first_template: Template | None = None
        for key in plan.response_keys:
            filled = self._fill_from_group(key, state, runtime.rng, bindings)
            if filled is None:
                continue
            text, template = filled
            parts.append(text)
            if first_template is None:
                first_template = template
        if not parts:
            # Liveness net: the slotless chitchat group always renders.
            template = self.resources.templates.select(
                "retrieval.chitchat", state.used_templates, runtime.rng
            )
            parts = [fill_slots(template, bindings)]
            first_template = template
        return compose_response(parts), first_template

    def _fill_from_group(
        self, key: str, state: DialogState, rng: random.Random, bindings: dict[str, str]
    ) -> tuple[str, Template] | None:
        group_size = len(self.resources.templates.group(key))
        for _attempt in range(group_size):
            template = self.resources.templates.select(key, state.used_templates, rng)
            try:
                return fill_slots(template, bindings), template
            except UnfilledSlotError as exc:
                logger.debug("template %s lacks binding %s; trying another", template.id, exc.slot)
        return None

    def _question_act(self, response: str) -> str | None:
        """Coarse act of the system's own response, fed back as context."""
        if "?" not in response:
            return "statement"
        question = response.split("?")[0].rsplit(".", 1)[-1].rsplit("!", 1)[-1].strip().lower()
        first_word = question.split()[0] if question.split() else ""
        if first_word in {"do", "would", "did", "are", "is", "can", "could", "will", "should", "have", "has"}:
            return "yes_no_question"
        return "open_question"

    def _ssml(self, marked: str) -> str:
        return f"<speak>{marked}</speak>"

    def _debug(self, nlu: NluResult, plan: TurnPlan | None, backstory: bool) -> dict:
        return {
            "segments": [s.text for s in nlu.segments],
            "acts": [[t.label for t in tags] for tags in nlu.acts],
            "sentiment": nlu.sentiment,
            "topics": nlu.topics,
            "noun_phrases": nlu.noun_phrases,
            "corrections": [
                {"original": c.original, "replacement": c.replacement, "score": c.score}
                for c in nlu.corrections
            ],
            "corrected_text": nlu.corrected_text,
            "mentions": [
                {"canonical": m.canonical, "type": m.entity_type, "segment": m.segment_index}
                for m in nlu.mentions
            ],
            "module": plan.module_id if plan else PERSONA_MODULE,
            "state": plan.state_id if plan else "backstory",
            "response_keys": list(plan.response_keys) if plan else [],
            "central_segment": plan.central_segment if plan else None,
            "backstory": backstory,
        }

    def _log_user_turn(self, runtime: SessionRuntime, text: str, tokens: list[TimedToken]):
        entry = {
            "type": "turn",
            "session_id": runtime.state.session_id,
            "seq": runtime.seq,
            "role": "user",
            "text": text,
            "tokens": [
                {"word": t.word, "start_ms": t.start_ms, "end_ms": t.end_ms} for t in tokens
            ],
            "ts": utc_now(),
        }
        runtime.seq += 1
        runtime.record.turns.append(entry)
        self.log.append(entry)

    def _log_system_turn(
        self, runtime: SessionRuntime, text: str, ssml: str, module: str, state_id: str,
        response_keys, backstory: bool, corrections: int, segments: int,
        attrs: dict[str, str] | None = None,
    ):
        entry = {
            "type": "turn",
            "session_id": runtime.state.session_id,
            "seq": runtime.seq,
            "role": "system",
            "text": text,
            "ssml": ssml,
            "module": module,
            "state": state_id,
            "response_keys": list(response_keys),
            "backstory": backstory,
            "corrections": corrections,
            "segments": segments,
            "attrs": attrs or {},
            "ts": utc_now(),
        }
        runtime.seq += 1
        runtime.record.turns.append(entry)
        self.log.append(entry)

    def session_log(self, session_id: str) -> list[dict]:
        runtime = self._runtime(session_id)
        return list(runtime.record.turns)
