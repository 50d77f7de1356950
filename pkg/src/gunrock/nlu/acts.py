"""Multi-label dialog act tagging via an ordered rule cascade.

The cascade keys on lexical cues, shallow syntax, and the prior system
act (a bare "sure" after a yes/no question is an answer, not a
statement). Labels live in a configurable tagset file; the cascade is
validated against it at load time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files
from pathlib import Path

from gunrock.errors import ConfigError
from gunrock.text import extract_number

QUESTION_ACTS = frozenset(
    {"open_question", "yes_no_question", "personal_question", "factual_question"}
)
ANSWER_ACTS = frozenset({"pos_answer", "neg_answer"})


@dataclass(frozen=True)
class DialogActTag:
    label: str
    confidence: float = 1.0


def default_tagset_path() -> Path:
    return Path(str(files("gunrock").joinpath("data/tagset.txt")))


# Every label the cascade below can emit. Checked against the tagset on load.
_EMITTED = frozenset(
    {
        "statement", "opinion", "pos_answer", "neg_answer", "open_question",
        "yes_no_question", "command", "back_channel", "appreciation",
        "complaint", "greeting", "closing", "thanks", "apology", "abandon",
        "hold", "request_repeat", "topic_switch", "personal_question",
        "factual_question", "nonsense",
    }
)


@lru_cache(maxsize=4)
def load_tagset(path: str | None = None) -> frozenset[str]:
    p = Path(path) if path else default_tagset_path()
    labels = [
        line.strip()
        for line in p.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    ]
    tagset = frozenset(labels)
    missing = sorted(_EMITTED - tagset)
    if missing:
        raise ConfigError(
            f"tagset {p} is missing labels the classifier emits",
            violations=missing,
        )
    return tagset


_POS_WORDS = frozenset(
    "yes yeah yep sure okay ok alright definitely absolutely certainly".split()
)
_NEG_WORDS = frozenset("no nope nah never".split())
_WH_WORDS = frozenset("what who whom when where why how which whose".split())
_AUX_WORDS = frozenset(
    "do does did can could would will should is are was were am have has".split()
)
_PRONOUNS = frozenset("i you we they he she it".split())
_BACKCHANNEL = frozenset("ha hmm ouu wow oh huh uh um mhm".split())
_HOLD_RE = re.compile(r"^(wait|hold on|give me a (second|minute|moment)|one (second|moment))\b")
_GREET_RE = re.compile(r"^(hi|hello|hey|good (morning|afternoon|evening))\b|^(let's|lets) (chat|talk)$")
_CLOSE_RE = re.compile(r"^(bye|goodbye|see you|talk to you later|good night)\b")
_STOP_RE = re.compile(r"^(stop|exit|quit|cancel|shut up)$")
_THANKS_RE = re.compile(r"\b(thanks|thank you)\b")
_APOLOGY_RE = re.compile(r"^(sorry|i'm sorry|my (bad|apologies))\b")
_REPEAT_RE = re.compile(r"^(what|pardon|say (that |it )?again|repeat that|come again)\??$")
_SWITCH_RE = re.compile(
    r"\b(let's|lets|can we|could we|i want to|i wanna|i'd like to) talk about\b"
    r"|\bswitch (to|topics)\b|\bchange the (subject|topic)\b"
    r"|\btalk about something else\b"
)
_COMMAND_RE = re.compile(r"^(tell|play|give|show|talk|sing|say|recommend|read|stop|find)\b|^(let's|lets)\b")
_OPINION_RE = re.compile(
    r"\bi (really |just |also |always )?(think|believe|feel|guess|love|like|hate|"
    r"prefer|enjoy|enjoyed|loved|liked|hated)\b"
    r"|\bmy favorite\b|\b(best|worst|amazing|awesome|terrible|awful|great|boring|"
    r"wonderful|fantastic|hilarious|talented|beautiful|cool)\b"
)
_APPRECIATION_RE = re.compile(
    r"^(that's|that is|how) (so )?(cool|awesome|great|amazing|wonderful|nice|interesting|funny)\b"
    r"|^(i (love|like) (that|this|it))$|^(nice|cool|awesome|amazing)[.!]?$"
)
_COMPLAINT_RE = re.compile(
    r"^(that's|that is|this is) (so )?(boring|stupid|dumb|wrong|annoying|bad)\b"
    r"|\byou (don't|do not) understand\b|\byou're (wrong|not listening)\b"
)
# "About the bot" cues: your/yours, or you + a personal verb.
_PERSONAL_RE = re.compile(
    r"\byours?\b.*\b(favorite|name|opinion)\b|\byour\b"
    r"|\byou\b.*\b(like|love|favorite|think|feel|live|name|old|enjoy|hate|prefer)\b"
)


def _words(text: str) -> list[str]:
    return text.lower().split()


def classify_dialog_acts(
    text: str,
    prior_system_act: str | None = None,
    tagset: frozenset[str] | None = None,
) -> list[DialogActTag]:
    """Tag one segment. Always returns at least one tag."""
    if tagset is None:
        tagset = load_tagset()
    t = text.lower().strip()
    words = _words(t)
    tags: list[str] = []

    def add(label: str):
        if label not in tags:
            tags.append(label)

    if not words or not any(any(c.isalpha() for c in w) for w in words):
        return [DialogActTag("nonsense")]

    if _GREET_RE.match(t):
        add("greeting")
    if _STOP_RE.match(t):
        add("command")
        add("closing")
    elif _CLOSE_RE.match(t):
        add("closing")
    if _THANKS_RE.search(t):
        add("thanks")
    if _APOLOGY_RE.match(t):
        add("apology")
    if _REPEAT_RE.match(t):
        add("request_repeat")
    if _HOLD_RE.match(t) and len(words) <= 4:
        add("hold")
    if _SWITCH_RE.search(t):
        add("topic_switch")

    # Short affirmations/negations, strongest right after a system question.
    head = words[0].strip(",.!?")
    if head in _POS_WORDS and (len(words) <= 3 or prior_system_act in QUESTION_ACTS):
        add("pos_answer")
    elif head in _NEG_WORDS and (len(words) <= 3 or prior_system_act in QUESTION_ACTS):
        add("neg_answer")

    # Questions: wh-word with a nearby auxiliary (so subordinate-clause
    # starts like "when i watched it" stay untagged), or aux + pronoun.
    # Contractions like "what's" carry their own auxiliary.
    head_base = head[:-2] if head.endswith("'s") else head
    wh_question = (head_base in _WH_WORDS and head.endswith("'s")) or (
        head in _WH_WORDS
        and (
            len(words) == 1
            or any(w in _AUX_WORDS for w in words[1:3])
            or words[-1].rstrip("?") in {"about", "like"}
        )
    )
    if wh_question and not tags:
        if _PERSONAL_RE.search(t):
            add("personal_question")
        elif re.match(r"^(what|who|where|when) (is|are|was|were)\b", t):
            add("factual_question")
        add("open_question")
    elif head in _AUX_WORDS and len(words) > 1 and words[1] in _PRONOUNS:
        if _PERSONAL_RE.search(t):
            add("personal_question")
        add("yes_no_question")

    if len(words) <= 2 and all(w in _BACKCHANNEL for w in words):
        add("back_channel")
    if _APPRECIATION_RE.match(t):
        add("appreciation")
    if _COMPLAINT_RE.search(t):
        add("complaint")
    if not tags and _COMMAND_RE.match(t) and head not in _WH_WORDS:
        add("command")
    if _OPINION_RE.search(t) and not (set(tags) & (QUESTION_ACTS | {"topic_switch"})):
        add("opinion")

    # Dangling clause starts read as abandoned.
    if words[-1] in {"and", "but", "because", "so", "then"} and len(words) > 1:
        add("abandon")

    if not tags:
        add("statement")
    elif tags == ["opinion"] or (
        "opinion" in tags and not (set(tags) - {"opinion", "abandon"})
    ):
        tags.insert(0, "statement")
    if extract_number(t) is not None and len(words) <= 3 and not (set(tags) & ANSWER_ACTS):
        if "statement" not in tags:
            tags.insert(0, "statement")

    unknown = [x for x in tags if x not in tagset]
    if unknown:
        raise ConfigError("classifier emitted labels outside the tagset", unknown)
    primary, rest = tags[0], tags[1:]
    return [DialogActTag(primary, 1.0)] + [DialogActTag(x, 0.8) for x in rest]
