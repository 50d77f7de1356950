"""Seeded synthetic conversation-log generator with planted effects.

The real study corpus is private, so acceptance rests on recovery: the
generator plants the four regression slopes and writes a JSONL log in
the service's schema, and the analysis pipeline must recover each slope
within 3 standard errors.

Design notes for unbiased recovery:
- every user utterance in a conversation has exactly its conversation's
  word count, so measured mean word count carries no sampling error;
- backstory and pet sub-populations sit at the word-count midpoint with
  ratings centered on the base model's value there, so they add variance
  but no slope bias to the word-count analyses;
- ratings are clamped integers 1..5 (log-schema invariant), with noise
  scales chosen so rounding does not bias slopes beyond tolerance.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path

DEFAULT_SEED = 20190305
DEFAULT_N = 2000

PLANTED = {
    "rating_by_words": 0.01,
    "turns_by_words": 1.85,
    "log_rating_by_log_backstory": 0.10,
    "rating_by_has_pet": 0.15,
}

_BASE_INTERCEPT = 3.0
_TURNS_INTERCEPT = 5.0
_RATING_NOISE = 0.5
_TURNS_NOISE = 1.5
_LOG_NOISE = 0.14
_MID_WORDS = 11

_VOCAB = (
    "well i think the movie was really great and it made me laugh a lot "
    "because the story kept moving and the music felt just right honestly"
).split()


@dataclass
class PlantedCorpus:
    path: Path
    n: int
    seed: int
    planted: dict[str, float]


def _utterance(rng: random.Random, words: int) -> str:
    return " ".join(rng.choice(_VOCAB) for _ in range(words))


def _clamp_rating(value: float) -> int:
    return max(1, min(5, round(value)))


def generate_corpus(
    path: str | Path, n: int = DEFAULT_N, seed: int = DEFAULT_SEED
) -> PlantedCorpus:
    """Write a synthetic log of ``n`` qualifying conversations (plus a few
    sub-threshold ones that the >=3-turn filter must drop)."""
    rng = random.Random(seed)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    clock = datetime(2019, 1, 5, tzinfo=timezone.utc)

    with open(path, "w", encoding="utf-8") as f:

        def emit(obj: dict):
            f.write(json.dumps({"log_version": 1, **obj}, ensure_ascii=False) + "\n")

        def conversation(
            idx: int,
            words: int,
            rating: int | None,
            backstory_q: int = 0,
            has_pet: str | None = None,
            force_turns: int | None = None,
        ):
            nonlocal clock
            sid = f"synth-{idx:05d}"
            turns = force_turns
            if turns is None:
                turns = round(
                    _TURNS_INTERCEPT
                    + PLANTED["turns_by_words"] * words
                    + rng.gauss(0.0, _TURNS_NOISE)
                )
                turns = max(3, turns, backstory_q + 1)
            start = clock
            clock += timedelta(seconds=30)
            emit({"type": "session_start", "session_id": sid,
                  "user_ref": f"user-{idx}", "ts": start.isoformat()})
            ts = start
            backstory_flags = [True] * min(backstory_q, turns) + [False] * max(
                0, turns - backstory_q
            )
            rng.shuffle(backstory_flags)
            attrs = {"has_pet": has_pet} if has_pet else {}
            for k in range(turns):
                ts += timedelta(seconds=8)
                emit({"type": "turn", "session_id": sid, "seq": 2 * k,
                      "role": "user", "text": _utterance(rng, words), "ts": ts.isoformat()})
                ts += timedelta(seconds=8)
                emit({"type": "turn", "session_id": sid, "seq": 2 * k + 1,
                      "role": "system", "text": "okay, tell me more.",
                      "backstory": backstory_flags[k], "attrs": attrs,
                      "ts": ts.isoformat()})
            ts += timedelta(seconds=5)
            emit({"type": "session_end", "session_id": sid, "rating": rating,
                  "attributes": attrs, "ts": ts.isoformat()})

        base_mid = _BASE_INTERCEPT + PLANTED["rating_by_words"] * _MID_WORDS
        i = 0
        for _ in range(int(n * 0.60)):
            words = rng.randint(2, 20)
            mu = _BASE_INTERCEPT + PLANTED["rating_by_words"] * words
            rating = _clamp_rating(mu + rng.gauss(0.0, _RATING_NOISE))
            if rng.random() < 0.03:
                conversation(i, words, rating=None)
            else:
                conversation(i, words, rating=rating)
            i += 1
        for _ in range(int(n * 0.15)):
            q = max(1, int(round(math.exp(rng.uniform(0.0, 3.4)))))
            b0 = math.log(base_mid) - PLANTED["log_rating_by_log_backstory"] * 1.7
            log_rating = (
                b0
                + PLANTED["log_rating_by_log_backstory"] * math.log(q)
                + rng.gauss(0.0, _LOG_NOISE)
            )
            rating = _clamp_rating(math.exp(log_rating))
            conversation(i, _MID_WORDS, rating=rating, backstory_q=q)
            i += 1
        pet_count = n - i
        for k in range(pet_count):
            if k % 20 == 19:
                pet = "na"
                mu = base_mid
            else:
                pet = "yes" if k % 2 == 0 else "no"
                mu = (
                    base_mid
                    - PLANTED["rating_by_has_pet"] / 2.0
                    + (PLANTED["rating_by_has_pet"] if pet == "yes" else 0.0)
                )
            rating = _clamp_rating(mu + rng.gauss(0.0, _RATING_NOISE))
            conversation(i, _MID_WORDS, rating=rating, has_pet=pet)
            i += 1
        # Accidental triggers: below the 3-user-turn floor, must be filtered.
        for k in range(5):
            conversation(i, words=5, rating=3, force_turns=1 + (k % 2))
            i += 1

    return PlantedCorpus(path=path, n=n, seed=seed, planted=dict(PLANTED))
