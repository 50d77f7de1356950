import pytest

from gunrock.phonetics.correct import uniform_tokens
from gunrock.service.config import EngineConfig, load_resources
from gunrock.service.engine import ConversationEngine

TABLE1_USER_TURNS = [
    "let's chat",
    "sure that would be great",
    "ha it's a tough question i don't think i have a good one to recommend wait i think that stars born is good",
    "ten",
    "when i watched it the music was amazing and bradley cooper was super talented in the movie i really like him",
]

MS_PER_WORD = 300


@pytest.fixture(scope="session")
def resources():
    return load_resources()


@pytest.fixture()
def engine(tmp_path, resources):
    cfg = EngineConfig(log_path=tmp_path / "conversations.jsonl", seed=7)
    return ConversationEngine(cfg, resources=resources)


@pytest.fixture()
def returning_engine(engine):
    engine.users.save("george", {"last_topic": "movies", "user_name": "george"})
    return engine


def table1_tokens(turn_index: int):
    return uniform_tokens(TABLE1_USER_TURNS[turn_index], MS_PER_WORD)
