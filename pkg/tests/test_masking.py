"""Entity masking and exact unmasking."""

import pytest
from hypothesis import given, strategies as st

from gunrock.errors import InvalidInputError
from gunrock.nlu.masking import mask_entities, unmask
from gunrock.phonetics.index import build_phonetic_index

GAZ = [
    build_phonetic_index(
        [("a star is born", "movie"), ("bradley cooper", "person"), ("cat", "animal")]
    )
]


def test_known_title_masked():
    masked, table = mask_entities("i like the movie a star is born", GAZ)
    assert masked == "i like the movie ENT_0"
    assert table.placeholders["ENT_0"][0] == "a star is born"
    assert table.placeholders["ENT_0"][1] == "title"


def test_unmask_round_trip():
    text = "i like the movie a star is born"
    masked, table = mask_entities(text, GAZ)
    assert unmask(masked, table) == text


def test_no_entities_unchanged():
    text = "nothing to see here"
    masked, table = mask_entities(text, GAZ)
    assert masked == text
    assert len(table) == 0


def test_repeated_entity_gets_distinct_placeholders():
    text = "a star is born is better than a star is born"
    masked, table = mask_entities(text, GAZ)
    assert masked.split().count("ENT_0") == 1
    assert masked.split().count("ENT_1") == 1
    assert table.placeholders["ENT_0"][0] == table.placeholders["ENT_1"][0]
    assert unmask(masked, table) == text


def test_empty_text_rejected():
    with pytest.raises(InvalidInputError):
        mask_entities("   ", GAZ)


_filler = st.lists(
    st.sampled_from("the i we saw liked about yesterday really fun story".split()),
    min_size=0, max_size=6,
)


@given(prefix=_filler, middle=_filler, suffix=_filler)
def test_mask_round_trip_with_planted_entities(prefix, middle, suffix):
    words = prefix + ["a", "star", "is", "born"] + middle + ["bradley", "cooper"] + suffix
    text = " ".join(words)
    masked, table = mask_entities(text, GAZ)
    assert unmask(masked, table) == text
    assert "ENT_0" in masked.split()
