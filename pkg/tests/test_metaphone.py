"""Encoder agreement with the frozen reference vectors plus edge cases."""

import time
from importlib.resources import files

import pytest

from gunrock.errors import InvalidInputError
from gunrock.phonetics.metaphone import MAX_CODE_LEN, encode_double_metaphone


def load_vectors():
    path = files("gunrock").joinpath("data/metaphone_vectors.tsv")
    vectors = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        word, primary, secondary = line.split("\t")
        vectors.append((word, primary, secondary))
    return vectors


VECTORS = load_vectors()


def test_vector_file_is_large_enough():
    assert len(VECTORS) >= 200


def test_full_agreement_with_reference_vectors():
    mismatches = []
    for word, primary, secondary in VECTORS:
        code = encode_double_metaphone(word)
        if (code.primary, code.secondary) != (primary, secondary):
            mismatches.append((word, (code.primary, code.secondary), (primary, secondary)))
    assert mismatches == []


def test_vector_run_is_fast():
    start = time.perf_counter()
    for word, _, _ in VECTORS:
        encode_double_metaphone(word)
    assert time.perf_counter() - start < 1.0


@pytest.mark.parametrize(
    "word,primary,secondary",
    [
        ("knight", "NT", "NT"),
        ("smith", "SM0", "XMT"),
        ("a", "A", "A"),
    ],
)
def test_published_examples(word, primary, secondary):
    code = encode_double_metaphone(word)
    assert code.primary == primary
    assert code.secondary == secondary


def test_deterministic_and_pure():
    first = encode_double_metaphone("gunrock")
    for _ in range(5):
        assert encode_double_metaphone("gunrock") == first


def test_codes_are_uppercase_and_truncated():
    for word, _, _ in VECTORS:
        code = encode_double_metaphone(word)
        assert len(code.primary) <= MAX_CODE_LEN
        assert len(code.secondary) <= MAX_CODE_LEN
        assert code.primary == code.primary.upper()
        assert code.secondary == code.secondary.upper()


def test_apostrophes_allowed():
    assert encode_double_metaphone("it's").primary == "ATS"


@pytest.mark.parametrize("bad", ["", "123", "?!", "   "])
def test_invalid_input_rejected(bad):
    with pytest.raises(InvalidInputError):
        encode_double_metaphone(bad)
