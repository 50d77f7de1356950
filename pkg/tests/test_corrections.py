"""Correction proposal, timestep filtering, and application."""

from itertools import combinations

import pytest

from gunrock.phonetics.correct import (
    Correction,
    TimedToken,
    correct_utterance,
    filter_by_timesteps,
    propose_corrections,
    uniform_tokens,
)
from gunrock.phonetics.index import build_phonetic_index
from gunrock.errors import InvalidInputError

MOVIES = build_phonetic_index(
    [("a star is born", "movie"), ("crazy rich asians", "movie"), ("frozen", "movie")]
)


def toks(text, ms=300):
    return uniform_tokens(text, ms)


class TestProposeCorrections:
    def test_table1_stars_born(self):
        tokens = toks("i think that stars born is good")
        proposals = propose_corrections(tokens, [(3, 5)], MOVIES)
        assert proposals
        top = proposals[0]
        assert top.replacement == "a star is born"
        assert top.original == "stars born"
        assert top.token_span == (3, 5)
        assert top.score == 1.0

    def test_exact_surface_match_suppressed(self):
        tokens = toks("a star is born")
        assert propose_corrections(tokens, [(0, 4)], MOVIES) == []

    def test_crazy_rich_variant_matches(self):
        # Oracle run: "agents" and "asians" encode differently (AJNT vs
        # ASNS), so the candidate arises through the other span words.
        tokens = toks("crazy rich agents")
        proposals = propose_corrections(tokens, [(0, 3)], MOVIES)
        assert proposals
        assert proposals[0].replacement == "crazy rich asians"
        assert proposals[0].score == 1.0

    def test_no_match_yields_empty(self):
        tokens = toks("ten")
        assert propose_corrections(tokens, [(0, 1)], MOVIES) == []

    def test_out_of_bounds_span_rejected(self):
        with pytest.raises(InvalidInputError):
            propose_corrections(toks("short"), [(0, 9)], MOVIES)

    def test_score_ladder_ordering(self):
        tokens = toks("crazy rich agents")
        proposals = propose_corrections(tokens, [(0, 3)], MOVIES)
        scores = [p.score for p in proposals]
        assert scores == sorted(scores, reverse=True)
        assert all(s in (1.0, 0.8, 0.6) for s in scores)


class TestTimestepFilter:
    def correction(self):
        return Correction((0, 2), "stars born", "a star is born", "PRN", 1.0)

    def test_plausible_duration_retained(self):
        tokens = [TimedToken("stars", 0, 450), TimedToken("born", 450, 900)]
        kept = filter_by_timesteps([self.correction()], tokens, (1.0, 9.0))
        assert kept == [self.correction()]

    def test_too_fast_dropped(self):
        tokens = [TimedToken("stars", 0, 40), TimedToken("born", 40, 80)]
        assert filter_by_timesteps([self.correction()], tokens, (1.0, 9.0)) == []

    def test_disabled_bounds_identity(self):
        tokens = [TimedToken("stars", 0, 40), TimedToken("born", 40, 80)]
        kept = filter_by_timesteps([self.correction()], tokens, (0.0, float("inf")))
        assert kept == [self.correction()]


class TestCorrectUtterance:
    def test_table1_full_utterance(self):
        tokens = toks(
            "ha it's a tough question i don't think i have a good one to recommend "
            "wait i think that stars born is good"
        )
        text, applied = correct_utterance(tokens, [MOVIES])
        assert text == (
            "ha it's a tough question i don't think i have a good one to recommend "
            "wait i think that a star is born is good"
        )
        assert len(applied) == 1
        assert applied[0].original == "stars born"

    def test_ten_unchanged(self):
        text, applied = correct_utterance(toks("ten"), [MOVIES])
        assert text == "ten"
        assert applied == []

    def test_no_indexes_is_identity(self):
        raw = "wait i think that stars born is good"
        text, applied = correct_utterance(toks(raw), [])
        assert text == raw
        assert applied == []

    def test_tokens_outside_spans_untouched(self):
        tokens = toks("i think that stars born is good")
        text, applied = correct_utterance(tokens, [MOVIES])
        words = text.split()
        assert words[:3] == ["i", "think", "that"]
        assert words[-2:] == ["is", "good"]

    def test_applied_survive_filter_and_do_not_overlap(self):
        tokens = toks(
            "ha it's a tough question i don't think i have a good one to recommend "
            "wait i think that stars born is good"
        )
        text, applied = correct_utterance(tokens, [MOVIES])
        assert filter_by_timesteps(applied, tokens) == applied
        for a, b in combinations(applied, 2):
            assert a.token_span[1] <= b.token_span[0] or b.token_span[1] <= a.token_span[0]

    def test_empty_tokens_rejected(self):
        with pytest.raises(InvalidInputError):
            correct_utterance([], [MOVIES])


def brute_force_best(cands):
    best, best_score = [], -1.0
    for r in range(len(cands) + 1):
        for subset in combinations(cands, r):
            spans = sorted(c.token_span for c in subset)
            if any(s2[0] < s1[1] for s1, s2 in zip(spans, spans[1:])):
                continue
            score = sum(c.score for c in subset)
            if score > best_score:
                best, best_score = sorted(subset, key=lambda c: c.token_span), score
    return best, best_score


def test_overlap_resolution_matches_brute_force():
    # Three candidates, two overlapping; the optimizer must pick the
    # max-total-score non-overlapping subset.
    from gunrock.phonetics.correct import _max_score_subset

    cands = [
        Correction((0, 2), "aa bb", "x", "C1", 0.8),
        Correction((1, 3), "bb cc", "y", "C2", 1.0),
        Correction((3, 4), "dd", "z", "C3", 0.6),
    ]
    chosen = _max_score_subset(cands)
    expected, expected_score = brute_force_best(cands)
    assert sum(c.score for c in chosen) == pytest.approx(expected_score)
    assert chosen == expected
