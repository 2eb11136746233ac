#!/usr/bin/env python3
"""
Tests for NED, q-gram and WLS similarity
"""

import math
import random
from functools import lru_cache

import pytest

from core.exceptions import DomainError
from core.strsim import (
    context_wls,
    levenshtein,
    most_frequent,
    ned_similarity,
    ned_similarity_scored,
    normalize_pair,
    qgram_distance,
    qgram_similarity,
    qgram_similarity_scored,
    score_pairs,
    wls,
    wls_features,
)


def brute_levenshtein(p: str, q: str) -> int:
    @lru_cache(maxsize=None)
    def go(i: int, j: int) -> int:
        if i == len(p):
            return len(q) - j
        if j == len(q):
            return len(p) - i
        return min(
            go(i + 1, j) + 1,
            go(i, j + 1) + 1,
            go(i + 1, j + 1) + (p[i] != q[j]),
        )
    return go(0, 0)


def brute_qgram_distance(p: str, q: str, n: int) -> int:
    grams_p = [p[i:i + n] for i in range(len(p) - n + 1)]
    grams_q = [q[i:i + n] for i in range(len(q) - n + 1)]
    total = 0
    for gram in set(grams_p) | set(grams_q):
        total += abs(grams_p.count(gram) - grams_q.count(gram))
    return total


def _random_word(rng: random.Random) -> str:
    return "".join(rng.choice("abcd") for _ in range(rng.randint(0, 6)))


def test_levenshtein_examples():
    assert levenshtein("", "abc") == 3
    assert levenshtein("abc", "abc") == 0
    assert levenshtein("kitten", "sitting") == 3


def test_metrics_match_brute_force():
    rng = random.Random(42)
    for _ in range(1000):
        p, q = _random_word(rng), _random_word(rng)
        assert levenshtein(p, q) == brute_levenshtein(p, q)
        assert qgram_distance(p, q, 2) == brute_qgram_distance(p, q, 2)


def test_ned_similarity():
    assert ned_similarity("abc", "abc") == 1.0
    assert ned_similarity("abcd", "") == 0.0
    assert ned_similarity("abcd", "abcf") == pytest.approx(0.75)
    both_empty = ned_similarity_scored("", "")
    assert both_empty.value == 1.0
    assert both_empty.degenerate


def test_qgram_distance():
    assert qgram_distance("abab", "abab", 2) == 0
    assert qgram_distance("abcd", "abce", 2) == 2
    assert qgram_distance("a", "b", 2) == 0


def test_qgram_similarity():
    assert qgram_similarity("abcd", "abcd", 2) == 1.0
    assert qgram_similarity("abcd", "abce", 2) == pytest.approx(1 - 2 / 6)
    no_grams = qgram_similarity_scored("a", "b", 2)
    assert no_grams.value == 1.0
    assert no_grams.degenerate


def test_qgram_rejects_bad_length():
    with pytest.raises(DomainError):
        qgram_similarity("ab", "ab", 0)


def test_wls_examples():
    assert wls("abc", "abc", 2) == 1.0
    assert wls("abcd", "abce", 2) == pytest.approx(0.75 * 0.75 + 0.25 * (1 - 2 / 6))
    assert wls("ab", "xy", 2) == 0.0


def test_wls_is_weighted_blend():
    rng = random.Random(7)
    for _ in range(10000):
        p, q = _random_word(rng), _random_word(rng)
        expected = 0.75 * ned_similarity(p, q) + 0.25 * qgram_similarity(p, q, 2)
        assert abs(wls(p, q, 2) - expected) <= 1e-12
        assert 0.0 <= wls(p, q, 2) <= 1.0


def test_normalize_pair_examples():
    result = normalize_pair(0.6, 0.2)
    assert result.s1 == pytest.approx(0.75)
    assert result.s2 == pytest.approx(0.25)
    zero = normalize_pair(0.0, 0.0)
    assert (zero.s1, zero.s2) == (0.5, 0.5)
    assert zero.degenerate
    equal = normalize_pair(1.0, 1.0)
    assert (equal.s1, equal.s2) == (0.5, 0.5)


def test_normalize_pair_sums_to_one():
    rng = random.Random(3)
    for _ in range(10000):
        a, b = rng.random(), rng.random()
        result = normalize_pair(a, b)
        assert abs(result.s1 + result.s2 - 1.0) <= 1e-12
        assert 0.0 <= result.s1 <= 1.0


@pytest.mark.parametrize("bad", [(-0.1, 0.2), (0.2, math.nan), (math.inf, 0.0)])
def test_normalize_pair_rejects_bad_scores(bad):
    with pytest.raises(DomainError):
        normalize_pair(*bad)


def test_most_frequent_breaks_ties_by_first_occurrence():
    assert most_frequent(["b", "a", "b", "c", "a", "d"], 3) == ["b", "a", "c"]
    assert most_frequent([], 5) == []


def test_context_wls():
    assert context_wls([], ["ab"]) == 0.0
    assert context_wls(["ab"], ["ab"]) == 1.0
    # mean over the Cartesian product
    expected = (wls("ab", "ab") + wls("ab", "xy")) / 2
    assert context_wls(["ab"], ["ab", "xy"]) == pytest.approx(expected)


def test_context_wls_respects_cap():
    src = ["ab"] * 3 + ["zz"]
    assert context_wls(src, ["ab"], cap=1) == 1.0


def test_wls_features_without_context():
    scores = wls_features("abcd", "abce", [], [])
    assert scores.score2 == 0.0
    assert scores.s1 == 1.0
    assert scores.s2 == 0.0


def test_score_pairs():
    assert score_pairs([("abc", "abc"), ("ab", "xy")], "wls") == [1.0, 0.0]
    with pytest.raises(DomainError):
        score_pairs([("a", "b")], "jaro")


def test_wls_is_symmetric():
    rng = random.Random(11)
    for _ in range(200):
        p, q = _random_word(rng), _random_word(rng)
        assert wls(p, q) == pytest.approx(wls(q, p))
