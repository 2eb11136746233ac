#!/usr/bin/env python3
"""
Tests for phonetic vectors and phonetic similarity
"""

import numpy as np
import pytest

from core.exceptions import DomainError, ResourceLoadError
from core.phonology import (
    PHONETIC_FEATURE_NAMES,
    PhoneticFeatureTable,
    context_phonetic_vector,
    cosine,
    load_phonetic_table,
    phonetic_features,
    word_phonetic_vector,
    word_phonetic_vector_scored,
)


def _toy_table() -> PhoneticFeatureTable:
    vectors = {
        "a": [1, 1, 0, 0],
        "b": [0, 0, 1, 1],
        "c": [1, 0, 1, 0],
        "d": [0, 1, 0, 1],
    }
    return PhoneticFeatureTable(
        entries={ord(k): np.array(v, dtype=float) for k, v in vectors.items()},
        dimension=4,
    )


def test_bundled_table(phonetic_table):
    assert phonetic_table.dimension == len(PHONETIC_FEATURE_NAMES) == 38
    assert "क" in phonetic_table
    assert "a" not in phonetic_table
    for vector in phonetic_table.entries.values():
        assert set(np.unique(vector)) <= {0.0, 1.0}


def test_single_character_word():
    table = _toy_table()
    np.testing.assert_array_equal(word_phonetic_vector("a", table), [1, 1, 0, 0])


def test_word_vector_is_mean_of_characters():
    table = _toy_table()
    np.testing.assert_allclose(word_phonetic_vector("ab", table), [0.5, 0.5, 0.5, 0.5])


def test_uncovered_characters_are_skipped():
    table = _toy_table()
    result = word_phonetic_vector_scored("a?z", table)
    np.testing.assert_array_equal(result.vector, [1, 1, 0, 0])
    assert result.covered == 1
    assert not result.oov


def test_uncovered_word_is_oov():
    result = word_phonetic_vector_scored("xyz", _toy_table())
    np.testing.assert_array_equal(result.vector, np.zeros(4))
    assert result.oov


def test_context_vector():
    table = _toy_table()
    np.testing.assert_allclose(context_phonetic_vector(["a", "b"], table), [0.5] * 4)
    np.testing.assert_array_equal(context_phonetic_vector([], table), np.zeros(4))


def test_identical_words_and_contexts():
    result = phonetic_features("a", "a", ["c"], ["c"], _toy_table())
    assert result.score1 == pytest.approx(1.0)
    assert result.score2 == pytest.approx(1.0)
    assert result.p_s1 == pytest.approx(0.5)
    assert result.p_s2 == pytest.approx(0.5)


def test_orthogonal_words_identical_contexts():
    result = phonetic_features("a", "b", ["c"], ["c"], _toy_table())
    assert result.score1 == pytest.approx(0.0)
    assert result.score2 == pytest.approx(1.0)
    assert result.p_s1 == pytest.approx(0.0)
    assert result.p_s2 == pytest.approx(1.0)


def test_half_cosine_on_both_sides():
    # cos([1,1,0,0], [1,0,1,0]) = 1/2 and likewise for the contexts
    result = phonetic_features("a", "c", ["b"], ["d"], _toy_table())
    assert result.score1 == pytest.approx(0.5)
    assert result.score2 == pytest.approx(0.5)
    assert result.p_s1 == pytest.approx(0.5)
    assert result.p_s2 == pytest.approx(0.5)


def test_empty_context_is_flagged():
    result = phonetic_features("a", "a", [], ["c"], _toy_table())
    assert result.score2 == 0.0
    assert result.flags["empty_context"]
    assert result.p_s1 == pytest.approx(1.0)


def test_feature_layout():
    table = _toy_table()
    result = phonetic_features("a", "b", ["c"], ["d"], table)
    assert result.as_array().shape == (4 * table.dimension + 2,)


def test_cosine_dimension_mismatch():
    with pytest.raises(DomainError):
        cosine(np.ones(3), np.ones(4))


def test_devanagari_similarity_orders_sensibly(phonetic_table):
    close = phonetic_features("कमल", "कमला", [], [], phonetic_table).score1
    far = phonetic_features("कमल", "ऊँ", [], [], phonetic_table).score1
    assert close > far


def test_load_errors_report_line(tmp_path):
    bad = tmp_path / "table.csv"
    bad.write_text("codepoint_hex,f1,f2\n0915,1,0\n0916,1,2\n", encoding="utf-8")
    with pytest.raises(ResourceLoadError) as excinfo:
        load_phonetic_table(str(bad))
    assert excinfo.value.line == 3

    with pytest.raises(ResourceLoadError):
        load_phonetic_table(str(tmp_path / "missing.csv"))


def test_load_custom_table(tmp_path):
    path = tmp_path / "table.csv"
    path.write_text("codepoint_hex,f1,f2\n0915,1,0\n0916,0,1\n", encoding="utf-8")
    table = load_phonetic_table(str(path))
    assert table.dimension == 2
    assert len(table) == 2
    np.testing.assert_array_equal(table.vector("ख"), [0, 1])
