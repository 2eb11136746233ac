#!/usr/bin/env python3
"""
Tests for context dictionaries and the word-pair dataset
"""

import logging

import pytest
from pydantic import ValidationError

from config import Config
from core.context import (
    DATASET_TABLE,
    WordPair,
    build_context,
    context_of,
    coverage,
    load_context,
    load_dataset,
    load_stopwords,
    read_pair_rows,
    save_context,
    summarize,
    tokenize,
    write_dataset,
)
from core.exceptions import ResourceLoadError


def _write(tmp_path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_tokenize_strips_danda_and_punctuation():
    assert tokenize("जल, जीवन है।  (पानी)") == ["जल", "जीवन", "है", "पानी"]
    assert tokenize(" । ") == []


def test_build_context_filters_stopwords(tmp_path):
    export = _write(tmp_path, "wn.tsv", "जल\tपानी एक तरल\tजल जीवन है\n")
    stop = _write(tmp_path, "stop.txt", "एक\nहै\n")
    dictionary = build_context(export, stop, language="hi")
    assert dictionary.entries["जल"] == ("पानी", "तरल", "जल", "जीवन")
    assert dictionary.stopwords_applied
    assert dictionary.language == "hi"


def test_bundled_hindi_stopwords():
    stop = load_stopwords(Config.STOPWORDS_HI)
    assert {"और", "है", "का", "में"} <= stop
    assert "जल" not in stop


def test_examples_are_pipe_separated(tmp_path):
    export = _write(tmp_path, "wn.tsv", "जल\tपानी\tजल जीवन | नदी का जल\n")
    dictionary = build_context(export)
    assert dictionary.entries["जल"] == ("पानी", "जल", "जीवन", "नदी", "का", "जल")


def test_records_for_one_word_merge(tmp_path):
    export = _write(tmp_path, "wn.tsv", "जल\tपानी\n\nजल\tनीर\n")
    dictionary = build_context(export)
    assert dictionary.entries["जल"] == ("पानी", "नीर")
    assert len(dictionary) == 1


def test_empty_stopword_file_removes_nothing(tmp_path):
    export = _write(tmp_path, "wn.tsv", "जल\tपानी एक तरल\n")
    stop = _write(tmp_path, "stop.txt", "")
    assert build_context(export, stop).entries["जल"] == ("पानी", "एक", "तरल")


def test_entries_never_hold_stopwords(tmp_path):
    export = _write(tmp_path, "wn.tsv", "क\tऔर है का\nख\tजल और\n")
    stop = _write(tmp_path, "stop.txt", "और\nहै\nका\n")
    stopwords = load_stopwords(stop)
    dictionary = build_context(export, stop)
    for tokens in dictionary.entries.values():
        assert not set(tokens) & stopwords
        assert all(token and " " not in token for token in tokens)


def test_malformed_records_are_skipped(tmp_path, caplog):
    export = _write(tmp_path, "wn.tsv", "जल\tपानी\nonly-one-field\n\tno word\n")
    with caplog.at_level(logging.WARNING):
        dictionary = build_context(export)
    assert dictionary.skipped_records == 2
    assert list(dictionary.entries) == ["जल"]
    assert any("malformed" in record.message for record in caplog.records)


def test_other_scripts_are_standardized(tmp_path):
    export = _write(tmp_path, "wn.tsv", "জল\tপানি\n")
    dictionary = build_context(export, language="bn")
    assert dictionary.entries["जल"] == ("पानि",)


def test_missing_export(tmp_path):
    with pytest.raises(ResourceLoadError):
        build_context(str(tmp_path / "missing.tsv"))


def test_context_lookup(tmp_path):
    export = _write(tmp_path, "wn.tsv", "जल\tपानी\nहै\tहै\n")
    stop = _write(tmp_path, "stop.txt", "है\n")
    dictionary = build_context(export, stop)

    present = context_of(dictionary, "जल")
    assert present.tokens == ["पानी"] and not present.miss

    absent = context_of(dictionary, "नदी")
    assert absent.tokens == [] and absent.miss

    emptied = context_of(dictionary, "है")
    assert emptied.tokens == [] and not emptied.miss

    stats = coverage(dictionary, ["जल", "नदी", "है", "जल"])
    assert (stats.words, stats.with_context, stats.missing, stats.empty) == (3, 1, 1, 1)


def test_context_json_round_trip(tmp_path):
    export = _write(tmp_path, "wn.tsv", "जल\tपानी तरल\n")
    dictionary = build_context(export, language="hi")
    path = str(tmp_path / "ctx.json")
    save_context(dictionary, path)
    assert load_context(path) == dictionary


def test_word_pair_validation():
    pair = WordPair(word_s="जल", word_t="जल", language_pair="hi-mr", label=1)
    assert pair.is_cognate
    with pytest.raises(ValidationError):
        WordPair(word_s=" ", word_t="जल", language_pair="hi-mr")
    with pytest.raises(ValidationError):
        WordPair(word_s="जल", word_t="जल", language_pair="hi-mr", label=2)


def test_load_dataset(tmp_path):
    path = _write(tmp_path, "pairs.tsv", "hi-bn\tजल\tজল\t1\n\nHI-BN\tनदी\tপানি\n")
    pairs = load_dataset(path)
    assert [p.label for p in pairs] == [1, 0]
    assert pairs[0].word_t == "जल"
    assert pairs[1].language_pair == "hi-bn"
    assert pairs[0].pair_id == "pairs:1"


@pytest.mark.parametrize("text,line", [
    ("hi-bn\tजल\n", 1),
    ("hi-bn\tजल\tजल\t1\nhi-bn\tजल\tजल\tyes\n", 2),
])
def test_load_dataset_errors(tmp_path, text, line):
    with pytest.raises(ResourceLoadError) as excinfo:
        load_dataset(_write(tmp_path, "pairs.tsv", text))
    assert excinfo.value.line == line


def test_dataset_round_trip(tmp_path):
    pairs = [
        WordPair(word_s="जल", word_t="जल", language_pair="hi-mr", label=1),
        WordPair(word_s="नदी", word_t="पानी", language_pair="hi-mr", label=0),
    ]
    path = str(tmp_path / "pairs.tsv")
    write_dataset(pairs, path)
    loaded = load_dataset(path)
    assert [(p.word_s, p.word_t, p.label) for p in loaded] == [(p.word_s, p.word_t, p.label) for p in pairs]


def test_summary_against_published_counts():
    pairs = [WordPair(word_s="क", word_t="ख", language_pair="hi-te", label=1)] * 936
    pairs += [WordPair(word_s="क", word_t="ग", language_pair="hi-te", label=0)] * 1084
    pairs += [WordPair(word_s="क", word_t="ग", language_pair="hi-gu", label=0)] * 3
    summary = summarize(pairs)
    assert summary.language_pairs["hi-te"] == DATASET_TABLE["hi-te"] == (936, 1084)
    assert summary.matches_published() == {"hi-gu": False, "hi-te": True}
    assert len(DATASET_TABLE) == 13


def test_read_pair_rows_layouts():
    rows = read_pair_rows(["abcd\tabce\n", "\n", "hi-bn\tकमल\tকমল\t1\n", "कमल\tকমল\textra\n"], "pairs.tsv")
    assert [(row.word_s, row.word_t) for row in rows] == [
        ("abcd", "abce"),
        ("कमल", "कमल"),
        ("कमल", "कमल"),
    ]
    assert rows[1].fields == ("hi-bn", "कमल", "কমল", "1")
    assert rows[2].fields == ("कमल", "কমল", "extra")


@pytest.mark.parametrize("line", ["abcd\n", "abcd\t \n"])
def test_read_pair_rows_rejects_bad_rows(line):
    with pytest.raises(ResourceLoadError) as excinfo:
        read_pair_rows(["a\tb\n", line], "pairs.tsv")
    assert excinfo.value.line == 2
