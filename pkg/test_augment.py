#!/usr/bin/env python3
"""
Tests for cognate injection and byte-pair encoding
"""

import logging
import random

import pytest

from core.augment import (
    BPEModel,
    ParallelCorpus,
    bpe_apply,
    bpe_learn,
    bpe_restore,
    inject_cognates,
    load_corpus,
    load_merges,
    native_form,
    save_merges,
    segment_word,
    write_corpus,
)
from core.context import WordPair
from core.exceptions import DomainError, ResourceLoadError
from core.script import detect_script


def _pairs(n: int):
    return [
        WordPair(word_s=f"क{i}", word_t=f"క{i}", language_pair="hi-te", label=1, pair_id=f"c:{i}")
        for i in range(n)
    ]


def test_inject_appends_single_words():
    corpus = ParallelCorpus(("a b", "c d", "e"), ("x y", "z w", "v"))
    result = inject_cognates(corpus, _pairs(2))
    assert len(result) == 5
    assert result.src_lines[:3] == corpus.src_lines
    assert result.tgt_lines[:3] == corpus.tgt_lines
    assert result.src_lines[3:] == ("क0", "क1")
    assert result.tgt_lines[3:] == ("క0", "క1")


def test_inject_writes_each_side_in_its_own_script():
    corpus = ParallelCorpus(("नमस्ते",), ("నమస్తే",))
    cognate = WordPair(word_s="कमल", word_t="कमल", language_pair="hi-te", label=1)
    result = inject_cognates(corpus, [cognate])
    assert result.src_lines == ("नमस्ते", "कमल")
    assert result.tgt_lines == ("నమస్తే", "కమల")
    assert detect_script(result.tgt_lines[-1]) == "Telugu"


def test_inject_can_keep_devanagari():
    cognate = WordPair(word_s="कमल", word_t="कमल", language_pair="hi-bn", label=1)
    result = inject_cognates(ParallelCorpus((), ()), [cognate], native_script=False)
    assert result.tgt_lines == ("कमल",)


@pytest.mark.parametrize("language,expected", [
    ("mr", "कमल"),
    ("bn", "কমল"),
    ("ta", "கமல"),
    ("xx", "कमल"),
])
def test_native_form(language, expected):
    assert native_form("कमल", language) == expected


def test_inject_nothing():
    corpus = ParallelCorpus(("a",), ("b",))
    assert inject_cognates(corpus, []) == corpus


def test_inject_at_reported_scale():
    corpus = ParallelCorpus(tuple(f"s{i}" for i in range(1000)), tuple(f"t{i}" for i in range(1000)))
    result = inject_cognates(corpus, _pairs(930))
    assert len(result.src_lines) == len(result.tgt_lines) == 1930


def test_inject_skips_blank_words(caplog):
    blank = WordPair.model_construct(word_s=" ", word_t="క", language_pair="hi-te", label=1, pair_id="b:1")
    with caplog.at_level(logging.WARNING):
        result = inject_cognates(ParallelCorpus((), ()), [blank] + _pairs(1))
    assert result.src_lines == ("क0",)
    assert any("Skipping" in record.message for record in caplog.records)


def test_uneven_corpus_is_rejected(tmp_path):
    with pytest.raises(DomainError):
        ParallelCorpus(("a",), ())
    (tmp_path / "s.txt").write_text("a\nb\n", encoding="utf-8")
    (tmp_path / "t.txt").write_text("a\n", encoding="utf-8")
    with pytest.raises(ResourceLoadError):
        load_corpus(str(tmp_path / "s.txt"), str(tmp_path / "t.txt"))


def test_corpus_files_round_trip(tmp_path):
    corpus = ParallelCorpus(("a b", "c"), ("x", "y z"))
    write_corpus(corpus, str(tmp_path / "s.txt"), str(tmp_path / "t.txt"))
    assert load_corpus(str(tmp_path / "s.txt"), str(tmp_path / "t.txt")) == corpus


def test_first_merge():
    model = bpe_learn(["aaab aaab"], 1)
    assert list(model.merges) == [("a", "a")]


def test_zero_merges():
    assert bpe_learn(["aaab"], 0).merges == ()


def test_early_stop_without_repeated_pairs():
    model = bpe_learn(["a b c d"], 10)
    assert model.merges == ()
    assert len(bpe_learn(["ab ab"], 10).merges) < 10


def test_learn_rejects_bad_input():
    with pytest.raises(DomainError):
        bpe_learn([], 5)
    with pytest.raises(DomainError):
        bpe_learn(["a"], -1)


def test_apply_examples():
    model = bpe_learn(["aaab aaab"], 1)
    assert bpe_apply(model, "aaab") == "aa@@ a@@ b"
    assert bpe_apply(model, "xyz") == "x@@ y@@ z"
    full = bpe_learn(["ab ab ab"], 5)
    assert bpe_apply(full, "ab") == "ab"
    assert bpe_apply(full, "ab ab") == "ab ab"


def test_round_trip_on_random_tokens():
    rng = random.Random(0)
    corpus = [" ".join("".join(rng.choice("abcdकखग") for _ in range(rng.randint(1, 8)))
                       for _ in range(10)) for _ in range(50)]
    model = bpe_learn(corpus, 40)
    for _ in range(10000):
        token = "".join(rng.choice("abcdeकखगघ") for _ in range(rng.randint(1, 10)))
        assert bpe_restore(bpe_apply(model, token)) == token


def test_learning_is_deterministic():
    corpus = ["the cat sat on the mat", "the hat"]
    assert bpe_learn(corpus, 20) == bpe_learn(corpus, 20)


def test_more_merges_never_add_subwords():
    corpus = ["lower lowest newer newest wider widest low new wide"] * 3
    words = corpus[0].split()
    previous = None
    for n in range(0, 15):
        model = bpe_learn(corpus, n)
        counts = [len(segment_word(model, word)) for word in words]
        if previous is not None:
            assert all(now <= before for now, before in zip(counts, previous))
        previous = counts


def test_merge_file_round_trip(tmp_path):
    model = bpe_learn(["aaab aaab abab"], 3)
    path = tmp_path / "merges.txt"
    save_merges(model, str(path))
    assert path.read_text(encoding="utf-8").splitlines()[0] == "#sajatiya-bpe v1"
    assert load_merges(str(path)).merges == model.merges


def test_merge_file_errors(tmp_path):
    path = tmp_path / "merges.txt"
    path.write_text("a b\n", encoding="utf-8")
    with pytest.raises(ResourceLoadError):
        load_merges(str(path))
    path.write_text("#sajatiya-bpe v1\na b c\n", encoding="utf-8")
    with pytest.raises(ResourceLoadError) as excinfo:
        load_merges(str(path))
    assert excinfo.value.line == 2


def test_duplicate_merges_rejected():
    with pytest.raises(DomainError):
        BPEModel(merges=(("a", "b"), ("a", "b")))
