#!/usr/bin/env python3
"""
Tests for Brahmic-to-Devanagari transliteration
"""

import random

import pytest

from core.script import (
    DEVANAGARI_START,
    LANGUAGE_PAIRS,
    SCRIPT_BLOCKS,
    block_of,
    convert_script,
    detect_script,
    from_devanagari,
    resolve_script,
    script_for_language,
    standardize,
    to_devanagari,
    transliterate_lines,
)

BRAHMIC_RANGE = range(0x0900, 0x0D80)
OTHER_CHARS = "abcXYZ019 ,.-\t!?"


def _random_mixed(rng: random.Random, length: int) -> str:
    chars = []
    for _ in range(length):
        if rng.random() < 0.7:
            chars.append(chr(rng.choice(BRAHMIC_RANGE)))
        else:
            chars.append(rng.choice(OTHER_CHARS))
    return "".join(chars)


def test_block_layout():
    names = ["Devanagari", "Bengali", "Gurmukhi", "Gujarati", "Oriya",
             "Tamil", "Telugu", "Kannada", "Malayalam"]
    for k, name in enumerate(names):
        assert SCRIPT_BLOCKS[name].block_start == 0x0900 + k * 0x80
        assert SCRIPT_BLOCKS[name].block_length == 0x80
    for a in names:
        for b in names:
            if a != b:
                assert not SCRIPT_BLOCKS[a].contains(SCRIPT_BLOCKS[b].block_start)


def test_detect_script():
    assert detect_script("नमस्ते") == "Devanagari"
    assert detect_script("hello") == "unknown"
    assert detect_script("কা") == "Bengali"
    assert detect_script("") == "unknown"


def test_detect_script_tie_goes_to_earlier_block():
    assert detect_script("কक") == "Devanagari"


def test_devanagari_is_identity():
    result = to_devanagari("कमल")
    assert result.text == "कमल"
    assert result.passthrough_count == 0


def test_bengali_offset():
    assert to_devanagari("ক").text == "क"


def test_non_brahmic_passthrough():
    result = to_devanagari("abc")
    assert result.text == "abc"
    assert result.passthrough_count == 3


# Bengali codepoints and their Devanagari counterparts on the Unicode charts
BENGALI_CHART = {
    0x0985: 0x0905, 0x0986: 0x0906, 0x0987: 0x0907, 0x0988: 0x0908,
    0x0989: 0x0909, 0x098F: 0x090F, 0x0993: 0x0913, 0x0995: 0x0915,
    0x0996: 0x0916, 0x0997: 0x0917, 0x099A: 0x091A, 0x099C: 0x091C,
    0x09A4: 0x0924, 0x09A6: 0x0926, 0x09A8: 0x0928, 0x09AA: 0x092A,
    0x09AE: 0x092E, 0x09B0: 0x0930, 0x09B8: 0x0938, 0x09BE: 0x093E,
}


@pytest.mark.parametrize("bengali,devanagari", sorted(BENGALI_CHART.items()))
def test_bengali_chart(bengali, devanagari):
    assert to_devanagari(chr(bengali)).text == chr(devanagari)


def test_transliteration_properties():
    rng = random.Random(42)
    for _ in range(10000):
        text = _random_mixed(rng, rng.randint(0, 12))
        result = to_devanagari(text)
        # length preservation
        assert len(result.text) == len(text)
        # idempotence
        assert to_devanagari(result.text).text == result.text
        for before, after in zip(text, result.text):
            block = block_of(ord(before))
            if block is None:
                assert before == after
            else:
                # offset consistency
                assert ord(after) - DEVANAGARI_START == ord(before) - block.block_start
                assert SCRIPT_BLOCKS["Devanagari"].contains(ord(after))
        assert result.passthrough_count == sum(1 for c in text if block_of(ord(c)) is None)


def test_block_start_maps_to_devanagari_start():
    result = to_devanagari(chr(0x0B80))
    assert result.text == chr(0x0900)
    assert result.source_script == "Tamil"


def test_from_devanagari_round_trip():
    telugu = "కమల"
    assert from_devanagari(standardize(telugu), "Telugu") == telugu
    assert from_devanagari("abc", "Tamil") == "abc"


def test_language_registry():
    assert script_for_language("BN") == "Bengali"
    assert script_for_language("ko") == "Devanagari"
    assert len(LANGUAGE_PAIRS) == 13
    assert all(pair.startswith("hi-") for pair in LANGUAGE_PAIRS)
    with pytest.raises(KeyError):
        script_for_language("xx")


def test_transliterate_lines():
    assert list(transliterate_lines(["ক a", "कमल"])) == ["क a", "कमल"]


def test_resolve_script_ignores_case():
    assert resolve_script("devanagari") == "Devanagari"
    assert resolve_script(" TELUGU ") == "Telugu"
    with pytest.raises(KeyError):
        resolve_script("latin")


def test_convert_script_from_any_block():
    assert convert_script("কমল", "Devanagari") == "कमल"
    assert convert_script("কমল", "Telugu") == "కమల"
    assert convert_script("कमल abc", "Bengali") == "কমল abc"
