# core/script.py
"""
Unicode-offset transliteration of the Brahmic scripts into Devanagari.

The nine Brahmic blocks are laid out at fixed 0x80 strides starting at
U+0900, so a character keeps its offset inside its block when moved into
the Devanagari block.
"""

import logging
import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

logger = logging.getLogger(__name__)

DEVANAGARI_START = 0x0900
BLOCK_LENGTH = 0x80
UNKNOWN_SCRIPT = "unknown"


@dataclass(frozen=True)
class ScriptBlock:
    """A Brahmic Unicode block"""
    name: str
    block_start: int
    block_length: int = BLOCK_LENGTH

    def contains(self, codepoint: int) -> bool:
        return self.block_start <= codepoint < self.block_start + self.block_length


_SCRIPT_ORDER = (
    "Devanagari",
    "Bengali",
    "Gurmukhi",
    "Gujarati",
    "Oriya",
    "Tamil",
    "Telugu",
    "Kannada",
    "Malayalam",
)

SCRIPT_BLOCKS: Dict[str, ScriptBlock] = {
    name: ScriptBlock(name=name, block_start=DEVANAGARI_START + k * BLOCK_LENGTH)
    for k, name in enumerate(_SCRIPT_ORDER)
}

_BRAHMIC_END = DEVANAGARI_START + len(_SCRIPT_ORDER) * BLOCK_LENGTH

# Languages of the challenge dataset and the script each is written in
LANGUAGE_SCRIPTS: Dict[str, str] = {
    "hi": "Devanagari",
    "mr": "Devanagari",
    "ko": "Devanagari",
    "ne": "Devanagari",
    "sa": "Devanagari",
    "bn": "Bengali",
    "as": "Bengali",
    "pa": "Gurmukhi",
    "gu": "Gujarati",
    "or": "Oriya",
    "ta": "Tamil",
    "te": "Telugu",
    "kn": "Kannada",
    "ml": "Malayalam",
}

PIVOT_LANGUAGE = "hi"
LANGUAGE_PAIRS: Tuple[str, ...] = tuple(
    f"{PIVOT_LANGUAGE}-{code}" for code in LANGUAGE_SCRIPTS if code != PIVOT_LANGUAGE
)


@dataclass(frozen=True)
class TransliteratedText:
    text: str
    source_script: str
    passthrough_count: int
    unassigned_count: int = 0


def block_of(codepoint: int) -> Optional[ScriptBlock]:
    """Return the Brahmic block holding a codepoint, if any"""
    if not DEVANAGARI_START <= codepoint < _BRAHMIC_END:
        return None
    return SCRIPT_BLOCKS[_SCRIPT_ORDER[(codepoint - DEVANAGARI_START) // BLOCK_LENGTH]]


def script_for_language(code: str) -> str:
    """Native script of a language code (case-insensitive)"""
    try:
        return LANGUAGE_SCRIPTS[code.lower()]
    except KeyError:
        raise KeyError(f"unknown language code: {code}") from None


def detect_script(text: str) -> str:
    """Majority Brahmic script of the text; ties go to the earlier block"""
    counts: Counter = Counter()
    for char in text:
        block = block_of(ord(char))
        if block is not None:
            counts[block.name] += 1
    if not counts:
        return UNKNOWN_SCRIPT
    return max(_SCRIPT_ORDER, key=lambda name: (counts[name], -_SCRIPT_ORDER.index(name)))


def to_devanagari(text: str) -> TransliteratedText:
    """Move every Brahmic codepoint into the Devanagari block by offset"""
    source_script = detect_script(text)
    out = []
    passthrough = 0
    unassigned = 0
    for char in text:
        codepoint = ord(char)
        block = block_of(codepoint)
        if block is None:
            out.append(char)
            passthrough += 1
            continue
        mapped = chr(DEVANAGARI_START + (codepoint - block.block_start))
        if unicodedata.category(mapped) == "Cn":
            unassigned += 1
        out.append(mapped)

    if unassigned:
        logger.debug(f"{unassigned} character(s) landed on unassigned Devanagari codepoints")

    return TransliteratedText(
        text="".join(out),
        source_script=source_script,
        passthrough_count=passthrough,
        unassigned_count=unassigned,
    )


def standardize(text: str) -> str:
    """Devanagari form of a word or sentence"""
    return to_devanagari(text).text


def from_devanagari(text: str, script: str) -> str:
    """Inverse offset mapping for text that came from a single block"""
    target = SCRIPT_BLOCKS[script]
    out = []
    for char in text:
        codepoint = ord(char)
        if SCRIPT_BLOCKS["Devanagari"].contains(codepoint):
            out.append(chr(target.block_start + (codepoint - DEVANAGARI_START)))
        else:
            out.append(char)
    return "".join(out)


def resolve_script(name: str) -> str:
    """Canonical block name for a case-insensitive script name"""
    for script in _SCRIPT_ORDER:
        if script.lower() == name.strip().lower():
            return script
    raise KeyError(f"unknown script: {name}")


def convert_script(text: str, script: str) -> str:
    """Text from any supported block rewritten into `script`"""
    standardized = standardize(text)
    if script == "Devanagari":
        return standardized
    return from_devanagari(standardized, script)


def transliterate_lines(lines: Iterable[str]) -> Iterable[str]:
    """Line-by-line Devanagari standardization"""
    for line in lines:
        yield standardize(line)
