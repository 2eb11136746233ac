# core/phonology.py
"""
Phonetic vectors and similarity (PVS).

Each Devanagari character maps to a binary phonological feature vector read
from a CSV table; a word's vector is the mean of its covered characters, and
a context's vector is the mean of its words' vectors.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from core.exceptions import DomainError, ResourceLoadError
from core.strsim import normalize_pair

logger = logging.getLogger(__name__)

DEFAULT_TABLE_PATH = Path(__file__).resolve().parent.parent / "data" / "phonetic_features.csv"

# Column meaning of the bundled table (f1..f38)
PHONETIC_FEATURE_NAMES: Tuple[str, ...] = (
    "vowel", "consonant", "nukta", "halanta", "anusvara", "misc",
    "short", "long",
    "weak", "medium", "strong",
    "independent", "dependent",
    "plosive", "fricative", "central_approximant", "lateral_approximant", "flap",
    "velar", "palatal", "retroflex", "dental", "labial",
    "unaspirated", "aspirated",
    "voiceless", "voiced",
    "oral", "nasal",
    "front", "central", "back",
    "close", "close_mid", "open_mid", "open",
    "unrounded", "rounded",
)


@dataclass(frozen=True)
class PhoneticFeatureTable:
    entries: Dict[int, np.ndarray]
    dimension: int
    source: str = ""

    def vector(self, char: str) -> Optional[np.ndarray]:
        return self.entries.get(ord(char))

    def __contains__(self, char: str) -> bool:
        return ord(char) in self.entries

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class WordVector:
    vector: np.ndarray
    covered: int
    oov: bool


@dataclass(frozen=True)
class PhoneticFeatureSet:
    pv_s: np.ndarray
    pv_t: np.ndarray
    pcv_s: np.ndarray
    pcv_t: np.ndarray
    p_s1: float
    p_s2: float
    score1: float = 0.0
    score2: float = 0.0
    flags: Dict[str, bool] = field(default_factory=dict)

    def as_array(self) -> np.ndarray:
        """[PV_S | PV_T | PCV_S | PCV_T | P_S1 | P_S2]"""
        return np.concatenate(
            [self.pv_s, self.pv_t, self.pcv_s, self.pcv_t, [self.p_s1, self.p_s2]]
        )


def load_phonetic_table(path: Optional[str] = None) -> PhoneticFeatureTable:
    """Read a `codepoint_hex,f1,...,fF` CSV of 0/1 values"""
    table_path = Path(path) if path else DEFAULT_TABLE_PATH
    if not table_path.exists():
        raise ResourceLoadError(table_path, "phonetic table not found")

    try:
        frame = pd.read_csv(table_path, dtype=str, keep_default_na=False, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ResourceLoadError(table_path, f"cannot parse phonetic table: {e}") from e

    if len(frame.columns) < 2 or frame.columns[0] != "codepoint_hex":
        raise ResourceLoadError(table_path, "header must start with codepoint_hex", line=1)

    dimension = len(frame.columns) - 1
    entries: Dict[int, np.ndarray] = {}
    for row_index, row in enumerate(frame.itertuples(index=False, name=None)):
        line = row_index + 2
        try:
            codepoint = int(row[0], 16)
        except ValueError:
            raise ResourceLoadError(table_path, f"bad codepoint {row[0]!r}", line=line) from None
        values = row[1:]
        if any(value not in ("0", "1") for value in values):
            raise ResourceLoadError(table_path, "feature values must be 0 or 1", line=line)
        if codepoint in entries:
            logger.warning(f"⚠️ {table_path}:{line}: duplicate codepoint {row[0]}, keeping the first")
            continue
        entries[codepoint] = np.array([float(value) for value in values])

    logger.debug(f"Loaded {len(entries)} phonetic entries (F={dimension}) from {table_path}")
    return PhoneticFeatureTable(entries=entries, dimension=dimension, source=str(table_path))


def word_phonetic_vector_scored(word: str, table: PhoneticFeatureTable) -> WordVector:
    vectors = [table.entries[ord(c)] for c in word if ord(c) in table.entries]
    if not vectors:
        return WordVector(np.zeros(table.dimension), covered=0, oov=True)
    return WordVector(np.mean(vectors, axis=0), covered=len(vectors), oov=False)


def word_phonetic_vector(word: str, table: PhoneticFeatureTable) -> np.ndarray:
    """Mean feature vector of the word's covered characters (zeros if none)"""
    return word_phonetic_vector_scored(word, table).vector


def context_phonetic_vector(tokens: Sequence[str], table: PhoneticFeatureTable) -> np.ndarray:
    if not tokens:
        return np.zeros(table.dimension)
    return np.mean([word_phonetic_vector(token, table) for token in tokens], axis=0)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Plain cosine similarity; 0.0 when either vector is zero"""
    if u.shape != v.shape:
        raise DomainError(f"dimension mismatch: {u.shape} vs {v.shape}")
    norm = np.linalg.norm(u) * np.linalg.norm(v)
    if norm == 0:
        return 0.0
    return float(np.dot(u, v) / norm)


def _clamp01(value: float) -> float:
    return min(max(value, 0.0), 1.0)


def phonetic_features(
    word_s: str,
    word_t: str,
    context_s: Sequence[str],
    context_t: Sequence[str],
    table: PhoneticFeatureTable,
) -> PhoneticFeatureSet:
    """PV/PCV vectors for both sides plus their normalized cosine scores"""
    pv_s = word_phonetic_vector_scored(word_s, table)
    pv_t = word_phonetic_vector_scored(word_t, table)
    pcv_s = context_phonetic_vector(context_s, table)
    pcv_t = context_phonetic_vector(context_t, table)

    score1 = _clamp01(cosine(pv_s.vector, pv_t.vector))
    empty_context = not context_s or not context_t
    score2 = 0.0 if empty_context else _clamp01(cosine(pcv_s, pcv_t))
    scores = normalize_pair(score1, score2)

    return PhoneticFeatureSet(
        pv_s=pv_s.vector,
        pv_t=pv_t.vector,
        pcv_s=pcv_s,
        pcv_t=pcv_t,
        p_s1=scores.s1,
        p_s2=scores.s2,
        score1=score1,
        score2=score2,
        flags={
            "oov_s": pv_s.oov,
            "oov_t": pv_t.oov,
            "empty_context": empty_context,
        },
    )
