# core/embeddings.py
"""
Pre-aligned cross-lingual word vectors (word2vec text format) and the
angular similarity used on them:

    asim(u, v) = 1 - arccos(u.v / (|u| |v|)) / pi
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from core.exceptions import DomainError, ResourceLoadError
from core.script import standardize
from core.strsim import Similarity, normalize_pair

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmbeddingTable:
    language: str
    dimension: int
    vocab: Dict[str, np.ndarray]
    source_tag: str = ""
    path: str = ""

    def __contains__(self, word: str) -> bool:
        return word in self.vocab

    def __len__(self) -> int:
        return len(self.vocab)


@dataclass(frozen=True)
class Lookup:
    vector: np.ndarray
    oov: bool


@dataclass(frozen=True)
class CrossLingualFeatureSet:
    wv_s: np.ndarray
    wv_t: np.ndarray
    cv_s: np.ndarray
    cv_t: np.ndarray
    s1: float
    s2: float
    oov_flags: Tuple[bool, bool, bool, bool]
    score1: float = 0.0
    score2: float = 0.0
    context_oov: Tuple[int, int] = (0, 0)
    context_total: Tuple[int, int] = (0, 0)
    degenerate: Dict[str, bool] = field(default_factory=dict)

    def as_array(self) -> np.ndarray:
        """[WV_S | WV_T | CV_S | CV_T | s1 | s2]"""
        return np.concatenate([self.wv_s, self.wv_t, self.cv_s, self.cv_t, [self.s1, self.s2]])


def load_embeddings(
    path: str, expected_language: str = "", source_tag: str = ""
) -> EmbeddingTable:
    """
    Parse a word2vec text file: `<count> <dim>` header, then `word v1 ... vd`
    rows. Words are keyed by their Devanagari form.
    """
    file_path = Path(path)
    if not file_path.exists():
        raise ResourceLoadError(file_path, "embedding file not found")

    vocab: Dict[str, np.ndarray] = {}
    duplicates = 0
    with open(file_path, "r", encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 2:
            raise ResourceLoadError(file_path, "header must be '<vocab_count> <dimension>'", line=1)
        try:
            declared_count, dimension = int(header[0]), int(header[1])
        except ValueError:
            raise ResourceLoadError(file_path, "header values must be integers", line=1) from None
        if dimension <= 0:
            raise ResourceLoadError(file_path, f"dimension must be positive, got {dimension}", line=1)

        for line_no, raw in enumerate(f, start=2):
            parts = raw.rstrip("\n").rstrip("\r").split(" ")
            parts = [part for part in parts if part != ""]
            if not parts:
                continue
            word, components = parts[0], parts[1:]
            if len(components) != dimension:
                raise ResourceLoadError(
                    file_path,
                    f"expected {dimension} components for {word!r}, got {len(components)}",
                    line=line_no,
                )
            try:
                vector = np.array([float(c) for c in components])
            except ValueError:
                raise ResourceLoadError(
                    file_path, f"non-numeric component in row for {word!r}", line=line_no
                ) from None
            if not np.all(np.isfinite(vector)):
                raise ResourceLoadError(file_path, f"non-finite component for {word!r}", line=line_no)
            key = standardize(word)
            if key in vocab:
                duplicates += 1
                shown = repr(word) if key == word else f"{word!r} (as {key!r})"
                logger.warning(f"⚠️ {file_path}:{line_no}: duplicate word {shown}, keeping the first")
                continue
            vocab[key] = vector

    if declared_count != len(vocab) + duplicates:
        logger.warning(
            f"⚠️ {file_path}: header declares {declared_count} rows, found {len(vocab) + duplicates}"
        )

    logger.info(f"📦 Loaded {len(vocab)} vectors (d={dimension}) from {file_path}")
    return EmbeddingTable(
        language=expected_language,
        dimension=dimension,
        vocab=vocab,
        source_tag=source_tag,
        path=str(file_path),
    )


def lookup(table: EmbeddingTable, word: str) -> Lookup:
    """Stored vector, or the zero vector flagged as OOV"""
    vector = table.vocab.get(word) if word else None
    if vector is None:
        return Lookup(np.zeros(table.dimension), oov=True)
    return Lookup(vector, oov=False)


def angular_similarity_scored(u: np.ndarray, v: np.ndarray) -> Similarity:
    if u.shape != v.shape:
        raise DomainError(f"dimension mismatch: {u.shape} vs {v.shape}")
    norm_u = np.linalg.norm(u)
    norm_v = np.linalg.norm(v)
    if norm_u == 0 or norm_v == 0:
        return Similarity(0.0, degenerate=True)
    # Half-angle form of arccos(u.v / |u||v|); stays exact at 0 and pi
    unit_u = u / norm_u
    unit_v = v / norm_v
    angle = 2.0 * math.atan2(np.linalg.norm(unit_u - unit_v), np.linalg.norm(unit_u + unit_v))
    return Similarity(min(max(1.0 - angle / math.pi, 0.0), 1.0))


def angular_similarity(u: np.ndarray, v: np.ndarray) -> float:
    """Angular cosine similarity in [0, 1]; 0.0 if either side is the zero vector"""
    return angular_similarity_scored(u, v).value


def context_vector(
    table: EmbeddingTable, tokens: Sequence[str], skip_oov: bool = False
) -> Tuple[np.ndarray, int]:
    """Mean of the context lookups and the number of OOV tokens"""
    lookups: List[Lookup] = [lookup(table, token) for token in tokens]
    oov = sum(1 for item in lookups if item.oov)
    vectors = [item.vector for item in lookups if not (skip_oov and item.oov)]
    if not vectors:
        return np.zeros(table.dimension), oov
    return np.mean(vectors, axis=0), oov


def crosslingual_features(
    word_s: str,
    word_t: str,
    context_s: Sequence[str],
    context_t: Sequence[str],
    src_table: EmbeddingTable,
    tgt_table: EmbeddingTable,
    skip_oov_context: bool = False,
) -> CrossLingualFeatureSet:
    """Word and context vectors of both sides plus their normalized angular scores"""
    if src_table.dimension != tgt_table.dimension:
        raise DomainError(
            f"embedding dimensions differ: {src_table.dimension} vs {tgt_table.dimension}"
        )

    wv_s = lookup(src_table, word_s)
    wv_t = lookup(tgt_table, word_t)
    cv_s, oov_cs = context_vector(src_table, context_s, skip_oov_context)
    cv_t, oov_ct = context_vector(tgt_table, context_t, skip_oov_context)

    score1 = angular_similarity_scored(wv_s.vector, wv_t.vector)
    score2 = angular_similarity_scored(cv_s, cv_t)
    scores = normalize_pair(score1.value, score2.value)

    return CrossLingualFeatureSet(
        wv_s=wv_s.vector,
        wv_t=wv_t.vector,
        cv_s=cv_s,
        cv_t=cv_t,
        s1=scores.s1,
        s2=scores.s2,
        oov_flags=(
            wv_s.oov,
            wv_t.oov,
            oov_cs == len(context_s),
            oov_ct == len(context_t),
        ),
        score1=score1.value,
        score2=score2.value,
        context_oov=(oov_cs, oov_ct),
        context_total=(len(context_s), len(context_t)),
        degenerate={"word": score1.degenerate, "context": score2.degenerate},
    )

