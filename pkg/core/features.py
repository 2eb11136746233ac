# core/features.py
"""
Fixed-order feature vectors per candidate pair.

Layouts (parts are concatenated in the order they are named):
    WLS      [S1, S2]                                      2
    PVS      [PV_S | PV_T | PCV_S | PCV_T | P_S1 | P_S2]   4F + 2
    XL:tag   [WV_S | WV_T | CV_S | CV_T | s1 | s2]         4d + 2
    XL:tag+WLS                                             4d + 4
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from core.context import (
    COGNATE,
    ContextDictionary,
    WordPair,
    context_of,
    empty_context,
    summarize,
)
from core.embeddings import EmbeddingTable, crosslingual_features
from core.exceptions import ConfigurationError
from core.phonology import PhoneticFeatureTable, phonetic_features
from core.strsim import DEFAULT_CONTEXT_CAP, DEFAULT_Q_LEN, wls_features

logger = logging.getLogger(__name__)

XL_ALIASES = {"MUSE": "MUSE", "VECMAP": "VecMap", "XLMR": "XLMR", "XLM-R": "XLMR"}

# Feature sets `ablate` compares when none are named
DEFAULT_EXPERIMENT_MATRIX = ("WLS", "PVS", "XL:MUSE", "XL:VecMap", "XL:XLMR", "XL:MUSE+WLS")


@dataclass(frozen=True)
class FeatureSetSpec:
    """Parsed feature-set name, e.g. `XL:MUSE+WLS`"""
    name: str
    parts: Tuple[Tuple[str, str], ...]

    @classmethod
    def parse(cls, name: str) -> "FeatureSetSpec":
        parts = []
        for raw in name.split("+"):
            token = raw.strip()
            upper = token.upper()
            if upper in ("WLS", "PVS"):
                parts.append((upper, ""))
            elif upper.startswith("XL:") and token[3:]:
                tag = token[3:]
                parts.append(("XL", XL_ALIASES.get(tag.upper(), tag)))
            elif upper in XL_ALIASES:
                parts.append(("XL", XL_ALIASES[upper]))
            else:
                raise ConfigurationError(f"unknown feature set part: {token!r} in {name!r}")
        if len(set(parts)) != len(parts):
            raise ConfigurationError(f"feature set {name!r} repeats a part")
        canonical = "+".join(kind if kind != "XL" else f"XL:{tag}" for kind, tag in parts)
        return cls(name=canonical, parts=tuple(parts))

    @property
    def xl_tags(self) -> List[str]:
        return [tag for kind, tag in self.parts if kind == "XL"]

    @property
    def uses_phonetics(self) -> bool:
        return any(kind == "PVS" for kind, _ in self.parts)


@dataclass(frozen=True)
class FeatureResources:
    """Everything feature assembly may read; immutable once built"""
    context_src: ContextDictionary = field(default_factory=empty_context)
    context_tgt: ContextDictionary = field(default_factory=empty_context)
    phonetic_table: Optional[PhoneticFeatureTable] = None
    embeddings: Dict[str, Tuple[EmbeddingTable, EmbeddingTable]] = field(default_factory=dict)
    q_len: int = DEFAULT_Q_LEN
    context_cap: int = DEFAULT_CONTEXT_CAP
    skip_oov_context: bool = False

    def require(self, spec: FeatureSetSpec) -> None:
        """Fail before any pair is processed if the set cannot be built"""
        if spec.uses_phonetics and self.phonetic_table is None:
            raise ConfigurationError(f"{spec.name} needs a phonetic feature table")
        for tag in spec.xl_tags:
            if tag not in self.embeddings:
                raise ConfigurationError(f"{spec.name} needs embeddings tagged {tag!r}")
            src, tgt = self.embeddings[tag]
            if src.dimension != tgt.dimension:
                raise ConfigurationError(
                    f"{tag} embeddings disagree on dimension: {src.dimension} vs {tgt.dimension}"
                )

    def dimension(self, spec: FeatureSetSpec) -> int:
        total = 0
        for kind, tag in spec.parts:
            if kind == "WLS":
                total += 2
            elif kind == "PVS":
                total += 4 * self.phonetic_table.dimension + 2
            else:
                total += 4 * self.embeddings[tag][0].dimension + 2
        return total

    def feature_names(self, spec: FeatureSetSpec) -> List[str]:
        names: List[str] = []
        for kind, tag in spec.parts:
            if kind == "WLS":
                names += ["WLS_S1", "WLS_S2"]
            elif kind == "PVS":
                f = self.phonetic_table.dimension
                for block in ("PV_S", "PV_T", "PCV_S", "PCV_T"):
                    names += [f"{block}_{i}" for i in range(f)]
                names += ["P_S1", "P_S2"]
            else:
                d = self.embeddings[tag][0].dimension
                for block in ("WV_S", "WV_T", "CV_S", "CV_T"):
                    names += [f"{tag}_{block}_{i}" for i in range(d)]
                names += [f"{tag}_s1", f"{tag}_s2"]
        return names


@dataclass(frozen=True)
class FeatureVector:
    feature_set: str
    values: np.ndarray
    label: int
    pair_id: str
    flags: Dict[str, bool] = field(default_factory=dict)


@dataclass
class DatasetStats:
    pairs: int = 0
    positives: int = 0
    negatives: int = 0
    word_oov_src: float = 0.0
    word_oov_tgt: float = 0.0
    context_token_oov: float = 0.0
    context_miss_src: float = 0.0
    context_miss_tgt: float = 0.0
    degenerate_pairs: int = 0
    language_pairs: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    matches_published: Dict[str, Optional[bool]] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return dict(self.__dict__)


def assemble(
    pair: WordPair, resources: FeatureResources, feature_set: str
) -> FeatureVector:
    """One feature vector for one pair under a named feature set"""
    spec = FeatureSetSpec.parse(feature_set)
    resources.require(spec)
    return _assemble(pair, resources, spec)


def _assemble(pair: WordPair, resources: FeatureResources, spec: FeatureSetSpec) -> FeatureVector:
    ctx_s = context_of(resources.context_src, pair.word_s)
    ctx_t = context_of(resources.context_tgt, pair.word_t)
    blocks: List[np.ndarray] = []
    flags = {"context_miss_s": ctx_s.miss, "context_miss_t": ctx_t.miss}
    ctx_oov = [0, 0]

    for kind, tag in spec.parts:
        if kind == "WLS":
            scores = wls_features(
                pair.word_s, pair.word_t, ctx_s.tokens, ctx_t.tokens,
                q_len=resources.q_len, cap=resources.context_cap,
            )
            blocks.append(np.array([scores.s1, scores.s2]))
            flags["degenerate"] = flags.get("degenerate", False) or scores.degenerate
        elif kind == "PVS":
            phon = phonetic_features(
                pair.word_s, pair.word_t, ctx_s.tokens, ctx_t.tokens, resources.phonetic_table
            )
            blocks.append(phon.as_array())
            flags["phonetic_oov"] = phon.flags["oov_s"] or phon.flags["oov_t"]
        else:
            src, tgt = resources.embeddings[tag]
            xl = crosslingual_features(
                pair.word_s, pair.word_t, ctx_s.tokens, ctx_t.tokens, src, tgt,
                skip_oov_context=resources.skip_oov_context,
            )
            blocks.append(xl.as_array())
            flags[f"{tag}_oov_s"] = xl.oov_flags[0]
            flags[f"{tag}_oov_t"] = xl.oov_flags[1]
            flags["degenerate"] = flags.get("degenerate", False) or xl.degenerate["word"]
            ctx_oov[0] += sum(xl.context_oov)
            ctx_oov[1] += sum(xl.context_total)

    values = np.concatenate(blocks) if blocks else np.zeros(0)
    flags["context_oov_tokens"] = ctx_oov[0]
    flags["context_tokens"] = ctx_oov[1]
    return FeatureVector(
        feature_set=spec.name,
        values=values,
        label=pair.label,
        pair_id=pair.pair_id,
        flags=flags,
    )


def assemble_dataset(
    pairs: Sequence[WordPair],
    resources: FeatureResources,
    feature_set: str,
    threads: int = 1,
    progress: bool = False,
) -> Tuple[List[FeatureVector], DatasetStats]:
    """One vector per pair in input order, plus OOV / coverage / label statistics"""
    spec = FeatureSetSpec.parse(feature_set)
    resources.require(spec)
    if not pairs:
        return [], DatasetStats()

    def build(pair: WordPair) -> FeatureVector:
        return _assemble(pair, resources, spec)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            iterator = executor.map(build, pairs)
            vectors = list(tqdm(iterator, total=len(pairs), desc=spec.name, disable=not progress))
    else:
        vectors = [build(pair) for pair in tqdm(pairs, desc=spec.name, disable=not progress)]

    stats = _dataset_stats(pairs, vectors, spec)
    logger.info(
        f"🧮 Assembled {len(vectors)} x {len(vectors[0].values)} {spec.name} features "
        f"({stats.positives} cognates / {stats.negatives} non-cognates)"
    )
    return vectors, stats


def _dataset_stats(
    pairs: Sequence[WordPair], vectors: Sequence[FeatureVector], spec: FeatureSetSpec
) -> DatasetStats:
    n = len(vectors)
    positives = sum(1 for v in vectors if v.label == COGNATE)
    summary = summarize(pairs)

    def rate(key: str) -> float:
        return sum(1 for v in vectors if v.flags.get(key)) / n

    tags = spec.xl_tags
    oov_src = np.mean([rate(f"{tag}_oov_s") for tag in tags]) if tags else 0.0
    oov_tgt = np.mean([rate(f"{tag}_oov_t") for tag in tags]) if tags else 0.0
    ctx_tokens = sum(v.flags["context_tokens"] for v in vectors)
    ctx_oov = sum(v.flags["context_oov_tokens"] for v in vectors)

    return DatasetStats(
        pairs=n,
        positives=positives,
        negatives=n - positives,
        word_oov_src=float(oov_src),
        word_oov_tgt=float(oov_tgt),
        context_token_oov=ctx_oov / ctx_tokens if ctx_tokens else 0.0,
        context_miss_src=rate("context_miss_s"),
        context_miss_tgt=rate("context_miss_t"),
        degenerate_pairs=sum(1 for v in vectors if v.flags.get("degenerate")),
        language_pairs=summary.language_pairs,
        matches_published=summary.matches_published(),
    )


def to_matrix(vectors: Sequence[FeatureVector]) -> Tuple[np.ndarray, np.ndarray]:
    """Stack vectors into (X, y)"""
    if not vectors:
        return np.zeros((0, 0)), np.zeros(0, dtype=int)
    return np.vstack([v.values for v in vectors]), np.array([v.label for v in vectors], dtype=int)


def export_csv(
    vectors: Sequence[FeatureVector], resources: FeatureResources, feature_set: str, path: str
) -> None:
    """Feature matrix as CSV, one column per named feature plus pair_id and label"""
    spec = FeatureSetSpec.parse(feature_set)
    X, y = to_matrix(vectors)
    frame = pd.DataFrame(X, columns=resources.feature_names(spec))
    frame.insert(0, "pair_id", [v.pair_id for v in vectors])
    frame["label"] = y
    frame.to_csv(path, index=False)
    logger.info(f"💾 Wrote {len(frame)} feature rows to {path}")
