# core/strsim.py
"""
Orthographic similarity: normalized edit distance, q-gram distance and the
weighted lexical similarity (WLS) that blends them.

    WLS(p, q) = 0.75 * NEDsim(p, q) + 0.25 * QGsim(p, q)

Word-pair and contextual WLS scores are turned into a feature pair with
normalize_pair(), which rescales the two scores to sum to one.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import List, Sequence, Tuple

from rapidfuzz.distance import Levenshtein

from core.exceptions import DomainError

logger = logging.getLogger(__name__)

DEFAULT_Q_LEN = 2
NED_WEIGHT = 0.75
QGRAM_WEIGHT = 0.25
DEFAULT_CONTEXT_CAP = 50


@dataclass(frozen=True)
class Similarity:
    """A similarity value plus whether it came from a degenerate input"""
    value: float
    degenerate: bool = False



@dataclass(frozen=True)
class SimilarityScorePair:
    score1: float
    score2: float
    s1: float
    s2: float
    degenerate: bool = False


def levenshtein(p: str, q: str) -> int:
    """Unit-cost edit distance over codepoints"""
    return Levenshtein.distance(p, q)


def ned_similarity_scored(p: str, q: str) -> Similarity:
    longest = max(len(p), len(q))
    if longest == 0:
        return Similarity(1.0, degenerate=True)
    return Similarity(1.0 - levenshtein(p, q) / longest)


def ned_similarity(p: str, q: str) -> float:
    """1 - lev(p, q) / max(|p|, |q|); two empty strings count as identical"""
    return ned_similarity_scored(p, q).value


def qgrams(text: str, q_len: int) -> Counter:
    """Multiset of contiguous q_len-codepoint substrings"""
    if q_len < 1:
        raise DomainError(f"q_len must be >= 1, got {q_len}")
    return Counter(text[i:i + q_len] for i in range(len(text) - q_len + 1))


def qgram_distance(p: str, q: str, q_len: int = DEFAULT_Q_LEN) -> int:
    """L1 distance between the q-gram count profiles of p and q"""
    grams_p = qgrams(p, q_len)
    grams_q = qgrams(q, q_len)
    return sum(abs(grams_p[g] - grams_q[g]) for g in grams_p.keys() | grams_q.keys())


def qgram_similarity_scored(p: str, q: str, q_len: int = DEFAULT_Q_LEN) -> Similarity:
    if q_len < 1:
        raise DomainError(f"q_len must be >= 1, got {q_len}")
    total = max(len(p) - q_len + 1, 0) + max(len(q) - q_len + 1, 0)
    if total == 0:
        return Similarity(1.0, degenerate=True)
    return Similarity(1.0 - qgram_distance(p, q, q_len) / total)


def qgram_similarity(p: str, q: str, q_len: int = DEFAULT_Q_LEN) -> float:
    """1 - qgram_distance / (Np + Nq); 1.0 when neither side has a q-gram"""
    return qgram_similarity_scored(p, q, q_len).value


def wls_scored(p: str, q: str, q_len: int = DEFAULT_Q_LEN) -> Similarity:
    ned = ned_similarity_scored(p, q)
    qgram = qgram_similarity_scored(p, q, q_len)
    return Similarity(
        NED_WEIGHT * ned.value + QGRAM_WEIGHT * qgram.value,
        degenerate=ned.degenerate,
    )


def wls(p: str, q: str, q_len: int = DEFAULT_Q_LEN) -> float:
    """Weighted lexical similarity in [0, 1]"""
    return wls_scored(p, q, q_len).value


def normalize_pair(score1: float, score2: float) -> SimilarityScorePair:
    """Rescale two non-negative scores to sum to one (0.5/0.5 when both are zero)"""
    for name, score in (("score1", score1), ("score2", score2)):
        if not math.isfinite(score) or score < 0:
            raise DomainError(f"{name} must be finite and non-negative, got {score}")

    total = score1 + score2
    if total == 0:
        return SimilarityScorePair(score1, score2, 0.5, 0.5, degenerate=True)
    return SimilarityScorePair(score1, score2, score1 / total, score2 / total)


def most_frequent(tokens: Sequence[str], cap: int) -> List[str]:
    """The cap most frequent tokens, ties in first-occurrence order"""
    counts = Counter(tokens)
    order = {token: i for i, token in reversed(list(enumerate(tokens)))}
    ranked = sorted(counts, key=lambda token: (-counts[token], order[token]))
    return ranked[:cap]


def context_wls(
    src_tokens: Sequence[str],
    tgt_tokens: Sequence[str],
    q_len: int = DEFAULT_Q_LEN,
    cap: int = DEFAULT_CONTEXT_CAP,
) -> float:
    """Mean WLS over the Cartesian product of the two (capped) contexts"""
    src = most_frequent(src_tokens, cap)
    tgt = most_frequent(tgt_tokens, cap)
    if not src or not tgt:
        return 0.0
    scores = [wls(a, b, q_len) for a, b in product(src, tgt)]
    return sum(scores) / len(scores)


def wls_features(
    word_s: str,
    word_t: str,
    context_s: Sequence[str],
    context_t: Sequence[str],
    q_len: int = DEFAULT_Q_LEN,
    cap: int = DEFAULT_CONTEXT_CAP,
) -> SimilarityScorePair:
    """Word-pair and contextual WLS, normalized into (S1, S2)"""
    score1 = wls(word_s, word_t, q_len)
    score2 = context_wls(context_s, context_t, q_len, cap)
    return normalize_pair(score1, score2)


def score_pairs(
    pairs: Sequence[Tuple[str, str]], metric: str, q_len: int = DEFAULT_Q_LEN
) -> List[float]:
    """Score word pairs with one of ned, qgram or wls"""
    metrics = {
        "ned": lambda p, q: ned_similarity(p, q),
        "qgram": lambda p, q: qgram_similarity(p, q, q_len),
        "wls": lambda p, q: wls(p, q, q_len),
    }
    if metric not in metrics:
        raise DomainError(f"unknown metric: {metric}")
    return [metrics[metric](p, q) for p, q in pairs]
