# core/synthetic.py
"""
Deterministic synthetic cognate dataset.

Cognate targets are one-substitution edits of their source word and get an
embedding close to the source vector. Non-cognate targets are spelled from a
disjoint consonant set and get an unrelated random vector. Context tokens come
from one shared pool, so contexts carry no label signal.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Set

import numpy as np

from core.context import COGNATE, NON_COGNATE, ContextDictionary, WordPair, write_dataset
from core.embeddings import EmbeddingTable

logger = logging.getLogger(__name__)

# क..न and प..ह
SOURCE_ALPHABET = [chr(cp) for cp in range(0x0915, 0x0929)]
FOREIGN_ALPHABET = [chr(cp) for cp in range(0x092A, 0x093A)]
FIXTURE_STOPWORDS = ("और", "है", "का")


@dataclass(frozen=True)
class SyntheticData:
    pairs: List[WordPair]
    src_table: EmbeddingTable
    tgt_table: EmbeddingTable
    context_src: ContextDictionary
    context_tgt: ContextDictionary


@dataclass(frozen=True)
class FixturePaths:
    dataset: Path
    emb_src: Path
    emb_tgt: Path
    context_src: Path
    context_tgt: Path
    stopwords: Path


def _random_word(rng: np.random.Generator, alphabet: List[str], taken: Set[str]) -> str:
    while True:
        length = int(rng.integers(4, 7))
        word = "".join(alphabet[i] for i in rng.integers(0, len(alphabet), size=length))
        if word not in taken:
            taken.add(word)
            return word


def _substitute_one(rng: np.random.Generator, word: str, taken: Set[str]) -> str:
    while True:
        pos = int(rng.integers(0, len(word)))
        choices = [c for c in SOURCE_ALPHABET if c != word[pos]]
        edited = word[:pos] + choices[int(rng.integers(0, len(choices)))] + word[pos + 1:]
        if edited not in taken:
            taken.add(edited)
            return edited


def _unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.normal(size=dim)
    return v / np.linalg.norm(v)


def synthetic_dataset(
    n_pairs: int = 400,
    dim: int = 8,
    seed: int = 42,
    language_pair: str = "hi-mr",
    noise: float = 0.1,
    pool_size: int = 40,
) -> SyntheticData:
    """Half cognates, half non-cognates, shuffled; everything derives from seed"""
    rng = np.random.default_rng(seed)
    taken: Set[str] = set()
    pool = [_random_word(rng, SOURCE_ALPHABET + FOREIGN_ALPHABET, taken) for _ in range(pool_size)]

    src_vocab: Dict[str, np.ndarray] = {}
    tgt_vocab: Dict[str, np.ndarray] = {}
    for token in pool:
        vector = _unit(rng, dim)
        src_vocab[token] = vector
        tgt_vocab[token] = vector + noise * rng.normal(size=dim)

    src_ctx: Dict[str, tuple] = {}
    tgt_ctx: Dict[str, tuple] = {}

    def context() -> tuple:
        size = int(rng.integers(3, 7))
        return tuple(pool[i] for i in rng.integers(0, pool_size, size=size))

    rows = []
    n_cognates = n_pairs // 2
    for index in range(n_pairs):
        label = COGNATE if index < n_cognates else NON_COGNATE
        word_s = _random_word(rng, SOURCE_ALPHABET, taken)
        vec_s = _unit(rng, dim)
        if label == COGNATE:
            word_t = _substitute_one(rng, word_s, taken)
            vec_t = vec_s + noise * rng.normal(size=dim)
        else:
            word_t = _random_word(rng, FOREIGN_ALPHABET, taken)
            vec_t = _unit(rng, dim)
        src_vocab[word_s] = vec_s
        tgt_vocab[word_t] = vec_t
        src_ctx[word_s] = context()
        tgt_ctx[word_t] = context()
        rows.append((word_s, word_t, label))

    order = rng.permutation(n_pairs)
    pairs = [
        WordPair(
            word_s=rows[i][0],
            word_t=rows[i][1],
            language_pair=language_pair,
            label=rows[i][2],
            pair_id=f"synthetic:{position + 1}",
        )
        for position, i in enumerate(order)
    ]
    src_lang, _, tgt_lang = language_pair.partition("-")
    return SyntheticData(
        pairs=pairs,
        src_table=EmbeddingTable(src_lang, dim, src_vocab, source_tag="MUSE"),
        tgt_table=EmbeddingTable(tgt_lang, dim, tgt_vocab, source_tag="MUSE"),
        context_src=ContextDictionary(src_lang, src_ctx, stopwords_applied=False),
        context_tgt=ContextDictionary(tgt_lang, tgt_ctx, stopwords_applied=False),
    )


def _write_embeddings(table: EmbeddingTable, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{len(table.vocab)} {table.dimension}\n")
        for word, vector in table.vocab.items():
            f.write(word + " " + " ".join(f"{v:.6f}" for v in vector) + "\n")


def _write_wordnet_export(dictionary: ContextDictionary, path: Path) -> None:
    # Stopwords are mixed into the gloss so that filtering has something to remove
    with open(path, "w", encoding="utf-8") as f:
        for word, tokens in dictionary.entries.items():
            half = len(tokens) // 2
            gloss = " ".join(tokens[:half] + FIXTURE_STOPWORDS[:1])
            example = " ".join(tokens[half:] + FIXTURE_STOPWORDS[1:]) + " ।"
            f.write(f"{word}\t{gloss}\t{example}\n")


def write_fixture(data: SyntheticData, out_dir: str) -> FixturePaths:
    """Dataset TSV, word2vec files, wordnet exports and a stopword list under out_dir"""
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    paths = FixturePaths(
        dataset=root / "pairs.tsv",
        emb_src=root / "emb.src.vec",
        emb_tgt=root / "emb.tgt.vec",
        context_src=root / "wordnet.src.tsv",
        context_tgt=root / "wordnet.tgt.tsv",
        stopwords=root / "stopwords.txt",
    )
    write_dataset(data.pairs, str(paths.dataset))
    _write_embeddings(data.src_table, paths.emb_src)
    _write_embeddings(data.tgt_table, paths.emb_tgt)
    _write_wordnet_export(data.context_src, paths.context_src)
    _write_wordnet_export(data.context_tgt, paths.context_tgt)
    paths.stopwords.write_text("\n".join(FIXTURE_STOPWORDS) + "\n", encoding="utf-8")
    logger.info(f"🧪 Wrote synthetic fixture ({len(data.pairs)} pairs) to {root}")
    return paths


def build_fixture(out_dir: str, n_pairs: int = 400, dim: int = 8, seed: int = 42) -> FixturePaths:
    return write_fixture(synthetic_dataset(n_pairs=n_pairs, dim=dim, seed=seed), out_dir)
