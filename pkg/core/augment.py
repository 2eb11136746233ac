# core/augment.py
"""
Parallel-corpus preparation for MT: cognate injection and subword BPE.

Merge file format:

    #sajatiya-bpe v1
    left right
    ...
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from core.context import WordPair
from core.exceptions import DomainError, ResourceLoadError
from core.script import from_devanagari, script_for_language

logger = logging.getLogger(__name__)

END_OF_WORD = "</w>"
BPE_SEPARATOR = "@@"
MERGE_FILE_HEADER = "#sajatiya-bpe v1"
DEFAULT_MERGE_COUNT = 2500


@dataclass(frozen=True)
class ParallelCorpus:
    src_lines: Tuple[str, ...]
    tgt_lines: Tuple[str, ...]

    def __post_init__(self):
        if len(self.src_lines) != len(self.tgt_lines):
            raise DomainError(
                f"corpus sides differ in length: {len(self.src_lines)} vs {len(self.tgt_lines)}"
            )

    def __len__(self) -> int:
        return len(self.src_lines)


@dataclass(frozen=True)
class BPEModel:
    merges: Tuple[Tuple[str, str], ...]
    merge_count: int = DEFAULT_MERGE_COUNT
    end_of_word: str = END_OF_WORD
    ranks: Dict[Tuple[str, str], int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(set(self.merges)) != len(self.merges):
            raise DomainError("merge list contains duplicate pairs")
        if not self.ranks:
            object.__setattr__(self, "ranks", {pair: i for i, pair in enumerate(self.merges)})


def _read_lines(path: str) -> List[str]:
    file_path = Path(path)
    if not file_path.exists():
        raise ResourceLoadError(file_path, "file not found")
    with open(file_path, "r", encoding="utf-8") as f:
        return [line.rstrip("\n").rstrip("\r") for line in f]


def load_corpus(src_path: str, tgt_path: str) -> ParallelCorpus:
    src = _read_lines(src_path)
    tgt = _read_lines(tgt_path)
    if len(src) != len(tgt):
        raise ResourceLoadError(
            tgt_path, f"{len(tgt)} lines but the source side {src_path} has {len(src)}"
        )
    return ParallelCorpus(tuple(src), tuple(tgt))


def write_corpus(corpus: ParallelCorpus, src_path: str, tgt_path: str) -> None:
    for path, lines in ((src_path, corpus.src_lines), (tgt_path, corpus.tgt_lines)):
        with open(path, "w", encoding="utf-8") as f:
            f.writelines(f"{line}\n" for line in lines)


def native_form(word: str, language: str) -> str:
    """Map a standardized word back into the script its language is written in"""
    try:
        script = script_for_language(language)
    except KeyError:
        logger.debug(f"🔎 No script known for {language!r}; keeping {word!r} as is")
        return word
    return word if script == "Devanagari" else from_devanagari(word, script)


def inject_cognates(
    corpus: ParallelCorpus,
    cognates: Sequence[WordPair],
    native_script: bool = True,
) -> ParallelCorpus:
    """
    Append each cognate as an aligned single-word sentence pair.

    Dataset words are standardized to Devanagari; with native_script each
    side is written back in the script of its language from `language_pair`.
    """
    src = list(corpus.src_lines)
    tgt = list(corpus.tgt_lines)
    skipped = 0
    for pair in cognates:
        word_s, word_t = pair.word_s.strip(), pair.word_t.strip()
        if not word_s or not word_t:
            skipped += 1
            logger.warning(f"⚠️ Skipping cognate pair with an empty word: {pair.pair_id or pair}")
            continue
        if native_script:
            src_lang, _, tgt_lang = pair.language_pair.partition("-")
            word_s, word_t = native_form(word_s, src_lang), native_form(word_t, tgt_lang)
        src.append(word_s)
        tgt.append(word_t)

    logger.info(f"💉 Injected {len(src) - len(corpus)} cognate pair(s) into a {len(corpus)}-line corpus")
    if skipped:
        logger.warning(f"⚠️ {skipped} pair(s) skipped")
    return ParallelCorpus(tuple(src), tuple(tgt))


def _pair_counts(vocab: Dict[Tuple[str, ...], int]) -> Counter:
    counts: Counter = Counter()
    for symbols, freq in vocab.items():
        for pair in zip(symbols, symbols[1:]):
            counts[pair] += freq
    return counts


def _merge_symbols(symbols: Tuple[str, ...], pair: Tuple[str, str]) -> Tuple[str, ...]:
    """Merge every left-to-right non-overlapping occurrence of pair"""
    merged: List[str] = []
    i = 0
    while i < len(symbols):
        if i + 1 < len(symbols) and (symbols[i], symbols[i + 1]) == pair:
            merged.append(symbols[i] + symbols[i + 1])
            i += 2
        else:
            merged.append(symbols[i])
            i += 1
    return tuple(merged)


def bpe_learn(lines: Sequence[str], merge_count: int = DEFAULT_MERGE_COUNT) -> BPEModel:
    """Learn up to merge_count merges; stops early once no pair occurs twice"""
    if merge_count < 0:
        raise DomainError(f"merge_count must be >= 0, got {merge_count}")
    words = Counter(token for line in lines for token in line.split())
    if not words:
        raise DomainError("cannot learn BPE from an empty corpus")

    vocab: Dict[Tuple[str, ...], int] = {
        tuple(word[:-1]) + (word[-1] + END_OF_WORD,): freq for word, freq in words.items()
    }
    merges: List[Tuple[str, str]] = []
    while len(merges) < merge_count:
        counts = _pair_counts(vocab)
        if not counts:
            break
        # Highest count, then lexicographically smallest pair
        best, best_count = min(counts.items(), key=lambda item: (-item[1], item[0]))
        if best_count < 2:
            break
        merges.append(best)
        vocab = {_merge_symbols(symbols, best): freq for symbols, freq in vocab.items()}

    if len(merges) < merge_count:
        logger.info(f"🔚 BPE stopped early after {len(merges)} of {merge_count} merges")
    return BPEModel(merges=tuple(merges), merge_count=merge_count)


def segment_word(model: BPEModel, word: str) -> List[str]:
    """Subwords of one token, end-of-word marker removed"""
    if not word:
        return []
    symbols = tuple(word[:-1]) + (word[-1] + model.end_of_word,)
    while len(symbols) > 1:
        candidates = [
            (model.ranks[pair], pair)
            for pair in zip(symbols, symbols[1:])
            if pair in model.ranks
        ]
        if not candidates:
            break
        _, pair = min(candidates)
        symbols = _merge_symbols(symbols, pair)
    last = symbols[-1][: -len(model.end_of_word)]
    return [s for s in list(symbols[:-1]) + [last] if s]


def bpe_apply(model: BPEModel, line: str) -> str:
    """Segment every whitespace token, marking non-final subwords with `@@ `"""
    tokens = []
    for word in line.split():
        tokens.append(f"{BPE_SEPARATOR} ".join(segment_word(model, word)))
    return " ".join(tokens)


def bpe_restore(line: str) -> str:
    return line.replace(f"{BPE_SEPARATOR} ", "")


def save_merges(model: BPEModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(MERGE_FILE_HEADER + "\n")
        f.writelines(f"{left} {right}\n" for left, right in model.merges)
    logger.info(f"💾 Wrote {len(model.merges)} merges to {path}")


def load_merges(path: str) -> BPEModel:
    lines = _read_lines(path)
    if not lines or lines[0].strip() != MERGE_FILE_HEADER:
        raise ResourceLoadError(path, f"expected header {MERGE_FILE_HEADER!r}", line=1)
    merges = []
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(" ")
        if len(parts) != 2 or not all(parts):
            raise ResourceLoadError(path, "merge line must be 'left right'", line=line_no)
        merges.append((parts[0], parts[1]))
    try:
        return BPEModel(merges=tuple(merges), merge_count=len(merges))
    except DomainError as e:
        raise ResourceLoadError(path, str(e)) from None
