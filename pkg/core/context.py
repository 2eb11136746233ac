# core/context.py
"""
Context dictionaries built from wordnet concept glosses and example
sentences, plus the labelled word-pair dataset they are attached to.

Wordnet export: one record per line, `word TAB gloss TAB ex1 | ex2 | ...`.
Dataset:        one pair per line, `lang_pair TAB word_s TAB word_t TAB label`.
"""

import json
import logging
import re
import string
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from core.exceptions import ResourceLoadError
from core.script import standardize

logger = logging.getLogger(__name__)

COGNATE = 1
NON_COGNATE = 0

DANDA = "।"
DOUBLE_DANDA = "॥"
_STRIP_CHARS = DANDA + DOUBLE_DANDA + string.punctuation
_LANGUAGE_PAIR = re.compile(r"^[a-z]{2,3}-[a-z]{2,3}$", re.IGNORECASE)

# Published cognate / non-cognate counts of the challenge dataset
DATASET_TABLE: Dict[str, Tuple[int, int]] = {
    "hi-bn": (15312, 16119),
    "hi-gu": (17021, 15057),
    "hi-mr": (15726, 15983),
    "hi-pa": (14097, 15166),
    "hi-sa": (21710, 23029),
    "hi-ml": (9235, 8976),
    "hi-ta": (3363, 4005),
    "hi-te": (936, 1084),
    "hi-as": (3478, 4101),
    "hi-kn": (4103, 3810),
    "hi-or": (11894, 13027),
    "hi-ne": (2560, 1918),
    "hi-ko": (11295, 9826),
}


class WordPair(BaseModel):
    """A labelled cognate candidate"""
    model_config = ConfigDict(frozen=True)

    word_s: str
    word_t: str
    language_pair: str
    label: int = NON_COGNATE
    pair_id: str = ""

    @field_validator("word_s", "word_t")
    @classmethod
    def _non_empty(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("words must be non-empty")
        return value

    @field_validator("label")
    @classmethod
    def _binary(cls, value: int) -> int:
        if value not in (COGNATE, NON_COGNATE):
            raise ValueError(f"label must be 0 or 1, got {value}")
        return value

    @property
    def is_cognate(self) -> bool:
        return self.label == COGNATE


@dataclass(frozen=True)
class ContextDictionary:
    language: str
    entries: Dict[str, Tuple[str, ...]]
    stopwords_applied: bool
    stopword_source: str = ""
    skipped_records: int = 0

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ContextLookup:
    tokens: List[str]
    miss: bool


@dataclass(frozen=True)
class CoverageStats:
    words: int
    with_context: int
    missing: int
    empty: int
    mean_tokens: float
    stopword_source: str = ""

    @property
    def coverage(self) -> float:
        return self.with_context / self.words if self.words else 0.0


@dataclass
class DatasetSummary:
    language_pairs: Dict[str, Tuple[int, int]] = field(default_factory=dict)

    def matches_published(self) -> Dict[str, Optional[bool]]:
        """Per language pair: does the count equal the published table (None if unknown)"""
        return {
            pair: (DATASET_TABLE[pair] == counts) if pair in DATASET_TABLE else None
            for pair, counts in self.language_pairs.items()
        }


def tokenize(text: str) -> List[str]:
    """Whitespace split, trimming dandas and ASCII punctuation at token edges"""
    tokens = []
    for raw in text.split():
        token = raw.strip(_STRIP_CHARS)
        if token:
            tokens.append(token)
    return tokens


def load_stopwords(path: Optional[str]) -> Set[str]:
    """One stopword per line, standardized to Devanagari"""
    if not path:
        return set()
    file_path = Path(path)
    if not file_path.exists():
        raise ResourceLoadError(file_path, "stopword file not found")
    with open(file_path, "r", encoding="utf-8") as f:
        return {standardize(line.strip()) for line in f if line.strip()}


def build_context(
    wordnet_export: str,
    stopwords: Optional[str] = None,
    language: str = "",
) -> ContextDictionary:
    """Tokenize gloss + examples per word, transliterate and drop stopwords"""
    file_path = Path(wordnet_export)
    if not file_path.exists():
        raise ResourceLoadError(file_path, "wordnet export not found")
    stop = load_stopwords(stopwords)

    merged: Dict[str, List[str]] = {}
    skipped = 0
    with open(file_path, "r", encoding="utf-8") as f:
        for line_no, raw in enumerate(f, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) < 2 or not fields[0].strip():
                skipped += 1
                logger.debug(f"{file_path}:{line_no}: malformed context record skipped")
                continue
            word = standardize(fields[0].strip())
            text = " ".join([fields[1]] + [ex for part in fields[2:] for ex in part.split("|")])
            tokens = [standardize(token) for token in tokenize(text)]
            merged.setdefault(word, []).extend(t for t in tokens if t not in stop)

    if skipped:
        logger.warning(f"⚠️ {file_path}: skipped {skipped} malformed record(s)")
    logger.info(f"📚 Built {len(merged)} context entries for '{language or '?'}' from {file_path}")

    return ContextDictionary(
        language=language,
        entries={word: tuple(tokens) for word, tokens in merged.items()},
        stopwords_applied=bool(stopwords),
        stopword_source=str(stopwords or ""),
        skipped_records=skipped,
    )


def empty_context(language: str = "") -> ContextDictionary:
    return ContextDictionary(language=language, entries={}, stopwords_applied=False)


def save_context(dictionary: ContextDictionary, path: str) -> None:
    payload = {
        "language": dictionary.language,
        "stopwords_applied": dictionary.stopwords_applied,
        "stopword_source": dictionary.stopword_source,
        "skipped_records": dictionary.skipped_records,
        "entries": {word: list(tokens) for word, tokens in dictionary.entries.items()},
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False, indent=1)
    logger.info(f"💾 Saved {len(dictionary)} context entries to {path}")


def load_context(path: str) -> ContextDictionary:
    """Read a dictionary written by save_context"""
    file_path = Path(path)
    if not file_path.exists():
        raise ResourceLoadError(file_path, "context dictionary not found")
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            payload = json.load(f)
        return ContextDictionary(
            language=payload.get("language", ""),
            entries={word: tuple(tokens) for word, tokens in payload["entries"].items()},
            stopwords_applied=bool(payload.get("stopwords_applied", False)),
            stopword_source=payload.get("stopword_source", ""),
            skipped_records=int(payload.get("skipped_records", 0)),
        )
    except json.JSONDecodeError as e:
        raise ResourceLoadError(file_path, f"invalid JSON: {e.msg}", line=e.lineno) from None
    except (KeyError, TypeError, AttributeError) as e:
        raise ResourceLoadError(file_path, f"malformed context dictionary: {e}") from None


def context_of(dictionary: ContextDictionary, word: str) -> ContextLookup:
    """Stored tokens, or an empty list with the miss flag set"""
    tokens = dictionary.entries.get(word)
    if tokens is None:
        return ContextLookup(tokens=[], miss=True)
    return ContextLookup(tokens=list(tokens), miss=False)


def coverage(dictionary: ContextDictionary, words: Iterable[str]) -> CoverageStats:
    """How many of the given words have a non-empty context"""
    unique = list(dict.fromkeys(words))
    lookups = [context_of(dictionary, word) for word in unique]
    with_context = sum(1 for item in lookups if item.tokens)
    missing = sum(1 for item in lookups if item.miss)
    sizes = [len(item.tokens) for item in lookups if item.tokens]
    return CoverageStats(
        words=len(unique),
        with_context=with_context,
        missing=missing,
        empty=len(unique) - with_context - missing,
        mean_tokens=sum(sizes) / len(sizes) if sizes else 0.0,
        stopword_source=dictionary.stopword_source,
    )


def load_dataset(path: str) -> List[WordPair]:
    """Read `lang_pair TAB word_s TAB word_t TAB label` rows, standardizing both words"""
    file_path = Path(path)
    if not file_path.exists():
        raise ResourceLoadError(file_path, "dataset not found")

    pairs: List[WordPair] = []
    with open(file_path, "r", encoding="utf-8") as f:
        for line_no, raw in enumerate(f, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) < 3:
                raise ResourceLoadError(file_path, "expected at least 3 tab-separated fields", line=line_no)
            label_field = fields[3].strip() if len(fields) > 3 else "0"
            if label_field not in ("0", "1"):
                raise ResourceLoadError(file_path, f"label must be 0 or 1, got {label_field!r}", line=line_no)
            word_s = standardize(fields[1].strip())
            word_t = standardize(fields[2].strip())
            if not word_s or not word_t:
                raise ResourceLoadError(file_path, "empty word", line=line_no)
            pairs.append(
                WordPair(
                    word_s=word_s,
                    word_t=word_t,
                    language_pair=fields[0].strip().lower(),
                    label=int(label_field),
                    pair_id=f"{file_path.stem}:{line_no}",
                )
            )

    logger.info(f"📄 Loaded {len(pairs)} word pairs from {file_path}")
    return pairs


@dataclass(frozen=True)
class PairRow:
    """A scored-file row: the original fields plus the standardized words"""
    fields: Tuple[str, ...]
    word_s: str
    word_t: str


def read_pair_rows(lines: Iterable[str], source: str = "<stdin>") -> List[PairRow]:
    """
    Rows of `word_s TAB word_t [TAB ...]`, or the dataset layout
    `lang_pair TAB word_s TAB word_t [TAB label]` when the first field is a
    language pair such as `hi-bn`. Original fields are
    kept so scores can be appended to them.
    """
    rows: List[PairRow] = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip():
            continue
        fields = tuple(line.split("\t"))
        if len(fields) < 2:
            raise ResourceLoadError(source, "expected word_s TAB word_t", line=line_no)
        dataset_row = len(fields) >= 3 and _LANGUAGE_PAIR.match(fields[0].strip()) is not None
        word_s, word_t = fields[1:3] if dataset_row else fields[:2]
        word_s, word_t = standardize(word_s.strip()), standardize(word_t.strip())
        if not word_s or not word_t:
            raise ResourceLoadError(source, "empty word", line=line_no)
        rows.append(PairRow(fields=fields, word_s=word_s, word_t=word_t))
    return rows


def write_dataset(pairs: Sequence[WordPair], path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for pair in pairs:
            f.write(f"{pair.language_pair}\t{pair.word_s}\t{pair.word_t}\t{pair.label}\n")


def summarize(pairs: Sequence[WordPair]) -> DatasetSummary:
    """(cognate, non-cognate) counts per language pair"""
    counts: Dict[str, Counter] = {}
    for pair in pairs:
        counts.setdefault(pair.language_pair, Counter())[pair.label] += 1
    return DatasetSummary(
        language_pairs={
            lp: (c[COGNATE], c[NON_COGNATE]) for lp, c in sorted(counts.items())
        }
    )
