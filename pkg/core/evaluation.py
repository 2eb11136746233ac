# core/evaluation.py
"""
Stratified k-fold evaluation with weighted precision / recall / F-score,
and the ablation runner that compares feature sets on shared folds.
"""

import hashlib
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field
from sklearn.metrics import confusion_matrix, precision_recall_fscore_support
from tqdm import tqdm

from core.classifier import FFNNConfig, grid_search, predict_batch
from core.context import WordPair
from core.exceptions import ConfigurationError, DomainError, TrainingError
from core.features import FeatureResources, assemble_dataset, to_matrix

logger = logging.getLogger(__name__)

DEFAULT_FOLDS = 5


@dataclass(frozen=True)
class FoldAssignment:
    fold_count: int
    folds: Tuple[int, ...]
    pair_ids: Tuple[str, ...]
    seed: int

    @property
    def assignment(self) -> Dict[str, int]:
        return dict(zip(self.pair_ids, self.folds))

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(np.array(self.folds) == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(np.array(self.folds) != fold)

    def digest(self) -> str:
        payload = ",".join(f"{pid}={f}" for pid, f in zip(self.pair_ids, self.folds))
        return hashlib.sha256(f"{self.fold_count}:{payload}".encode("utf-8")).hexdigest()


class FoldReport(BaseModel):
    fold: int
    precision: float
    recall: float
    f_score: float
    n_train: int
    n_test: int
    confusion: List[List[int]]
    selected_config: str
    validation_accuracy: float
    grid_accuracies: Dict[str, float] = Field(default_factory=dict)


class ExperimentReport(BaseModel):
    language_pair: str
    feature_set: str
    folds: List[FoldReport]
    precision: float
    recall: float
    f_score: float
    pooled_precision: float
    pooled_recall: float
    pooled_f_score: float
    dataset_stats: Dict = Field(default_factory=dict)
    provenance: Dict = Field(default_factory=dict)

    def display_row(self) -> Dict[str, float]:
        return {
            "P": round(self.precision, 2),
            "R": round(self.recall, 2),
            "F": round(self.f_score, 2),
        }


class AblationResult(BaseModel):
    reports: List[ExperimentReport]
    table: List[Dict] = Field(default_factory=list)


def stratified_kfold(
    labels: Sequence[int],
    k: int = DEFAULT_FOLDS,
    seed: int = 42,
    pair_ids: Optional[Sequence[str]] = None,
) -> FoldAssignment:
    """Seeded shuffle within each class, then round-robin over k folds"""
    y = np.asarray(labels, dtype=int)
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if len(y) == 0:
        raise DomainError("cannot split an empty dataset")
    if pair_ids is not None and len(pair_ids) != len(y):
        raise DomainError("pair_ids and labels differ in length")

    rng = np.random.default_rng(seed)
    folds = np.full(len(y), -1, dtype=int)
    for cls in (1, 0):
        members = np.flatnonzero(y == cls)
        if len(members) < k:
            raise DomainError(f"class {cls} has {len(members)} member(s), fewer than k={k}")
        rng.shuffle(members)
        folds[members] = np.arange(len(members)) % k
    if np.any(folds < 0):
        raise DomainError("labels must be 0 or 1")

    ids = tuple(pair_ids) if pair_ids is not None else tuple(str(i) for i in range(len(y)))
    return FoldAssignment(fold_count=k, folds=tuple(int(f) for f in folds), pair_ids=ids, seed=seed)


def weighted_prf(y_true: Sequence[int], y_pred: Sequence[int]) -> Tuple[float, float, float]:
    """Support-weighted precision, recall and F1 over both classes (0/0 counts as 0)"""
    if len(y_true) != len(y_pred):
        raise DomainError(f"length mismatch: {len(y_true)} vs {len(y_pred)}")
    if len(y_true) == 0:
        raise DomainError("empty label sequences")
    if set(y_true) - {0, 1} or set(y_pred) - {0, 1}:
        raise DomainError("labels must be 0 or 1")
    precision, recall, f_score, _ = precision_recall_fscore_support(
        y_true, y_pred, labels=[0, 1], average="weighted", zero_division=0
    )
    return float(precision), float(recall), float(f_score)


def file_digest(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _language_pair(pairs: Sequence[WordPair]) -> str:
    names = sorted({pair.language_pair for pair in pairs})
    return names[0] if len(names) == 1 else "+".join(names)


def run_experiment(
    pairs: Sequence[WordPair],
    resources: FeatureResources,
    feature_set: str,
    grid: Sequence[FFNNConfig],
    k: int = DEFAULT_FOLDS,
    seed: int = 42,
    threads: int = 1,
    folds: Optional[FoldAssignment] = None,
    provenance: Optional[Dict] = None,
    progress: bool = False,
) -> ExperimentReport:
    """Nested protocol: grid search inside each training fold, scored on the held-out fold"""
    if not pairs:
        raise DomainError("dataset has no pairs")
    if not grid:
        raise ConfigurationError("classifier grid is empty")

    vectors, stats = assemble_dataset(pairs, resources, feature_set, threads=threads, progress=progress)
    X, y = to_matrix(vectors)
    if folds is None:
        folds = stratified_kfold(y, k, seed, pair_ids=[pair.pair_id for pair in pairs])
    elif len(folds.folds) != len(pairs):
        raise DomainError("fold assignment does not cover the dataset")

    def run_fold(fold: int) -> Tuple[FoldReport, np.ndarray, np.ndarray]:
        train_idx = folds.train_indices(fold)
        test_idx = folds.test_indices(fold)
        try:
            # Only the training fold reaches grid search
            result = grid_search(X[train_idx], y[train_idx], grid)
            predicted, _ = predict_batch(result.model, X[test_idx])
            precision, recall, f_score = weighted_prf(y[test_idx].tolist(), predicted.tolist())
        except (DomainError, TrainingError) as e:
            raise type(e)(f"{feature_set} fold {fold}: {e}") from e
        report = FoldReport(
            fold=fold,
            precision=precision,
            recall=recall,
            f_score=f_score,
            n_train=len(train_idx),
            n_test=len(test_idx),
            confusion=confusion_matrix(y[test_idx], predicted, labels=[0, 1]).tolist(),
            selected_config=result.best.label,
            validation_accuracy=result.accuracies[result.best.label],
            grid_accuracies=result.accuracies,
        )
        logger.info(
            f"📊 {feature_set} fold {fold}: P={precision:.3f} R={recall:.3f} F={f_score:.3f} "
            f"({result.best.label})"
        )
        return report, y[test_idx], predicted

    fold_ids = list(range(folds.fold_count))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(fold_ids))) as executor:
            results = list(tqdm(executor.map(run_fold, fold_ids), total=len(fold_ids),
                                desc=f"{feature_set} folds", disable=not progress))
    else:
        results = [run_fold(fold) for fold in tqdm(fold_ids, desc=f"{feature_set} folds",
                                                   disable=not progress)]

    fold_reports = sorted((r[0] for r in results), key=lambda r: r.fold)
    pooled_true = np.concatenate([r[1] for r in results]).tolist()
    pooled_pred = np.concatenate([r[2] for r in results]).tolist()
    pooled = weighted_prf(pooled_true, pooled_pred)

    report = ExperimentReport(
        language_pair=_language_pair(pairs),
        feature_set=vectors[0].feature_set,
        folds=fold_reports,
        precision=float(np.mean([r.precision for r in fold_reports])),
        recall=float(np.mean([r.recall for r in fold_reports])),
        f_score=float(np.mean([r.f_score for r in fold_reports])),
        pooled_precision=pooled[0],
        pooled_recall=pooled[1],
        pooled_f_score=pooled[2],
        dataset_stats=stats.to_dict(),
        provenance={
            "seed": seed,
            "k": folds.fold_count,
            "fold_digest": folds.digest(),
            "grid": [config.model_dump() for config in grid],
            **(provenance or {}),
        },
    )
    logger.info(f"✅ {report.language_pair} {report.feature_set}: mean F={report.f_score:.4f}")
    return report


def run_ablation(
    pairs: Sequence[WordPair],
    resources: FeatureResources,
    feature_sets: Sequence[str],
    grid: Sequence[FFNNConfig],
    k: int = DEFAULT_FOLDS,
    seed: int = 42,
    threads: int = 1,
    provenance: Optional[Dict] = None,
    progress: bool = False,
) -> AblationResult:
    """One experiment per feature set, all on the same folds"""
    if len(feature_sets) < 2:
        raise ConfigurationError("ablation needs at least two feature sets")
    if not pairs:
        raise DomainError("dataset has no pairs")

    folds = stratified_kfold(
        [pair.label for pair in pairs], k, seed, pair_ids=[pair.pair_id for pair in pairs]
    )
    reports = [
        run_experiment(
            pairs, resources, name, grid, k=k, seed=seed, threads=threads,
            folds=folds, provenance=provenance, progress=progress,
        )
        for name in feature_sets
    ]
    return AblationResult(reports=reports, table=comparison_table(reports))


def comparison_table(reports: Sequence[ExperimentReport]) -> List[Dict]:
    """Results-table layout: one row per language pair, P/R/F columns per feature set"""
    rows: Dict[str, Dict] = {}
    for report in reports:
        row = rows.setdefault(report.language_pair, {"language_pair": report.language_pair})
        for metric, value in report.display_row().items():
            row[f"{report.feature_set} {metric}"] = value
    return list(rows.values())


def render_table(reports: Sequence[ExperimentReport], fmt: str = "markdown") -> str:
    frame = pd.DataFrame(comparison_table(reports))
    if fmt == "csv":
        return frame.to_csv(index=False)
    if fmt != "markdown":
        raise ConfigurationError(f"unknown table format: {fmt}")
    header = "| " + " | ".join(frame.columns) + " |"
    rule = "|" + "|".join("---" for _ in frame.columns) + "|"
    lines = [header, rule]
    for values in frame.itertuples(index=False, name=None):
        cells = [f"{v:.2f}" if isinstance(v, float) else str(v) for v in values]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def format_reports(reports: Sequence[ExperimentReport], fmt: str = "json") -> str:
    """JSON keeps full precision and provenance; csv/markdown keep the rounded table"""
    if fmt == "json":
        payload = [report.model_dump() for report in reports]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2, ensure_ascii=False)
    return render_table(reports, fmt)


def write_reports(reports: Sequence[ExperimentReport], path: str, fmt: str = "json") -> None:
    Path(path).write_text(format_reports(reports, fmt), encoding="utf-8")
    logger.info(f"💾 Wrote {len(reports)} report(s) to {path}")
