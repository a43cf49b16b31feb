"""Splits, stratified cross-validation, confusion matrices, and metrics.

OFF is the positive class everywhere. Splits are stratified and
seed-deterministic; every fold's per-class count stays within one record
of the proportional share.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .corpus import Dataset, Label
from .errors import TrainingError, UsageError


@dataclass(frozen=True)
class EvalConfig:
    folds: int = 5
    test_fraction: float = 0.30
    seed: int = 0
    # echoed into reports; splits of labeled data are always stratified
    # (unstratified small folds could go single-class)
    stratified: bool = True

    def __post_init__(self):
        if self.folds < 2:
            raise UsageError("folds must be >= 2")
        if not (0.0 < self.test_fraction < 1.0):
            raise UsageError("test_fraction must be in (0, 1)")


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0  # gold OFF, predicted OFF
    fp: int = 0  # gold NOT, predicted OFF
    fn: int = 0  # gold OFF, predicted NOT
    tn: int = 0  # gold NOT, predicted NOT

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def add(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        return ConfusionMatrix(
            self.tp + other.tp, self.fp + other.fp,
            self.fn + other.fn, self.tn + other.tn,
        )

    def to_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn}


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: dict[Label, float] = field(default_factory=dict)
    recall: dict[Label, float] = field(default_factory=dict)
    f1: dict[Label, float] = field(default_factory=dict)
    macro_f1: float = 0.0
    weighted_f1: float = 0.0

    def values(self) -> dict[str, float]:
        return {
            "accuracy": self.accuracy,
            "precision_not": self.precision[Label.NOT],
            "precision_off": self.precision[Label.OFF],
            "recall_not": self.recall[Label.NOT],
            "recall_off": self.recall[Label.OFF],
            "f1_not": self.f1[Label.NOT],
            "f1_off": self.f1[Label.OFF],
            "macro_f1": self.macro_f1,
            "weighted_f1": self.weighted_f1,
        }

    def to_dict(self) -> dict:
        return {k: round(v, 4) for k, v in self.values().items()}


def confusion(preds: list[Label], golds: list[Label]) -> ConfusionMatrix:
    if not preds or len(preds) != len(golds):
        raise UsageError("prediction and gold lists must be equal-length, non-empty")
    tp = fp = fn = tn = 0
    for p, g in zip(preds, golds):
        if g == Label.OFF:
            if p == Label.OFF:
                tp += 1
            else:
                fn += 1
        else:
            if p == Label.OFF:
                fp += 1
            else:
                tn += 1
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


def _safe_div(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


def metrics(cm: ConfusionMatrix) -> Metrics:
    """Accuracy plus per-class precision/recall/F1 and macro/weighted F1.

    Every 0/0 resolves to 0 by convention.
    """
    if cm.total == 0:
        raise UsageError("empty confusion matrix")
    precision = {
        Label.OFF: _safe_div(cm.tp, cm.tp + cm.fp),
        Label.NOT: _safe_div(cm.tn, cm.tn + cm.fn),
    }
    recall = {
        Label.OFF: _safe_div(cm.tp, cm.tp + cm.fn),
        Label.NOT: _safe_div(cm.tn, cm.tn + cm.fp),
    }
    f1 = {
        lab: _safe_div(2 * precision[lab] * recall[lab], precision[lab] + recall[lab])
        for lab in Label
    }
    support = {Label.OFF: cm.tp + cm.fn, Label.NOT: cm.tn + cm.fp}
    weighted = sum(f1[lab] * support[lab] for lab in Label) / cm.total
    return Metrics(
        accuracy=(cm.tp + cm.tn) / cm.total,
        precision=precision,
        recall=recall,
        f1=f1,
        macro_f1=(f1[Label.NOT] + f1[Label.OFF]) / 2.0,
        weighted_f1=weighted,
    )


def _class_indices(ds: Dataset) -> dict[Label, np.ndarray]:
    labels = ds.labels()
    out = {}
    for lab in Label:
        out[lab] = np.array([i for i, y in enumerate(labels) if y == lab], dtype=np.int64)
    return out


def holdout_split(ds: Dataset, cfg: EvalConfig) -> tuple[Dataset, Dataset]:
    """Stratified shuffled split with |test| = round(test_fraction * N).

    Per-class test counts are floor(fraction * N_c) with the remainder
    going to the classes with the largest fractional parts (NOT first on
    ties), keeping every class within one record of its share.
    """
    n = len(ds)
    if n < 2 * cfg.folds:
        raise UsageError(f"dataset too small to split ({n} records)")
    by_class = _class_indices(ds)
    n_test = round(cfg.test_fraction * n)
    quota = {lab: cfg.test_fraction * idx.size for lab, idx in by_class.items()}
    take = {lab: int(np.floor(q)) for lab, q in quota.items()}
    leftover = n_test - sum(take.values())
    for lab in sorted(Label, key=lambda L: (-(quota[L] - take[L]), int(L))):
        if leftover <= 0:
            break
        take[lab] += 1
        leftover -= 1
    rng = np.random.default_rng(cfg.seed)
    test_idx = set()
    for lab in Label:
        perm = by_class[lab][rng.permutation(by_class[lab].size)]
        test_idx.update(perm[: take[lab]].tolist())
    train_recs = tuple(r for i, r in enumerate(ds.records) if i not in test_idx)
    test_recs = tuple(r for i, r in enumerate(ds.records) if i in test_idx)
    return (
        Dataset(train_recs, name=f"{ds.name}[train]"),
        Dataset(test_recs, name=f"{ds.name}[test]"),
    )


def stratified_kfold(ds: Dataset, cfg: EvalConfig) -> list[tuple[Dataset, Dataset]]:
    """k disjoint validation folds covering the dataset exactly once."""
    n = len(ds)
    if cfg.folds > n:
        raise UsageError(f"cannot make {cfg.folds} folds from {n} records")
    by_class = _class_indices(ds)
    rng = np.random.default_rng(cfg.seed)
    fold_members: list[list[int]] = [[] for _ in range(cfg.folds)]
    for lab in Label:
        idx = by_class[lab]
        perm = idx[rng.permutation(idx.size)]
        base, extra = divmod(idx.size, cfg.folds)
        pos = 0
        for k in range(cfg.folds):
            size = base + (1 if k < extra else 0)
            fold_members[k].extend(perm[pos : pos + size].tolist())
            pos += size
    pairs = []
    for k in range(cfg.folds):
        val_set = set(fold_members[k])
        train = tuple(r for i, r in enumerate(ds.records) if i not in val_set)
        val = tuple(r for i, r in enumerate(ds.records) if i in val_set)
        pairs.append(
            (
                Dataset(train, name=f"{ds.name}[fold{k}-train]"),
                Dataset(val, name=f"{ds.name}[fold{k}-val]"),
            )
        )
    return pairs


@dataclass(frozen=True)
class CvReport:
    fold_metrics: list[Metrics]
    mean: dict[str, float]
    std: dict[str, float]
    pooled: ConfusionMatrix

    def to_dict(self) -> dict:
        return {
            "per_fold": [m.to_dict() for m in self.fold_metrics],
            "mean": {k: round(v, 4) for k, v in self.mean.items()},
            "std": {k: round(v, 4) for k, v in self.std.items()},
            "pooled_confusion": self.pooled.to_dict(),
        }


def cross_validate(make_pipeline, ds: Dataset, cfg: EvalConfig) -> CvReport:
    """Fit the full pipeline per fold (vectorizer included) on the training
    part only and score the held-out fold."""
    folds = stratified_kfold(ds, cfg)
    fold_metrics = []
    pooled = ConfusionMatrix()
    for k, (train, val) in enumerate(folds):
        train_labels = train.labels()
        if len(set(train_labels)) < 2:
            raise TrainingError(f"fold {k} training part contains a single class")
        pipeline = make_pipeline()
        pipeline.fit(train.texts(), train_labels)
        preds = pipeline.predict(val.texts())
        cm = confusion(preds, val.labels())
        fold_metrics.append(metrics(cm))
        pooled = pooled.add(cm)
    keys = fold_metrics[0].values().keys()
    table = {k: np.array([m.values()[k] for m in fold_metrics]) for k in keys}
    mean = {k: float(v.mean()) for k, v in table.items()}
    std = {k: float(v.std()) for k, v in table.items()}
    return CvReport(fold_metrics, mean, std, pooled)


@dataclass(frozen=True)
class HoldoutReport:
    train_size: int
    test_size: int
    cm: ConfusionMatrix
    scores: Metrics

    def to_dict(self) -> dict:
        return {
            "train_size": self.train_size,
            "test_size": self.test_size,
            "confusion": self.cm.to_dict(),
            "metrics": self.scores.to_dict(),
        }


def evaluate_holdout(make_pipeline, ds: Dataset, cfg: EvalConfig) -> HoldoutReport:
    train, test = holdout_split(ds, cfg)
    train_labels = train.labels()
    if len(set(train_labels)) < 2:
        raise TrainingError("holdout training part contains a single class")
    pipeline = make_pipeline()
    pipeline.fit(train.texts(), train_labels)
    preds = pipeline.predict(test.texts())
    cm = confusion(preds, test.labels())
    return HoldoutReport(len(train), len(test), cm, metrics(cm))
