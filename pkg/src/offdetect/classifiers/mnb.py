"""Multinomial naive Bayes over nonnegative (TF-IDF) feature weights.

The count-based sufficient statistics generalize verbatim to fractional
weights: S[c, t] is the summed weight of feature t over class-c documents,
and the smoothed log-likelihood is ln((S[c, t] + alpha) / (S[c] + alpha * dim)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..corpus import Label
from ..errors import DataError, TrainingError, UsageError
from ..sparse import SparseVector, as_matrix


@dataclass(frozen=True)
class MnbConfig:
    alpha: float = 1.0

    def __post_init__(self):
        if self.alpha <= 0:
            raise UsageError(f"alpha must be positive, got {self.alpha}")


class MnbModel:
    """Class log-priors plus per-class feature log-likelihoods, order [NOT, OFF]."""

    def __init__(self, log_priors, log_likelihoods, dim: int, config: MnbConfig):
        self.log_priors = np.asarray(log_priors, dtype=np.float64)
        self.log_likelihoods = np.asarray(log_likelihoods, dtype=np.float64)
        self.dim = int(dim)
        self.config = config


def train_mnb(X, y: list[Label], cfg: MnbConfig | None = None) -> MnbModel:
    if cfg is None:
        cfg = MnbConfig()
    mat = as_matrix(X)
    if mat.n_rows != len(y) or mat.n_rows < 2:
        raise UsageError("need matching X/y with at least 2 documents")
    if np.any(mat.data < 0):
        raise DataError("naive Bayes requires nonnegative feature weights")
    y_arr = np.array([int(lab) for lab in y], dtype=np.int64)
    counts = np.bincount(y_arr, minlength=2)
    if counts[0] == 0 or counts[1] == 0:
        raise TrainingError("training data contains a single class")
    sums = _kernels.csr_class_sums(mat.indptr, mat.indices, mat.data, y_arr, mat.n_cols)
    alpha = cfg.alpha
    loglik = np.log(sums + alpha) - np.log(
        sums.sum(axis=1, keepdims=True) + alpha * mat.n_cols
    )
    log_priors = np.log(counts / mat.n_rows)
    return MnbModel(log_priors, loglik, mat.n_cols, cfg)


def mnb_scores(model: MnbModel, x: SparseVector) -> np.ndarray:
    """Per-class log scores [NOT, OFF] for one document."""
    if x.dim != model.dim:
        raise UsageError(f"vector dim {x.dim} != model dim {model.dim}")
    contrib = model.log_likelihoods[:, x.indices] @ x.values
    return model.log_priors + contrib


def predict_mnb(model: MnbModel, x: SparseVector) -> Label:
    scores = mnb_scores(model, x)
    return Label.OFF if scores[1] > scores[0] else Label.NOT


def predict_mnb_many(model: MnbModel, X) -> list[Label]:
    mat = as_matrix(X)
    if mat.n_cols != model.dim:
        raise UsageError(f"matrix dim {mat.n_cols} != model dim {model.dim}")
    score_not = _kernels.csr_matvec(
        mat.indptr, mat.indices, mat.data, model.log_likelihoods[0]
    ) + model.log_priors[0]
    score_off = _kernels.csr_matvec(
        mat.indptr, mat.indices, mat.data, model.log_likelihoods[1]
    ) + model.log_priors[1]
    return [Label.OFF if o > n else Label.NOT for n, o in zip(score_not, score_off)]
