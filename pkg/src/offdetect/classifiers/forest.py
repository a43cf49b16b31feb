"""Random forest with Gini splits over bootstrap samples.

Trees grow depth-first on a column-major view of the training matrix.
Each node draws floor(sqrt(dim)) candidate features from a seeded
generator, so a fixed seed reproduces the forest exactly. Nodes are
stored as flat parallel arrays (feature = -1 marks a leaf), which is the
layout the prediction kernel walks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..corpus import Label
from ..errors import TrainingError, UsageError
from ..sparse import SparseVector, as_matrix


@dataclass(frozen=True)
class ForestConfig:
    n_estimators: int = 100
    max_depth: int = 16
    seed: int = 0

    def __post_init__(self):
        if self.n_estimators < 1:
            raise UsageError("n_estimators must be >= 1")
        if self.max_depth < 1:
            raise UsageError("max_depth must be >= 1")


class ForestModel:
    """Flattened trees: parallel node arrays plus one root index per tree."""

    def __init__(self, feature, threshold, left, right, count_not, count_off,
                 roots, dim: int, config: ForestConfig):
        self.feature = np.asarray(feature, dtype=np.int64)
        self.threshold = np.asarray(threshold, dtype=np.float64)
        self.left = np.asarray(left, dtype=np.int64)
        self.right = np.asarray(right, dtype=np.int64)
        self.count_not = np.asarray(count_not, dtype=np.int64)
        self.count_off = np.asarray(count_off, dtype=np.int64)
        self.roots = np.asarray(roots, dtype=np.int64)
        self.dim = int(dim)
        self.config = config

    @property
    def n_trees(self) -> int:
        return int(self.roots.size)

    def tree_depth(self, tree_index: int) -> int:
        """Edge-count depth of one tree (a lone leaf has depth 0)."""
        def walk(node, d):
            if self.feature[node] < 0:
                return d
            return max(walk(self.left[node], d + 1), walk(self.right[node], d + 1))
        return walk(self.roots[tree_index], 0)


class _TreeBuilder:
    def __init__(self, n_features: int):
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.count_not: list[int] = []
        self.count_off: list[int] = []
        self.n_features = n_features

    def add_node(self, n_not: int, n_off: int) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.count_not.append(n_not)
        self.count_off.append(n_off)
        return len(self.feature) - 1


def _grow_tree(builder, csc, labels, rows, max_depth, n_candidates, rng):
    col_indptr, col_rows, col_vals = csc
    node_labels = labels[rows]
    n_off = int(node_labels.sum())
    node_id = builder.add_node(rows.size - n_off, n_off)
    stack = [(node_id, rows, node_labels, 0)]
    while stack:
        node, rows, node_labels, depth = stack.pop()
        n_off = builder.count_off[node]
        if depth >= max_depth or n_off == 0 or n_off == rows.size:
            continue
        cand = rng.choice(builder.n_features, size=n_candidates, replace=False)
        feat, thr, _, found = _kernels.best_split(
            col_indptr, col_rows, col_vals, rows, node_labels, cand.astype(np.int64)
        )
        if not found:
            continue
        vals = _kernels.column_values(col_indptr, col_rows, col_vals, rows, feat)
        go_left = vals <= thr
        for side_rows, side_labels in (
            (rows[go_left], node_labels[go_left]),
            (rows[~go_left], node_labels[~go_left]),
        ):
            side_off = int(side_labels.sum())
            child = builder.add_node(side_rows.size - side_off, side_off)
            if builder.left[node] < 0:
                builder.left[node] = child
            else:
                builder.right[node] = child
            stack.append((child, side_rows, side_labels, depth + 1))
        builder.feature[node] = int(feat)
        builder.threshold[node] = float(thr)
    return node_id


def train_forest(X, y: list[Label], cfg: ForestConfig | None = None) -> ForestModel:
    """Grow n_estimators trees, each on a size-N bootstrap resample."""
    if cfg is None:
        cfg = ForestConfig()
    mat = as_matrix(X)
    if mat.n_rows != len(y):
        raise UsageError("X and y lengths differ")
    labels = np.array([int(lab) for lab in y], dtype=np.int64)
    if labels.min() == labels.max():
        raise TrainingError("training data contains a single class")
    csc = mat.tocsc()
    n_candidates = max(1, math.floor(math.sqrt(mat.n_cols)))
    builder = _TreeBuilder(mat.n_cols)
    roots = []
    for t in range(cfg.n_estimators):
        rng = np.random.default_rng((cfg.seed, t))
        boot = np.sort(rng.integers(0, mat.n_rows, size=mat.n_rows)).astype(np.int64)
        roots.append(
            _grow_tree(builder, csc, labels, boot, cfg.max_depth, n_candidates, rng)
        )
    return ForestModel(
        builder.feature, builder.threshold, builder.left, builder.right,
        builder.count_not, builder.count_off, roots, mat.n_cols, cfg,
    )


def _leaf_votes(model: ForestModel) -> np.ndarray:
    """Per-node OFF vote (1 when OFF strictly outnumbers NOT; ties vote NOT)."""
    return (model.count_off > model.count_not).astype(np.int64)


def predict_forest(model: ForestModel, x: SparseVector) -> Label:
    return predict_forest_many(model, [x])[0]


def predict_forest_many(model: ForestModel, X) -> list[Label]:
    """Majority vote across trees; an exact tie predicts NOT."""
    mat = as_matrix(X)
    if mat.n_cols != model.dim:
        raise UsageError(f"matrix dim {mat.n_cols} != model dim {model.dim}")
    off_votes = _kernels.forest_off_votes(
        mat.indptr, mat.indices, mat.data,
        model.feature, model.threshold, model.left, model.right,
        _leaf_votes(model), model.roots,
    )
    return [Label.OFF if 2 * v > model.n_trees else Label.NOT for v in off_votes]
