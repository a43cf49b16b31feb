"""Minimal CSR-style sparse containers used throughout the toolkit.

Document vectors are sparse (a tweet touches a few hundred n-grams out of
100k+), so both the single-vector and the stacked-matrix forms keep only
(index, value) pairs. Indices are int64 and strictly increasing per row;
values are float64. That fixed layout is what the numba/numpy kernels in
``offdetect._kernels`` operate on.
"""

from __future__ import annotations

import numpy as np

from .errors import UsageError


class SparseVector:
    """One document as ordered (index, weight) pairs plus the total dimension."""

    __slots__ = ("indices", "values", "dim")

    def __init__(self, indices, values, dim: int):
        indices = np.asarray(indices, dtype=np.int64)
        values = np.asarray(values, dtype=np.float64)
        if indices.shape != values.shape or indices.ndim != 1:
            raise UsageError("indices and values must be 1-D arrays of equal length")
        if indices.size and (np.any(np.diff(indices) <= 0)):
            raise UsageError("indices must be strictly increasing")
        if indices.size and (indices[0] < 0 or indices[-1] >= dim):
            raise UsageError("index out of range for dimension %d" % dim)
        self.indices = indices
        self.values = values
        self.dim = int(dim)

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.values, self.values)))

    def toarray(self) -> np.ndarray:
        out = np.zeros(self.dim)
        out[self.indices] = self.values
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseVector)
            and self.dim == other.dim
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        return f"SparseVector(nnz={self.nnz}, dim={self.dim})"


class SparseMatrix:
    """Row-major (CSR) stack of sparse vectors."""

    __slots__ = ("indptr", "indices", "data", "n_rows", "n_cols")

    def __init__(self, indptr, indices, data, shape: tuple[int, int]):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.data = np.asarray(data, dtype=np.float64)
        self.n_rows, self.n_cols = int(shape[0]), int(shape[1])
        if self.indptr.size != self.n_rows + 1:
            raise UsageError("indptr length must be n_rows + 1")

    @classmethod
    def from_rows(cls, rows: list[SparseVector]) -> "SparseMatrix":
        if not rows:
            raise UsageError("cannot stack an empty list of vectors")
        dim = rows[0].dim
        for r in rows:
            if r.dim != dim:
                raise UsageError("all vectors must share one dimension")
        indptr = np.zeros(len(rows) + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([r.nnz for r in rows])
        if rows:
            indices = np.concatenate([r.indices for r in rows])
            data = np.concatenate([r.values for r in rows])
        else:
            indices = np.zeros(0, dtype=np.int64)
            data = np.zeros(0)
        return cls(indptr, indices, data, (len(rows), dim))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def nnz(self) -> int:
        return int(self.data.size)

    def row(self, i: int) -> SparseVector:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return SparseVector(self.indices[lo:hi], self.data[lo:hi], self.n_cols)

    def iter_rows(self):
        for i in range(self.n_rows):
            yield self.row(i)

    def toarray(self) -> np.ndarray:
        out = np.zeros(self.shape)
        for i in range(self.n_rows):
            lo, hi = self.indptr[i], self.indptr[i + 1]
            out[i, self.indices[lo:hi]] = self.data[lo:hi]
        return out

    def tocsc(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Column-major view as (col_indptr, row_indices, values).

        Row indices within each column come out sorted ascending, which the
        split-search kernels rely on for binary search.
        """
        order = np.argsort(self.indices, kind="stable")
        col_counts = np.bincount(self.indices, minlength=self.n_cols)
        col_indptr = np.zeros(self.n_cols + 1, dtype=np.int64)
        col_indptr[1:] = np.cumsum(col_counts)
        row_of_entry = np.repeat(np.arange(self.n_rows, dtype=np.int64),
                                 np.diff(self.indptr))
        return col_indptr, row_of_entry[order], self.data[order]


def as_matrix(X) -> SparseMatrix:
    """Accept either a SparseMatrix or a list of SparseVector."""
    if isinstance(X, SparseMatrix):
        return X
    return SparseMatrix.from_rows(list(X))
