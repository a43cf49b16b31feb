"""Pure-numpy reference implementations of the hot kernels.

Every function here has a numba twin in ``numba_impl`` with identical
semantics; ``tests/test_kernels.py`` holds the two backends to exact
agreement. Keep the arithmetic order the same when editing either side.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def csr_matvec(indptr, indices, data, w):
    """y = X @ w for CSR X."""
    prod = data * w[indices]
    cs = np.concatenate(([0.0], np.cumsum(prod)))
    return cs[indptr[1:]] - cs[indptr[:-1]]


def csr_rmatvec(indptr, indices, data, g, dim):
    """out = X.T @ g for CSR X."""
    row_lens = np.diff(indptr)
    per_entry = np.repeat(g, row_lens)
    return np.bincount(indices, weights=data * per_entry, minlength=dim).astype(
        np.float64
    )


def csr_class_sums(indptr, indices, data, y, dim):
    """Per-class column sums: out[c, t] = sum of data over rows with label c."""
    row_lens = np.diff(indptr)
    entry_class = np.repeat(y, row_lens)
    out = np.zeros((2, dim))
    for c in (0, 1):
        mask = entry_class == c
        out[c] = np.bincount(indices[mask], weights=data[mask], minlength=dim)
    return out


def column_values(col_indptr, col_rows, col_vals, node_rows, feat):
    """Value of feature `feat` for each row id in node_rows (0 when absent)."""
    lo, hi = col_indptr[feat], col_indptr[feat + 1]
    rows = col_rows[lo:hi]
    vals = np.zeros(node_rows.shape[0])
    if hi > lo:
        pos = np.searchsorted(rows, node_rows)
        pos_c = np.minimum(pos, rows.size - 1)
        hit = rows[pos_c] == node_rows
        vals[hit] = col_vals[lo:hi][pos_c[hit]]
    return vals


def best_split(col_indptr, col_rows, col_vals, node_rows, node_labels, cand_feats):
    """Scan candidate features for the lowest weighted-Gini split.

    Thresholds are midpoints between consecutive distinct observed values
    (implicit zeros included), so both children are always non-empty.
    Returns (feature, threshold, weighted_gini, found).
    """
    m = node_rows.shape[0]
    total_off = float(np.sum(node_labels))
    best_score = np.inf
    best_feat = -1
    best_thr = 0.0
    for f in cand_feats:
        vals = column_values(col_indptr, col_rows, col_vals, node_rows, f)
        order = np.argsort(vals)
        sv = vals[order]
        sl = node_labels[order]
        cut = np.nonzero(sv[:-1] != sv[1:])[0]
        if cut.size == 0:
            continue
        off_prefix = np.cumsum(sl).astype(np.float64)
        n_l = (cut + 1).astype(np.float64)
        off_l = off_prefix[cut]
        n_r = m - n_l
        off_r = total_off - off_l
        gini_l = 1.0 - ((off_l / n_l) ** 2 + ((n_l - off_l) / n_l) ** 2)
        gini_r = 1.0 - ((off_r / n_r) ** 2 + ((n_r - off_r) / n_r) ** 2)
        score = (n_l * gini_l + n_r * gini_r) / m
        k = int(np.argmin(score))
        if score[k] < best_score:
            best_score = float(score[k])
            best_feat = int(f)
            best_thr = 0.5 * (sv[cut[k]] + sv[cut[k] + 1])
    return best_feat, best_thr, best_score, best_feat >= 0


def forest_off_votes(indptr, indices, data, feature, threshold, left, right,
                     leaf_off, roots):
    """OFF votes per CSR row across all trees (leaf_off is the tree's vote)."""
    n = indptr.shape[0] - 1
    votes = np.zeros(n, dtype=np.int64)
    for i in range(n):
        lo, hi = indptr[i], indptr[i + 1]
        row_idx = indices[lo:hi]
        row_val = data[lo:hi]
        off = 0
        for root in roots:
            node = root
            while feature[node] >= 0:
                f = feature[node]
                pos = np.searchsorted(row_idx, f)
                x = row_val[pos] if pos < row_idx.size and row_idx[pos] == f else 0.0
                node = left[node] if x <= threshold[node] else right[node]
            off += leaf_off[node]
        votes[i] = off
    return votes


def adam_step(param, grad, m, v, t, lr, beta1, beta2, eps):
    """One in-place Adam update on flat float64 arrays."""
    m *= beta1
    m += (1.0 - beta1) * grad
    v *= beta2
    v += (1.0 - beta2) * grad * grad
    bc1 = 1.0 - beta1 ** t
    bc2 = 1.0 - beta2 ** t
    param -= lr * (m / bc1) / (np.sqrt(v / bc2) + eps)


def nn_batch_grads(emb, dense_w, bias, seqs, y):
    """Forward + backward for one mini-batch of padded index sequences.

    Returns (mean_loss, grad_emb, grad_dense, grad_bias). Index 0 is the
    frozen padding row: its embedding gradient is never accumulated.
    """
    n_batch, max_len = seqs.shape
    dim = emb.shape[1]
    flat = emb[seqs].reshape(n_batch, max_len * dim)
    z = flat @ dense_w + bias
    p = 1.0 / (1.0 + np.exp(-z))
    pc = np.clip(p, 1e-12, 1.0 - 1e-12)
    loss = float(np.mean(-(y * np.log(pc) + (1.0 - y) * np.log(1.0 - pc))))
    delta = (p - y) / n_batch
    grad_dense = flat.T @ delta
    grad_bias = float(np.sum(delta))
    grad_emb = np.zeros_like(emb)
    per_pos = (delta[:, None] * dense_w[None, :]).reshape(n_batch, max_len, dim)
    rows = seqs.ravel()
    keep = rows != 0
    np.add.at(grad_emb, rows[keep], per_pos.reshape(-1, dim)[keep])
    return loss, grad_emb, grad_dense, grad_bias
