"""Numba-jitted implementations of the hot kernels.

Same contracts as ``numpy_impl``; loops are written out so numba can fuse
them. Structural outputs (split choices, votes, gathered values) match the
numpy backend exactly; accumulating kernels agree to float round-off.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BACKEND = "numba"


@njit(cache=True)
def _bisect(arr, lo, hi, key):
    """Index of key in sorted arr[lo:hi], or -1."""
    while lo < hi:
        mid = (lo + hi) // 2
        v = arr[mid]
        if v == key:
            return mid
        if v < key:
            lo = mid + 1
        else:
            hi = mid
    return -1


@njit(cache=True)
def csr_matvec(indptr, indices, data, w):
    n = indptr.shape[0] - 1
    out = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            acc += data[k] * w[indices[k]]
        out[i] = acc
    return out


@njit(cache=True)
def csr_rmatvec(indptr, indices, data, g, dim):
    out = np.zeros(dim)
    n = indptr.shape[0] - 1
    for i in range(n):
        gi = g[i]
        for k in range(indptr[i], indptr[i + 1]):
            out[indices[k]] += data[k] * gi
    return out


@njit(cache=True)
def csr_class_sums(indptr, indices, data, y, dim):
    out = np.zeros((2, dim))
    n = indptr.shape[0] - 1
    for i in range(n):
        c = y[i]
        for k in range(indptr[i], indptr[i + 1]):
            out[c, indices[k]] += data[k]
    return out


@njit(cache=True)
def column_values(col_indptr, col_rows, col_vals, node_rows, feat):
    lo = col_indptr[feat]
    hi = col_indptr[feat + 1]
    m = node_rows.shape[0]
    vals = np.zeros(m)
    if hi > lo:
        for j in range(m):
            k = _bisect(col_rows, lo, hi, node_rows[j])
            if k >= 0:
                vals[j] = col_vals[k]
    return vals


@njit(cache=True)
def best_split(col_indptr, col_rows, col_vals, node_rows, node_labels, cand_feats):
    m = node_rows.shape[0]
    total_off = 0.0
    for j in range(m):
        total_off += node_labels[j]
    best_score = np.inf
    best_feat = -1
    best_thr = 0.0
    for fi in range(cand_feats.shape[0]):
        f = cand_feats[fi]
        vals = column_values(col_indptr, col_rows, col_vals, node_rows, f)
        order = np.argsort(vals)
        off_run = 0.0
        feat_best = np.inf
        feat_thr = 0.0
        for i in range(m - 1):
            off_run += node_labels[order[i]]
            lo_v = vals[order[i]]
            hi_v = vals[order[i + 1]]
            if lo_v == hi_v:
                continue
            n_l = float(i + 1)
            n_r = float(m) - n_l
            off_l = off_run
            off_r = total_off - off_l
            gini_l = 1.0 - ((off_l / n_l) ** 2 + ((n_l - off_l) / n_l) ** 2)
            gini_r = 1.0 - ((off_r / n_r) ** 2 + ((n_r - off_r) / n_r) ** 2)
            score = (n_l * gini_l + n_r * gini_r) / m
            if score < feat_best:
                feat_best = score
                feat_thr = 0.5 * (lo_v + hi_v)
        if feat_best < best_score:
            best_score = feat_best
            best_feat = f
            best_thr = feat_thr
    return best_feat, best_thr, best_score, best_feat >= 0


@njit(cache=True)
def forest_off_votes(indptr, indices, data, feature, threshold, left, right,
                     leaf_off, roots):
    n = indptr.shape[0] - 1
    votes = np.zeros(n, dtype=np.int64)
    for i in range(n):
        lo = indptr[i]
        hi = indptr[i + 1]
        off = 0
        for r in range(roots.shape[0]):
            node = roots[r]
            while feature[node] >= 0:
                k = _bisect(indices, lo, hi, feature[node])
                x = data[k] if k >= 0 else 0.0
                if x <= threshold[node]:
                    node = left[node]
                else:
                    node = right[node]
            off += leaf_off[node]
        votes[i] = off
    return votes


@njit(cache=True)
def adam_step(param, grad, m, v, t, lr, beta1, beta2, eps):
    bc1 = 1.0 - beta1 ** t
    bc2 = 1.0 - beta2 ** t
    for i in range(param.shape[0]):
        m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i]
        v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i]
        param[i] -= lr * (m[i] / bc1) / (np.sqrt(v[i] / bc2) + eps)


@njit(cache=True)
def nn_batch_grads(emb, dense_w, bias, seqs, y):
    n_batch, max_len = seqs.shape
    dim = emb.shape[1]
    grad_emb = np.zeros_like(emb)
    grad_dense = np.zeros(max_len * dim)
    grad_bias = 0.0
    loss = 0.0
    for b in range(n_batch):
        z = bias
        for j in range(max_len):
            r = seqs[b, j]
            if r == 0:
                continue
            base = j * dim
            for d in range(dim):
                z += emb[r, d] * dense_w[base + d]
        p = 1.0 / (1.0 + np.exp(-z))
        pc = min(max(p, 1e-12), 1.0 - 1e-12)
        loss += -(y[b] * np.log(pc) + (1.0 - y[b]) * np.log(1.0 - pc))
        delta = (p - y[b]) / n_batch
        grad_bias += delta
        for j in range(max_len):
            r = seqs[b, j]
            base = j * dim
            if r == 0:
                for d in range(dim):
                    grad_dense[base + d] += delta * emb[r, d]
                continue
            for d in range(dim):
                grad_dense[base + d] += delta * emb[r, d]
                grad_emb[r, d] += delta * dense_w[base + d]
    return loss / n_batch, grad_emb, grad_dense, grad_bias
