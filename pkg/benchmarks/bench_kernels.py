"""Benchmark the numba kernels against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py [--rows N] [--cols N] [--repeat K]

Both backends are imported directly (the OFFDETECT_BACKEND env flag is not
needed here) and timed on the same synthetic data. The first numba call
pays JIT compilation; a warmup call is excluded from timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from offdetect._kernels import numpy_impl

try:
    from offdetect._kernels import numba_impl
except ImportError:
    numba_impl = None

from offdetect.sparse import SparseMatrix, SparseVector


def random_csr(rng, n_rows, n_cols, density):
    rows = []
    for _ in range(n_rows):
        nnz = rng.binomial(n_cols, density)
        idx = np.sort(rng.choice(n_cols, size=nnz, replace=False)).astype(np.int64)
        rows.append(SparseVector(idx, rng.uniform(0.1, 1.0, size=nnz), n_cols))
    return SparseMatrix.from_rows(rows)


def timeit(fn, repeat):
    fn()  # warmup (numba compiles here)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", type=int, default=2000)
    ap.add_argument("--cols", type=int, default=20000)
    ap.add_argument("--density", type=float, default=0.01)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    mat = random_csr(rng, args.rows, args.cols, args.density)
    csc = mat.tocsc()
    w = rng.normal(size=args.cols)
    g = rng.normal(size=args.rows)
    y = rng.integers(0, 2, size=args.rows).astype(np.int64)
    node_rows = rng.integers(0, args.rows, size=args.rows).astype(np.int64)
    node_labels = y[node_rows]
    cands = rng.choice(args.cols, size=int(np.sqrt(args.cols)), replace=False).astype(np.int64)

    vocab, dim, max_len, batch = 2000, 64, 40, 64
    emb = rng.normal(scale=0.05, size=(vocab, dim))
    emb[0] = 0.0
    dense = rng.normal(scale=0.05, size=max_len * dim)
    seqs = rng.integers(0, vocab, size=(batch, max_len)).astype(np.int64)
    ys = rng.integers(0, 2, size=batch).astype(np.float64)
    flat_p = rng.normal(size=vocab * dim)
    flat_g = rng.normal(size=vocab * dim)
    m = np.zeros(vocab * dim)
    v = np.zeros(vocab * dim)

    cases = {
        "csr_matvec": lambda impl: impl.csr_matvec(mat.indptr, mat.indices, mat.data, w),
        "csr_rmatvec": lambda impl: impl.csr_rmatvec(mat.indptr, mat.indices, mat.data, g, args.cols),
        "csr_class_sums": lambda impl: impl.csr_class_sums(mat.indptr, mat.indices, mat.data, y, args.cols),
        "best_split": lambda impl: impl.best_split(*csc, node_rows, node_labels, cands),
        "adam_step": lambda impl: impl.adam_step(flat_p, flat_g, m, v, 3, 1e-3, 0.9, 0.999, 1e-8),
        "nn_batch_grads": lambda impl: impl.nn_batch_grads(emb, dense, 0.1, seqs, ys),
    }

    print(f"matrix {args.rows}x{args.cols}, density {args.density}, nnz {mat.nnz}")
    header = f"{'kernel':16s} {'numpy (ms)':>12s}"
    if numba_impl is not None:
        header += f" {'numba (ms)':>12s} {'speedup':>8s}"
    print(header)
    for name, call in cases.items():
        t_np = timeit(lambda: call(numpy_impl), args.repeat) * 1e3
        line = f"{name:16s} {t_np:12.3f}"
        if numba_impl is not None:
            t_nb = timeit(lambda: call(numba_impl), args.repeat) * 1e3
            line += f" {t_nb:12.3f} {t_np / t_nb:8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
