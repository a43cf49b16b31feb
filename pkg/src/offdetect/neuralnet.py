"""Task-specific embedding network: embed -> flatten -> single sigmoid unit.

Words are indexed from 1 (0 is the frozen zero padding row), sequences are
right-padded to the longest training sentence, and the whole thing trains
with mini-batch Adam on binary cross-entropy. OFF is the positive class.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .corpus import Label
from .errors import NumericError, TrainingError, UsageError


class WordIndex:
    """word -> index map, indices 1..size dense in lexicographic order."""

    __slots__ = ("index", "size", "capacity")

    def __init__(self, words):
        ordered = sorted(words)
        self.index = {w: i for i, w in enumerate(ordered, start=1)}
        self.size = len(ordered)
        self.capacity = ((self.size + 49) // 50) * 50

    def words(self) -> list[str]:
        return sorted(self.index, key=self.index.get)


def build_word_index(corpus: list[str]) -> WordIndex:
    """Index the unique whitespace tokens of a cleaned corpus.

    Capacity rounds the vocabulary size up to the next multiple of 50.
    """
    if not corpus:
        raise UsageError("cannot build a word index from an empty corpus")
    words = set()
    for text in corpus:
        words.update(text.split())
    if not words:
        raise UsageError("corpus contains no words")
    return WordIndex(words)


def encode_pad(index: WordIndex, text: str, max_len: int) -> np.ndarray:
    """Token indices truncated to max_len and right-padded with zeros.

    Out-of-vocabulary tokens map to the padding index and are dropped, so
    zeros only ever appear as the tail padding.
    """
    if max_len < 1:
        raise UsageError("max_len must be >= 1")
    ids = [index.index[t] for t in text.split() if t in index.index]
    seq = np.zeros(max_len, dtype=np.int64)
    ids = ids[:max_len]
    seq[: len(ids)] = ids
    return seq


@dataclass(frozen=True)
class NnConfig:
    vocab_capacity: int | None = None  # resolved from data when None
    embed_dim: int = 200
    max_len: int | None = None  # resolved to the longest training sentence
    learning_rate: float = 0.001
    epochs: int = 10
    batch_size: int = 32
    seed: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    def __post_init__(self):
        if self.embed_dim < 1:
            raise UsageError("embed_dim must be >= 1")
        if self.epochs < 0 or self.batch_size < 1:
            raise UsageError("epochs must be >= 0 and batch_size >= 1")
        if self.learning_rate <= 0:
            raise UsageError("learning_rate must be positive")


def nn_param_count(cfg: NnConfig) -> tuple[int, int, int]:
    """(embedding params, flatten width, dense params incl. bias)."""
    if cfg.vocab_capacity is None or cfg.max_len is None:
        raise UsageError("vocab_capacity and max_len must be set")
    embedding = cfg.vocab_capacity * cfg.embed_dim
    flatten = cfg.max_len * cfg.embed_dim
    return embedding, flatten, flatten + 1


class EmbeddingNet:
    def __init__(self, embedding, dense_w, bias: float, config: NnConfig,
                 word_index: WordIndex):
        self.embedding = np.asarray(embedding, dtype=np.float64)
        self.dense_w = np.asarray(dense_w, dtype=np.float64)
        self.bias = float(bias)
        self.config = config
        self.word_index = word_index


def _check_seq(net: EmbeddingNet, seq: np.ndarray) -> np.ndarray:
    seq = np.asarray(seq, dtype=np.int64)
    if seq.shape != (net.config.max_len,):
        raise UsageError(f"sequence length {seq.shape} != max_len {net.config.max_len}")
    if seq.min() < 0 or seq.max() >= net.embedding.shape[0]:
        raise UsageError("sequence index out of embedding range")
    return seq


def nn_forward(net: EmbeddingNet, seq: np.ndarray) -> float:
    """Probability of OFF for one padded sequence."""
    seq = _check_seq(net, seq)
    z = float(net.embedding[seq].ravel() @ net.dense_w) + net.bias
    return float(1.0 / (1.0 + np.exp(-z)))


def nn_predict(net: EmbeddingNet, seq: np.ndarray) -> Label:
    """OFF iff p > 0.5; exactly 0.5 predicts NOT."""
    return Label.OFF if nn_forward(net, seq) > 0.5 else Label.NOT


def nn_loss_grad(net: EmbeddingNet, seq: np.ndarray, label: Label):
    """Binary cross-entropy and gradients for a single example.

    Returns (loss, grad_dense, grad_bias, row_grads) where row_grads maps
    each embedding row referenced by seq (padding row 0 excluded) to its
    gradient vector.
    """
    seq = _check_seq(net, seq)
    y = 1.0 if label == Label.OFF else 0.0
    dim = net.embedding.shape[1]
    flat = net.embedding[seq].ravel()
    z = float(flat @ net.dense_w) + net.bias
    p = 1.0 / (1.0 + np.exp(-z))
    pc = min(max(p, 1e-12), 1.0 - 1e-12)
    loss = -(y * np.log(pc) + (1.0 - y) * np.log(1.0 - pc))
    delta = p - y
    grad_dense = delta * flat
    grad_bias = delta
    row_grads: dict[int, np.ndarray] = {}
    for j, row in enumerate(seq):
        if row == 0:
            continue
        g = delta * net.dense_w[j * dim : (j + 1) * dim]
        if int(row) in row_grads:
            row_grads[int(row)] = row_grads[int(row)] + g
        else:
            row_grads[int(row)] = g
    return float(loss), grad_dense, float(grad_bias), row_grads


def _resolve_config(cfg: NnConfig, corpus: list[str], index: WordIndex) -> NnConfig:
    capacity = cfg.vocab_capacity if cfg.vocab_capacity is not None else index.capacity
    max_len = cfg.max_len
    if max_len is None:
        max_len = max((len(t.split()) for t in corpus), default=0)
    if max_len < 1:
        raise UsageError("max_len must be >= 1 (empty corpus?)")
    if capacity < index.size + 1:
        raise UsageError("vocab_capacity too small for the word index")
    return replace(cfg, vocab_capacity=capacity, max_len=max_len)


def init_net(cfg: NnConfig, index: WordIndex) -> EmbeddingNet:
    """Embedding uniform(-0.05, 0.05) from seed with a zero padding row;
    dense layer all zeros."""
    rng = np.random.default_rng(cfg.seed)
    emb = rng.uniform(-0.05, 0.05, size=(cfg.vocab_capacity, cfg.embed_dim))
    emb[0] = 0.0
    dense = np.zeros(cfg.max_len * cfg.embed_dim)
    return EmbeddingNet(emb, dense, 0.0, cfg, index)


def nn_train(
    corpus: list[str],
    labels: list[Label],
    cfg: NnConfig | None = None,
    index: WordIndex | None = None,
) -> tuple[EmbeddingNet, list[float]]:
    """Mini-batch Adam training; returns the net and per-epoch mean losses."""
    if cfg is None:
        cfg = NnConfig()
    if len(corpus) != len(labels):
        raise UsageError("corpus and labels lengths differ")
    if len(set(labels)) < 2:
        raise TrainingError("training data contains a single class")
    if index is None:
        index = build_word_index(corpus)
    cfg = _resolve_config(cfg, corpus, index)
    net = init_net(cfg, index)

    seqs = np.stack([encode_pad(index, t, cfg.max_len) for t in corpus])
    ys = np.array([1.0 if lab == Label.OFF else 0.0 for lab in labels])
    n = seqs.shape[0]

    emb_m = np.zeros_like(net.embedding)
    emb_v = np.zeros_like(net.embedding)
    dense_m = np.zeros_like(net.dense_w)
    dense_v = np.zeros_like(net.dense_w)
    bias_arr = np.array([net.bias])
    bias_m = np.zeros(1)
    bias_v = np.zeros(1)

    rng = np.random.default_rng(cfg.seed)
    step = 0
    trace: list[float] = []
    for epoch in range(cfg.epochs):
        order = rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, cfg.batch_size):
            batch = order[start : start + cfg.batch_size]
            loss, g_emb, g_dense, g_bias = _kernels.nn_batch_grads(
                net.embedding, net.dense_w, bias_arr[0], seqs[batch], ys[batch]
            )
            if not np.isfinite(loss):
                raise NumericError(
                    f"non-finite loss at epoch {epoch}, batch {start // cfg.batch_size}"
                )
            step += 1
            for param, grad, m, v in (
                (net.embedding.ravel(), g_emb.ravel(), emb_m.ravel(), emb_v.ravel()),
                (net.dense_w, g_dense, dense_m, dense_v),
                (bias_arr, np.array([g_bias]), bias_m, bias_v),
            ):
                _kernels.adam_step(
                    param, grad, m, v, step,
                    cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.eps,
                )
            epoch_loss += loss * batch.size
        trace.append(epoch_loss / n)
    net.bias = float(bias_arr[0])
    return net, trace


def nn_train_accuracy(net: EmbeddingNet, corpus: list[str], labels: list[Label]) -> float:
    seqs = [encode_pad(net.word_index, t, net.config.max_len) for t in corpus]
    preds = [nn_predict(net, s) for s in seqs]
    return float(np.mean([p == lab for p, lab in zip(preds, labels)]))
