"""Word/character n-gram extraction and TF-IDF vectorization.

A fitted model holds one vocabulary and IDF vector per n-gram spec. A
document transforms to raw gram counts times IDF, L2-normalized within
each spec's block, blocks concatenated in spec order. The IDF is the
smoothed form ln((1 + N) / (1 + df)) + 1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .sparse import SparseMatrix, SparseVector

_LETTER_RUNS = re.compile(r"[a-zA-Z]+")


@dataclass(frozen=True)
class NgramSpec:
    mode: str  # "word" or "char"
    lo: int
    hi: int

    def __post_init__(self):
        if self.mode not in ("word", "char"):
            raise UsageError(f"ngram mode must be 'word' or 'char', not {self.mode!r}")
        if not (1 <= self.lo <= self.hi <= 10):
            raise UsageError(
                f"ngram range ({self.lo},{self.hi}) must satisfy 1 <= lo <= hi <= 10"
            )


class Vocabulary:
    """Dense term <-> index bijection, indices assigned in sorted term order."""

    __slots__ = ("index", "terms")

    def __init__(self, terms):
        self.terms = sorted(terms)
        self.index = {t: i for i, t in enumerate(self.terms)}

    @property
    def size(self) -> int:
        return len(self.terms)

    def __contains__(self, term) -> bool:
        return term in self.index

    def __getitem__(self, term) -> int:
        return self.index[term]


def tokenize(text: str) -> list[str]:
    """Maximal ASCII-letter runs of length >= 2, in order of appearance."""
    return [t for t in _LETTER_RUNS.findall(text) if len(t) >= 2]


def extract_ngrams(source, spec: NgramSpec) -> list[str]:
    """All contiguous n-grams for n in [lo, hi], shortest first.

    Word mode takes a token list and joins grams with single spaces; char
    mode takes the cleaned text verbatim, spaces included.
    """
    grams = []
    if spec.mode == "word":
        tokens = list(source)
        for n in range(spec.lo, spec.hi + 1):
            for i in range(len(tokens) - n + 1):
                grams.append(" ".join(tokens[i : i + n]))
    else:
        text = source
        for n in range(spec.lo, spec.hi + 1):
            for i in range(len(text) - n + 1):
                grams.append(text[i : i + n])
    return grams


def _doc_grams(text: str, spec: NgramSpec) -> list[str]:
    if spec.mode == "word":
        return extract_ngrams(tokenize(text), spec)
    return extract_ngrams(text, spec)


class TfidfModel:
    """Fitted vocabularies and smoothed IDF weights for a list of n-gram specs."""

    def __init__(self, specs, vocabularies, idfs, n_docs: int):
        self.specs = list(specs)
        self.vocabularies = list(vocabularies)
        self.idfs = [np.asarray(v, dtype=np.float64) for v in idfs]
        self.n_docs = int(n_docs)

    @property
    def dim(self) -> int:
        return sum(v.size for v in self.vocabularies)

    def block_offsets(self) -> list[int]:
        offsets = [0]
        for v in self.vocabularies:
            offsets.append(offsets[-1] + v.size)
        return offsets


def fit_tfidf(corpus: list[str], specs: list[NgramSpec]) -> TfidfModel:
    """Fit vocabularies and IDF vectors over a cleaned-text corpus.

    Every gram that occurs at least once enters the vocabulary;
    idf(t) = ln((1 + n_docs) / (1 + df(t))) + 1.
    """
    if not corpus:
        raise UsageError("cannot fit TF-IDF on an empty corpus")
    if not specs:
        raise UsageError("at least one ngram spec is required")
    n_docs = len(corpus)
    vocabularies = []
    idfs = []
    for spec in specs:
        df: dict[str, int] = {}
        for text in corpus:
            for gram in set(_doc_grams(text, spec)):
                df[gram] = df.get(gram, 0) + 1
        vocab = Vocabulary(df.keys())
        idf = np.empty(vocab.size)
        for term, idx in vocab.index.items():
            idf[idx] = math.log((1.0 + n_docs) / (1.0 + df[term])) + 1.0
        vocabularies.append(vocab)
        idfs.append(idf)
    return TfidfModel(specs, vocabularies, idfs, n_docs)


def transform_tfidf(model: TfidfModel, text: str) -> SparseVector:
    """Vectorize one cleaned document; grams unseen in training are ignored."""
    offsets = model.block_offsets()
    all_idx: list[int] = []
    all_val: list[float] = []
    for spec, vocab, idf, offset in zip(
        model.specs, model.vocabularies, model.idfs, offsets
    ):
        counts: dict[int, float] = {}
        for gram in _doc_grams(text, spec):
            idx = vocab.index.get(gram)
            if idx is not None:
                counts[idx] = counts.get(idx, 0.0) + 1.0
        if not counts:
            continue
        idx_arr = np.array(sorted(counts), dtype=np.int64)
        val_arr = np.array([counts[i] for i in idx_arr]) * idf[idx_arr]
        norm = math.sqrt(float(np.dot(val_arr, val_arr)))
        if norm > 0.0:
            val_arr /= norm
        all_idx.extend(int(i) + offset for i in idx_arr)
        all_val.extend(val_arr.tolist())
    return SparseVector(
        np.array(all_idx, dtype=np.int64), np.array(all_val), model.dim
    )


def transform_corpus(model: TfidfModel, texts: list[str]) -> SparseMatrix:
    """transform_tfidf over a list of documents, stacked row-wise."""
    if not texts:
        raise UsageError("cannot transform an empty list of documents")
    return SparseMatrix.from_rows([transform_tfidf(model, t) for t in texts])


def idf_of(model: TfidfModel, spec_index: int, term: str) -> float:
    """IDF weight of a training-time gram; KeyError for unknown terms."""
    vocab = model.vocabularies[spec_index]
    if term not in vocab:
        raise KeyError(f"term {term!r} not in vocabulary of spec {spec_index}")
    return float(model.idfs[spec_index][vocab[term]])
