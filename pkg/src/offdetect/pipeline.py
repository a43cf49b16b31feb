"""End-to-end pipelines: cleaning + representation + classifier.

A pipeline owns its preprocessing config, so it can take raw text at both
fit and predict time (cleaning is idempotent, so feeding already-cleaned
text is harmless). Records whose text cleans to empty are dropped at fit
time; at predict time every input gets a label (an empty document scores
as an all-zero vector or an all-padding sequence).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classifiers import (
    EnsembleModel,
    ForestConfig,
    LinearConfig,
    MnbConfig,
    predict_ensemble_many,
    predict_forest_many,
    predict_linear_many,
    predict_mnb_many,
    train_ensemble,
    train_forest,
    train_linear,
    train_mnb,
)
from .corpus import Label
from .errors import UsageError
from .features import NgramSpec, fit_tfidf, transform_corpus
from .neuralnet import NnConfig, encode_pad, nn_predict, nn_train
from .preprocess import PreprocessConfig, clean_text

MODEL_KINDS = ("svc", "mnb", "lr", "rfc", "ensemble", "nn")
ANALYZERS = ("word", "char", "union")


@dataclass(frozen=True)
class PipelineSpec:
    model: str = "mnb"
    analyzer: str = "union"
    word_range: tuple[int, int] = (1, 2)
    char_range: tuple[int, int] = (1, 5)
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    seed: int = 0
    mnb: MnbConfig = field(default_factory=MnbConfig)
    svc: LinearConfig = field(default_factory=lambda: LinearConfig(loss="squared_hinge"))
    lr: LinearConfig = field(default_factory=lambda: LinearConfig(loss="logistic"))
    rfc: ForestConfig = field(default_factory=ForestConfig)
    nn: NnConfig = field(default_factory=NnConfig)

    def __post_init__(self):
        if self.model not in MODEL_KINDS:
            raise UsageError(f"unknown model {self.model!r}")
        if self.analyzer not in ANALYZERS:
            raise UsageError(f"unknown analyzer {self.analyzer!r}")

    def ngram_specs(self) -> list[NgramSpec]:
        word = NgramSpec("word", *self.word_range)
        char = NgramSpec("char", *self.char_range)
        if self.analyzer == "word":
            return [word]
        if self.analyzer == "char":
            return [char]
        return [word, char]


class Pipeline:
    """fit(texts, labels) then predict(texts); built from a PipelineSpec."""

    def __init__(self, spec: PipelineSpec):
        self.spec = spec
        self.vectorizer = None  # TfidfModel for classical models
        self.model = None
        self.net = None  # EmbeddingNet for the nn kind

    def _clean_pairs(self, texts, labels):
        cleaned, kept_labels = [], []
        for t, lab in zip(texts, labels):
            c = clean_text(t, self.spec.preprocess)
            if c:
                cleaned.append(c)
                kept_labels.append(lab)
        if not cleaned:
            raise UsageError("every training document cleaned to empty text")
        return cleaned, kept_labels

    def fit(self, texts: list[str], labels: list[Label]) -> "Pipeline":
        if len(texts) != len(labels):
            raise UsageError("texts and labels lengths differ")
        cleaned, kept = self._clean_pairs(texts, labels)
        kind = self.spec.model
        if kind == "nn":
            self.net, self.loss_trace = nn_train(cleaned, kept, self.spec.nn)
            return self
        self.vectorizer = fit_tfidf(cleaned, self.spec.ngram_specs())
        X = transform_corpus(self.vectorizer, cleaned)
        if kind == "mnb":
            self.model = train_mnb(X, kept, self.spec.mnb)
        elif kind == "svc":
            self.model = train_linear(X, kept, self.spec.svc)
        elif kind == "lr":
            self.model = train_linear(X, kept, self.spec.lr)
        elif kind == "rfc":
            self.model = train_forest(X, kept, self.spec.rfc)
        else:
            self.model = train_ensemble(X, kept, self.spec.svc, self.spec.mnb, self.spec.lr)
        return self

    def predict(self, texts: list[str]) -> list[Label]:
        cleaned = [clean_text(t, self.spec.preprocess) for t in texts]
        if self.net is not None:
            index = self.net.word_index
            max_len = self.net.config.max_len
            return [nn_predict(self.net, encode_pad(index, t, max_len)) for t in cleaned]
        if self.vectorizer is None or self.model is None:
            raise UsageError("pipeline is not fitted")
        X = transform_corpus(self.vectorizer, cleaned)
        if isinstance(self.model, EnsembleModel):
            return predict_ensemble_many(self.model, X)
        kind = self.spec.model
        if kind == "mnb":
            return predict_mnb_many(self.model, X)
        if kind == "rfc":
            return predict_forest_many(self.model, X)
        return predict_linear_many(self.model, X)
