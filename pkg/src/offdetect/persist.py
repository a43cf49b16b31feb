"""Text-based model files (magic HKBC1).

The format is canonical JSON (sorted keys, indent 1) so that equal models
produce byte-identical files and a save/load/save cycle is stable. IDF
values are stored as decimal strings with 12 significant digits; all other
floats use the shortest exact representation.
"""

from __future__ import annotations

import dataclasses
import json
from pathlib import Path

from .classifiers import (
    EnsembleModel,
    ForestConfig,
    ForestModel,
    LinearConfig,
    LinearModel,
    MnbConfig,
    MnbModel,
)
from .errors import ModelFormatError
from .features import NgramSpec, TfidfModel, Vocabulary
from .neuralnet import EmbeddingNet, NnConfig, WordIndex
from .pipeline import Pipeline, PipelineSpec
from .preprocess import PreprocessConfig

MAGIC = "HKBC1"


def _spec_to_dict(spec: NgramSpec) -> dict:
    return {"mode": spec.mode, "lo": spec.lo, "hi": spec.hi}


def _vectorizer_to_dict(model: TfidfModel) -> dict:
    return {
        "type": "tfidf",
        "n_docs": model.n_docs,
        "specs": [_spec_to_dict(s) for s in model.specs],
        "vocabularies": [v.terms for v in model.vocabularies],
        "idf": [["%.12g" % x for x in idf] for idf in model.idfs],
    }


def _vectorizer_from_dict(d: dict) -> TfidfModel:
    specs = [NgramSpec(s["mode"], s["lo"], s["hi"]) for s in d["specs"]]
    vocabularies = [Vocabulary(terms) for terms in d["vocabularies"]]
    idfs = [[float(x) for x in block] for block in d["idf"]]
    return TfidfModel(specs, vocabularies, idfs, d["n_docs"])


def _model_to_dict(kind: str, model) -> dict:
    if kind == "mnb":
        return {
            "alpha": model.config.alpha,
            "dim": model.dim,
            "log_priors": model.log_priors.tolist(),
            "log_likelihoods": model.log_likelihoods.tolist(),
        }
    if kind in ("svc", "lr"):
        return {
            "config": dataclasses.asdict(model.config),
            "weights": model.weights.tolist(),
            "bias": model.bias,
            "objective": model.objective,
            "n_iter": model.n_iter,
        }
    if kind == "rfc":
        return {
            "config": dataclasses.asdict(model.config),
            "dim": model.dim,
            "feature": model.feature.tolist(),
            "threshold": model.threshold.tolist(),
            "left": model.left.tolist(),
            "right": model.right.tolist(),
            "count_not": model.count_not.tolist(),
            "count_off": model.count_off.tolist(),
            "roots": model.roots.tolist(),
        }
    if kind == "ensemble":
        kinds = ["svc", "mnb", "lr"]
        return {
            "members": [
                {"kind": k, "model": _model_to_dict(k, m)}
                for k, m in zip(kinds, model.members)
            ]
        }
    raise ModelFormatError(f"unknown model kind {kind!r}")


def _model_from_dict(kind: str, d: dict):
    if kind == "mnb":
        return MnbModel(
            d["log_priors"], d["log_likelihoods"], d["dim"], MnbConfig(alpha=d["alpha"])
        )
    if kind in ("svc", "lr"):
        return LinearModel(
            d["weights"], d["bias"], LinearConfig(**d["config"]),
            objective=d["objective"], n_iter=d["n_iter"],
        )
    if kind == "rfc":
        return ForestModel(
            d["feature"], d["threshold"], d["left"], d["right"],
            d["count_not"], d["count_off"], d["roots"], d["dim"],
            ForestConfig(**d["config"]),
        )
    if kind == "ensemble":
        return EnsembleModel(
            [_model_from_dict(m["kind"], m["model"]) for m in d["members"]]
        )
    raise ModelFormatError(f"unknown model kind {kind!r}")


def _net_to_dict(net: EmbeddingNet) -> dict:
    return {
        "config": dataclasses.asdict(net.config),
        "words": net.word_index.words(),
        "embedding": net.embedding.tolist(),
        "dense_w": net.dense_w.tolist(),
        "bias": net.bias,
    }


def _net_from_dict(d: dict) -> EmbeddingNet:
    return EmbeddingNet(
        d["embedding"], d["dense_w"], d["bias"],
        NnConfig(**d["config"]), WordIndex(d["words"]),
    )


def _pipeline_spec_to_dict(spec: PipelineSpec) -> dict:
    return {
        "model": spec.model,
        "analyzer": spec.analyzer,
        "word_range": list(spec.word_range),
        "char_range": list(spec.char_range),
        "seed": spec.seed,
        "mnb": dataclasses.asdict(spec.mnb),
        "svc": dataclasses.asdict(spec.svc),
        "lr": dataclasses.asdict(spec.lr),
        "rfc": dataclasses.asdict(spec.rfc),
        "nn": dataclasses.asdict(spec.nn),
    }


def _pipeline_spec_from_dict(d: dict, preprocess: PreprocessConfig) -> PipelineSpec:
    return PipelineSpec(
        model=d["model"],
        analyzer=d["analyzer"],
        word_range=tuple(d["word_range"]),
        char_range=tuple(d["char_range"]),
        preprocess=preprocess,
        seed=d["seed"],
        mnb=MnbConfig(**d["mnb"]),
        svc=LinearConfig(**d["svc"]),
        lr=LinearConfig(**d["lr"]),
        rfc=ForestConfig(**d["rfc"]),
        nn=NnConfig(**d["nn"]),
    )


def save_model(pipeline: Pipeline, path: str | Path) -> None:
    """Write a fitted pipeline; equal pipelines produce identical bytes."""
    kind = pipeline.spec.model
    doc = {
        "magic": MAGIC,
        "kind": kind,
        "preprocess": pipeline.spec.preprocess.to_dict(),
        "pipeline": _pipeline_spec_to_dict(pipeline.spec),
    }
    if kind == "nn":
        doc["vectorizer"] = {"type": "word_index"}
        doc["model"] = _net_to_dict(pipeline.net)
    else:
        doc["vectorizer"] = _vectorizer_to_dict(pipeline.vectorizer)
        doc["model"] = _model_to_dict(kind, pipeline.model)
    Path(path).write_text(
        json.dumps(doc, sort_keys=True, indent=1) + "\n", encoding="utf-8"
    )


def load_model(path: str | Path) -> Pipeline:
    """Reconstruct a fitted pipeline; bad magic or truncation raises
    ModelFormatError."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ModelFormatError(f"{path}: not a text model file") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: truncated or invalid model file") from exc
    if not isinstance(doc, dict) or doc.get("magic") != MAGIC:
        raise ModelFormatError(
            f"{path}: bad magic {doc.get('magic')!r} (expected {MAGIC!r})"
            if isinstance(doc, dict) else f"{path}: invalid model file"
        )
    try:
        preprocess = PreprocessConfig.from_dict(doc["preprocess"])
        spec = _pipeline_spec_from_dict(doc["pipeline"], preprocess)
        pipeline = Pipeline(spec)
        if doc["kind"] == "nn":
            pipeline.net = _net_from_dict(doc["model"])
        else:
            pipeline.vectorizer = _vectorizer_from_dict(doc["vectorizer"])
            pipeline.model = _model_from_dict(doc["kind"], doc["model"])
    except (KeyError, TypeError) as exc:
        raise ModelFormatError(f"{path}: malformed model file ({exc})") from exc
    return pipeline
