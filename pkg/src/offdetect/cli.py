"""Command-line interface: stats, train, evaluate, predict, grid.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
Runs are deterministic: the same flags, seed, and input files produce
byte-identical reports and model files. ``OFFDETECT_SEED`` supplies the
seed when ``--seed`` is absent.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .classifiers import ForestConfig, LinearConfig, MnbConfig
from .corpus import Dataset, Label, concat, dataset_stats, load_dataset
from .errors import DataError, NumericError, UsageError
from .evaluation import EvalConfig, cross_validate, evaluate_holdout
from .neuralnet import NnConfig
from .persist import load_model, save_model
from .pipeline import ANALYZERS, MODEL_KINDS, Pipeline, PipelineSpec
from .preprocess import PreprocessConfig, load_stopwords

_DELIMS = {"tab": "\t", "comma": ","}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="offdetect",
        description="Offensive-language detection for romanized code-mixed text",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--data", action="append", required=True, metavar="PATH",
                      help="input file; repeat to concatenate datasets")
    data.add_argument("--delimiter", default="tab",
                      help="field delimiter: 'tab', 'comma', or a literal character")
    data.add_argument("--header", action="store_true",
                      help="skip one header line per file")

    prep = argparse.ArgumentParser(add_help=False)
    prep.add_argument("--keep-stopwords", action="store_true",
                      help="do not remove English stopwords")
    prep.add_argument("--stopwords", metavar="PATH",
                      help="custom stopword list (one word per line)")
    prep.add_argument("--keep-social-markers", action="store_true",
                      help="do not delete @/# tokens")
    prep.add_argument("--no-lowercase", action="store_true")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--model", choices=MODEL_KINDS, default="mnb")
    model.add_argument("--analyzer", choices=ANALYZERS, default="union")
    model.add_argument("--word-ngrams", nargs=2, type=int, default=(1, 2),
                       metavar=("LO", "HI"))
    model.add_argument("--char-ngrams", nargs=2, type=int, default=(1, 5),
                       metavar=("LO", "HI"))
    model.add_argument("--alpha", type=float, default=1.0, help="MNB smoothing")
    model.add_argument("--C", type=float, default=1.0, help="linear-model penalty")
    model.add_argument("--max-iter", type=int, default=1000)
    model.add_argument("--tol", type=float, default=1e-4)
    model.add_argument("--n-estimators", type=int, default=100)
    model.add_argument("--max-depth", type=int, default=16)
    model.add_argument("--epochs", type=int, default=10)
    model.add_argument("--batch-size", type=int, default=32)
    model.add_argument("--embed-dim", type=int, default=200)
    model.add_argument("--learning-rate", type=float, default=0.001)
    model.add_argument("--seed", type=int, default=None,
                       help="default: $OFFDETECT_SEED or 0")

    report = argparse.ArgumentParser(add_help=False)
    report.add_argument("--report", metavar="PATH", help="write a JSON report")

    p = sub.add_parser("stats", parents=[data, report],
                       help="per-label counts and percentages")

    p = sub.add_parser("train", parents=[data, prep, model],
                       help="fit a pipeline and write a model file")
    p.add_argument("--out", required=True, metavar="PATH")

    p = sub.add_parser("evaluate", parents=[data, prep, model, report],
                       help="holdout and/or cross-validated evaluation")
    p.add_argument("--eval-mode", choices=("cv", "holdout", "both"), default="both")
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--test-fraction", type=float, default=0.30)

    p = sub.add_parser("predict", parents=[data, report],
                       help="label an unlabeled file with a saved model")
    p.add_argument("--model-file", required=True, metavar="PATH")
    p.add_argument("--out", metavar="PATH", help="default: standard output")

    p = sub.add_parser("grid", parents=[data, prep, model, report],
                       help="evaluate every model x analyzer combination")
    p.add_argument("--eval-mode", choices=("cv", "holdout", "both"),
                   default="holdout")
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--test-fraction", type=float, default=0.30)
    return parser


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("OFFDETECT_SEED", "0"))


def _delimiter(args) -> str:
    d = _DELIMS.get(args.delimiter, args.delimiter)
    if len(d) != 1:
        raise UsageError(f"delimiter must be a single character, got {args.delimiter!r}")
    return d


def _load_all(args, labeled: bool = True) -> Dataset:
    ds = None
    for path in args.data:
        part = load_dataset(path, delimiter=_delimiter(args),
                            has_header=args.header, labeled=labeled)
        ds = part if ds is None else concat(ds, part)
    return ds


def _load_cleaned(args, preprocess) -> Dataset:
    from .preprocess import clean_dataset

    ds = clean_dataset(_load_all(args), preprocess)
    if len(ds) == 0:
        raise DataError("every record cleaned to empty text")
    return ds


def _preprocess_config(args) -> PreprocessConfig:
    stopwords = load_stopwords(args.stopwords) if args.stopwords else None
    kwargs = {
        "remove_stopwords": not args.keep_stopwords,
        "strip_social_markers": not args.keep_social_markers,
        "lowercase": not args.no_lowercase,
    }
    if stopwords is not None:
        kwargs["stopword_list"] = stopwords
    return PreprocessConfig(**kwargs)


def _pipeline_spec(args, seed: int, model: str | None = None,
                   analyzer: str | None = None) -> PipelineSpec:
    return PipelineSpec(
        model=model or args.model,
        analyzer=analyzer or args.analyzer,
        word_range=tuple(args.word_ngrams),
        char_range=tuple(args.char_ngrams),
        preprocess=_preprocess_config(args),
        seed=seed,
        mnb=MnbConfig(alpha=args.alpha),
        svc=LinearConfig(loss="squared_hinge", C=args.C, max_iter=args.max_iter,
                         tol=args.tol, seed=seed),
        lr=LinearConfig(loss="logistic", C=args.C, max_iter=args.max_iter,
                        tol=args.tol, seed=seed),
        rfc=ForestConfig(n_estimators=args.n_estimators, max_depth=args.max_depth,
                         seed=seed),
        nn=NnConfig(embed_dim=args.embed_dim, learning_rate=args.learning_rate,
                    epochs=args.epochs, batch_size=args.batch_size, seed=seed),
    )


def _write_report(args, payload: dict) -> None:
    if getattr(args, "report", None):
        Path(args.report).write_text(
            json.dumps(payload, sort_keys=True, indent=1) + "\n", encoding="utf-8"
        )


def _print_metrics(scores, out) -> None:
    d = scores.to_dict()
    print(f"  accuracy     {d['accuracy']:.2f}", file=out)
    print("               precision  recall  f1", file=out)
    for lab in ("not", "off"):
        print(
            f"  {lab.upper():12s} {d['precision_' + lab]:<10.2f} "
            f"{d['recall_' + lab]:<7.2f} {d['f1_' + lab]:.2f}",
            file=out,
        )
    print(f"  macro-f1     {d['macro_f1']:.2f}", file=out)
    print(f"  weighted-f1  {d['weighted_f1']:.2f}", file=out)


def _cmd_stats(args, out) -> int:
    ds = _load_all(args)
    report = dataset_stats(ds)
    print(f"dataset: {ds.name}", file=out)
    print(f"total: {report.total}", file=out)
    print("label  count  percent", file=out)
    for lab in Label:
        print(f"{lab.name:5s} {report.counts[lab]:6d}  {report.percentages[lab]:.2f}%",
              file=out)
    _write_report(args, {
        "command": "stats",
        "dataset": ds.name,
        "total": report.total,
        "labels": {
            lab.name: {"count": report.counts[lab], "percent": report.percentages[lab]}
            for lab in Label
        },
    })
    return 0


def _cmd_train(args, out) -> int:
    seed = _resolve_seed(args)
    spec = _pipeline_spec(args, seed)
    ds = _load_cleaned(args, spec.preprocess)
    pipeline = Pipeline(spec).fit(ds.texts(), ds.labels())
    save_model(pipeline, args.out)
    print(f"trained {spec.model} ({spec.analyzer}) on {len(ds)} records "
          f"-> {args.out}", file=out)
    return 0


def _eval_pipeline(args, spec: PipelineSpec, ds: Dataset, seed: int) -> dict:
    eval_cfg = EvalConfig(folds=args.folds, test_fraction=args.test_fraction,
                          seed=seed)
    result: dict = {}
    if args.eval_mode in ("holdout", "both"):
        result["holdout"] = evaluate_holdout(lambda: Pipeline(spec), ds, eval_cfg)
    if args.eval_mode in ("cv", "both"):
        result["cv"] = cross_validate(lambda: Pipeline(spec), ds, eval_cfg)
    return result


def _cmd_evaluate(args, out) -> int:
    seed = _resolve_seed(args)
    spec = _pipeline_spec(args, seed)
    ds = _load_cleaned(args, spec.preprocess)
    result = _eval_pipeline(args, spec, ds, seed)
    print(f"dataset: {ds.name} ({len(ds)} records after cleaning)", file=out)
    print(f"pipeline: {spec.model} / {spec.analyzer} "
          f"word{spec.word_range} char{spec.char_range} seed={seed}", file=out)
    payload: dict = {
        "command": "evaluate",
        "dataset": ds.name,
        "records": len(ds),
        "model": spec.model,
        "analyzer": spec.analyzer,
        "word_ngrams": list(spec.word_range),
        "char_ngrams": list(spec.char_range),
        "seed": seed,
    }
    if "holdout" in result:
        rep = result["holdout"]
        print(f"== holdout (train {rep.train_size} / test {rep.test_size}) ==",
              file=out)
        _print_metrics(rep.scores, out)
        payload["holdout"] = rep.to_dict()
    if "cv" in result:
        rep = result["cv"]
        print(f"== {args.folds}-fold cross-validation ==", file=out)
        for k, m in enumerate(rep.fold_metrics):
            print(f"  fold {k}: accuracy {m.to_dict()['accuracy']:.2f}", file=out)
        print(f"  mean accuracy {rep.mean['accuracy']:.2f} "
              f"(std {rep.std['accuracy']:.2f})", file=out)
        print(f"  mean macro-f1 {rep.mean['macro_f1']:.2f}", file=out)
        payload["cv"] = rep.to_dict()
    _write_report(args, payload)
    return 0


def _cmd_predict(args, out_stream) -> int:
    pipeline = load_model(args.model_file)
    ds = _load_all(args, labeled=False)
    preds = pipeline.predict(ds.texts())
    lines = [f"{r.id}\t{lab.name}" for r, lab in zip(ds.records, preds)]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out_stream.write(text)
    return 0


def _cmd_grid(args, out) -> int:
    seed = _resolve_seed(args)
    base = _pipeline_spec(args, seed)
    ds = _load_cleaned(args, base.preprocess)
    rows = []
    combos = [(m, a) for m in ("svc", "mnb", "lr", "rfc", "ensemble")
              for a in ("word", "char", "union")]
    combos.append(("nn", "embedding"))
    for model, analyzer in combos:
        spec = _pipeline_spec(args, seed, model=model,
                              analyzer="union" if analyzer == "embedding" else analyzer)
        result = _eval_pipeline(args, spec, ds, seed)
        row = {"model": model, "analyzer": analyzer}
        if "holdout" in result:
            row["holdout"] = result["holdout"].to_dict()
        if "cv" in result:
            row["cv"] = result["cv"].to_dict()
        rows.append(row)
    print(f"dataset: {ds.name} ({len(ds)} records after cleaning)", file=out)
    header = f"{'model':10s} {'analyzer':10s}"
    if args.eval_mode in ("holdout", "both"):
        header += f" {'holdout-acc':>11s} {'holdout-f1':>10s}"
    if args.eval_mode in ("cv", "both"):
        header += f" {'cv-acc':>7s}"
    print(header, file=out)
    for row in rows:
        line = f"{row['model']:10s} {row['analyzer']:10s}"
        if "holdout" in row:
            m = row["holdout"]["metrics"]
            line += f" {m['accuracy']:>11.2f} {m['macro_f1']:>10.2f}"
        if "cv" in row:
            line += f" {row['cv']['mean']['accuracy']:>7.2f}"
        print(line, file=out)
    _write_report(args, {"command": "grid", "dataset": ds.name, "seed": seed,
                         "rows": rows})
    return 0


_HANDLERS = {
    "stats": _cmd_stats,
    "train": _cmd_train,
    "evaluate": _cmd_evaluate,
    "predict": _cmd_predict,
    "grid": _cmd_grid,
}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return _HANDLERS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
