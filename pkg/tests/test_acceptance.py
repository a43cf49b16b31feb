"""Acceptance gate for the toolkit.

Criteria 1-10 are self-contained and must always pass. Criteria 11-14
need the HASOC Dravidian CodeMix training files (not redistributable);
they run when $OFFDETECT_HASOC_DIR (or ./data/hasoc/) holds
``malayalam_train.tsv`` / ``tamil_train.tsv`` and skip otherwise.

Run with ``pytest -s tests/test_acceptance.py`` to see one PASS line per
criterion.
"""

import itertools
import json
import math
import os
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

from offdetect.classifiers import (
    LinearConfig,
    MnbConfig,
    hard_vote,
    linear_objective_grad,
    mnb_scores,
    train_mnb,
)
from offdetect.cli import run
from offdetect.corpus import Dataset, Label, Record, concat, load_dataset
from offdetect.evaluation import EvalConfig, evaluate_holdout, stratified_kfold
from offdetect.features import NgramSpec, fit_tfidf, transform_tfidf
from offdetect.neuralnet import NnConfig, nn_loss_grad, nn_param_count, nn_train, nn_train_accuracy
from offdetect.persist import load_model, save_model
from offdetect.pipeline import Pipeline, PipelineSpec
from offdetect.preprocess import PreprocessConfig, clean_text
from offdetect.sparse import SparseVector

from conftest import make_planted_corpus

NO_STOP = PreprocessConfig(stopword_list=frozenset())


def _report(num, text):
    print(f"[acceptance] criterion {num:02d} PASS - {text}")


def vec(values, dim=None):
    values = np.asarray(values, dtype=np.float64)
    dim = dim or values.size
    idx = np.nonzero(values)[0].astype(np.int64)
    return SparseVector(idx, values[idx], dim)


# --------------------------------------------------------------------------
# criterion 1: TF-IDF against a hand-rolled dense oracle
# --------------------------------------------------------------------------


def dense_tfidf_oracle(corpus, grams_of):
    """Independent dense TF-IDF: dict counting, smoothed IDF, L2 rows."""
    n = len(corpus)
    df = Counter()
    for doc in corpus:
        df.update(set(grams_of(doc)))
    terms = sorted(df)
    idf = {t: math.log((1 + n) / (1 + df[t])) + 1.0 for t in terms}
    out = []
    for doc in corpus:
        counts = Counter(grams_of(doc))
        row = [counts[t] * idf[t] for t in terms]
        norm = math.sqrt(sum(x * x for x in row))
        out.append([x / norm if norm else 0.0 for x in row])
    return terms, out


class TestCriterion1TfidfOracle:
    def test_five_document_hand_corpus(self):
        corpus = [
            "nalla padam",
            "padam mass padam",
            "vera level",
            "nalla vera scene",
            "mass scene padam nalla",
        ]

        def word_grams(doc):
            toks = doc.split()
            return toks + [" ".join(p) for p in zip(toks, toks[1:])]

        terms, expected = dense_tfidf_oracle(corpus, word_grams)
        model = fit_tfidf(corpus, [NgramSpec("word", 1, 2)])
        assert model.vocabularies[0].terms == terms
        for doc, row in zip(corpus, expected):
            got = transform_tfidf(model, doc).toarray()
            np.testing.assert_allclose(got, row, atol=1e-9)
        _report(1, "5-doc corpus matches dense smoothed-IDF/L2 oracle at 1e-9")


# --------------------------------------------------------------------------
# criterion 2: union dimension additivity
# --------------------------------------------------------------------------


class TestCriterion2UnionAdditivity:
    def test_fifty_random_corpora(self):
        rng = np.random.default_rng(100)
        alphabet = "abc d"
        word = NgramSpec("word", 1, 2)
        char = NgramSpec("char", 1, 4)
        for _ in range(50):
            corpus = [
                "".join(alphabet[i] for i in rng.integers(0, 5, size=rng.integers(1, 25)))
                for _ in range(int(rng.integers(1, 10)))
            ]
            union = fit_tfidf(corpus, [word, char]).dim
            w = fit_tfidf(corpus, [word]).dim
            c = fit_tfidf(corpus, [char]).dim
            assert union == w + c
        _report(2, "union dim == word dim + char dim on 50 random corpora (exact)")


# --------------------------------------------------------------------------
# criterion 3: MNB equals the exhaustive Bayes oracle
# --------------------------------------------------------------------------


class TestCriterion3MnbOracle:
    def test_three_doc_five_term_universe(self):
        docs = np.array(
            [
                [2, 0, 1, 0, 0],
                [0, 1, 0, 1, 0],
                [1, 0, 0, 0, 2],
            ],
            dtype=np.float64,
        )
        y = [Label.OFF, Label.NOT, Label.OFF]
        alpha = 1.0
        model = train_mnb([vec(d) for d in docs], y, MnbConfig(alpha=alpha))

        labels01 = np.array([1, 0, 1])
        checked = 0
        for counts in itertools.product(range(3), repeat=5):
            q = np.array(counts, dtype=np.float64)
            oracle = []
            for c in (0, 1):
                sub = docs[labels01 == c]
                prior = math.log(sub.shape[0] / docs.shape[0])
                s_ct = sub.sum(axis=0)
                loglik = np.log((s_ct + alpha) / (s_ct.sum() + alpha * 5))
                oracle.append(prior + float(q @ loglik))
            got = mnb_scores(model, vec(q, dim=5))
            np.testing.assert_allclose(got, oracle, atol=1e-9)
            checked += 1
        assert checked == 3 ** 5
        _report(3, "MNB log-posteriors equal Bayes oracle on all 243 documents")


# --------------------------------------------------------------------------
# criterion 4: gradient checks
# --------------------------------------------------------------------------


class TestCriterion4Gradients:
    def test_logistic_objective_gradient(self):
        rng = np.random.default_rng(200)
        dim = 5
        X = [vec(rng.normal(size=dim)) for _ in range(10)]
        y = [Label.OFF if i % 2 else Label.NOT for i in range(10)]
        cfg = LinearConfig(loss="logistic", C=0.9)
        h = 1e-6
        for _ in range(20):
            w = rng.normal(scale=0.7, size=dim)
            b = float(rng.normal(scale=0.4))
            _, gw, gb = linear_objective_grad((w, b), X, y, cfg)
            analytic = np.concatenate([gw, [gb]])
            num = np.empty(dim + 1)
            for k in range(dim):
                e = np.zeros(dim)
                e[k] = h
                Jp, _, _ = linear_objective_grad((w + e, b), X, y, cfg)
                Jm, _, _ = linear_objective_grad((w - e, b), X, y, cfg)
                num[k] = (Jp - Jm) / (2 * h)
            Jp, _, _ = linear_objective_grad((w, b + h), X, y, cfg)
            Jm, _, _ = linear_objective_grad((w, b - h), X, y, cfg)
            num[dim] = (Jp - Jm) / (2 * h)
            rel = np.linalg.norm(analytic - num) / max(1.0, np.linalg.norm(analytic))
            assert rel < 1e-5
        _report(4, "logistic and NN gradients match central differences")

    def test_nn_loss_gradient(self):
        from offdetect.neuralnet import WordIndex, init_net

        rng = np.random.default_rng(201)
        h = 1e-6
        for trial in range(20):
            index = WordIndex([f"w{i}" for i in range(1, 7)])
            cfg = NnConfig(vocab_capacity=8, embed_dim=3, max_len=4, seed=trial)
            net = init_net(cfg, index)
            net.dense_w[:] = rng.normal(scale=0.4, size=net.dense_w.size)
            net.bias = float(rng.normal(scale=0.3))
            seq = np.array([1, 3, 3, 0])
            label = Label.OFF if trial % 2 else Label.NOT
            loss, g_dense, g_bias, row_grads = nn_loss_grad(net, seq, label)

            for k in rng.choice(net.dense_w.size, size=3, replace=False):
                saved = net.dense_w[k]
                net.dense_w[k] = saved + h
                hi = nn_loss_grad(net, seq, label)[0]
                net.dense_w[k] = saved - h
                lo = nn_loss_grad(net, seq, label)[0]
                net.dense_w[k] = saved
                assert abs((hi - lo) / (2 * h) - g_dense[k]) < 1e-4 * max(1.0, abs(g_dense[k]))
            saved = net.bias
            net.bias = saved + h
            hi = nn_loss_grad(net, seq, label)[0]
            net.bias = saved - h
            lo = nn_loss_grad(net, seq, label)[0]
            net.bias = saved
            assert abs((hi - lo) / (2 * h) - g_bias) < 1e-4 * max(1.0, abs(g_bias))
            for r, g in row_grads.items():
                for d in range(3):
                    saved = net.embedding[r, d]
                    net.embedding[r, d] = saved + h
                    hi = nn_loss_grad(net, seq, label)[0]
                    net.embedding[r, d] = saved - h
                    lo = nn_loss_grad(net, seq, label)[0]
                    net.embedding[r, d] = saved
                    assert abs((hi - lo) / (2 * h) - g[d]) < 1e-4 * max(1.0, abs(g[d]))


# --------------------------------------------------------------------------
# criterion 5: parameter arithmetic of the reference configurations
# --------------------------------------------------------------------------


class TestCriterion5ParamArithmetic:
    def test_reference_configs(self):
        got65 = nn_param_count(NnConfig(vocab_capacity=15450, embed_dim=200, max_len=65))
        got64 = nn_param_count(NnConfig(vocab_capacity=15300, embed_dim=200, max_len=64))
        assert got65 == (3_090_000, 13_000, 13_001)
        assert got64 == (3_060_000, 12_800, 12_801)
        _report(5, "(15450,200,65)->3,090,000/13,000 and (15300,200,64)->3,060,000/12,800")


# --------------------------------------------------------------------------
# criterion 6: hard voting vs majority-count oracle, exhaustive
# --------------------------------------------------------------------------


class TestCriterion6Voting:
    def test_exhaustive_up_to_length_five(self):
        cases = 0
        for n in range(1, 6):
            for combo in itertools.product((Label.NOT, Label.OFF), repeat=n):
                c = Counter(combo)
                expected = Label.OFF if c[Label.OFF] > c[Label.NOT] else Label.NOT
                assert hard_vote(list(combo)) == expected
                cases += 1
        assert cases == 2 + 4 + 8 + 16 + 32
        _report(6, "hard_vote equals majority oracle on all 62 lists, ties -> NOT")


# --------------------------------------------------------------------------
# criterion 7: stratified folds stay within one record of proportional
# --------------------------------------------------------------------------


class TestCriterion7Stratification:
    def test_hundred_random_distributions(self):
        rng = np.random.default_rng(300)
        for _ in range(100):
            n_not = int(rng.integers(5, 120))
            n_off = int(rng.integers(5, 120))
            folds_k = int(rng.integers(2, min(6, min(n_not, n_off) + 1)))
            recs = [Record(f"n{i}", "x", Label.NOT) for i in range(n_not)]
            recs += [Record(f"o{i}", "x", Label.OFF) for i in range(n_off)]
            ds = Dataset(tuple(recs), name="r")
            folds = stratified_kfold(ds, EvalConfig(folds=folds_k, seed=int(rng.integers(1000))))
            seen = []
            for _, val in folds:
                seen.extend(r.id for r in val.records)
                for lab, total in ((Label.NOT, n_not), (Label.OFF, n_off)):
                    got = sum(1 for r in val.records if r.label == lab)
                    assert abs(got - total / folds_k) <= 1.0
            assert sorted(seen) == sorted(r.id for r in ds.records)
        _report(7, "100 random label distributions: folds partition, imbalance <= 1")


# --------------------------------------------------------------------------
# criterion 8: separable end-to-end corpus
# --------------------------------------------------------------------------


@pytest.fixture(scope="module")
def corpus():
    return make_planted_corpus(n_docs=600, seed=7)


class TestCriterion8SeparableEndToEnd:
    @pytest.mark.parametrize("model", ["svc", "mnb", "lr", "ensemble"])
    def test_linear_family_f1(self, corpus, model):
        spec = PipelineSpec(model=model, analyzer="union", seed=0, preprocess=NO_STOP)
        rep = evaluate_holdout(lambda: Pipeline(spec), corpus, EvalConfig(seed=1))
        assert rep.scores.f1[Label.OFF] >= 0.95

    def test_forest_f1(self, corpus):
        spec = PipelineSpec(model="rfc", analyzer="union", seed=0, preprocess=NO_STOP)
        rep = evaluate_holdout(lambda: Pipeline(spec), corpus, EvalConfig(seed=1))
        assert rep.scores.f1[Label.OFF] >= 0.90

    def test_nn_training_accuracy(self, corpus):
        texts, labels = corpus.texts(), corpus.labels()
        net, _ = nn_train(texts, labels, NnConfig(seed=0))
        assert nn_train_accuracy(net, texts, labels) >= 0.95
        _report(8, "600-doc planted corpus: SVC/MNB/LR/ensemble F1>=0.95, "
                   "RFC>=0.90, NN train>=0.95")


# --------------------------------------------------------------------------
# criterion 9: CLI determinism and model round-trips
# --------------------------------------------------------------------------


class TestCriterion9Determinism:
    def test_identical_evaluate_runs(self, tmp_path):
        ds = make_planted_corpus(n_docs=60, seed=41)
        data = tmp_path / "d.tsv"
        data.write_text(
            "".join(f"{r.id}\t{r.text}\t{r.label.name}\n" for r in ds.records),
            encoding="utf-8",
        )
        r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
        args = ["evaluate", "--data", str(data), "--model", "ensemble",
                "--folds", "3", "--seed", "13"]
        assert run(args + ["--report", str(r1)]) == 0
        assert run(args + ["--report", str(r2)]) == 0
        assert r1.read_bytes() == r2.read_bytes()

    @pytest.mark.parametrize("kind", ["svc", "mnb", "lr", "rfc", "ensemble", "nn"])
    def test_round_trip_preserves_predictions(self, kind, tmp_path):
        ds = make_planted_corpus(n_docs=40, seed=43)
        spec = PipelineSpec(model=kind, seed=0, preprocess=NO_STOP)
        pipeline = Pipeline(spec).fit(ds.texts(), ds.labels())
        path = tmp_path / "m.json"
        save_model(pipeline, path)
        loaded = load_model(path)
        rng = np.random.default_rng(0)
        words = ["padam", "nalla", "thendi", "poda", "scene", "mass", "kidu"]
        probes = [
            " ".join(words[i] for i in rng.integers(0, len(words), size=rng.integers(1, 7)))
            for _ in range(100)
        ]
        assert loaded.predict(probes) == pipeline.predict(probes)
        if kind == "nn":
            _report(9, "evaluate runs byte-identical; round-trips preserve predictions")


# --------------------------------------------------------------------------
# criterion 10: cleaning idempotence and output alphabet
# --------------------------------------------------------------------------


class TestCriterion10Cleaning:
    def test_thousand_random_unicode_strings(self):
        rng = np.random.default_rng(400)
        cfg = PreprocessConfig()
        deleted = set("@#%$^()-0123456789")
        pool = (
            list(range(32, 127))
            + [0x1F600, 0x1F4A9, 0x0D28, 0x0D32, 0x0BA4, 0x0BB2, 0x00E9, 0x20AC,
               0x0903, 0x4E2D, 9, 10, 160]
        )
        for _ in range(1000):
            chars = rng.choice(pool, size=rng.integers(0, 80))
            s = "".join(chr(int(c)) for c in chars)
            once = clean_text(s, cfg)
            assert clean_text(once, cfg) == once
            assert not once.startswith(" ") and not once.endswith(" ")
            assert "  " not in once
            for ch in once:
                assert ch.isascii() and not ch.isupper() and ch not in deleted
        _report(10, "clean_text idempotent on 1000 random strings; alphabet holds")


# --------------------------------------------------------------------------
# criteria 11-14: conditional on the HASOC Dravidian CodeMix files
# --------------------------------------------------------------------------


def _hasoc_dir() -> Path:
    return Path(os.environ.get("OFFDETECT_HASOC_DIR", "data/hasoc"))


def _hasoc_file(name: str) -> Path:
    return _hasoc_dir() / name

_MAL = _hasoc_file("malayalam_train.tsv")
_TAM = _hasoc_file("tamil_train.tsv")

needs_malayalam = pytest.mark.skipif(
    not _MAL.exists(), reason=f"HASOC Malayalam file not found at {_MAL}"
)
needs_tamil = pytest.mark.skipif(
    not _TAM.exists(), reason=f"HASOC Tamil file not found at {_TAM}"
)


def _load_hasoc(path: Path) -> Dataset:
    from offdetect.preprocess import clean_dataset

    ds = load_dataset(path, delimiter="\t", has_header=True)
    return clean_dataset(ds, PreprocessConfig())


@needs_malayalam
class TestCriterion11MalayalamMnb:
    def test_union_accuracy_and_direction(self):
        ds = _load_hasoc(_MAL)
        union = PipelineSpec(model="mnb", analyzer="union", word_range=(1, 2),
                             char_range=(1, 5), seed=0)
        word = PipelineSpec(model="mnb", analyzer="word", word_range=(1, 2), seed=0)
        cfg = EvalConfig(seed=0)
        rep_u = evaluate_holdout(lambda: Pipeline(union), ds, cfg)
        rep_w = evaluate_holdout(lambda: Pipeline(word), ds, cfg)
        assert abs(rep_u.scores.accuracy - 0.7608) <= 0.03
        assert rep_u.scores.f1[Label.OFF] > rep_w.scores.f1[Label.OFF]
        _report(11, f"Malayalam MNB union accuracy {rep_u.scores.accuracy:.4f}")


@needs_tamil
class TestCriterion12TamilSvc:
    def test_char_accuracy_and_ordering(self):
        ds = _load_hasoc(_TAM)
        char = PipelineSpec(model="svc", analyzer="char", char_range=(1, 7), seed=0)
        word = PipelineSpec(model="svc", analyzer="word", word_range=(1, 4), seed=0)
        cfg = EvalConfig(seed=0)
        rep_c = evaluate_holdout(lambda: Pipeline(char), ds, cfg)
        rep_w = evaluate_holdout(lambda: Pipeline(word), ds, cfg)
        assert abs(rep_c.scores.accuracy - 0.87) <= 0.03
        assert abs(rep_c.scores.f1[Label.OFF] - 0.86) <= 0.03
        assert rep_c.scores.accuracy >= rep_w.scores.accuracy
        _report(12, f"Tamil SVC char accuracy {rep_c.scores.accuracy:.4f}")


@needs_malayalam
@needs_tamil
class TestCriterion13CombinedLanguages:
    @pytest.mark.parametrize("model", ["svc", "mnb", "lr", "ensemble"])
    def test_union_accuracy(self, model):
        combined = concat(_load_hasoc(_MAL), _load_hasoc(_TAM))
        spec = PipelineSpec(model=model, analyzer="union", word_range=(1, 6),
                            char_range=(1, 8), seed=0)
        rep = evaluate_holdout(lambda: Pipeline(spec), combined, EvalConfig(seed=0))
        assert abs(rep.scores.accuracy - 0.80) <= 0.03
        _report(13, f"combined {model} union accuracy {rep.scores.accuracy:.4f}")


class TestCriterion14FeatureCounts:
    @needs_malayalam
    def test_malayalam_counts(self):
        texts = _load_hasoc(_MAL).texts()
        w = fit_tfidf(texts, [NgramSpec("word", 1, 2)]).dim
        c = fit_tfidf(texts, [NgramSpec("char", 1, 5)]).dim
        u = fit_tfidf(texts, [NgramSpec("word", 1, 2), NgramSpec("char", 1, 5)]).dim
        for got, ref in ((w, 38536), (c, 81191), (u, 119727)):
            assert abs(got - ref) <= 0.05 * ref
        assert u == w + c
        _report(14, f"Malayalam feature counts {w}/{c}/{u}")

    @needs_tamil
    def test_tamil_counts(self):
        texts = _load_hasoc(_TAM).texts()
        w = fit_tfidf(texts, [NgramSpec("word", 1, 4)]).dim
        c = fit_tfidf(texts, [NgramSpec("char", 1, 7)]).dim
        u = fit_tfidf(texts, [NgramSpec("word", 1, 4), NgramSpec("char", 1, 7)]).dim
        for got, ref in ((w, 117173), (c, 325902), (u, 443075)):
            assert abs(got - ref) <= 0.05 * ref
        _report(14, f"Tamil feature counts {w}/{c}/{u}")
