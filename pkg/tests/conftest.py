"""Shared fixtures and synthetic-corpus builders."""

from __future__ import annotations

import numpy as np
import pytest

from offdetect.corpus import Dataset, Label, Record

# Romanized-looking filler vocabulary shared by both classes.
_COMMON = [
    "padam", "nalla", "super", "mass", "kanditt", "oru", "scene", "hero",
    "villan", "kathai", "paattu", "vera", "level", "semma", "waiting",
    "trailer", "theatre", "fans", "first", "day", "show", "adipoli",
    "kidu", "pwoli", "thara", "local", "ettavum", "nannayi", "irunnu",
]

# Tokens planted only in offensive documents.
_OFFENSIVE = ["thendi", "patti", "poda", "myran", "kuppa", "thotti"]


def make_planted_corpus(n_docs: int = 600, seed: int = 7,
                        doc_len: tuple[int, int] = (4, 9),
                        planted_per_doc: int = 2) -> Dataset:
    """Balanced synthetic code-mix-style corpus with a planted keyword family.

    Every OFF document contains `planted_per_doc` tokens from the offensive
    family; NOT documents never do, so the classes are linearly separable
    on word unigrams (two tokens keep the signal strong enough for the
    smoothed naive-Bayes route as well).
    """
    rng = np.random.default_rng(seed)
    records = []
    for i in range(n_docs):
        label = Label.OFF if i % 2 else Label.NOT
        length = int(rng.integers(doc_len[0], doc_len[1]))
        words = [_COMMON[j] for j in rng.integers(0, len(_COMMON), size=length)]
        if label == Label.OFF:
            slots = rng.choice(length, size=min(planted_per_doc, length),
                               replace=False)
            for s in slots:
                words[s] = _OFFENSIVE[int(rng.integers(0, len(_OFFENSIVE)))]
        records.append(Record(id=f"syn{i}", text=" ".join(words), label=label))
    return Dataset(records=tuple(records), name="planted")


@pytest.fixture
def planted_small() -> Dataset:
    return make_planted_corpus(n_docs=60, seed=11)
