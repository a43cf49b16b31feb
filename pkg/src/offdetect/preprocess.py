"""Noise removal for raw social-media text.

The cleaning order is fixed: social markers first (so ``@USER`` dies as a
whole token instead of degrading to ``user``), then non-ASCII stripping,
digit deletion, special-character replacement, lowercasing, stopword
removal, and whitespace collapsing. The result is romanized lowercase
ASCII; punctuation outside the replacement set survives.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .corpus import Dataset, Record
from .errors import UsageError

_NON_ASCII = re.compile(r"[^\x00-\x7f]")
_DIGITS = re.compile(r"[0-9]")
_SPECIALS = re.compile(r"[@#%$^()\-]")
_WHITESPACE = re.compile(r"\s+")


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a stopword file (one word per line, '#' comments allowed).

    With no path, loads the list shipped with the package.
    """
    if path is None:
        text = (
            resources.files("offdetect").joinpath("assets/stopwords_en.txt")
            .read_text(encoding="utf-8")
        )
    else:
        text = Path(path).read_text(encoding="utf-8")
    words = set()
    for line in text.splitlines():
        word = line.split("#", 1)[0].strip()
        if word:
            words.add(word)
    return frozenset(words)


@dataclass(frozen=True)
class PreprocessConfig:
    remove_stopwords: bool = True
    stopword_list: frozenset[str] = field(default_factory=load_stopwords)
    strip_social_markers: bool = True
    lowercase: bool = True

    def __post_init__(self):
        for w in self.stopword_list:
            if not w or w != w.lower() or not w.isascii():
                raise UsageError(f"invalid stopword {w!r}: must be lowercase ASCII")

    def to_dict(self) -> dict:
        return {
            "remove_stopwords": self.remove_stopwords,
            "stopword_list": sorted(self.stopword_list),
            "strip_social_markers": self.strip_social_markers,
            "lowercase": self.lowercase,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PreprocessConfig":
        return cls(
            remove_stopwords=bool(d["remove_stopwords"]),
            stopword_list=frozenset(d["stopword_list"]),
            strip_social_markers=bool(d["strip_social_markers"]),
            lowercase=bool(d["lowercase"]),
        )


def remove_social_markers(text: str) -> str:
    """Drop whole whitespace-delimited tokens starting with '@' or '#'."""
    kept = [tok for tok in text.split() if not tok.startswith(("@", "#"))]
    return " ".join(kept)


def strip_non_ascii(text: str) -> str:
    """Replace every code point above U+007F with a single space."""
    return _NON_ASCII.sub(" ", text)


def remove_stopwords(text: str, stopwords: frozenset[str] | set[str]) -> str:
    """Delete tokens that exactly match a stopword; expects lowercased text."""
    kept = [tok for tok in text.split() if tok not in stopwords]
    return " ".join(kept)


def clean_text(text: str | None, cfg: PreprocessConfig | None = None) -> str:
    """Run the full cleaning pipeline; idempotent, may return ''."""
    if cfg is None:
        cfg = PreprocessConfig()
    if not text:
        return ""
    if cfg.strip_social_markers:
        text = remove_social_markers(text)
    text = strip_non_ascii(text)
    text = _DIGITS.sub("", text)
    text = _SPECIALS.sub(" ", text)
    if cfg.lowercase:
        text = text.lower()
    if cfg.remove_stopwords:
        text = remove_stopwords(text, cfg.stopword_list)
    return _WHITESPACE.sub(" ", text).strip()


def clean_dataset(ds: Dataset, cfg: PreprocessConfig | None = None) -> Dataset:
    """Clean every record's text, dropping records that come out empty."""
    if cfg is None:
        cfg = PreprocessConfig()
    kept = []
    for r in ds.records:
        cleaned = clean_text(r.text, cfg)
        if cleaned:
            kept.append(Record(id=r.id, text=cleaned, label=r.label))
    return Dataset(records=tuple(kept), name=ds.name)
