"""Offensive-language detection toolkit for romanized code-mixed text.

Library surface: dataset handling (``corpus``), text cleaning
(``preprocess``), TF-IDF n-gram features (``features``), classical
classifiers and a voting ensemble (``classifiers``), a small embedding
network (``neuralnet``), an evaluation harness (``evaluation``), and the
``offdetect`` CLI (``cli``).
"""

from .corpus import Dataset, Label, Record, concat, dataset_stats, load_dataset, shuffle
from .errors import DataError, ModelFormatError, NumericError, TrainingError, UsageError
from .features import NgramSpec, TfidfModel, fit_tfidf, idf_of, tokenize, transform_tfidf
from .pipeline import Pipeline, PipelineSpec
from .preprocess import PreprocessConfig, clean_dataset, clean_text, load_stopwords
from .sparse import SparseMatrix, SparseVector

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "DataError",
    "Label",
    "ModelFormatError",
    "NgramSpec",
    "NumericError",
    "Pipeline",
    "PipelineSpec",
    "PreprocessConfig",
    "Record",
    "SparseMatrix",
    "SparseVector",
    "TfidfModel",
    "TrainingError",
    "UsageError",
    "__version__",
    "clean_dataset",
    "clean_text",
    "concat",
    "dataset_stats",
    "fit_tfidf",
    "idf_of",
    "load_dataset",
    "load_stopwords",
    "shuffle",
    "tokenize",
    "transform_tfidf",
]
