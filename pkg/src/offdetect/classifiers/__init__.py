"""Classical classifier families: MNB, linear models, random forest, ensemble."""

from .ensemble import (
    EnsembleModel,
    hard_vote,
    predict_ensemble,
    predict_ensemble_many,
    train_ensemble,
)
from .forest import ForestConfig, ForestModel, predict_forest, predict_forest_many, train_forest
from .linear import (
    LinearConfig,
    LinearModel,
    linear_objective_grad,
    predict_linear,
    predict_linear_many,
    train_linear,
)
from .mnb import MnbConfig, MnbModel, mnb_scores, predict_mnb, predict_mnb_many, train_mnb

__all__ = [
    "EnsembleModel",
    "ForestConfig",
    "ForestModel",
    "LinearConfig",
    "LinearModel",
    "MnbConfig",
    "MnbModel",
    "hard_vote",
    "linear_objective_grad",
    "mnb_scores",
    "predict_ensemble",
    "predict_ensemble_many",
    "predict_forest",
    "predict_forest_many",
    "predict_linear",
    "predict_linear_many",
    "predict_mnb",
    "predict_mnb_many",
    "train_ensemble",
    "train_forest",
    "train_linear",
    "train_mnb",
]
