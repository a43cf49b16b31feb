"""Hard-voting ensemble over independently trained members."""

from __future__ import annotations

from collections import Counter

from ..corpus import Label
from ..errors import UsageError
from ..sparse import SparseVector, as_matrix
from .linear import LinearConfig, LinearModel, predict_linear_many, train_linear
from .mnb import MnbConfig, MnbModel, predict_mnb_many, train_mnb


def hard_vote(predictions: list[Label]) -> Label:
    """Label with the most votes; exact ties go to NOT."""
    if not predictions:
        raise UsageError("cannot vote over an empty prediction list")
    counts = Counter(predictions)
    return Label.OFF if counts[Label.OFF] > counts[Label.NOT] else Label.NOT


class EnsembleModel:
    """Ordered member models sharing one feature space."""

    def __init__(self, members: list):
        if len(members) < 2:
            raise UsageError("an ensemble needs at least 2 members")
        dims = {_member_dim(m) for m in members}
        if len(dims) != 1:
            raise UsageError(f"members disagree on feature dim: {sorted(dims)}")
        self.members = list(members)
        self.dim = dims.pop()


def _member_dim(model) -> int:
    if isinstance(model, MnbModel):
        return model.dim
    if isinstance(model, LinearModel):
        return int(model.weights.shape[0])
    raise UsageError(f"unsupported ensemble member type {type(model).__name__}")


def _member_predict_many(model, X) -> list[Label]:
    if isinstance(model, MnbModel):
        return predict_mnb_many(model, X)
    return predict_linear_many(model, X)


def train_ensemble(
    X,
    y: list[Label],
    svc_cfg: LinearConfig | None = None,
    mnb_cfg: MnbConfig | None = None,
    lr_cfg: LinearConfig | None = None,
) -> EnsembleModel:
    """Train the default member trio: linear SVC, MNB, logistic regression."""
    mat = as_matrix(X)
    svc = train_linear(mat, y, svc_cfg or LinearConfig(loss="squared_hinge"))
    mnb = train_mnb(mat, y, mnb_cfg or MnbConfig())
    lr = train_linear(mat, y, lr_cfg or LinearConfig(loss="logistic"))
    return EnsembleModel([svc, mnb, lr])


def predict_ensemble(model: EnsembleModel, x: SparseVector) -> Label:
    return predict_ensemble_many(model, [x])[0]


def predict_ensemble_many(model: EnsembleModel, X) -> list[Label]:
    mat = as_matrix(X)
    member_preds = [_member_predict_many(m, mat) for m in model.members]
    return [hard_vote(list(votes)) for votes in zip(*member_preds)]
