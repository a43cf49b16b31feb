"""L2-regularized linear classifiers trained by full-batch descent.

J(w, b) = 0.5 ||w||^2 + C * sum_i L(y_i * (w.x_i + b)) with L the logistic
loss ln(1 + exp(-s)) or the squared hinge max(0, 1 - s)^2, y in {-1, +1}
(OFF maps to +1). Optimization is deterministic gradient descent with an
Armijo backtracking line search; the bias is not regularized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..corpus import Label
from ..errors import NumericError, TrainingError, UsageError
from ..sparse import SparseVector, as_matrix

_ARMIJO_C = 1e-4
_MAX_BACKTRACKS = 60


@dataclass(frozen=True)
class LinearConfig:
    loss: str = "squared_hinge"  # or "logistic"
    C: float = 1.0
    max_iter: int = 1000
    tol: float = 1e-4
    seed: int = 0

    def __post_init__(self):
        if self.loss not in ("logistic", "squared_hinge"):
            raise UsageError(f"loss must be 'logistic' or 'squared_hinge', not {self.loss!r}")
        if self.C <= 0:
            raise UsageError("C must be positive")
        if self.tol <= 0:
            raise UsageError("tol must be positive")
        if self.max_iter < 0:
            raise UsageError("max_iter must be nonnegative")


class LinearModel:
    """Dense weight vector plus bias; positive decision values mean OFF."""

    def __init__(self, weights, bias: float, config: LinearConfig,
                 objective: float = float("nan"), n_iter: int = 0,
                 objective_trace: list[float] | None = None):
        self.weights = np.asarray(weights, dtype=np.float64)
        self.bias = float(bias)
        self.config = config
        self.objective = float(objective)
        self.n_iter = int(n_iter)
        self.objective_trace = objective_trace or []


def _signed_targets(y: list[Label]) -> np.ndarray:
    return np.array([1.0 if lab == Label.OFF else -1.0 for lab in y])


def _sigmoid(s: np.ndarray) -> np.ndarray:
    out = np.empty_like(s)
    pos = s >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-s[pos]))
    e = np.exp(s[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def _loss_terms(margins: np.ndarray, loss: str) -> tuple[np.ndarray, np.ndarray]:
    """Per-sample loss values and dL/ds at s = y * f."""
    if loss == "logistic":
        return np.logaddexp(0.0, -margins), -_sigmoid(-margins)
    gap = np.maximum(0.0, 1.0 - margins)
    return gap * gap, -2.0 * gap


def objective_at(w: np.ndarray, b: float, mat, y_signed: np.ndarray,
                 cfg: LinearConfig) -> float:
    f = _kernels.csr_matvec(mat.indptr, mat.indices, mat.data, w) + b
    losses, _ = _loss_terms(y_signed * f, cfg.loss)
    return 0.5 * float(np.dot(w, w)) + cfg.C * float(np.sum(losses))


def linear_objective_grad(point, X, y: list[Label], cfg: LinearConfig):
    """Objective and gradient at a model or a (w, b) point.

    Returns (J, grad_w, grad_b). The squared-hinge derivative takes the
    zero branch exactly at the margin boundary.
    """
    if isinstance(point, LinearModel):
        w, b = point.weights, point.bias
    else:
        w, b = point
    w = np.asarray(w, dtype=np.float64)
    mat = as_matrix(X)
    y_signed = _signed_targets(y)
    f = _kernels.csr_matvec(mat.indptr, mat.indices, mat.data, w) + b
    losses, dloss = _loss_terms(y_signed * f, cfg.loss)
    J = 0.5 * float(np.dot(w, w)) + cfg.C * float(np.sum(losses))
    coeff = cfg.C * dloss * y_signed
    grad_w = w + _kernels.csr_rmatvec(mat.indptr, mat.indices, mat.data, coeff,
                                      mat.n_cols)
    grad_b = float(np.sum(coeff))
    return J, grad_w, grad_b


def train_linear(X, y: list[Label], cfg: LinearConfig | None = None) -> LinearModel:
    """Fit from w = 0, b = 0; stops when |dJ| < tol * max(1, J)."""
    if cfg is None:
        cfg = LinearConfig()
    mat = as_matrix(X)
    if mat.n_rows != len(y):
        raise UsageError("X and y lengths differ")
    y_signed = _signed_targets(y)
    if np.all(y_signed > 0) or np.all(y_signed < 0):
        raise TrainingError("training data contains a single class")

    w = np.zeros(mat.n_cols)
    b = 0.0
    J, grad_w, grad_b = linear_objective_grad((w, b), mat, y, cfg)
    trace = [J]
    step = 1.0
    n_iter = 0
    for n_iter in range(1, cfg.max_iter + 1):
        gnorm2 = float(np.dot(grad_w, grad_w)) + grad_b * grad_b
        if gnorm2 == 0.0:
            break
        step = min(step * 2.0, 1e8)
        accepted = False
        for _ in range(_MAX_BACKTRACKS):
            w_new = w - step * grad_w
            b_new = b - step * grad_b
            J_new = objective_at(w_new, b_new, mat, y_signed, cfg)
            if np.isfinite(J_new) and J_new <= J - _ARMIJO_C * step * gnorm2:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break  # no descent step at machine precision: converged
        delta = J - J_new
        w, b, J = w_new, b_new, J_new
        if not np.isfinite(J):
            raise NumericError(f"objective diverged at iteration {n_iter}")
        trace.append(J)
        J, grad_w, grad_b = linear_objective_grad((w, b), mat, y, cfg)
        if delta < cfg.tol * max(1.0, abs(J)):
            break
    return LinearModel(w, b, cfg, objective=J, n_iter=n_iter, objective_trace=trace)


def decision_value(model: LinearModel, x: SparseVector) -> float:
    if x.dim != model.weights.shape[0]:
        raise UsageError(f"vector dim {x.dim} != model dim {model.weights.shape[0]}")
    return float(model.weights[x.indices] @ x.values) + model.bias


def predict_linear(model: LinearModel, x: SparseVector) -> tuple[Label, float]:
    """(label, decision); exactly-zero decisions go to NOT."""
    d = decision_value(model, x)
    return (Label.OFF if d > 0.0 else Label.NOT), d


def predict_linear_many(model: LinearModel, X) -> list[Label]:
    mat = as_matrix(X)
    if mat.n_cols != model.weights.shape[0]:
        raise UsageError("matrix dim != model dim")
    d = _kernels.csr_matvec(mat.indptr, mat.indices, mat.data, model.weights)
    d += model.bias
    return [Label.OFF if v > 0.0 else Label.NOT for v in d]
