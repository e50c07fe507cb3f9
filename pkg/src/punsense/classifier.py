"""SVM (trained by sequential minimal optimization) and logistic
regression over semantic vectors, plus the evaluation report.

The SMO solver uses maximal-violating-pair working-set selection with
ties broken by index order, no shrinking, and a hard iteration cap, so
training is bit-for-bit reproducible.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .errors import (
    DimensionMismatch,
    LengthMismatch,
    EmptyInput,
    NonConvergence,
    SingleClassData,
)

MODEL_FORMAT = "punsense-model"
MODEL_VERSION = 1

_TAU = 1e-12


def linear_kernel(X, Y):
    return np.asarray(X, dtype=np.float64) @ np.asarray(Y, dtype=np.float64).T


def rbf_kernel(X, Y, gamma):
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    sq = (
        np.sum(X * X, axis=1)[:, None]
        + np.sum(Y * Y, axis=1)[None, :]
        - 2.0 * (X @ Y.T)
    )
    np.maximum(sq, 0.0, out=sq)
    return np.exp(-gamma * sq)


def _resolve_gamma(gamma, X):
    if gamma == "scale":
        variance = float(np.var(X))
        if variance <= 0:
            variance = 1.0
        return 1.0 / (X.shape[1] * variance)
    value = float(gamma)
    if value <= 0:
        raise ValueError("gamma must be positive")
    return value


def _smo_solve(K, y, C, tol, max_iter):
    """Solve the dual problem on a precomputed kernel matrix.

    Returns (alpha, bias, iterations).  Raises NonConvergence with the
    partial state attached when the iteration cap is hit.
    """
    n = len(y)
    alpha = np.zeros(n)
    grad = -np.ones(n)  # gradient of 0.5 a'Qa - e'a at a=0
    Q = (y[:, None] * y[None, :]) * K

    for iteration in range(max_iter):
        yg = -y * grad
        up = ((y > 0) & (alpha < C)) | ((y < 0) & (alpha > 0))
        low = ((y < 0) & (alpha < C)) | ((y > 0) & (alpha > 0))
        up_vals = np.where(up, yg, -np.inf)
        low_vals = np.where(low, yg, np.inf)
        i = int(np.argmax(up_vals))
        j = int(np.argmin(low_vals))
        m = up_vals[i]
        M = low_vals[j]
        if m - M <= tol:
            bias = float((m + M) / 2.0)
            return alpha, bias, iteration

        old_i, old_j = alpha[i], alpha[j]
        if y[i] != y[j]:
            quad = max(Q[i, i] + Q[j, j] + 2.0 * Q[i, j], _TAU)
            delta = (-grad[i] - grad[j]) / quad
            diff = alpha[i] - alpha[j]
            alpha[i] += delta
            alpha[j] += delta
            if diff > 0:
                if alpha[j] < 0:
                    alpha[j] = 0.0
                    alpha[i] = diff
                if alpha[i] > C:
                    alpha[i] = C
                    alpha[j] = C - diff
            else:
                if alpha[i] < 0:
                    alpha[i] = 0.0
                    alpha[j] = -diff
                if alpha[j] > C:
                    alpha[j] = C
                    alpha[i] = C + diff
        else:
            quad = max(Q[i, i] + Q[j, j] - 2.0 * Q[i, j], _TAU)
            delta = (grad[i] - grad[j]) / quad
            total = alpha[i] + alpha[j]
            alpha[i] -= delta
            alpha[j] += delta
            if total > C:
                if alpha[i] > C:
                    alpha[i] = C
                    alpha[j] = total - C
                if alpha[j] > C:
                    alpha[j] = C
                    alpha[i] = total - C
            else:
                if alpha[j] < 0:
                    alpha[j] = 0.0
                    alpha[i] = total
                if alpha[i] < 0:
                    alpha[i] = 0.0
                    alpha[j] = total

        grad += Q[:, i] * (alpha[i] - old_i) + Q[:, j] * (alpha[j] - old_j)

    raise NonConvergence(
        f"SMO did not converge within {max_iter} pair updates",
        model={"alpha": alpha, "grad": grad},
    )


class SmoSvmClassifier(BaseEstimator, ClassifierMixin):
    """Binary kernel SVM trained by SMO.

    Parameters follow the usual conventions: C > 0, gamma either
    "scale" (1 / (n_features * var(X))) or a positive float, kernel
    "linear" or "rbf".  The seed only labels the training run (pair
    selection itself is tie-broken by index), but is stored so runs are
    auditable.
    """

    def __init__(self, kernel="rbf", C=1.0, gamma="scale", tol=1e-3, max_iter=100000, seed=0):
        self.kernel = kernel
        self.C = C
        self.gamma = gamma
        self.tol = tol
        self.max_iter = max_iter
        self.seed = seed

    def _kernel_matrix(self, X, Y):
        if self.kernel == "linear":
            return linear_kernel(X, Y)
        if self.kernel == "rbf":
            return rbf_kernel(X, Y, self.gamma_)
        raise ValueError(f"unknown kernel {self.kernel!r}")

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        labels = np.asarray(y)
        if X.ndim != 2 or len(X) != len(labels):
            raise ValueError("X must be 2-D and aligned with y")
        classes = sorted(set(labels.tolist()))
        if len(classes) < 2:
            raise SingleClassData(f"training data has classes {classes}")
        if len(classes) > 2:
            raise ValueError("binary classification only")
        if self.C <= 0:
            raise ValueError("C must be positive")
        self.classes_ = classes  # classes_[1] is the positive class
        signed = np.where(labels == classes[1], 1.0, -1.0)
        self.gamma_ = _resolve_gamma(self.gamma, X) if self.kernel == "rbf" else None
        K = self._kernel_matrix(X, X)
        alpha, bias, iterations = _smo_solve(K, signed, float(self.C), float(self.tol), int(self.max_iter))
        mask = alpha > 0
        self.support_vectors_ = X[mask]
        self.dual_coef_ = alpha[mask] * signed[mask]
        self.intercept_ = bias
        self.n_features_in_ = X.shape[1]
        self.n_iter_ = iterations
        self.training_meta_ = {
            "seed": int(self.seed),
            "iterations": int(iterations),
            "tol": float(self.tol),
        }
        # kept for the KKT audit
        self._fit_alpha = alpha
        self._fit_X = X
        self._fit_y = signed
        return self

    def decision_function(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.n_features_in_:
            raise DimensionMismatch(
                f"expected {self.n_features_in_} features, got {X.shape[1]}"
            )
        if len(self.support_vectors_) == 0:
            return np.full(len(X), self.intercept_)
        K = self._kernel_matrix(X, self.support_vectors_)
        return K @ self.dual_coef_ + self.intercept_

    def predict(self, X):
        scores = self.decision_function(X)
        # exact zero resolves to the negative class
        return np.where(scores > 0, self.classes_[1], self.classes_[0])

    def kkt_violations(self, tol=None):
        """Margins of each training point checked against its KKT case.

        Returns a list of (index, alpha, margin, violation) rows where
        violation > 0 means the condition fails at the given tolerance.
        """
        if tol is None:
            tol = self.tol
        K = self._kernel_matrix(self._fit_X, self._fit_X)
        decision = K @ (self._fit_alpha * self._fit_y) + self.intercept_
        margins = self._fit_y * decision
        rows = []
        for i, (a, margin) in enumerate(zip(self._fit_alpha, margins)):
            if a <= _TAU:
                violation = (1.0 - tol) - margin  # need margin >= 1 - tol
            elif a >= self.C - _TAU:
                violation = margin - (1.0 + tol)  # need margin <= 1 + tol
            else:
                violation = abs(margin - 1.0) - tol
            rows.append((i, float(a), float(margin), float(violation)))
        return rows


class LogisticRegressionClassifier(BaseEstimator, ClassifierMixin):
    """L2-regularized logistic regression via deterministic full-batch
    gradient descent (zero init, fixed step)."""

    def __init__(self, l2=1e-3, lr=0.1, max_iter=5000, tol=1e-6, seed=0):
        self.l2 = l2
        self.lr = lr
        self.max_iter = max_iter
        self.tol = tol
        self.seed = seed

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        labels = np.asarray(y)
        if len(X) == 0:
            raise SingleClassData("empty training data")
        classes = sorted(set(labels.tolist()))
        if len(classes) < 2:
            raise SingleClassData(f"training data has classes {classes}")
        if len(classes) > 2:
            raise ValueError("binary classification only")
        self.classes_ = classes
        target = np.where(labels == classes[1], 1.0, 0.0)
        n, d = X.shape
        w = np.zeros(d)
        b = 0.0
        for iteration in range(int(self.max_iter)):
            z = X @ w + b
            p = 1.0 / (1.0 + np.exp(-z))
            err = p - target
            grad_w = X.T @ err / n + self.l2 * w
            grad_b = float(np.mean(err))
            if max(np.max(np.abs(grad_w)), abs(grad_b)) < self.tol:
                break
            w -= self.lr * grad_w
            b -= self.lr * grad_b
        self.coef_ = w
        self.intercept_ = b
        self.n_features_in_ = d
        self.n_iter_ = iteration + 1
        return self

    def decision_function(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.n_features_in_:
            raise DimensionMismatch(
                f"expected {self.n_features_in_} features, got {X.shape[1]}"
            )
        return X @ self.coef_ + self.intercept_

    def predict(self, X):
        scores = self.decision_function(X)
        return np.where(scores > 0, self.classes_[1], self.classes_[0])


@dataclass
class EvalReport:
    per_class: dict  # label -> {"precision", "recall", "f"}
    f_avg: float
    confusion: list  # [[tp, fn], [fp, tn]] for the positive class
    positive_label: str = "pun"

    def as_dict(self):
        return {
            "per_class": self.per_class,
            "f_avg": self.f_avg,
            "confusion": self.confusion,
            "positive_label": self.positive_label,
        }


def _prf(tp, fp, fn):
    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    f = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return {"precision": precision, "recall": recall, "f": f}


def evaluate(predictions, gold, positive_label="pun", negative_label=None):
    """Per-class precision/recall/F plus their plain average f_avg."""
    predictions = list(predictions)
    gold = list(gold)
    if not gold:
        raise EmptyInput("no predictions to evaluate")
    if len(predictions) != len(gold):
        raise LengthMismatch(f"{len(predictions)} predictions vs {len(gold)} gold labels")
    if negative_label is None:
        others = sorted({g for g in gold if g != positive_label})
        negative_label = others[0] if others else "not-pun"
    tp = sum(1 for p, g in zip(predictions, gold) if p == positive_label and g == positive_label)
    fp = sum(1 for p, g in zip(predictions, gold) if p == positive_label and g != positive_label)
    fn = sum(1 for p, g in zip(predictions, gold) if p != positive_label and g == positive_label)
    tn = len(gold) - tp - fp - fn
    pos = _prf(tp, fp, fn)
    neg = _prf(tn, fn, fp)
    return EvalReport(
        per_class={positive_label: pos, negative_label: neg},
        f_avg=(pos["f"] + neg["f"]) / 2.0,
        confusion=[[tp, fn], [fp, tn]],
        positive_label=positive_label,
    )


# --- model persistence -------------------------------------------------


def model_to_dict(model):
    if isinstance(model, SmoSvmClassifier):
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "type": "svm",
            "kernel": model.kernel,
            "C": float(model.C),
            "gamma": model.gamma_ if model.kernel == "rbf" else None,
            "classes": list(model.classes_),
            "support_vectors": model.support_vectors_.tolist(),
            "dual_coef": model.dual_coef_.tolist(),
            "bias": float(model.intercept_),
            "training_meta": model.training_meta_,
        }
    if isinstance(model, LogisticRegressionClassifier):
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "type": "logreg",
            "l2": float(model.l2),
            "classes": list(model.classes_),
            "coef": model.coef_.tolist(),
            "bias": float(model.intercept_),
            "training_meta": {"seed": int(model.seed), "iterations": int(model.n_iter_)},
        }
    raise TypeError(f"cannot serialize {type(model).__name__}")


def model_from_dict(data):
    if data.get("format") != MODEL_FORMAT:
        raise ValueError("not a punsense model file")
    if data.get("version") != MODEL_VERSION:
        raise ValueError(f"unsupported model version {data.get('version')}")
    if data["type"] == "svm":
        model = SmoSvmClassifier(kernel=data["kernel"], C=data["C"])
        model.classes_ = data["classes"]
        model.gamma_ = data["gamma"]
        model.support_vectors_ = np.asarray(data["support_vectors"], dtype=np.float64)
        model.dual_coef_ = np.asarray(data["dual_coef"], dtype=np.float64)
        model.intercept_ = data["bias"]
        model.n_features_in_ = (
            model.support_vectors_.shape[1] if len(model.support_vectors_) else 0
        )
        model.training_meta_ = data["training_meta"]
        return model
    if data["type"] == "logreg":
        model = LogisticRegressionClassifier(l2=data["l2"])
        model.classes_ = data["classes"]
        model.coef_ = np.asarray(data["coef"], dtype=np.float64)
        model.intercept_ = data["bias"]
        model.n_features_in_ = len(model.coef_)
        return model
    raise ValueError(f"unknown model type {data['type']!r}")


def save_model(model, path):
    payload = json.dumps(model_to_dict(model), sort_keys=True, indent=None) + "\n"
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".model-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
