"""Linear baselines: OLS, lasso, elastic net and kernel ridge regression.

All four standardize the design matrix internally (coordinate descent needs
comparable column scales) and report coefficients in the original units.
The lasso/elastic-net objective is (1/2n)||y - Xw||^2 + penalty, solved by
cyclic coordinate descent with soft-thresholding.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

from sklearn.base import BaseEstimator, RegressorMixin

from .exceptions import NotPositiveDefinite, SingularDesign
from .validation import check_X, check_X_y, standardize_columns


def soft_threshold(z: float, t: float) -> float:
    if z > t:
        return z - t
    if z < -t:
        return z + t
    return 0.0


class _StandardizedLinearModel(BaseEstimator, RegressorMixin):
    """Shared fit plumbing: standardize, solve in scaled space, de-standardize."""

    def _pre_fit(self, X, y):
        X, y = check_X_y(X, y)
        Xs, self.x_mean_, self.x_scale_ = standardize_columns(X)
        self.y_mean_ = float(y.mean())
        return Xs, y - self.y_mean_

    def _post_fit(self, w_std: np.ndarray) -> None:
        self.coef_std_ = w_std
        self.coef_ = w_std / self.x_scale_
        self.intercept_ = self.y_mean_ - float(self.x_mean_ @ self.coef_)
        self.n_features_in_ = self.coef_.shape[0]

    def predict(self, X) -> np.ndarray:
        X = check_X(X, self.n_features_in_)
        return X @ self.coef_ + self.intercept_


class LinearRegression(_StandardizedLinearModel):
    """Ordinary least squares via the normal equations (SPD solve).

    A rank-deficient standardized design raises SingularDesign; the caller
    may retry with a small ridge term.
    """

    def __init__(self, ridge: float = 0.0):
        self.ridge = ridge

    def fit(self, X, y):
        Xs, yc = self._pre_fit(X, y)
        n, p = Xs.shape
        gram = (Xs.T @ Xs) / n
        if self.ridge > 0.0:
            gram = gram + self.ridge * np.eye(p)
        rhs = Xs.T @ yc / n
        try:
            c, low = scipy.linalg.cho_factor(gram)
            w = scipy.linalg.cho_solve((c, low), rhs)
        except np.linalg.LinAlgError as err:
            raise SingularDesign(f"normal equations are singular: {err}") from err
        except scipy.linalg.LinAlgError as err:
            raise SingularDesign(f"normal equations are singular: {err}") from err
        self._post_fit(w)
        return self


def _coordinate_descent(Xs, yc, l1, l2, tol, max_iter):
    """Cyclic CD for (1/2n)||y-Xw||^2 + l1*||w||_1 + (l2/2)*||w||^2.

    Converged when the largest coordinate update of a sweep drops below
    tol * max(1, max|w|), so the tolerance adapts to the target scale.
    Returns (w, n_sweeps, converged, objective_trace); the per-sweep
    objective trace is non-increasing by construction.
    """
    n, p = Xs.shape
    w = np.zeros(p)
    gram = Xs.T @ Xs / n                         # covariance-mode updates: O(p) per coordinate
    q = Xs.T @ yc / n
    yy = float(yc @ yc) / n
    s = np.zeros(p)                              # gram @ w, maintained incrementally
    objective = []

    def obj() -> float:
        fit = 0.5 * (yy - 2.0 * float(q @ w) + float(w @ s))
        return float(fit + l1 * np.abs(w).sum() + 0.5 * l2 * (w @ w))

    objective.append(obj())
    converged = False
    sweeps = 0
    for sweeps in range(1, max_iter + 1):
        max_delta = 0.0
        for j in range(p):
            w_j = w[j]
            denom = gram[j, j] + l2
            if denom <= 0.0:
                w_new = 0.0                      # constant column: no signal
            else:
                z = q[j] - s[j] + gram[j, j] * w_j
                w_new = soft_threshold(float(z), l1) / denom
            if w_new != w_j:
                s += (w_new - w_j) * gram[:, j]
                w[j] = w_new
            max_delta = max(max_delta, abs(w_new - w_j))
        objective.append(obj())
        if max_delta < tol * max(1.0, float(np.abs(w).max())):
            converged = True
            break
    return w, sweeps, converged, objective


class Lasso(_StandardizedLinearModel):
    """L1-penalized least squares fit by cyclic coordinate descent."""

    def __init__(self, alpha: float = 1.0, tol: float = 1e-7, max_iter: int = 10_000):
        self.alpha = alpha
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y):
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")
        Xs, yc = self._pre_fit(X, y)
        w, self.n_iter_, self.converged_, self.objective_trace_ = _coordinate_descent(
            Xs, yc, l1=self.alpha, l2=0.0, tol=self.tol, max_iter=self.max_iter
        )
        if not self.converged_:
            warnings.warn(f"lasso did not converge in {self.max_iter} sweeps", stacklevel=2)
        self._post_fit(w)
        return self


class ElasticNet(_StandardizedLinearModel):
    """Mixed L1/L2 penalty alpha*(l1_ratio*||w||_1 + (1-l1_ratio)/2*||w||^2)."""

    def __init__(self, alpha: float = 1.0, l1_ratio: float = 0.5,
                 tol: float = 1e-7, max_iter: int = 10_000):
        self.alpha = alpha
        self.l1_ratio = l1_ratio
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y):
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")
        if not 0.0 <= self.l1_ratio <= 1.0:
            raise ValueError("l1_ratio must lie in [0, 1]")
        Xs, yc = self._pre_fit(X, y)
        w, self.n_iter_, self.converged_, self.objective_trace_ = _coordinate_descent(
            Xs, yc,
            l1=self.alpha * self.l1_ratio,
            l2=self.alpha * (1.0 - self.l1_ratio),
            tol=self.tol, max_iter=self.max_iter,
        )
        if not self.converged_:
            warnings.warn(f"elastic net did not converge in {self.max_iter} sweeps", stacklevel=2)
        self._post_fit(w)
        return self


# --- kernel ridge ----------------------------------------------------------------


def polynomial_kernel(A: np.ndarray, B: np.ndarray, gamma: float, coef0: float, degree: int) -> np.ndarray:
    return (gamma * (A @ B.T) + coef0) ** degree


def rbf_kernel(A: np.ndarray, B: np.ndarray, gamma: float) -> np.ndarray:
    sq = (
        (A * A).sum(axis=1)[:, None]
        + (B * B).sum(axis=1)[None, :]
        - 2.0 * (A @ B.T)
    )
    return np.exp(-gamma * np.maximum(sq, 0.0))


class KernelRidge(BaseEstimator, RegressorMixin):
    """Kernel ridge regression solved in the dual via Cholesky.

    The dual coefficients satisfy (K + alpha*I) dual = y at fit time. The
    polynomial kernel (gamma*x.x' + coef0)^degree is the default; "rbf" is
    the alternative. gamma=None means 1/n_features.
    """

    def __init__(self, alpha: float = 1.0, kernel: str = "polynomial",
                 gamma: float | None = None, coef0: float = 1.0, degree: int = 2):
        self.alpha = alpha
        self.kernel = kernel
        self.gamma = gamma
        self.coef0 = coef0
        self.degree = degree

    def _kernel(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        gamma = self.gamma if self.gamma is not None else 1.0 / A.shape[1]
        if self.kernel == "polynomial":
            return polynomial_kernel(A, B, gamma, self.coef0, self.degree)
        if self.kernel == "rbf":
            return rbf_kernel(A, B, gamma)
        raise ValueError(f"unknown kernel {self.kernel!r}")

    def fit(self, X, y):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        X, y = check_X_y(X, y)
        Xs, self.x_mean_, self.x_scale_ = standardize_columns(X)
        self.X_fit_ = Xs
        K = self._kernel(Xs, Xs)
        K_reg = K + self.alpha * np.eye(K.shape[0])
        try:
            c, low = scipy.linalg.cho_factor(K_reg)
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as err:
            raise NotPositiveDefinite(
                f"K + alpha*I is not positive definite (kernel bug?): {err}"
            ) from err
        self.dual_coef_ = scipy.linalg.cho_solve((c, low), y)
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X) -> np.ndarray:
        X = check_X(X, self.n_features_in_)
        Xs = (X - self.x_mean_) / self.x_scale_
        return self._kernel(Xs, self.X_fit_) @ self.dual_coef_


# --- flat text serialization -------------------------------------------------------


def _write_vector(fh, name: str, v: np.ndarray) -> None:
    fh.write(name + " " + " ".join(repr(float(x)) for x in np.atleast_1d(v)) + "\n")


def save_linear_model(model, path) -> None:
    """Documented flat text format: kind, params, standardization, weights."""
    with open(path, "w", encoding="utf-8") as fh:
        if isinstance(model, KernelRidge):
            fh.write("valuecast-model kernel_ridge\n")
            gamma = model.gamma if model.gamma is not None else 1.0 / model.n_features_in_
            fh.write(f"kernel {model.kernel} alpha {model.alpha!r} gamma {gamma!r} "
                     f"coef0 {model.coef0!r} degree {model.degree}\n")
            _write_vector(fh, "x_mean", model.x_mean_)
            _write_vector(fh, "x_scale", model.x_scale_)
            _write_vector(fh, "dual_coef", model.dual_coef_)
            fh.write(f"training_points {model.X_fit_.shape[0]} {model.X_fit_.shape[1]}\n")
            for row in model.X_fit_:
                fh.write(" ".join(repr(float(x)) for x in row) + "\n")
        else:
            kind = {LinearRegression: "ols", Lasso: "lasso", ElasticNet: "elastic_net"}[type(model)]
            fh.write(f"valuecast-model {kind}\n")
            fh.write(f"intercept {model.intercept_!r}\n")
            _write_vector(fh, "coef", model.coef_)


def load_linear_model(path):
    with open(path, encoding="utf-8") as fh:
        head = fh.readline().split()
        if head[:1] != ["valuecast-model"]:
            raise ValueError(f"{path} is not a valuecast linear model file")
        kind = head[1]
        if kind == "kernel_ridge":
            spec = fh.readline().split()
            model = KernelRidge(
                alpha=float(spec[3]), kernel=spec[1], gamma=float(spec[5]),
                coef0=float(spec[7]), degree=int(spec[9]),
            )
            model.x_mean_ = np.array([float(x) for x in fh.readline().split()[1:]])
            model.x_scale_ = np.array([float(x) for x in fh.readline().split()[1:]])
            model.dual_coef_ = np.array([float(x) for x in fh.readline().split()[1:]])
            n, p = (int(x) for x in fh.readline().split()[1:])
            model.X_fit_ = np.array(
                [[float(x) for x in fh.readline().split()] for _ in range(n)]
            ).reshape(n, p)
            model.n_features_in_ = p
            return model
        model = {"ols": LinearRegression, "lasso": Lasso, "elastic_net": ElasticNet}[kind]()
        model.intercept_ = float(fh.readline().split()[1])
        model.coef_ = np.array([float(x) for x in fh.readline().split()[1:]])
        model.n_features_in_ = model.coef_.shape[0]
        return model
