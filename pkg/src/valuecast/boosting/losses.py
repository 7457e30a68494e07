"""Loss functions for boosting: gradients, hessians, leaf line search.

Gradients are d(loss)/d(prediction). Squared loss has unit hessian; the
robust losses (absolute, huber, quantile) use a unit hessian stand-in so the
gradient-sum split machinery stays well defined, and the level-wise engine
re-fits their leaf values by an exact per-leaf line search.
"""

from __future__ import annotations

import numpy as np

LOSSES = ("squared", "absolute", "huber", "quantile")

HUBER_QUANTILE = 0.9      # per-round delta = this quantile of |residual|
DEFAULT_TAU = 0.5         # pinball quantile level


def check_loss(name: str) -> str:
    if name not in LOSSES:
        raise ValueError(f"loss must be one of {LOSSES}, got {name!r}")
    return name


def gradient_hessian(loss: str, y: np.ndarray, pred: np.ndarray, tau: float = DEFAULT_TAU):
    residual = y - pred
    if loss == "squared":
        return -residual, np.ones_like(residual)
    if loss == "absolute":
        return -np.sign(residual), np.ones_like(residual)
    if loss == "huber":
        delta = np.quantile(np.abs(residual), HUBER_QUANTILE)
        delta = max(float(delta), 1e-12)
        return -np.clip(residual, -delta, delta), np.ones_like(residual)
    if loss == "quantile":
        # pinball gradient: -tau below the target, (1-tau) above it
        return np.where(residual > 0, -tau, 1.0 - tau), np.ones_like(residual)
    raise ValueError(f"unknown loss {loss!r}")


def leaf_line_search(loss: str, residual: np.ndarray, tau: float = DEFAULT_TAU) -> float:
    """Optimal constant added to the leaf's predictions for the given loss."""
    if residual.size == 0:
        return 0.0
    if loss == "squared":
        return float(residual.mean())
    if loss == "absolute":
        return float(np.median(residual))
    if loss == "huber":
        delta = max(float(np.quantile(np.abs(residual), HUBER_QUANTILE)), 1e-12)
        med = float(np.median(residual))
        adj = residual - med
        return med + float(np.mean(np.sign(adj) * np.minimum(np.abs(adj), delta)))
    if loss == "quantile":
        return float(np.quantile(residual, tau))
    raise ValueError(f"unknown loss {loss!r}")


def loss_value(loss: str, y: np.ndarray, pred: np.ndarray, tau: float = DEFAULT_TAU) -> float:
    residual = y - pred
    if loss == "squared":
        return float(np.mean(residual ** 2)) / 2.0
    if loss == "absolute":
        return float(np.mean(np.abs(residual)))
    if loss == "huber":
        delta = max(float(np.quantile(np.abs(residual), HUBER_QUANTILE)), 1e-12)
        a = np.abs(residual)
        return float(np.mean(np.where(a <= delta, 0.5 * a * a, delta * (a - 0.5 * delta))))
    if loss == "quantile":
        return float(np.mean(np.where(residual >= 0, tau * residual, (tau - 1) * residual)))
    raise ValueError(f"unknown loss {loss!r}")
