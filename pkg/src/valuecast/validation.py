"""Small input-validation helpers shared by the estimators."""

from __future__ import annotations

import numpy as np

from .exceptions import LengthMismatch


def check_X_y(X, y) -> tuple[np.ndarray, np.ndarray]:
    """Coerce to float64 arrays, enforce 2d/1d shapes and finiteness."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"X must be 2d, got shape {X.shape}")
    if y.ndim != 1:
        raise ValueError(f"y must be 1d, got shape {y.shape}")
    if X.shape[0] != y.shape[0]:
        raise LengthMismatch(f"X has {X.shape[0]} rows but y has {y.shape[0]}")
    if X.shape[0] == 0:
        raise ValueError("empty training set")
    if not np.isfinite(X).all() or not np.isfinite(y).all():
        raise ValueError("X and y must be finite (no NaN or inf)")
    return X, y


def check_X(X, n_features: int | None = None) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise ValueError(f"X must be 2d, got shape {X.shape}")
    if n_features is not None and X.shape[1] != n_features:
        from .exceptions import SchemaMismatch
        raise SchemaMismatch(f"expected {n_features} feature columns, got {X.shape[1]}")
    return X


def standardize_columns(X: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Zero-mean unit-variance columns; zero-variance columns get scale 1."""
    mean = X.mean(axis=0)
    scale = X.std(axis=0)
    scale = np.where(scale == 0.0, 1.0, scale)
    return (X - mean) / scale, mean, scale


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
