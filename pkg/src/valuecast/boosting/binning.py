"""Quantile-sketch column binning for the histogram booster.

Numeric columns with few distinct values get one bin per value (edges at
midpoints); wide columns are cut at training-set quantiles with tied edges
merged, so no column exceeds ``max_bins`` bins. Categorical columns hold
small non-negative integer codes and are binned identically (bin == code).
The bin order is value order: bin(x) <= b exactly when x <= edges[b].
"""

from __future__ import annotations

import numpy as np

MAX_BINS_LIMIT = 255


class ColumnBinner:
    """Per-column discretizer mapping raw values to uint8 bin ids."""

    def __init__(self, max_bins: int = MAX_BINS_LIMIT):
        if not 2 <= max_bins <= MAX_BINS_LIMIT:
            raise ValueError(f"max_bins must lie in [2, {MAX_BINS_LIMIT}]")
        self.max_bins = max_bins

    def fit(self, X: np.ndarray, categorical_columns: tuple[int, ...] = ()):
        n, p = X.shape
        self.categorical_ = tuple(sorted(categorical_columns))
        self.edges_: list[np.ndarray | None] = [None] * p
        self.n_bins_ = np.zeros(p, dtype=np.int32)
        for j in range(p):
            col = X[:, j]
            if j in self.categorical_:
                codes = col.astype(np.int64)
                if (codes < 0).any() or not np.allclose(col, codes):
                    raise ValueError(f"categorical column {j} must hold non-negative integer codes")
                top = int(codes.max())
                if top >= self.max_bins:
                    raise ValueError(
                        f"categorical column {j} has {top + 1} codes, exceeding max_bins={self.max_bins}"
                    )
                self.n_bins_[j] = top + 1
            else:
                uniq = np.unique(col)
                if uniq.size <= 1:
                    edges = np.empty(0)
                elif uniq.size <= self.max_bins:
                    edges = (uniq[:-1] + uniq[1:]) / 2.0
                else:
                    probs = np.linspace(0.0, 1.0, self.max_bins + 1)[1:-1]
                    edges = np.unique(np.quantile(col, probs))
                self.edges_[j] = edges
                self.n_bins_[j] = edges.size + 1
        self.n_features_ = p
        return self

    def transform(self, X: np.ndarray) -> np.ndarray:
        n, p = X.shape
        binned = np.zeros((n, p), dtype=np.uint8)
        for j in range(p):
            if self.edges_[j] is None:
                codes = X[:, j].astype(np.int64)
                binned[:, j] = np.clip(codes, 0, self.n_bins_[j] - 1).astype(np.uint8)
            else:
                binned[:, j] = np.searchsorted(self.edges_[j], X[:, j], side="left").astype(np.uint8)
        return binned

    def fit_transform(self, X: np.ndarray, categorical_columns: tuple[int, ...] = ()) -> np.ndarray:
        return self.fit(X, categorical_columns).transform(X)

    def threshold_value(self, column: int, bin_id: int) -> float:
        """Raw-value split threshold equivalent to 'bin <= bin_id goes left'."""
        edges = self.edges_[column]
        if edges is None:
            raise ValueError(f"column {column} is categorical, it has no numeric threshold")
        return float(edges[bin_id])
