"""Gradient/hessian histograms with the sibling subtraction trick."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Histogram:
    """Per-bin sums for one node: gradients, hessians, sample counts."""

    grad: np.ndarray    # (p, n_bins) float64
    hess: np.ndarray    # (p, n_bins) float64
    count: np.ndarray   # (p, n_bins) int64

    def subtract(self, child: "Histogram") -> "Histogram":
        """Sibling histogram: parent minus one child, elementwise."""
        return Histogram(
            grad=self.grad - child.grad,
            hess=self.hess - child.hess,
            count=self.count - child.count,
        )


def build_histogram(column: np.ndarray, gradients: np.ndarray, hessians: np.ndarray,
                    n_bins: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Single-column histogram: (sum_g, sum_h, count) per bin, exact sums."""
    idx = column.astype(np.int64)
    g = np.bincount(idx, weights=gradients, minlength=n_bins)
    h = np.bincount(idx, weights=hessians, minlength=n_bins)
    c = np.bincount(idx, minlength=n_bins)
    return g, h, c


def build_node_histogram(binned: np.ndarray, rows: np.ndarray, columns: np.ndarray,
                         gradients: np.ndarray, hessians: np.ndarray,
                         n_bins: int, hess_is_unit: bool = False) -> Histogram:
    """Histograms for every selected column over the node's rows at once.

    Flattens (row, column) pairs into one bincount per statistic; bins of a
    column j land in slots [j*n_bins, (j+1)*n_bins).
    """
    p = columns.shape[0]
    sub = binned[np.ix_(rows, columns)].astype(np.int64)
    flat = (sub + np.arange(p, dtype=np.int64)[None, :] * n_bins).ravel()
    size = p * n_bins
    g = np.bincount(flat, weights=np.repeat(gradients[rows], p), minlength=size)
    c = np.bincount(flat, minlength=size)
    if hess_is_unit:
        h = c.astype(np.float64)
    else:
        h = np.bincount(flat, weights=np.repeat(hessians[rows], p), minlength=size)
    return Histogram(
        grad=g.reshape(p, n_bins),
        hess=h.reshape(p, n_bins),
        count=c.reshape(p, n_bins),
    )
