"""Split search over histograms: numeric thresholds and categorical subsets.

Gain of a candidate partition (L, R) of a node with totals (G, H):

    G_L^2/(H_L + lambda) + G_R^2/(H_R + lambda) - G^2/(H + lambda)

A split is admissible when both sides hold at least ``min_child_samples``
rows and the gain is not below ``min_split_gain``. Ties break to the lowest
feature index, then the lowest bin, so builds are deterministic.

Categorical features follow the grouping method: categories sorted by
grad/(hess + lambda), then the best contiguous prefix of the sorted order.
With lambda 0 the sort order makes the prefix scan attain the exact optimum
over all two-set partitions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .histograms import Histogram


@dataclass(frozen=True)
class Split:
    feature: int               # position within the node's column subset
    gain: float
    kind: str                  # "numeric" | "categorical"
    bin_id: int = -1           # numeric: last bin routed left
    left_categories: tuple[int, ...] = ()


def _gain_terms(gl, hl, gr, hr, lam):
    left = np.where(hl + lam > 0, gl * gl / np.maximum(hl + lam, 1e-300), 0.0)
    right = np.where(hr + lam > 0, gr * gr / np.maximum(hr + lam, 1e-300), 0.0)
    return left + right


def best_numeric_split(grad: np.ndarray, hess: np.ndarray, count: np.ndarray,
                       lambda_l2: float = 0.0, min_split_gain: float = 0.0,
                       min_child_samples: int = 1) -> tuple[float, int] | None:
    """Best threshold for one feature histogram; None if nothing admissible."""
    if grad.size < 2:
        return None
    gl = np.cumsum(grad)[:-1]
    hl = np.cumsum(hess)[:-1]
    cl = np.cumsum(count)[:-1]
    gt, ht, ct = gl[-1] + grad[-1], hl[-1] + hess[-1], cl[-1] + count[-1]
    gr, hr, cr = gt - gl, ht - hl, ct - cl
    gains = _gain_terms(gl, hl, gr, hr, lambda_l2) - (gt * gt / max(ht + lambda_l2, 1e-300))
    mcs = max(min_child_samples, 1)
    valid = (cl >= mcs) & (cr >= mcs)
    if not valid.any():
        return None
    masked = np.where(valid, gains, -np.inf)
    best = int(np.argmax(masked))
    if masked[best] < min_split_gain:
        return None
    return float(masked[best]), best


def sorted_category_order(grad: np.ndarray, hess: np.ndarray, count: np.ndarray,
                          lambda_l2: float) -> np.ndarray:
    """Categories present at the node, sorted by grad/(hess + lambda)."""
    present = np.flatnonzero(count > 0)
    ratio = grad[present] / (hess[present] + lambda_l2 + 1e-300)
    order = np.argsort(ratio, kind="stable")
    return present[order]


def best_categorical_split(grad: np.ndarray, hess: np.ndarray, count: np.ndarray,
                           lambda_l2: float = 0.0, min_split_gain: float = 0.0,
                           min_child_samples: int = 1) -> tuple[float, tuple[int, ...]] | None:
    """Best prefix partition of the ratio-sorted categories; None if inadmissible."""
    order = sorted_category_order(grad, hess, count, lambda_l2)
    if order.size < 2:
        return None
    gl = np.cumsum(grad[order])[:-1]
    hl = np.cumsum(hess[order])[:-1]
    cl = np.cumsum(count[order])[:-1]
    gt = gl[-1] + grad[order[-1]]
    ht = hl[-1] + hess[order[-1]]
    ct = cl[-1] + count[order[-1]]
    gr, hr, cr = gt - gl, ht - hl, ct - cl
    gains = _gain_terms(gl, hl, gr, hr, lambda_l2) - (gt * gt / max(ht + lambda_l2, 1e-300))
    valid = (cl >= max(min_child_samples, 1)) & (cr >= max(min_child_samples, 1))
    if not valid.any():
        return None
    masked = np.where(valid, gains, -np.inf)
    best = int(np.argmax(masked))
    if masked[best] < min_split_gain:
        return None
    return float(masked[best]), tuple(int(c) for c in order[: best + 1])


def find_best_split(hist: Histogram, categorical_mask: np.ndarray,
                    lambda_l2: float = 0.0, min_split_gain: float = 0.0,
                    min_child_samples: int = 1) -> Split | None:
    """Best admissible split across every feature of a node histogram.

    Numeric features are scanned in one vectorized pass; categorical ones go
    through the prefix scan. The winner is the highest gain, lowest feature
    index first on ties, lowest bin within a feature.
    """
    p, n_bins = hist.grad.shape
    best_gain = np.full(p, -np.inf)
    best_bin = np.full(p, -1, dtype=np.int64)

    numeric = np.flatnonzero(~categorical_mask)
    if numeric.size and n_bins >= 2:
        gl = np.cumsum(hist.grad[numeric], axis=1)[:, :-1]
        hl = np.cumsum(hist.hess[numeric], axis=1)[:, :-1]
        cl = np.cumsum(hist.count[numeric], axis=1)[:, :-1]
        gt = gl[:, -1] + hist.grad[numeric, -1]
        ht = hl[:, -1] + hist.hess[numeric, -1]
        ct = cl[:, -1] + hist.count[numeric, -1]
        gr = gt[:, None] - gl
        hr = ht[:, None] - hl
        cr = ct[:, None] - cl
        parent = gt * gt / np.maximum(ht + lambda_l2, 1e-300)
        gains = _gain_terms(gl, hl, gr, hr, lambda_l2) - parent[:, None]
        mcs = max(min_child_samples, 1)
        valid = (cl >= mcs) & (cr >= mcs)
        masked = np.where(valid, gains, -np.inf)
        idx = np.argmax(masked, axis=1)
        best_gain[numeric] = masked[np.arange(numeric.size), idx]
        best_bin[numeric] = idx

    cat_detail: dict[int, tuple[int, ...]] = {}
    for j in np.flatnonzero(categorical_mask):
        res = best_categorical_split(
            hist.grad[j], hist.hess[j], hist.count[j],
            lambda_l2, -np.inf, min_child_samples,
        )
        if res is not None:
            best_gain[j] = res[0]
            cat_detail[int(j)] = res[1]

    winner = int(np.argmax(best_gain))
    if not np.isfinite(best_gain[winner]) or best_gain[winner] < min_split_gain:
        return None
    if categorical_mask[winner]:
        return Split(feature=winner, gain=float(best_gain[winner]), kind="categorical",
                     left_categories=cat_detail[winner])
    return Split(feature=winner, gain=float(best_gain[winner]), kind="numeric",
                 bin_id=int(best_bin[winner]))
