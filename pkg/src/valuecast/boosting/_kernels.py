"""Hot loops for the histogram booster, jitted when numba is available.

Both paths (numba and plain numpy) produce bit-identical results: the
accumulation order is left to right within each feature row and ties pick
the lowest bin. Set VALUECAST_NO_NUMBA=1 to force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

_USE_NUMBA = os.environ.get("VALUECAST_NO_NUMBA", "") != "1"
if _USE_NUMBA:
    try:
        from numba import njit
    except ImportError:                            # pragma: no cover
        _USE_NUMBA = False

NEG_INF = -np.inf


def _hist_numpy(sub: np.ndarray, grad: np.ndarray, hess: np.ndarray, n_bins: int):
    n, p = sub.shape
    flat = sub.astype(np.int64) + np.arange(p, dtype=np.int64)[None, :] * n_bins
    flat = flat.ravel()
    size = p * n_bins
    g = np.bincount(flat, weights=np.repeat(grad, p), minlength=size)
    h = np.bincount(flat, weights=np.repeat(hess, p), minlength=size)
    c = np.bincount(flat, minlength=size)
    return g.reshape(p, n_bins), h.reshape(p, n_bins), c.reshape(p, n_bins)


def _scan_numpy(grad: np.ndarray, hess: np.ndarray, count: np.ndarray,
                lambda_l2: float, min_child_samples: int):
    p, nb = grad.shape
    best_gain = np.full(p, NEG_INF)
    best_bin = np.full(p, -1, dtype=np.int64)
    if nb < 2:
        return best_gain, best_bin
    gl = np.cumsum(grad, axis=1)[:, :-1]
    hl = np.cumsum(hess, axis=1)[:, :-1]
    cl = np.cumsum(count, axis=1)[:, :-1]
    gt = gl[:, -1] + grad[:, -1]
    ht = hl[:, -1] + hess[:, -1]
    ct = cl[:, -1] + count[:, -1]
    gr, hr, cr = gt[:, None] - gl, ht[:, None] - hl, ct[:, None] - cl
    left = np.where(hl + lambda_l2 > 0, gl * gl / np.maximum(hl + lambda_l2, 1e-300), 0.0)
    right = np.where(hr + lambda_l2 > 0, gr * gr / np.maximum(hr + lambda_l2, 1e-300), 0.0)
    parent = np.where(ht + lambda_l2 > 0, gt * gt / np.maximum(ht + lambda_l2, 1e-300), 0.0)
    gains = left + right - parent[:, None]
    mcs = max(min_child_samples, 1)
    valid = (cl >= mcs) & (cr >= mcs)
    masked = np.where(valid, gains, NEG_INF)
    idx = np.argmax(masked, axis=1)
    best = masked[np.arange(p), idx]
    hit = best > NEG_INF
    best_gain[hit] = best[hit]
    best_bin[hit] = idx[hit]
    return best_gain, best_bin


if _USE_NUMBA:

    @njit(cache=True)
    def _hist_numba(sub, grad, hess, n_bins):               # pragma: no cover - jitted
        n, p = sub.shape
        g = np.zeros((p, n_bins))
        h = np.zeros((p, n_bins))
        c = np.zeros((p, n_bins), dtype=np.int64)
        for i in range(n):
            gi = grad[i]
            hi = hess[i]
            for j in range(p):
                b = sub[i, j]
                g[j, b] += gi
                h[j, b] += hi
                c[j, b] += 1
        return g, h, c

    @njit(cache=True)
    def _scan_numba(grad, hess, count, lambda_l2, min_child_samples):   # pragma: no cover
        p, nb = grad.shape
        best_gain = np.full(p, NEG_INF)
        best_bin = np.full(p, -1, dtype=np.int64)
        if nb < 2:
            return best_gain, best_bin
        mcs = min_child_samples if min_child_samples > 1 else 1
        for j in range(p):
            gt = 0.0
            ht = 0.0
            ct = 0
            for b in range(nb):
                gt += grad[j, b]
                ht += hess[j, b]
                ct += count[j, b]
            parent = gt * gt / (ht + lambda_l2) if ht + lambda_l2 > 0 else 0.0
            gl = 0.0
            hl = 0.0
            cl = 0
            for b in range(nb - 1):
                gl += grad[j, b]
                hl += hess[j, b]
                cl += count[j, b]
                cr = ct - cl
                if cl < mcs or cr < mcs:
                    continue
                hr = ht - hl
                gr = gt - gl
                left = gl * gl / (hl + lambda_l2) if hl + lambda_l2 > 0 else 0.0
                right = gr * gr / (hr + lambda_l2) if hr + lambda_l2 > 0 else 0.0
                gain = left + right - parent
                if gain > best_gain[j]:
                    best_gain[j] = gain
                    best_bin[j] = b
        return best_gain, best_bin


def node_histogram_arrays(sub: np.ndarray, grad: np.ndarray, hess: np.ndarray, n_bins: int):
    """(p, n_bins) gradient/hessian/count sums for one node's row block."""
    if _USE_NUMBA:
        g, h, c = _hist_numba(np.ascontiguousarray(sub), grad, hess, n_bins)
        return g, h, c
    return _hist_numpy(sub, grad, hess, n_bins)


def split_scan(grad: np.ndarray, hess: np.ndarray, count: np.ndarray,
               lambda_l2: float, min_child_samples: int):
    """Per-feature best (gain, bin); -inf/-1 where nothing is admissible."""
    if _USE_NUMBA:
        return _scan_numba(grad, hess, np.ascontiguousarray(count, dtype=np.int64),
                           float(lambda_l2), int(min_child_samples))
    return _scan_numpy(grad, hess, count, lambda_l2, min_child_samples)
