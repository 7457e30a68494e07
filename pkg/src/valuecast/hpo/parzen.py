"""Parzen (kernel density) machinery for the TPE samplers.

Numeric dimensions use Gaussian kernels truncated to the domain and
renormalized, one kernel per historical point with a per-dimension Scott
bandwidth floored at 1% of the domain width. Categorical dimensions use a
per-point smoothed indicator kernel whose uniform mixture is exactly the
Laplace smoothed frequency estimate.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtr, ndtri

_SQRT_2PI = np.sqrt(2.0 * np.pi)


def scott_bandwidth(values: np.ndarray, total_dims: int, domain_width: float) -> float:
    """Scott's rule bandwidth on a subset, floored at 1% of the domain width."""
    n = max(values.size, 1)
    sigma = float(values.std()) if values.size > 1 else 0.0
    bw = sigma * n ** (-1.0 / (total_dims + 4.0))
    return max(bw, 0.01 * domain_width)


def neighbor_bandwidths(values: np.ndarray, low: float, high: float) -> np.ndarray:
    """Per-point bandwidths from gaps between sorted neighbors.

    Each point's bandwidth is its larger gap to the adjacent point (domain
    bounds act as virtual neighbors), clipped to
    [max(width/min(100, 1+n), 1% width), width]. Duplicated points fall to
    the floor instead of collapsing to zero.
    """
    n = values.size
    width = high - low
    order = np.argsort(values, kind="stable")
    sorted_vals = values[order]
    ext = np.concatenate([[low], sorted_vals, [high]])
    gap = np.maximum(sorted_vals - ext[:-2], ext[2:] - sorted_vals)
    floor = max(width / min(100.0, 1.0 + n), 0.01 * width)
    clipped = np.clip(gap, floor, width)
    out = np.empty(n)
    out[order] = clipped
    return out


def truncnorm_pdf(query, mu, bw, low, high):
    """Density of a normal truncated to [low, high] (broadcasts over inputs)."""
    alpha = (low - mu) / bw
    beta = (high - mu) / bw
    z = np.maximum(ndtr(beta) - ndtr(alpha), 1e-300)
    u = (query - mu) / bw
    inside = (query >= low) & (query <= high)
    pdf = np.exp(-0.5 * u * u) / (_SQRT_2PI * bw * z)
    return np.where(inside, pdf, 0.0)


def truncnorm_sample(mu, bw, low, high, uniforms):
    """Inverse-CDF sampling; ``uniforms`` in (0,1) broadcast against ``mu``."""
    lo = ndtr((low - mu) / bw)
    hi = ndtr((high - mu) / bw)
    x = mu + bw * ndtri(np.clip(lo + uniforms * (hi - lo), 1e-12, 1 - 1e-12))
    return np.clip(x, low, high)


def parzen_density(points, weights, bandwidths, low, high, query):
    """Truncated-kernel mixture density, renormalized over [low, high].

    ``points``, ``weights`` and ``bandwidths`` align (bandwidth may be a
    scalar); the result integrates to 1 over the domain.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.size == 0:
        raise ValueError("parzen density needs at least one point")
    weights = np.broadcast_to(np.asarray(weights, dtype=np.float64), points.shape)
    bandwidths = np.broadcast_to(np.asarray(bandwidths, dtype=np.float64), points.shape)
    if (bandwidths <= 0).any():
        raise ValueError("bandwidths must be positive")
    query = np.asarray(query, dtype=np.float64)
    scalar = query.ndim == 0
    q = np.atleast_1d(query)[:, None]
    dens = truncnorm_pdf(q, points[None, :], bandwidths[None, :], low, high)
    out = (dens * weights[None, :]).sum(axis=1) / weights.sum()
    return float(out[0]) if scalar else out


def smoothed_frequencies(codes: np.ndarray, weights: np.ndarray, n_choices: int) -> np.ndarray:
    """Laplace-smoothed category mass function from weighted observations."""
    counts = np.bincount(codes, weights=weights, minlength=n_choices)
    total = counts.sum()
    return (counts + 1.0) / (total + n_choices)


def categorical_kernel_matrix(codes: np.ndarray, n_choices: int) -> np.ndarray:
    """Per-point smoothed indicator kernels, rows = points, columns = choices.

    With alpha = 1/n_points the uniform mixture of the rows equals the
    Laplace smoothed frequency estimate over the points.
    """
    n = codes.shape[0]
    alpha = 1.0 / max(n, 1)
    mat = np.full((n, n_choices), alpha / (1.0 + n_choices * alpha))
    mat[np.arange(n), codes] += 1.0 / (1.0 + n_choices * alpha)
    return mat
