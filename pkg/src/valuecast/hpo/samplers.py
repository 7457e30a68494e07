"""Samplers: random search and the two tree-structured Parzen estimators.

Both TPE variants split the history at the gamma quantile into a good set
(l) and the rest (g), draw candidates from l and keep the candidate with the
best l/g density ratio. The independent variant treats every dimension on
its own; the multivariate variant scores candidates under joint
product-kernel densities (one kernel per historical point), preserving
cross-parameter correlation. On a single dimension the two coincide draw
for draw.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import logsumexp

from .parzen import (
    categorical_kernel_matrix,
    neighbor_bandwidths,
    scott_bandwidth,
    smoothed_frequencies,
    truncnorm_pdf,
    truncnorm_sample,
)
from .space import CatParam, FloatParam, IntParam, SearchSpace

TPE_GAMMA = 0.25          # good-set quantile
TPE_GOOD_CAP = 25         # hard cap on good-set size
TPE_N_CANDIDATES = 24
TPE_N_STARTUP = 10

_LOG_FLOOR = 1e-300


class RandomSampler:
    name = "random"

    def __init__(self, n_startup: int = 0):
        self.n_startup = n_startup

    def suggest(self, history: list[tuple[dict, float]], space: SearchSpace,
                rng: np.random.Generator) -> dict:
        return space.sample_random(rng)


class _Dimension:
    """Per-dimension transform between raw parameter values and kernel space."""

    def __init__(self, name: str, dom):
        self.name = name
        self.dom = dom
        self.categorical = isinstance(dom, CatParam)
        if self.categorical:
            self.n_choices = len(dom.choices)
        else:
            self.log = dom.log
            self.low = math.log(dom.low) if self.log else float(dom.low)
            self.high = math.log(dom.high) if self.log else float(dom.high)

    def to_kernel(self, values) -> np.ndarray:
        if self.categorical:
            return np.asarray([self.dom.choices.index(v) for v in values], dtype=np.int64)
        arr = np.asarray([float(v) for v in values])
        return np.log(arr) if self.log else arr

    def from_kernel(self, value: float):
        if self.categorical:
            return self.dom.choices[int(value)]
        raw = math.exp(value) if self.log else value
        if isinstance(self.dom, IntParam):
            return self.dom.clip(raw)
        return self.dom.clip(raw)


class _NumericEstimator:
    """Truncated-Gaussian mixture over the subset plus one domain-wide prior.

    The default per-point bandwidths come from the sorted-neighbor gap
    heuristic; "scott" uses one Scott-rule bandwidth per subset instead
    (floored adaptively, since it collapses on duplicated points). The prior
    kernel centered on the domain keeps some mass everywhere.
    """

    def __init__(self, dim: _Dimension, values: np.ndarray, total_dims: int,
                 bandwidth: str = "adaptive"):
        self.dim = dim
        width = dim.high - dim.low
        n = values.shape[0]
        if bandwidth == "scott":
            bw = scott_bandwidth(values, total_dims, width)
            bw = max(bw, width / min(100.0, 1.0 + n))
            bws = np.full(n, bw)
        else:
            bws = neighbor_bandwidths(values, dim.low, dim.high)
        self.mu = np.concatenate([values, [0.5 * (dim.low + dim.high)]])
        self.bw = np.concatenate([bws, [width]])

    @property
    def n_components(self) -> int:
        return self.mu.shape[0]

    def sample(self, component_idx: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        u = rng.uniform(size=component_idx.shape[0])
        return truncnorm_sample(self.mu[component_idx], self.bw[component_idx],
                                self.dim.low, self.dim.high, u)

    def log_density(self, query: np.ndarray) -> np.ndarray:
        dens = truncnorm_pdf(query[:, None], self.mu[None, :], self.bw[None, :],
                             self.dim.low, self.dim.high)
        return np.log(np.maximum(dens.mean(axis=1), _LOG_FLOOR))

    def component_log_density(self, query: np.ndarray) -> np.ndarray:
        """(n_query, n_components) per-kernel log densities for the joint variant."""
        dens = truncnorm_pdf(query[:, None], self.mu[None, :], self.bw[None, :],
                             self.dim.low, self.dim.high)
        return np.log(np.maximum(dens, _LOG_FLOOR))


class _CategoricalEstimator:
    """Per-point smoothed indicator kernels plus one uniform prior row."""

    def __init__(self, dim: _Dimension, codes: np.ndarray):
        self.dim = dim
        self.codes = codes
        point_rows = categorical_kernel_matrix(codes, dim.n_choices)
        prior_row = np.full((1, dim.n_choices), 1.0 / dim.n_choices)
        self.kernel = np.vstack([point_rows, prior_row])
        self.probs = self.kernel.mean(axis=0)

    @property
    def n_components(self) -> int:
        return self.kernel.shape[0]

    def sample(self, component_idx: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        u = rng.uniform(size=component_idx.shape[0])
        cdf = np.cumsum(self.kernel[component_idx], axis=1)
        return (u[:, None] < cdf).argmax(axis=1).astype(np.int64)

    def log_density(self, query: np.ndarray) -> np.ndarray:
        return np.log(np.maximum(self.probs[query.astype(np.int64)], _LOG_FLOOR))

    def component_log_density(self, query: np.ndarray) -> np.ndarray:
        return np.log(np.maximum(self.kernel[:, query.astype(np.int64)].T, _LOG_FLOOR))


class TPESampler:
    """Tree-structured Parzen estimator; independent or multivariate."""

    def __init__(self, multivariate: bool = False, n_startup: int = TPE_N_STARTUP,
                 n_candidates: int = TPE_N_CANDIDATES, gamma: float = TPE_GAMMA,
                 good_cap: int = TPE_GOOD_CAP, bandwidth: str = "adaptive"):
        self.multivariate = multivariate
        self.n_startup = n_startup
        self.n_candidates = n_candidates
        self.gamma = gamma
        self.good_cap = good_cap
        self.bandwidth = bandwidth

    @property
    def name(self) -> str:
        return "mtpe" if self.multivariate else "itpe"

    def _split(self, history):
        order = sorted(range(len(history)), key=lambda i: history[i][1])
        n_good = min(int(math.ceil(self.gamma * len(history))), self.good_cap)
        good = [history[i][0] for i in order[:n_good]]
        bad = [history[i][0] for i in order[n_good:]]
        return good, bad

    def _estimator(self, dim: _Dimension, params: list[dict], total_dims: int):
        values = dim.to_kernel([p[dim.name] for p in params])
        if dim.categorical:
            return _CategoricalEstimator(dim, values)
        return _NumericEstimator(dim, values, total_dims, self.bandwidth)

    def suggest(self, history: list[tuple[dict, float]], space: SearchSpace,
                rng: np.random.Generator) -> dict:
        if len(history) < self.n_startup:
            return space.sample_random(rng)
        good, bad = self._split(history)
        if not good or not bad:
            return space.sample_random(rng)
        dims = [_Dimension(name, dom) for name, dom in space]
        total_dims = len(dims) if self.multivariate else 1
        l_est = {d.name: self._estimator(d, good, total_dims) for d in dims}
        g_est = {d.name: self._estimator(d, bad, total_dims) for d in dims}

        n_l = len(good) + 1        # subset points plus the prior component
        n_g = len(bad) + 1
        if self.multivariate:
            comp = rng.integers(0, n_l, size=self.n_candidates)
            cand = {d.name: l_est[d.name].sample(comp, rng) for d in dims}
            log_l = np.zeros((self.n_candidates, n_l))
            log_g = np.zeros((self.n_candidates, n_g))
            for d in dims:
                log_l += l_est[d.name].component_log_density(cand[d.name])
                log_g += g_est[d.name].component_log_density(cand[d.name])
            joint_l = logsumexp(log_l, axis=1) - math.log(n_l)
            joint_g = logsumexp(log_g, axis=1) - math.log(n_g)
            best = int(np.argmax(joint_l - joint_g))
            return {d.name: d.from_kernel(cand[d.name][best]) for d in dims}

        out = {}
        for d in dims:
            comp = rng.integers(0, n_l, size=self.n_candidates)
            values = l_est[d.name].sample(comp, rng)
            score = l_est[d.name].log_density(values) - g_est[d.name].log_density(values)
            out[d.name] = d.from_kernel(values[int(np.argmax(score))])
        return out


def make_sampler(name: str, **kwargs):
    if name == "random":
        return RandomSampler()
    if name == "itpe":
        return TPESampler(multivariate=False, **kwargs)
    if name == "mtpe":
        return TPESampler(multivariate=True, **kwargs)
    raise ValueError(f"unknown sampler {name!r} (expected random, itpe or mtpe)")
