"""Leaf-wise histogram boosting with native categorical splits and GOSS.

Trees grow by repeatedly splitting whichever current leaf offers the largest
gain, until ``num_leaves`` is reached or nothing admissible remains. Per
tree, ``feature_fraction`` subsamples columns; per round, ``bagging_fraction``
subsamples rows, or GOSS keeps the top 20% gradients plus a reweighted
random 10% of the rest. Child histograms reuse the parent through the
subtraction trick. All sampling is driven by one seeded generator, so a
fixed seed fixes the model bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin

from ..exceptions import ValuecastError
from ..validation import as_rng, check_X_y
from .binning import ColumnBinner
from .histograms import Histogram, build_node_histogram
from .losses import check_loss, gradient_hessian
from .splitting import Split, find_best_split
from .tree import TreeBuilder, TreeEnsemble

GOSS_TOP_FRACTION = 0.2       # a: kept large-gradient share
GOSS_OTHER_FRACTION = 0.1     # b: resampled share of the full set


@dataclass
class _Leaf:
    node_id: int
    rows: np.ndarray
    hist: Histogram
    depth: int
    split: Split | None


def goss_select(gradients: np.ndarray, rng: np.random.Generator,
                a: float = GOSS_TOP_FRACTION, b: float = GOSS_OTHER_FRACTION):
    """Row subset and multiplier for gradient one-side sampling.

    Keeps the ceil(a*n) largest |gradient| rows and a uniform sample of
    ceil(b*n) of the rest; the sampled rest is amplified by (1-a)/b.
    """
    n = gradients.shape[0]
    top_n = min(int(math.ceil(a * n)), n)
    other_n = min(int(math.ceil(b * n)), n - top_n)
    order = np.argsort(-np.abs(gradients), kind="stable")
    top = order[:top_n]
    rest = order[top_n:]
    sampled = rng.choice(rest, size=other_n, replace=False) if other_n else np.empty(0, np.int64)
    rows = np.sort(np.concatenate([top, sampled]).astype(np.int64))
    multiplier = np.ones(n)
    multiplier[sampled.astype(np.int64)] = (1.0 - a) / b
    return rows, multiplier


class LeafwiseBoostingRegressor(BaseEstimator, RegressorMixin):
    """Histogram GBM growing trees leaf-wise (globally best split first)."""

    def __init__(self, learning_rate: float = 0.1, n_estimators: int = 100,
                 num_leaves: int = 31, max_depth: int = -1,
                 min_child_samples: int = 20, min_split_gain: float = 0.0,
                 lambda_l2: float = 0.0, feature_fraction: float = 1.0,
                 bagging_fraction: float = 1.0, boosting_type: str = "gbdt",
                 max_bins: int = 255, loss: str = "squared", tau: float = 0.5,
                 categorical_columns: tuple[int, ...] = (), random_state: int = 0):
        self.learning_rate = learning_rate
        self.n_estimators = n_estimators
        self.num_leaves = num_leaves
        self.max_depth = max_depth
        self.min_child_samples = min_child_samples
        self.min_split_gain = min_split_gain
        self.lambda_l2 = lambda_l2
        self.feature_fraction = feature_fraction
        self.bagging_fraction = bagging_fraction
        self.boosting_type = boosting_type
        self.max_bins = max_bins
        self.loss = loss
        self.tau = tau
        self.categorical_columns = categorical_columns
        self.random_state = random_state

    def _validate(self):
        check_loss(self.loss)
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError("learning_rate must lie in (0, 1]")
        if self.n_estimators < 0:
            raise ValueError("n_estimators must be non-negative")
        if self.num_leaves < 2:
            raise ValueError("num_leaves must be at least 2")
        for name in ("feature_fraction", "bagging_fraction"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1]")
        if self.boosting_type not in ("gbdt", "goss"):
            raise ValueError("boosting_type must be 'gbdt' or 'goss'")
        if self.lambda_l2 < 0 or self.min_split_gain < 0:
            raise ValueError("lambda_l2 and min_split_gain must be non-negative")

    # --- single tree -------------------------------------------------------------

    def _leaf_value(self, hist: Histogram) -> float:
        g = float(hist.grad[0].sum())
        h = float(hist.hess[0].sum())
        return -g / (h + self.lambda_l2) if h + self.lambda_l2 > 0 else 0.0

    def _best(self, hist: Histogram, cat_mask: np.ndarray) -> Split | None:
        return find_best_split(hist, cat_mask, self.lambda_l2,
                               self.min_split_gain, self.min_child_samples)

    def _grow_tree(self, binned, grad, hess, rows, cols, cat_mask, n_bins, trace=None):
        builder = TreeBuilder()
        hist = build_node_histogram(binned, rows, cols, grad, hess, n_bins,
                                    hess_is_unit=False)
        root = builder.add_leaf(self._leaf_value(hist), float(hist.hess[0].sum()),
                                int(hist.count[0].sum()))
        leaves = [_Leaf(root, rows, hist, depth=0, split=self._best(hist, cat_mask))]
        while len(leaves) < self.num_leaves:
            candidates = [lf for lf in leaves if lf.split is not None]
            if not candidates:
                break
            # max gain; ties resolved toward the earliest-created node
            chosen = candidates[0]
            for lf in candidates[1:]:
                if lf.split.gain > chosen.split.gain:
                    chosen = lf
            if trace is not None:
                trace.append((chosen.node_id, chosen.split))
            split = chosen.split
            column = binned[chosen.rows, cols[split.feature]]
            if split.kind == "numeric":
                mask = column <= split.bin_id
            else:
                mask = np.isin(column.astype(np.int64), np.asarray(split.left_categories))
            left_rows, right_rows = chosen.rows[mask], chosen.rows[~mask]
            smaller, larger = (left_rows, right_rows) if len(left_rows) <= len(right_rows) else (right_rows, left_rows)
            smaller_hist = build_node_histogram(binned, smaller, cols, grad, hess, n_bins)
            larger_hist = chosen.hist.subtract(smaller_hist)
            if smaller is left_rows:
                left_hist, right_hist = smaller_hist, larger_hist
            else:
                left_hist, right_hist = larger_hist, smaller_hist

            depth = chosen.depth + 1
            left_id = builder.add_leaf(self._leaf_value(left_hist),
                                       float(left_hist.hess[0].sum()), len(left_rows))
            right_id = builder.add_leaf(self._leaf_value(right_hist),
                                        float(right_hist.hess[0].sum()), len(right_rows))
            feature = int(cols[split.feature])
            if split.kind == "numeric":
                threshold = self.binner_.threshold_value(feature, split.bin_id)
                builder.make_numeric(chosen.node_id, feature, threshold, split.bin_id,
                                     left_id, right_id, split.gain)
            else:
                builder.make_categorical(chosen.node_id, feature, split.left_categories,
                                         int(self.binner_.n_bins_[feature]),
                                         left_id, right_id, split.gain)
            deeper_ok = self.max_depth <= 0 or depth < self.max_depth
            new_leaves = []
            for nid, rws, hst in ((left_id, left_rows, left_hist),
                                  (right_id, right_rows, right_hist)):
                new_leaves.append(_Leaf(nid, rws, hst, depth,
                                        self._best(hst, cat_mask) if deeper_ok else None))
            leaves = [lf for lf in leaves if lf.node_id != chosen.node_id] + new_leaves
        tree, gains = builder.freeze()
        assignments = [(lf.node_id, lf.rows) for lf in leaves]
        return tree, gains, assignments

    # --- boosting loop -----------------------------------------------------------

    def fit(self, X, y):
        self._validate()
        X, y = check_X_y(X, y)
        n, p = X.shape
        rng = as_rng(self.random_state)
        self.binner_ = ColumnBinner(self.max_bins).fit(X, tuple(self.categorical_columns))
        binned = self.binner_.transform(X)
        cat_set = set(self.categorical_columns)

        base = float(y.mean())
        self.ensemble_ = TreeEnsemble(trees=[], learning_rate=self.learning_rate,
                                      base_score=base, loss=self.loss, n_features=p,
                                      categorical_columns=tuple(self.categorical_columns))
        self.n_features_in_ = p
        self.degenerate_ = bool(y.std() == 0.0)
        pred = np.full(n, base)
        self.train_scores_ = [float(np.sqrt(np.mean((y - pred) ** 2)))]
        if self.degenerate_:
            return self

        n_cols = max(int(math.ceil(self.feature_fraction * p)), 1)
        plain = (self.boosting_type == "gbdt" and self.bagging_fraction == 1.0
                 and self.feature_fraction == 1.0)
        all_rows = np.arange(n, dtype=np.int64)
        for _ in range(self.n_estimators):
            grad, hess = gradient_hessian(self.loss, y, pred, self.tau)
            if self.boosting_type == "goss":
                rows, mult = goss_select(grad, rng)
                grad_fit, hess_fit = grad * mult, hess * mult
            elif self.bagging_fraction < 1.0:
                m = max(int(math.ceil(self.bagging_fraction * n)), 1)
                rows = np.sort(rng.choice(n, size=m, replace=False)).astype(np.int64)
                grad_fit, hess_fit = grad, hess
            else:
                rows, grad_fit, hess_fit = all_rows, grad, hess
            if self.feature_fraction < 1.0:
                cols = np.sort(rng.choice(p, size=n_cols, replace=False)).astype(np.int64)
            else:
                cols = np.arange(p, dtype=np.int64)
            cat_mask = np.fromiter((c in cat_set for c in cols), bool, len(cols))
            n_bins = int(self.binner_.n_bins_[cols].max())

            tree, gains, assignments = self._grow_tree(
                binned, grad_fit, hess_fit, rows, cols, cat_mask, n_bins
            )
            self.ensemble_.trees.append(tree)
            self.ensemble_.split_gains.append(gains)
            update = np.zeros(n)
            seen = np.zeros(n, dtype=bool)
            for node_id, rws in assignments:
                update[rws] = tree.value[node_id]
                seen[rws] = True
            if not seen.all():
                out = np.flatnonzero(~seen)
                update[out] = tree.predict(X[out])
            pred = pred + self.learning_rate * update
            rmse = float(np.sqrt(np.mean((y - pred) ** 2)))
            if (self.loss == "squared" and plain
                    and rmse > self.train_scores_[-1] * (1 + 1e-9) + 1e-12):
                raise ValuecastError(
                    "training RMSE increased under squared loss; boosting engine bug"
                )
            self.train_scores_.append(rmse)
        return self

    def predict(self, X) -> np.ndarray:
        return self.ensemble_.predict(X)
