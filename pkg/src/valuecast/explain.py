"""Exact feature attribution for tree ensembles.

``tree_shap`` runs the polynomial-time path-dependent algorithm per tree
(cover-weighted conditional expectations, no background dataset), sums the
per-tree attributions and scales once by the learning rate. ``brute_shapley``
is the exponential subset-enumeration oracle over the same value function,
kept for testing and capped at 12 features.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .boosting.tree import CATEGORICAL, Tree, TreeEnsemble
from .exceptions import MissingCover, TooManyFeatures
from .validation import check_X


@dataclass
class ShapExplanation:
    base_value: float
    values: np.ndarray                 # (n, p) per-feature attributions
    column_names: tuple[str, ...]

    def prediction(self, i: int) -> float:
        return self.base_value + float(self.values[i].sum())


def _node_goes_left(tree: Tree, node: int, x: np.ndarray) -> bool:
    f = int(tree.feature[node])
    if tree.kind[node] == CATEGORICAL:
        code = int(x[f])
        known = tree.n_known_categories.get(node, 0)
        if code < 0 or code >= known or x[f] != code:
            return tree.default_child(node) == tree.left[node]
        return code in tree.left_categories[node]
    return x[f] <= tree.threshold[node]


def _extend(m: list[list[float]], pz: float, po: float, pi: int) -> list[list[float]]:
    l = len(m)
    out = [row[:] for row in m]
    out.append([pi, pz, po, 1.0 if l == 0 else 0.0])
    for i in range(l - 1, -1, -1):
        out[i + 1][3] += po * out[i][3] * (i + 1) / (l + 1)
        out[i][3] = pz * out[i][3] * (l - i) / (l + 1)
    return out


def _unwound_sum(m: list[list[float]], i: int) -> float:
    l = len(m) - 1
    z_i, o_i = m[i][1], m[i][2]
    n = m[l][3]
    total = 0.0
    if o_i != 0.0:
        for j in range(l - 1, -1, -1):
            t = n * (l + 1) / ((j + 1) * o_i)
            total += t
            n = m[j][3] - t * z_i * (l - j) / (l + 1)
    else:
        for j in range(l - 1, -1, -1):
            total += m[j][3] * (l + 1) / (z_i * (l - j))
    return total


def _unwind(m: list[list[float]], i: int) -> list[list[float]]:
    l = len(m) - 1
    z_i, o_i = m[i][1], m[i][2]
    n = m[l][3]
    out = [row[:] for row in m[:l]]
    if o_i != 0.0:
        for j in range(l - 1, -1, -1):
            t = n * (l + 1) / ((j + 1) * o_i)
            n = out[j][3] - t * z_i * (l - j) / (l + 1)
            out[j][3] = t
    else:
        for j in range(l - 1, -1, -1):
            out[j][3] = out[j][3] * (l + 1) / (z_i * (l - j))
    for j in range(i, l):
        out[j][0], out[j][1], out[j][2] = m[j + 1][0], m[j + 1][1], m[j + 1][2]
    return out


def _shap_recurse(tree: Tree, x: np.ndarray, phi: np.ndarray, node: int,
                  m: list[list[float]], pz: float, po: float, pi: int) -> None:
    m = _extend(m, pz, po, pi)
    if tree.feature[node] < 0:
        v = float(tree.value[node])
        for i in range(1, len(m)):
            w = _unwound_sum(m, i)
            phi[int(m[i][0])] += w * (m[i][2] - m[i][1]) * v
        return
    f = int(tree.feature[node])
    left, right = int(tree.left[node]), int(tree.right[node])
    hot, cold = (left, right) if _node_goes_left(tree, node, x) else (right, left)
    iz, io = 1.0, 1.0
    k = next((j for j in range(1, len(m)) if m[j][0] == f), None)
    if k is not None:
        iz, io = m[k][1], m[k][2]
        m = _unwind(m, k)
    cover = float(tree.cover[node])
    _shap_recurse(tree, x, phi, hot, m, iz * float(tree.cover[hot]) / cover, io, f)
    _shap_recurse(tree, x, phi, cold, m, iz * float(tree.cover[cold]) / cover, 0.0, f)


def shap_values_tree(tree: Tree, x: np.ndarray, p: int) -> np.ndarray:
    """Unscaled attributions of one tree for one row."""
    phi = np.zeros(p)
    _shap_recurse(tree, x, phi, 0, [], 1.0, 1.0, -1)
    return phi


def tree_shap(model: TreeEnsemble, X, check_local_accuracy: bool = True,
              column_names: tuple[str, ...] | None = None) -> ShapExplanation:
    """Explain every row of X against a fitted ensemble.

    base_value is the cover-weighted expected output; attributions plus
    base_value reproduce each prediction to 1e-6 (hard-checked unless
    disabled).
    """
    X = check_X(X, model.n_features)
    for tree in model.trees:
        if tree.cover is None or tree.cover.shape[0] != tree.n_nodes or tree.cover[0] <= 0:
            raise MissingCover("ensemble nodes lack cover statistics")
    n, p = X.shape
    eta = model.learning_rate
    base = model.base_score + eta * sum(t.expected_value() for t in model.trees)
    values = np.zeros((n, p))
    for i in range(n):
        phi = np.zeros(p)
        for tree in model.trees:
            phi += shap_values_tree(tree, X[i], p)
        values[i] = eta * phi
    if check_local_accuracy:
        pred = model.predict(X)
        err = np.abs(base + values.sum(axis=1) - pred)
        worst = float(err.max()) if n else 0.0
        if worst > 1e-6:
            raise AssertionError(f"local accuracy violated: max |base + sum(phi) - f(x)| = {worst}")
    if column_names is None:
        column_names = tuple(f"feature_{j}" for j in range(p))
    return ShapExplanation(base_value=float(base), values=values, column_names=tuple(column_names))


# --- exponential oracle -----------------------------------------------------------


def _expected_value_given(tree: Tree, x: np.ndarray, known: frozenset[int]) -> float:
    def walk(node: int, w: float) -> float:
        if tree.feature[node] < 0:
            return w * float(tree.value[node])
        f = int(tree.feature[node])
        left, right = int(tree.left[node]), int(tree.right[node])
        if f in known:
            child = left if _node_goes_left(tree, node, x) else right
            return walk(child, w)
        cover = float(tree.cover[node])
        return (walk(left, w * float(tree.cover[left]) / cover)
                + walk(right, w * float(tree.cover[right]) / cover))

    return walk(0, 1.0)


def brute_shapley(model: TreeEnsemble, x: np.ndarray) -> np.ndarray:
    """Shapley attributions by full subset enumeration (p <= 12).

    Uses the same path-dependent conditional expectation as tree_shap, so the
    two must agree to numerical precision.
    """
    x = np.asarray(x, dtype=np.float64).ravel()
    p = model.n_features
    if x.shape[0] != p:
        raise TooManyFeatures(f"x has {x.shape[0]} entries, model expects {p}")
    if p > 12:
        raise TooManyFeatures(f"subset enumeration over {p} features refused (cap 12)")

    def v(subset: frozenset[int]) -> float:
        return sum(_expected_value_given(t, x, subset) for t in model.trees)

    cache: dict[frozenset[int], float] = {}

    def v_cached(subset: frozenset[int]) -> float:
        if subset not in cache:
            cache[subset] = v(subset)
        return cache[subset]

    phi = np.zeros(p)
    others = list(range(p))
    for j in range(p):
        rest = [k for k in others if k != j]
        for r in range(p):
            weight = math.factorial(r) * math.factorial(p - r - 1) / math.factorial(p)
            for subset in itertools.combinations(rest, r):
                s = frozenset(subset)
                phi[j] += weight * (v_cached(s | {j}) - v_cached(s))
    return model.learning_rate * phi


def shap_summary(expl: ShapExplanation, k: int) -> list[tuple[str, float]]:
    """Top-k features by mean absolute attribution; ties keep column order."""
    if k > len(expl.column_names):
        raise ValueError(f"k={k} exceeds the {len(expl.column_names)} available features")
    mean_abs = np.abs(expl.values).mean(axis=0)
    order = np.argsort(-mean_abs, kind="stable")[:k]
    return [(expl.column_names[j], float(mean_abs[j])) for j in order]
