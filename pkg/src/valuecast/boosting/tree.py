"""Regression tree storage, traversal and the additive ensemble container.

Trees are stored as parallel node arrays. Leaf values are kept unscaled;
the ensemble applies the learning rate once at prediction time, so

    prediction(x) = base_score + learning_rate * sum_t tree_t(x)

Every node carries its cover (sum of hessians) and sample count, which the
TreeSHAP explainer requires. Unseen categorical codes at prediction time
route to the child with the larger cover.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import SchemaMismatch
from ..validation import check_X

logger = logging.getLogger("valuecast.boosting")

NUMERIC, CATEGORICAL = 0, 1


@dataclass
class Tree:
    feature: np.ndarray                       # int32; -1 marks a leaf
    kind: np.ndarray                          # int8; NUMERIC or CATEGORICAL
    threshold: np.ndarray                     # float64 raw-value threshold (numeric nodes)
    bin_threshold: np.ndarray                 # int32 bin id equivalent (train-time)
    left: np.ndarray                          # int32 child ids; -1 for leaves
    right: np.ndarray
    value: np.ndarray                         # float64 unscaled leaf values
    cover: np.ndarray                         # float64 hessian sums per node
    count: np.ndarray                         # int64 sample counts per node
    left_categories: dict[int, np.ndarray] = field(default_factory=dict)
    n_known_categories: dict[int, int] = field(default_factory=dict)

    @property
    def n_nodes(self) -> int:
        return self.feature.shape[0]

    def is_leaf(self, node: int) -> bool:
        return self.feature[node] < 0

    def default_child(self, node: int) -> int:
        l, r = int(self.left[node]), int(self.right[node])
        return l if self.cover[l] >= self.cover[r] else r

    def _route(self, node: int, vals: np.ndarray) -> np.ndarray:
        """go-left mask for raw feature values arriving at an internal node."""
        if self.kind[node] == NUMERIC:
            return vals <= self.threshold[node]
        cats = self.left_categories[node]
        known = self.n_known_categories.get(node, 0)
        codes = vals.astype(np.int64)
        unseen = (codes < 0) | (codes >= known) | (vals != codes)
        go_left = np.isin(codes, cats)
        if unseen.any():
            logger.debug("%d value(s) hit unseen categories at node %d", int(unseen.sum()), node)
            go_left = np.where(unseen, self.default_child(node) == self.left[node], go_left)
        return go_left

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Leaf index for every row of raw feature values."""
        n = X.shape[0]
        node = np.zeros(n, dtype=np.int64)
        while True:
            internal = self.feature[node] >= 0
            if not internal.any():
                return node
            rows = np.flatnonzero(internal)
            nodes_here = node[rows]
            for nid in np.unique(nodes_here):
                at = rows[nodes_here == nid]
                go_left = self._route(int(nid), X[at, self.feature[nid]])
                node[at] = np.where(go_left, self.left[nid], self.right[nid])

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.value[self.apply(X)]

    def expected_value(self) -> float:
        """Cover-weighted mean leaf value (path-dependent expectation)."""
        leaves = self.feature < 0
        total = self.cover[0]
        return float((self.value[leaves] * self.cover[leaves]).sum() / total)

    def feature_gain_totals(self, p: int, gains: np.ndarray) -> np.ndarray:
        out = np.zeros(p)
        internal = self.feature >= 0
        np.add.at(out, self.feature[internal], gains[internal])
        return out


@dataclass
class TreeEnsemble:
    trees: list[Tree]
    learning_rate: float
    base_score: float
    loss: str
    n_features: int
    categorical_columns: tuple[int, ...] = ()
    split_gains: list[np.ndarray] = field(default_factory=list)   # per-tree, per-node

    def predict(self, X) -> np.ndarray:
        X = check_X(X)
        if X.shape[1] != self.n_features:
            raise SchemaMismatch(
                f"model was fit on {self.n_features} columns, got {X.shape[1]}"
            )
        out = np.full(X.shape[0], self.base_score)
        for tree in self.trees:
            out += self.learning_rate * tree.predict(X)
        return out

    def feature_importances(self) -> np.ndarray:
        """Total split gain per feature, normalized to sum 1 (uniform if no splits)."""
        totals = np.zeros(self.n_features)
        for tree, gains in zip(self.trees, self.split_gains):
            totals += tree.feature_gain_totals(self.n_features, gains)
        s = totals.sum()
        if s <= 0:
            return np.full(self.n_features, 1.0 / self.n_features)
        return totals / s


class TreeBuilder:
    """Accumulates nodes during growth, then freezes into a Tree."""

    def __init__(self):
        self.feature: list[int] = []
        self.kind: list[int] = []
        self.threshold: list[float] = []
        self.bin_threshold: list[int] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []
        self.cover: list[float] = []
        self.count: list[int] = []
        self.gain: list[float] = []
        self.left_categories: dict[int, np.ndarray] = {}
        self.n_known_categories: dict[int, int] = {}

    def add_leaf(self, value: float, cover: float, count: int) -> int:
        nid = len(self.feature)
        self.feature.append(-1)
        self.kind.append(NUMERIC)
        self.threshold.append(0.0)
        self.bin_threshold.append(-1)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(value)
        self.cover.append(cover)
        self.count.append(count)
        self.gain.append(0.0)
        return nid

    def make_numeric(self, nid: int, feature: int, threshold: float, bin_id: int,
                     left: int, right: int, gain: float) -> None:
        self.feature[nid] = feature
        self.kind[nid] = NUMERIC
        self.threshold[nid] = threshold
        self.bin_threshold[nid] = bin_id
        self.left[nid] = left
        self.right[nid] = right
        self.value[nid] = 0.0
        self.gain[nid] = gain

    def make_categorical(self, nid: int, feature: int, left_cats: tuple[int, ...],
                         n_known: int, left: int, right: int, gain: float) -> None:
        self.feature[nid] = feature
        self.kind[nid] = CATEGORICAL
        self.left[nid] = left
        self.right[nid] = right
        self.value[nid] = 0.0
        self.gain[nid] = gain
        self.left_categories[nid] = np.asarray(sorted(left_cats), dtype=np.int64)
        self.n_known_categories[nid] = n_known

    def freeze(self) -> tuple[Tree, np.ndarray]:
        tree = Tree(
            feature=np.asarray(self.feature, dtype=np.int32),
            kind=np.asarray(self.kind, dtype=np.int8),
            threshold=np.asarray(self.threshold),
            bin_threshold=np.asarray(self.bin_threshold, dtype=np.int32),
            left=np.asarray(self.left, dtype=np.int32),
            right=np.asarray(self.right, dtype=np.int32),
            value=np.asarray(self.value),
            cover=np.asarray(self.cover),
            count=np.asarray(self.count, dtype=np.int64),
            left_categories=self.left_categories,
            n_known_categories=self.n_known_categories,
        )
        return tree, np.asarray(self.gain)


# --- line-oriented text serialization ------------------------------------------------


def save_ensemble(model: TreeEnsemble, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("valuecast-ensemble v1\n")
        fh.write(f"loss {model.loss}\n")
        fh.write(f"learning_rate {model.learning_rate!r}\n")
        fh.write(f"base_score {model.base_score!r}\n")
        fh.write(f"n_features {model.n_features}\n")
        fh.write("categorical " + ",".join(str(c) for c in model.categorical_columns) + "\n")
        fh.write(f"n_trees {len(model.trees)}\n")
        for t, (tree, gains) in enumerate(zip(model.trees, model.split_gains)):
            fh.write(f"tree {t} nodes {tree.n_nodes}\n")
            for i in range(tree.n_nodes):
                cover, count = repr(float(tree.cover[i])), int(tree.count[i])
                gain = repr(float(gains[i]))
                if tree.feature[i] < 0:
                    fh.write(f"leaf {repr(float(tree.value[i]))} {cover} {count}\n")
                elif tree.kind[i] == NUMERIC:
                    fh.write(
                        f"num {int(tree.feature[i])} {repr(float(tree.threshold[i]))} "
                        f"{int(tree.bin_threshold[i])} {int(tree.left[i])} {int(tree.right[i])} "
                        f"{cover} {count} {gain}\n"
                    )
                else:
                    cats = ",".join(str(c) for c in tree.left_categories[i])
                    known = tree.n_known_categories.get(i, 0)
                    fh.write(
                        f"cat {int(tree.feature[i])} {cats} {known} {int(tree.left[i])} "
                        f"{int(tree.right[i])} {cover} {count} {gain}\n"
                    )


def load_ensemble(path) -> TreeEnsemble:
    with open(path, encoding="utf-8") as fh:
        if fh.readline().strip() != "valuecast-ensemble v1":
            raise ValueError(f"{path} is not a valuecast ensemble file")
        loss = fh.readline().split()[1]
        learning_rate = float(fh.readline().split()[1])
        base_score = float(fh.readline().split()[1])
        n_features = int(fh.readline().split()[1])
        cat_line = fh.readline().split()
        cats = tuple(int(c) for c in cat_line[1].split(",")) if len(cat_line) > 1 else ()
        n_trees = int(fh.readline().split()[1])
        trees, all_gains = [], []
        for _ in range(n_trees):
            header = fh.readline().split()
            n_nodes = int(header[3])
            b = TreeBuilder()
            for _ in range(n_nodes):
                parts = fh.readline().split()
                if parts[0] == "leaf":
                    b.add_leaf(float(parts[1]), float(parts[2]), int(parts[3]))
                elif parts[0] == "num":
                    nid = b.add_leaf(0.0, float(parts[6]), int(parts[7]))
                    b.make_numeric(nid, int(parts[1]), float(parts[2]), int(parts[3]),
                                   int(parts[4]), int(parts[5]), float(parts[8]))
                    b.cover[nid], b.count[nid] = float(parts[6]), int(parts[7])
                else:
                    nid = b.add_leaf(0.0, float(parts[6]), int(parts[7]))
                    left_cats = tuple(int(c) for c in parts[2].split(","))
                    b.make_categorical(nid, int(parts[1]), left_cats, int(parts[3]),
                                       int(parts[4]), int(parts[5]), float(parts[8]))
                    b.cover[nid], b.count[nid] = float(parts[6]), int(parts[7])
            tree, gains = b.freeze()
            trees.append(tree)
            all_gains.append(gains)
    return TreeEnsemble(trees=trees, learning_rate=learning_rate, base_score=base_score,
                        loss=loss, n_features=n_features, categorical_columns=cats,
                        split_gains=all_gains)
