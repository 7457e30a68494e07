"""Hyperparameter importance from a gain-based surrogate.

Fits a small leaf-wise ensemble on (trial params -> final score) and reports
each parameter's share of the total split gain. A constant objective yields
no gain anywhere, in which case the importance is uniform by convention.
"""

from __future__ import annotations

import numpy as np

from ..boosting import LeafwiseBoostingRegressor
from ..exceptions import TooFewTrials
from .space import CatParam
from .study import COMPLETE, Study

MIN_TRIALS = 10


def hyperparam_importance(study: Study) -> dict[str, float]:
    done = [t for t in study.trials if t.state == COMPLETE]
    if len(done) < MIN_TRIALS:
        raise TooFewTrials(f"importance needs at least {MIN_TRIALS} complete trials, got {len(done)}")
    names = study.space.names()
    columns = []
    categorical = []
    for j, (name, dom) in enumerate(study.space):
        if isinstance(dom, CatParam):
            columns.append([float(dom.choices.index(t.params[name])) for t in done])
            categorical.append(j)
        else:
            vals = np.asarray([float(t.params[name]) for t in done])
            if getattr(dom, "log", False):
                vals = np.log(vals)
            columns.append(vals.tolist())
    X = np.asarray(columns).T
    y = np.asarray([t.final_score for t in done])
    surrogate = LeafwiseBoostingRegressor(
        n_estimators=30, num_leaves=7, learning_rate=0.3, min_child_samples=2,
        max_bins=64, categorical_columns=tuple(categorical), random_state=0,
    ).fit(X, y)
    weights = surrogate.ensemble_.feature_importances()
    return {name: float(w) for name, w in zip(names, weights)}
