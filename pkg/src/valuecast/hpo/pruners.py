"""Trial pruning by the median stopping rule.

A running trial is stopped as soon as the mean of its fold scores so far is
strictly worse than the median of the completed trials' running means at the
same step. Ties favor continuation; nothing is pruned before
``n_startup_trials`` trials have completed or within the first
``n_warmup_steps`` folds. The pruner only reads scores; it never touches
the sampler's random stream.
"""

from __future__ import annotations

import numpy as np


class MedianPruner:
    name = "median"

    def __init__(self, n_startup_trials: int = 5, n_warmup_steps: int = 0):
        self.n_startup_trials = n_startup_trials
        self.n_warmup_steps = n_warmup_steps

    def prune_decision(self, completed_intermediates: list[list[float]],
                       trial_scores: list[float], step: int) -> str:
        """One of "continue" or "prune" for a trial at 1-based fold ``step``."""
        if step <= self.n_warmup_steps:
            return "continue"
        if len(completed_intermediates) < self.n_startup_trials:
            return "continue"
        if len(trial_scores) < step:
            return "continue"
        running = float(np.mean(trial_scores[:step]))
        peers = [
            float(np.mean(scores[:step]))
            for scores in completed_intermediates
            if len(scores) >= step
        ]
        if not peers:
            return "continue"
        return "prune" if running > float(np.median(peers)) else "continue"


def make_pruner(name: str | None, **kwargs):
    if name in (None, "none"):
        return None
    if name == "median":
        return MedianPruner(**kwargs)
    raise ValueError(f"unknown pruner {name!r} (expected none or median)")
