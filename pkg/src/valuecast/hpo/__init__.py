from .importance import hyperparam_importance
from .parzen import parzen_density, scott_bandwidth, smoothed_frequencies
from .pruners import MedianPruner, make_pruner
from .samplers import RandomSampler, TPESampler, make_sampler
from .space import CatParam, FloatParam, IntParam, SearchSpace
from .study import (
    COMPLETE,
    FAILED,
    PRUNED,
    Study,
    Trial,
    TrialHandle,
    TrialPruned,
    load_study,
    run_study,
    save_study,
)

__all__ = [
    "CatParam",
    "COMPLETE",
    "FAILED",
    "FloatParam",
    "IntParam",
    "MedianPruner",
    "PRUNED",
    "RandomSampler",
    "SearchSpace",
    "Study",
    "TPESampler",
    "Trial",
    "TrialHandle",
    "TrialPruned",
    "hyperparam_importance",
    "load_study",
    "make_pruner",
    "make_sampler",
    "parzen_density",
    "run_study",
    "save_study",
    "scott_bandwidth",
    "smoothed_frequencies",
]
