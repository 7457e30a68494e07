"""valuecast: football player market value prediction toolkit.

Ingestion of the two tabular sources, derived-feature computation,
correlation screening, four linear baselines, two gradient boosting
engines, TPE hyperparameter studies with median pruning, exact TreeSHAP
attribution and the cross-validated benchmark, all seeded and
reproducible.
"""

from .boosting import GradientBoostingRegressor, LeafwiseBoostingRegressor, TreeEnsemble
from .evaluation import kfold_cv, mae, rmse, run_benchmark, train_test_split
from .explain import ShapExplanation, brute_shapley, shap_summary, tree_shap
from .features import FeatureMatrix, build_matrix, correlation_report, pearson
from .hpo import SearchSpace, Study, hyperparam_importance, run_study
from .ingest import drop_missing, merge_sources, parse_sofifa_csv, parse_whoscored_csv
from .linear import ElasticNet, KernelRidge, Lasso, LinearRegression
from .synth import synth_generate

__version__ = "0.1.0"

__all__ = [
    "ElasticNet",
    "FeatureMatrix",
    "GradientBoostingRegressor",
    "KernelRidge",
    "Lasso",
    "LeafwiseBoostingRegressor",
    "LinearRegression",
    "SearchSpace",
    "ShapExplanation",
    "Study",
    "TreeEnsemble",
    "__version__",
    "brute_shapley",
    "build_matrix",
    "correlation_report",
    "drop_missing",
    "hyperparam_importance",
    "kfold_cv",
    "mae",
    "merge_sources",
    "parse_sofifa_csv",
    "parse_whoscored_csv",
    "pearson",
    "rmse",
    "run_benchmark",
    "run_study",
    "shap_summary",
    "synth_generate",
    "train_test_split",
    "tree_shap",
]
