from .binning import ColumnBinner
from .histograms import Histogram, build_histogram, build_node_histogram
from .leafwise import LeafwiseBoostingRegressor, goss_select
from .levelwise import GradientBoostingRegressor, best_exact_split
from .losses import gradient_hessian, leaf_line_search, loss_value
from .splitting import Split, best_categorical_split, best_numeric_split, find_best_split
from .tree import Tree, TreeEnsemble, load_ensemble, save_ensemble

__all__ = [
    "ColumnBinner",
    "GradientBoostingRegressor",
    "Histogram",
    "LeafwiseBoostingRegressor",
    "Split",
    "Tree",
    "TreeEnsemble",
    "best_categorical_split",
    "best_exact_split",
    "best_numeric_split",
    "build_histogram",
    "build_node_histogram",
    "find_best_split",
    "goss_select",
    "gradient_hessian",
    "leaf_line_search",
    "load_ensemble",
    "loss_value",
    "save_ensemble",
]
