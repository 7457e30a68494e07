"""Data splitting, cross-validation, metrics and the benchmark matrix.

The benchmark grid crosses models {lm, lasso, enet, krr, gbdt, leafwise,
leafwise_pruning} with conditions {default, itpe, mtpe}. The plain linear
model runs only under default; the pruning row only under the TPE
conditions. A tuned cell runs a study whose objective is the mean k-fold CV
RMSE on the training split, refits the best parameters on the full training
split (repeated over seeds) and scores the held-out test split. Cells are
seeded independently, so dropping one model never changes another cell.

Wall-clock timings are reported in a sidecar file only; reports and study
logs are byte-reproducible for a fixed config and seed.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .exceptions import LengthMismatch, SingularDesign, TooSmall
from .features import FeatureMatrix
from .hpo.pruners import MedianPruner
from .hpo.space import CatParam, FloatParam, IntParam, SearchSpace
from .hpo.study import Study, TrialPruned, run_study, save_study
from .linear import ElasticNet, KernelRidge, Lasso, LinearRegression
from .boosting import GradientBoostingRegressor, LeafwiseBoostingRegressor
from .validation import as_rng

MODEL_NAMES = ("lm", "lasso", "enet", "krr", "gbdt", "leafwise", "leafwise_pruning")
CONDITIONS = ("default", "itpe", "mtpe")


# --- metrics ------------------------------------------------------------------------


def _check_pair(y, pred):
    y = np.asarray(y, dtype=np.float64)
    pred = np.asarray(pred, dtype=np.float64)
    if y.shape != pred.shape:
        raise LengthMismatch(f"length mismatch: {y.shape} vs {pred.shape}")
    if y.size == 0:
        raise LengthMismatch("empty score vectors")
    return y, pred


def rmse(y, pred) -> float:
    y, pred = _check_pair(y, pred)
    return float(np.sqrt(np.mean((y - pred) ** 2)))


def mae(y, pred) -> float:
    y, pred = _check_pair(y, pred)
    return float(np.mean(np.abs(y - pred)))


# --- splitting ----------------------------------------------------------------------


def split_indices(n: int, test_fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Seeded shuffle, then the first floor(n*fraction) rows become the test set."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must lie strictly between 0 and 1")
    n_test = int(n * test_fraction)
    if n_test == 0 or n_test == n:
        raise TooSmall(f"split of {n} rows at fraction {test_fraction} empties one side")
    perm = as_rng(seed).permutation(n)
    return np.sort(perm[n_test:]), np.sort(perm[:n_test])


def train_test_split(m: FeatureMatrix, test_fraction: float = 0.2,
                     seed: int = 0) -> tuple[FeatureMatrix, FeatureMatrix]:
    train_idx, test_idx = split_indices(m.n, test_fraction, seed)
    sub = lambda idx: replace(m, X=m.X[idx], y=m.y[idx])
    return sub(train_idx), sub(test_idx)


def kfold_indices(n: int, k: int, seed: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Seeded shuffle into k folds; sizes differ by at most one row."""
    if k < 2:
        raise TooSmall("k-fold needs k >= 2")
    if n < k:
        raise TooSmall(f"cannot cut {n} rows into {k} folds")
    perm = as_rng(seed).permutation(n)
    base, extra = divmod(n, k)
    folds, start = [], 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        folds.append(perm[start:start + size])
        start += size
    out = []
    for i in range(k):
        val = np.sort(folds[i])
        train = np.sort(np.concatenate([folds[j] for j in range(k) if j != i]))
        out.append((train, val))
    return out


def kfold_cv(X, y, k: int, fit_predict, seed: int = 0) -> list[float]:
    """Per-fold RMSE in fold order; ``fit_predict(X_tr, y_tr, X_va)`` returns predictions."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    scores = []
    for train_idx, val_idx in kfold_indices(X.shape[0], k, seed):
        pred = fit_predict(X[train_idx], y[train_idx], X[val_idx])
        scores.append(rmse(y[val_idx], pred))
    return scores


# --- model registry and search spaces -------------------------------------------------


def make_model(name: str, params: dict | None = None, seed: int = 0,
               categorical_columns: tuple[int, ...] = ()):
    params = dict(params or {})
    if name == "lm":
        return LinearRegression(**params)
    if name == "lasso":
        return Lasso(**params)
    if name == "enet":
        return ElasticNet(**params)
    if name == "krr":
        params.setdefault("degree", 2)
        return KernelRidge(**params)
    if name == "gbdt":
        return GradientBoostingRegressor(random_state=seed, **params)
    if name in ("leafwise", "leafwise_pruning"):
        return LeafwiseBoostingRegressor(random_state=seed,
                                         categorical_columns=categorical_columns, **params)
    raise ValueError(f"unknown model {name!r} (expected one of {MODEL_NAMES})")


def default_search_space(name: str, full_scale: bool = False) -> SearchSpace:
    """Per-model tuning domains.

    The boosting round and leaf-count ranges ship desk-scale by default so a
    full benchmark stays in the minutes; ``full_scale`` restores the wide
    ranges (n_estimators up to 3000, num_leaves up to 512).
    """
    n_estimators = IntParam(50, 3000, default=100) if full_scale else IntParam(50, 200, default=100)
    num_leaves = IntParam(2, 512, log=True, default=31) if full_scale else IntParam(2, 64, log=True, default=31)
    if name == "lasso":
        return SearchSpace({
            "alpha": FloatParam(1e-4, 10.0, log=True, default=1.0),
            "tol": FloatParam(1e-8, 1e-3, log=True, default=1e-7),
        })
    if name == "enet":
        return SearchSpace({
            "alpha": FloatParam(1e-4, 10.0, log=True, default=1.0),
            "l1_ratio": FloatParam(0.0, 1.0, default=0.5),
            "tol": FloatParam(1e-8, 1e-3, log=True, default=1e-7),
        })
    if name == "krr":
        return SearchSpace({
            "alpha": FloatParam(1e-4, 10.0, log=True, default=1.0),
            "gamma": FloatParam(1e-4, 10.0, log=True, default=0.01),
            "coef0": FloatParam(0.0, 10.0, default=1.0),
            "degree": CatParam((2, 3), default=2),
        })
    if name == "gbdt":
        return SearchSpace({
            "loss": CatParam(("squared", "absolute", "huber", "quantile"), default="squared"),
            "learning_rate": FloatParam(1e-6, 1.0, default=0.1),
            "n_estimators": n_estimators,
            "max_depth": IntParam(2, 8, default=3),
            "min_child_samples": IntParam(5, 50, default=20),
            "min_split_gain": FloatParam(0.0, 1.0, default=0.0),
            "subsample": FloatParam(0.4, 1.0, default=1.0),
        })
    if name in ("leafwise", "leafwise_pruning"):
        return SearchSpace({
            "boosting_type": CatParam(("gbdt", "goss"), default="gbdt"),
            "learning_rate": FloatParam(1e-6, 1.0, default=0.1),
            "n_estimators": n_estimators,
            "num_leaves": num_leaves,
            "min_child_samples": IntParam(5, 50, default=20),
            "min_split_gain": FloatParam(0.0, 1.0, default=0.0),
            "lambda_l2": FloatParam(1e-8, 10.0, log=True),
            "feature_fraction": FloatParam(0.4, 1.0, default=1.0),
            "bagging_fraction": FloatParam(0.4, 1.0, default=1.0),
        })
    raise ValueError(f"model {name!r} has no search space (lm runs only under default)")


def cv_objective(model_name: str, X, y, k: int, seed: int,
                 categorical_columns: tuple[int, ...] = ()):
    """Objective closure: mean k-fold CV RMSE, fold scores reported as they land."""
    folds = kfold_indices(X.shape[0], k, seed)

    def objective(params: dict, handle) -> float:
        scores = []
        for train_idx, val_idx in folds:
            model = make_model(model_name, params, seed=seed,
                               categorical_columns=categorical_columns)
            _fit_with_ridge_fallback(model, X[train_idx], y[train_idx])
            scores.append(rmse(y[val_idx], model.predict(X[val_idx])))
            handle.report(scores[-1])
            if handle.should_prune():
                raise TrialPruned
        return float(np.mean(scores))

    return objective


def _fit_with_ridge_fallback(model, X, y):
    """OLS on dummy-expanded designs is rank deficient; retry with tiny ridge."""
    try:
        return model.fit(X, y)
    except SingularDesign:
        if isinstance(model, LinearRegression):
            model.ridge = 1e-8
            return model.fit(X, y)
        raise


# --- benchmark ------------------------------------------------------------------------


@dataclass
class BenchmarkConfig:
    models: tuple[str, ...] = MODEL_NAMES
    conditions: tuple[str, ...] = CONDITIONS
    cells: tuple[tuple[str, str], ...] | None = None   # explicit (model, condition) list
    k: int = 5
    n_trials: int = 50
    seed: int = 0
    test_fraction: float = 0.2
    repeats: int = 3
    full_scale: bool = False
    output_dir: object = None                          # Path-like; study logs land here


@dataclass
class CellResult:
    model: str
    condition: str
    cv_rmse_mean: float
    cv_rmse_std: float
    test_rmse: float
    test_mae: float
    n_fold_evaluations: int
    repeats: int
    best_params: dict = field(default_factory=dict)
    wall_time: float = 0.0
    study: Study | None = None

    def __post_init__(self):
        if self.test_rmse + 1e-12 < self.test_mae:
            raise AssertionError(
                f"RMSE {self.test_rmse} below MAE {self.test_mae}; metric bug"
            )


@dataclass
class EvalReport:
    cells: list[CellResult]
    seed: int
    k: int
    n_trials: int

    def cell(self, model: str, condition: str) -> CellResult | None:
        for c in self.cells:
            if c.model == model and c.condition == condition:
                return c
        return None


def cell_runs(config: BenchmarkConfig) -> list[tuple[str, str]]:
    """The (model, condition) grid after the documented exclusions."""
    if config.cells is not None:
        pairs = list(config.cells)
    else:
        pairs = [(m, c) for m in config.models for c in config.conditions]
    out = []
    for model, condition in pairs:
        if model == "lm" and condition != "default":
            continue                      # plain linear model is not tuned
        if model == "leafwise_pruning" and condition == "default":
            continue                      # pruning is meaningless without a study
        out.append((model, condition))
    return out


def _cell_seed(base_seed: int, model: str, condition: str) -> int:
    # canonical indices keep cells independent of the configured subset
    return int(base_seed * 100_003 + MODEL_NAMES.index(model) * 31 + CONDITIONS.index(condition))


def _mean_test_scores(model_name, params, train, test, seed, repeats, categorical_columns):
    if model_name in ("lm", "lasso", "enet", "krr"):
        repeats = 1                      # deterministic fits: repeats are identical
    rmses, maes = [], []
    for r in range(repeats):
        model = make_model(model_name, params, seed=seed + r,
                           categorical_columns=categorical_columns)
        _fit_with_ridge_fallback(model, train.X, train.y)
        pred = model.predict(test.X)
        rmses.append(rmse(test.y, pred))
        maes.append(mae(test.y, pred))
    return float(np.mean(rmses)), float(np.mean(maes))


def run_benchmark(m: FeatureMatrix, config: BenchmarkConfig,
                  m_native: FeatureMatrix | None = None) -> EvalReport:
    """Execute the benchmark grid on one dataset.

    ``m`` is the dummy-expanded matrix; when ``m_native`` is given the
    leaf-wise rows train on it (native categorical handling) while linear
    and level-wise rows keep the expanded matrix. Both matrices must hold
    the same rows in the same order.
    """
    report = EvalReport(cells=[], seed=config.seed, k=config.k, n_trials=config.n_trials)
    for model_name, condition in cell_runs(config):
        seed = _cell_seed(config.seed, model_name, condition)
        uses_native = m_native is not None and model_name.startswith("leafwise")
        data = m_native if uses_native else m
        cats = data.categorical_columns if uses_native else ()
        train, test = train_test_split(data, config.test_fraction, seed=config.seed)
        start = time.perf_counter()

        if condition == "default":
            folds = kfold_cv(
                train.X, train.y, config.k,
                lambda Xtr, ytr, Xva: _fit_with_ridge_fallback(
                    make_model(model_name, None, seed=seed, categorical_columns=cats),
                    Xtr, ytr).predict(Xva),
                seed=seed,
            )
            test_rmse, test_mae = _mean_test_scores(
                model_name, None, train, test, seed, config.repeats, cats)
            cell = CellResult(
                model=model_name, condition=condition,
                cv_rmse_mean=float(np.mean(folds)), cv_rmse_std=float(np.std(folds)),
                test_rmse=test_rmse, test_mae=test_mae,
                n_fold_evaluations=len(folds), repeats=config.repeats,
            )
        else:
            space = default_search_space(model_name, config.full_scale)
            pruner = MedianPruner() if model_name == "leafwise_pruning" else None
            objective = cv_objective(model_name, train.X, train.y, config.k, seed, cats)
            study = run_study(objective, space, sampler=condition, pruner=pruner,
                              n_trials=config.n_trials, seed=seed)
            best = study.best_trial
            if best is None:
                raise TooSmall(f"study for {model_name}/{condition} completed no trials")
            test_rmse, test_mae = _mean_test_scores(
                model_name, best.params, train, test, seed, config.repeats, cats)
            cell = CellResult(
                model=model_name, condition=condition,
                cv_rmse_mean=float(best.final_score),
                cv_rmse_std=float(np.std(best.intermediate_scores)),
                test_rmse=test_rmse, test_mae=test_mae,
                n_fold_evaluations=study.n_fold_evaluations(),
                repeats=config.repeats, best_params=dict(best.params), study=study,
            )
            if config.output_dir is not None:
                stem = f"study_{model_name}_{condition}"
                save_study(study, f"{config.output_dir}/{stem}.jsonl",
                           timings_path=f"{config.output_dir}/{stem}.times")
        cell.wall_time = time.perf_counter() - start
        report.cells.append(cell)
    return report


# --- report serialization ---------------------------------------------------------------

REPORT_COLUMNS = ("model", "condition", "cv_rmse_mean", "cv_rmse_std",
                  "test_rmse", "test_mae", "n_fold_evaluations", "repeats", "best_params")


def write_report_csv(report: EvalReport, path) -> None:
    import csv
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_COLUMNS)
        for c in report.cells:
            writer.writerow([
                c.model, c.condition,
                f"{c.cv_rmse_mean:.6f}", f"{c.cv_rmse_std:.6f}",
                f"{c.test_rmse:.6f}", f"{c.test_mae:.6f}",
                c.n_fold_evaluations, c.repeats,
                json.dumps(c.best_params, sort_keys=True),
            ])


def write_report_text(report: EvalReport, path) -> None:
    headers = ("model", "condition", "cv RMSE", "cv std", "test RMSE", "test MAE", "fold evals")
    rows = [
        (c.model, c.condition, f"{c.cv_rmse_mean:.2f}", f"{c.cv_rmse_std:.2f}",
         f"{c.test_rmse:.2f}", f"{c.test_mae:.2f}", str(c.n_fold_evaluations))
        for c in report.cells
    ]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip() + "\n")
        fh.write("  ".join("-" * w for w in widths) + "\n")
        for r in rows:
            fh.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def write_timings(report: EvalReport, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for c in report.cells:
            fh.write(f"{c.model} {c.condition} {c.wall_time:.3f}\n")
