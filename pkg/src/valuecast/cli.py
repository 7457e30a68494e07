"""Command line surface.

Commands: synth, ingest, features, correlate, train, tune, explain,
benchmark. Every command needs a seed: --seed beats the config file, which
beats the VALUECAST_SEED environment variable; there is no wall-clock
fallback. A flat key=value config file can hold any long-option default.
Usage errors exit 2, data errors exit 1 with the module's error text.
Artifacts are a pure function of (inputs, config, seed); the only
exceptions are the *.times / timings.txt sidecars, which hold wall-clock
measurements.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import evaluation, features, ingest, synth
from .boosting import load_ensemble, save_ensemble
from .exceptions import ValuecastError
from .explain import shap_summary, tree_shap
from .hpo.pruners import make_pruner
from .hpo.study import load_study, run_study, save_study
from .linear import load_linear_model, save_linear_model
from .svgplot import bar_chart, dot_strip

ENV_SEED = "VALUECAST_SEED"


def _read_config(path: str) -> dict[str, str]:
    out = {}
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValuecastError(f"{path}:{line_no}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    """Fill unset args from the config file; explicit flags stay in charge."""
    if not getattr(args, "config", None):
        return
    config = _read_config(args.config)
    sentinel = object()
    for key, raw in config.items():
        if not hasattr(args, key):
            continue
        current = getattr(args, key, sentinel)
        default = parser.get_default(key)
        if current == default:
            setattr(args, key, type(default)(raw) if default is not None else raw)


def _resolve_seed(args: argparse.Namespace) -> int:
    if getattr(args, "seed", None) is not None:
        return int(args.seed)
    env = os.environ.get(ENV_SEED)
    if env is not None:
        return int(env)
    print("error: a seed is mandatory (--seed, config seed=, or VALUECAST_SEED)", file=sys.stderr)
    raise SystemExit(2)


def _outdir(args) -> Path:
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _wrote(path: Path) -> None:
    print(f"wrote {path}")


def _load_records(args) -> list:
    if getattr(args, "records", None):
        return ingest.read_records(args.records)
    ps = ingest.parse_sofifa_csv(args.sofifa)
    pw = ingest.parse_whoscored_csv(args.whoscored)
    merged = ingest.merge_sources(ps.records, pw.records)
    for line in merged.report_lines():
        print(line, file=sys.stderr)
    kept, dropped = ingest.drop_missing(merged.records)
    if dropped:
        print(f"dropped {dropped} incomplete row(s)", file=sys.stderr)
    return kept


# --- commands -------------------------------------------------------------------------


def cmd_synth(args) -> int:
    seed = _resolve_seed(args)
    out = _outdir(args)
    s_rows, w_rows = synth.synth_generate(args.n, seed)
    s_path, w_path = out / "sofifa.csv", out / "whoscored.csv"
    ingest.write_sofifa_csv(s_rows, s_path)
    ingest.write_whoscored_csv(w_rows, w_path)
    _wrote(s_path)
    _wrote(w_path)
    return 0


def cmd_ingest(args) -> int:
    _resolve_seed(args)
    out = _outdir(args)
    records = _load_records(args)
    path = out / "records.csv"
    ingest.write_records(records, path)
    _wrote(path)
    print(f"{len(records)} complete records")
    return 0


def cmd_features(args) -> int:
    _resolve_seed(args)
    out = _outdir(args)
    records = _load_records(args)
    m = features.build_matrix(records, encoding=args.encoding)
    path = out / f"matrix_{args.encoding}.csv"
    features.write_matrix_csv(m, path)
    _wrote(path)
    print(f"{m.n} rows x {m.p} columns ({args.encoding})")
    return 0


def cmd_correlate(args) -> int:
    _resolve_seed(args)
    out = _outdir(args)
    m = features.read_matrix_csv(args.matrix)
    report = features.correlation_report(m, threshold=args.threshold)
    csv_path = out / "correlations.csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write("feature,r\n")
        for name, r in report:
            fh.write(f"{name},{r:.6f}\n")
    svg_path = out / "correlations.svg"
    svg_path.write_text(bar_chart(
        [name for name, _ in report], [r for _, r in report],
        f"features with |r| >= {args.threshold:g} against market value",
    ), encoding="utf-8")
    _wrote(csv_path)
    _wrote(svg_path)
    print(f"{len(report)} feature(s) at |r| >= {args.threshold:g}")
    return 0


def _parse_overrides(pairs: list[str]) -> dict:
    params = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValuecastError(f"--set expects key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        try:
            params[key] = json.loads(raw)
        except json.JSONDecodeError:
            params[key] = raw
    return params


def cmd_train(args) -> int:
    seed = _resolve_seed(args)
    out = _outdir(args)
    m = features.read_matrix_csv(args.matrix)
    train, test = evaluation.train_test_split(m, args.test_fraction, seed)
    params = _parse_overrides(args.set or [])
    model = evaluation.make_model(args.model, params, seed=seed,
                                  categorical_columns=train.categorical_columns)
    evaluation._fit_with_ridge_fallback(model, train.X, train.y)
    test_rmse = evaluation.rmse(test.y, model.predict(test.X))
    test_mae = evaluation.mae(test.y, model.predict(test.X))
    if hasattr(model, "ensemble_"):
        path = out / f"model_{args.model}.txt"
        save_ensemble(model.ensemble_, path)
    else:
        path = out / f"model_{args.model}.txt"
        save_linear_model(model, path)
    metrics = out / f"metrics_{args.model}.txt"
    metrics.write_text(
        f"model {args.model}\ntest_rmse {test_rmse:.6f}\ntest_mae {test_mae:.6f}\n",
        encoding="utf-8",
    )
    _wrote(path)
    _wrote(metrics)
    print(f"test RMSE {test_rmse:.2f}  MAE {test_mae:.2f}")
    return 0


def cmd_tune(args) -> int:
    seed = _resolve_seed(args)
    out = _outdir(args)
    m = features.read_matrix_csv(args.matrix)
    train, _ = evaluation.train_test_split(m, args.test_fraction, seed)
    space = evaluation.default_search_space(args.model, full_scale=args.full_scale)
    pruner = make_pruner("median") if args.prune else None
    objective = evaluation.cv_objective(args.model, train.X, train.y, args.k, seed,
                                        train.categorical_columns)
    resume = load_study(args.resume) if args.resume else None
    study = run_study(objective, space, sampler=args.sampler, pruner=pruner,
                      n_trials=args.trials, seed=seed, resume=resume)
    log_path = out / f"study_{args.model}_{args.sampler}.jsonl"
    save_study(study, log_path, timings_path=out / f"study_{args.model}_{args.sampler}.times")
    best_path = out / f"best_params_{args.model}_{args.sampler}.json"
    best_path.write_text(json.dumps({
        "model": args.model,
        "score": study.best_score,
        "params": study.best_params,
    }, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    _wrote(log_path)
    _wrote(best_path)
    print(f"best CV RMSE {study.best_score:.4f} over {len(study.trials)} trial(s), "
          f"{study.n_fold_evaluations()} fold evaluation(s)")
    return 0


def cmd_explain(args) -> int:
    _resolve_seed(args)
    out = _outdir(args)
    m = features.read_matrix_csv(args.matrix)
    model = load_ensemble(args.model_file)
    X = m.X if args.limit in (None, 0) else m.X[: args.limit]
    expl = tree_shap(model, X, column_names=m.column_names)
    csv_path = out / "shap.csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write("row," + ",".join(expl.column_names) + "\n")
        for i in range(X.shape[0]):
            fh.write(str(i) + "," + ",".join(f"{v:.6f}" for v in expl.values[i]) + "\n")
    top = shap_summary(expl, min(args.top, len(expl.column_names)))
    bar_path = out / "shap_bar.svg"
    bar_path.write_text(bar_chart(
        [name for name, _ in top], [v for _, v in top],
        f"mean |attribution| (base value {expl.base_value:.2f})",
    ), encoding="utf-8")
    idx = [list(expl.column_names).index(name) for name, _ in top]
    dots_path = out / "shap_dots.svg"
    dots_path.write_text(dot_strip(
        [expl.column_names[j] for j in idx],
        [expl.values[:, j] for j in idx],
        [X[:, j] for j in idx],
        "per-row attributions (color = feature value)",
    ), encoding="utf-8")
    for path in (csv_path, bar_path, dots_path):
        _wrote(path)
    return 0


def cmd_benchmark(args) -> int:
    seed = _resolve_seed(args)
    out = _outdir(args)
    if args.sofifa and args.whoscored:
        records = _load_records(args)
    else:
        s_rows, w_rows = synth.synth_generate(args.synth_n, seed)
        records = _records_from_raw(s_rows, w_rows)
    m = features.build_matrix(records, encoding="onehot")
    m_native = features.build_matrix(records, encoding="native")
    cells = None
    if args.cells:
        cells = tuple(tuple(c.split(":")) for c in args.cells.split(","))
    config = evaluation.BenchmarkConfig(
        models=tuple(args.models.split(",")),
        conditions=tuple(args.conditions.split(",")),
        cells=cells,
        k=args.k,
        n_trials=args.trials,
        seed=seed,
        test_fraction=args.test_fraction,
        repeats=args.repeats,
        full_scale=args.full_scale,
        output_dir=out,
    )
    report = evaluation.run_benchmark(m, config, m_native=m_native)
    csv_path, txt_path, times_path = out / "report.csv", out / "report.txt", out / "timings.txt"
    evaluation.write_report_csv(report, csv_path)
    evaluation.write_report_text(report, txt_path)
    evaluation.write_timings(report, times_path)
    for path in (csv_path, txt_path, times_path):
        _wrote(path)
    print(txt_path.read_text(encoding="utf-8"), end="")
    return 0


def _records_from_raw(s_rows, w_rows):
    merged = ingest.merge_sources(s_rows, w_rows)
    kept, _ = ingest.drop_missing(merged.records)
    return kept


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="valuecast",
        description="football market value toolkit: ingest, features, models, HPO, SHAP",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None,
                       help=f"RNG seed (falls back to config, then ${ENV_SEED})")
        p.add_argument("--config", default=None, help="flat key=value config file")
        p.add_argument("--outdir", default="out", help="artifact directory")

    def sources(p):
        p.add_argument("--sofifa", default=None, help="SOFIFA-style CSV")
        p.add_argument("--whoscored", default=None, help="WhoScored-style CSV")
        p.add_argument("--records", default=None, help="records.csv from 'ingest'")

    p = sub.add_parser("synth", help="generate the seeded synthetic dataset")
    common(p)
    p.add_argument("--n", type=int, default=500)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("ingest", help="parse, merge and clean the two sources")
    common(p)
    sources(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("features", help="build the feature matrix CSV")
    common(p)
    sources(p)
    p.add_argument("--encoding", choices=("onehot", "native"), default="onehot")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("correlate", help="correlation screening against the target")
    common(p)
    p.add_argument("--matrix", required=True)
    p.add_argument("--threshold", type=float, default=0.4)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("train", help="fit one model on a train split")
    common(p)
    p.add_argument("--matrix", required=True)
    p.add_argument("--model", choices=evaluation.MODEL_NAMES, default="leafwise")
    p.add_argument("--test-fraction", type=float, default=0.2, dest="test_fraction")
    p.add_argument("--set", action="append", default=[],
                   help="hyperparameter override key=value (repeatable)")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("tune", help="hyperparameter study for one model")
    common(p)
    p.add_argument("--matrix", required=True)
    p.add_argument("--model", choices=tuple(m for m in evaluation.MODEL_NAMES if m != "lm"),
                   default="leafwise")
    p.add_argument("--sampler", choices=("random", "itpe", "mtpe"), default="itpe")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--prune", action="store_true")
    p.add_argument("--full-scale", action="store_true", dest="full_scale")
    p.add_argument("--test-fraction", type=float, default=0.2, dest="test_fraction")
    p.add_argument("--resume", default=None, help="study log to continue")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("explain", help="TreeSHAP attribution for a saved ensemble")
    common(p)
    p.add_argument("--matrix", required=True)
    p.add_argument("--model-file", required=True, dest="model_file")
    p.add_argument("--limit", type=int, default=0, help="explain only the first N rows")
    p.add_argument("--top", type=int, default=20)
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("benchmark", help="the full model x condition comparison")
    common(p)
    sources(p)
    p.add_argument("--synth-n", type=int, default=500, dest="synth_n")
    p.add_argument("--models", default=",".join(evaluation.MODEL_NAMES))
    p.add_argument("--conditions", default=",".join(evaluation.CONDITIONS))
    p.add_argument("--cells", default=None,
                   help="explicit model:condition list, comma separated")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--test-fraction", type=float, default=0.2, dest="test_fraction")
    p.add_argument("--full-scale", action="store_true", dest="full_scale")
    p.set_defaults(func=cmd_benchmark)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args, parser)
        return args.func(args)
    except ValuecastError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
