"""Sequential study runner: trials, pruning hooks and the JSONL study log.

Trials execute strictly one after another; the sampler sees the history of
complete trials plus pruned trials at their partial running mean. Given the
same (seed, space, objective) the whole trial log is identical run to run.
Wall-clock durations are tracked in memory and in a separate timings file,
never in the study log, which stays byte-reproducible.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from ..validation import as_rng
from .pruners import MedianPruner
from .samplers import RandomSampler, TPESampler, make_sampler
from .space import CatParam, FloatParam, IntParam, SearchSpace

COMPLETE, PRUNED, FAILED, RUNNING = "complete", "pruned", "failed", "running"


class TrialPruned(Exception):
    """Raised inside an objective to stop the current trial early."""


@dataclass
class Trial:
    trial_id: int
    params: dict
    intermediate_scores: list[float] = field(default_factory=list)
    state: str = RUNNING
    final_score: float | None = None
    wall_time: float = 0.0
    failure: str | None = None

    @property
    def n_fold_evaluations(self) -> int:
        return len(self.intermediate_scores)

    def history_score(self) -> float | None:
        """Score contributed to the sampler's history (None to exclude)."""
        if self.state == COMPLETE:
            return self.final_score
        if self.state == PRUNED and self.intermediate_scores:
            return float(sum(self.intermediate_scores) / len(self.intermediate_scores))
        return None


class TrialHandle:
    """What a running objective sees: report fold scores, ask about pruning."""

    def __init__(self, trial: Trial, pruner, completed: list[Trial]):
        self._trial = trial
        self._pruner = pruner
        self._completed = completed

    def report(self, score: float) -> None:
        self._trial.intermediate_scores.append(float(score))

    def should_prune(self) -> bool:
        if self._pruner is None:
            return False
        decision = self._pruner.prune_decision(
            [t.intermediate_scores for t in self._completed],
            self._trial.intermediate_scores,
            step=len(self._trial.intermediate_scores),
        )
        return decision == "prune"


@dataclass
class Study:
    sampler_name: str
    pruner_name: str
    seed: int
    space: SearchSpace
    trials: list[Trial] = field(default_factory=list)
    direction: str = "minimize"

    @property
    def best_trial(self) -> Trial | None:
        done = [t for t in self.trials if t.state == COMPLETE]
        if not done:
            return None
        return min(done, key=lambda t: (t.final_score, t.trial_id))

    @property
    def best_params(self) -> dict | None:
        best = self.best_trial
        return None if best is None else dict(best.params)

    @property
    def best_score(self) -> float | None:
        best = self.best_trial
        return None if best is None else best.final_score

    def n_fold_evaluations(self) -> int:
        return sum(t.n_fold_evaluations for t in self.trials)

    def history(self) -> list[tuple[dict, float]]:
        out = []
        for t in self.trials:
            score = t.history_score()
            if score is not None:
                out.append((t.params, score))
        return out


def run_study(objective, space: SearchSpace, sampler="itpe", pruner=None,
              n_trials: int = 50, seed: int = 0, resume: Study | None = None) -> Study:
    """Run a sequential study of ``n_trials`` new trials.

    ``objective(params, handle)`` returns the final (minimized) score and may
    raise TrialPruned after ``handle.should_prune()`` turns true. Any other
    exception marks the trial failed and the study continues. ``resume``
    extends an existing study (same seed semantics: the generator is replayed
    past the already-consumed draws by re-suggesting).
    """
    if isinstance(sampler, str):
        sampler = make_sampler(sampler)
    rng = as_rng(seed)
    study = resume if resume is not None else Study(
        sampler_name=sampler.name,
        pruner_name=getattr(pruner, "name", "none") if pruner is not None else "none",
        seed=seed,
        space=space,
    )
    if resume is not None:
        # replay the sampler against the recorded history to restore rng state
        replay = []
        for t in study.trials:
            sampler.suggest(replay, space, rng)
            score = t.history_score()
            if score is not None:
                replay.append((t.params, score))
    completed = [t for t in study.trials if t.state == COMPLETE]
    for _ in range(n_trials):
        params = sampler.suggest(study.history(), space, rng)
        trial = Trial(trial_id=len(study.trials), params=params)
        study.trials.append(trial)
        handle = TrialHandle(trial, pruner, completed)
        start = time.perf_counter()
        try:
            score = objective(params, handle)
            trial.final_score = float(score)
            trial.state = COMPLETE
            completed.append(trial)
        except TrialPruned:
            trial.state = PRUNED
        except Exception as err:                # noqa: BLE001 - study must survive
            trial.state = FAILED
            trial.failure = repr(err)
        trial.wall_time = time.perf_counter() - start
    return study


# --- persistence ------------------------------------------------------------------


def _space_to_json(space: SearchSpace) -> dict:
    out = {}
    for name, dom in space:
        if isinstance(dom, FloatParam):
            out[name] = {"type": "float", "low": dom.low, "high": dom.high, "log": dom.log}
        elif isinstance(dom, IntParam):
            out[name] = {"type": "int", "low": dom.low, "high": dom.high, "log": dom.log}
        elif isinstance(dom, CatParam):
            out[name] = {"type": "cat", "choices": list(dom.choices)}
        else:
            raise TypeError(f"cannot serialize domain {dom!r}")
    return out


def _space_from_json(data: dict) -> SearchSpace:
    params = {}
    for name, d in data.items():
        if d["type"] == "float":
            params[name] = FloatParam(d["low"], d["high"], d["log"])
        elif d["type"] == "int":
            params[name] = IntParam(d["low"], d["high"], d["log"])
        else:
            params[name] = CatParam(tuple(d["choices"]))
    return SearchSpace(params)


def save_study(study: Study, path, timings_path=None) -> None:
    """Line-delimited records: one header line, then one line per trial."""
    with open(path, "w", encoding="utf-8") as fh:
        header = {
            "study": {
                "sampler": study.sampler_name,
                "pruner": study.pruner_name,
                "seed": study.seed,
                "direction": study.direction,
                "space": _space_to_json(study.space),
            }
        }
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for t in study.trials:
            fh.write(json.dumps({
                "trial": t.trial_id,
                "params": t.params,
                "intermediate": t.intermediate_scores,
                "state": t.state,
                "score": t.final_score,
            }, sort_keys=True) + "\n")
    if timings_path is not None:
        with open(timings_path, "w", encoding="utf-8") as fh:
            for t in study.trials:
                fh.write(f"{t.trial_id} {t.wall_time:.6f}\n")


def load_study(path) -> Study:
    with open(path, encoding="utf-8") as fh:
        header = json.loads(fh.readline())["study"]
        study = Study(
            sampler_name=header["sampler"],
            pruner_name=header["pruner"],
            seed=header["seed"],
            space=_space_from_json(header["space"]),
            direction=header["direction"],
        )
        for line in fh:
            d = json.loads(line)
            study.trials.append(Trial(
                trial_id=d["trial"],
                params=d["params"],
                intermediate_scores=list(d["intermediate"]),
                state=d["state"],
                final_score=d["score"],
            ))
    return study
