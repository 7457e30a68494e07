"""Search space declarations for the sequential optimizer."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FloatParam:
    low: float
    high: float
    log: bool = False
    default: float | None = None

    def __post_init__(self):
        if not self.low < self.high:
            raise ValueError(f"low must be below high, got [{self.low}, {self.high}]")
        if self.log and self.low <= 0:
            raise ValueError("log-uniform domains need a positive lower bound")

    def sample(self, rng: np.random.Generator) -> float:
        if self.log:
            return float(np.exp(rng.uniform(np.log(self.low), np.log(self.high))))
        return float(rng.uniform(self.low, self.high))

    def clip(self, value: float) -> float:
        return float(min(max(value, self.low), self.high))

    def contains(self, value) -> bool:
        return self.low <= value <= self.high


@dataclass(frozen=True)
class IntParam:
    low: int
    high: int
    log: bool = False
    default: int | None = None

    def __post_init__(self):
        if not self.low < self.high:
            raise ValueError(f"low must be below high, got [{self.low}, {self.high}]")
        if self.log and self.low <= 0:
            raise ValueError("log-uniform domains need a positive lower bound")

    def sample(self, rng: np.random.Generator) -> int:
        if self.log:
            return self.clip(round(np.exp(rng.uniform(np.log(self.low), np.log(self.high)))))
        return int(rng.integers(self.low, self.high + 1))

    def clip(self, value) -> int:
        return int(min(max(round(value), self.low), self.high))

    def contains(self, value) -> bool:
        return self.low <= value <= self.high and float(value) == int(value)


@dataclass(frozen=True)
class CatParam:
    choices: tuple
    default: object = None

    def __post_init__(self):
        if len(self.choices) < 1:
            raise ValueError("categorical domain needs at least one choice")

    def sample(self, rng: np.random.Generator):
        return self.choices[int(rng.integers(0, len(self.choices)))]

    def contains(self, value) -> bool:
        return value in self.choices


class SearchSpace:
    """Ordered mapping of parameter name to domain."""

    def __init__(self, params: dict):
        self.params = dict(params)

    def __iter__(self):
        return iter(self.params.items())

    def __len__(self):
        return len(self.params)

    def names(self) -> tuple[str, ...]:
        return tuple(self.params)

    def sample_random(self, rng: np.random.Generator) -> dict:
        return {name: dom.sample(rng) for name, dom in self.params.items()}

    def contains(self, params: dict) -> bool:
        return all(name in params and dom.contains(params[name]) for name, dom in self.params.items())

    def defaults(self) -> dict:
        return {name: dom.default for name, dom in self.params.items() if dom.default is not None}
