"""Bernoulli bandit instances, reward sampling and run results.

Arms are labelled 1..K at every public surface; arrays are 0-based inside.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .rng import RngStream


class ContractError(ValueError):
    """A precondition of an operation was violated."""


class BudgetError(ContractError):
    """The budget T is too small for the requested strategy."""


@dataclass(frozen=True)
class BanditInstance:
    """Immutable vector of Bernoulli means."""

    means: tuple

    def __init__(self, means):
        means = tuple(float(m) for m in means)
        if len(means) < 1:
            raise ContractError("an instance needs at least one arm")
        for m in means:
            if not (0.0 <= m <= 1.0):
                raise ContractError(f"mean {m!r} outside [0, 1]")
        object.__setattr__(self, "means", means)

    @property
    def K(self):
        return len(self.means)

    @property
    def best_mean(self):
        return max(self.means)

    def gaps(self):
        top = self.best_mean
        return [top - m for m in self.means]

    def as_array(self):
        return np.array(self.means, dtype=np.float64)

    def to_json(self):
        return json.dumps(list(self.means))

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        if not isinstance(data, list):
            raise ContractError("instance literal must be a JSON array of means")
        return cls(data)


@dataclass
class RunResult:
    recommended: int
    pulls: list
    empirical_means: list = field(default_factory=list)

    @property
    def total_pulls(self):
        return sum(self.pulls)


def best_arm_set(instance):
    """1-based labels of the arms attaining the largest mean (exact equality)."""
    top = instance.best_mean
    return {k + 1 for k, m in enumerate(instance.means) if m == top}


def check_arm(instance, k):
    if not isinstance(k, (int, np.integer)) or not (1 <= k <= instance.K):
        raise ContractError(f"arm index {k!r} outside 1..{instance.K}")


def sample_arm(instance, k, rng: RngStream):
    """Draw one reward from arm ``k`` (1-based), advancing that arm's counter."""
    check_arm(instance, k)
    return 1 if rng.next_uniform(k - 1) < instance.means[k - 1] else 0
