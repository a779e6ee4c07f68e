"""Deterministic pull schedules and strategy configuration."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..core import BudgetError, ContractError

KINDS = ("uniform", "successive_rejects", "successive_halving", "ucb_e")
KIND_CODES = {kind: code for code, kind in enumerate(KINDS)}


@dataclass(frozen=True)
class StrategyConfig:
    kind: str
    exploration_a: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KIND_CODES:
            raise ContractError(f"unknown strategy kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "ucb_e":
            if self.exploration_a is None or not self.exploration_a > 0:
                raise ContractError("ucb_e needs a positive exploration parameter a")
        elif self.exploration_a is not None:
            raise ContractError(f"{self.kind} takes no exploration parameter")

    @property
    def code(self):
        return KIND_CODES[self.kind]

    def to_dict(self):
        out = {"kind": self.kind}
        if self.exploration_a is not None:
            out["a"] = self.exploration_a
        return out

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - {"kind", "a"}
        if unknown:
            raise ContractError(f"unknown strategy keys {sorted(unknown)}")
        a = data.get("a")
        return cls(data["kind"], None if a is None else float(a))


def default_exploration(T, K, h_incl):
    """UCB-E parameter ``(25/36) (T - K) / H`` for a known complexity bound."""
    return 25.0 / 36.0 * (T - K) / h_incl


def check_budget(K, T, kind=None):
    """Uniform allocation runs on any T >= 1; the other strategies need T >= K."""
    if K < 2:
        raise ContractError("strategies need K >= 2 arms")
    floor = 1 if kind == "uniform" else K
    if T < floor:
        raise BudgetError(f"budget T={T} is below the minimum {floor} for K={K}")


def log_bar(K):
    return Fraction(1, 2) + sum(Fraction(1, i) for i in range(2, K + 1))


def sr_allocation(K, T):
    """Cumulative per-arm pulls ``n_1 <= ... <= n_{K-1}`` at the end of each phase.

    Evaluated in exact rational arithmetic; every phase keeps at least one pull.
    """
    check_budget(K, T)
    lb = log_bar(K)
    return [max(1, math.ceil(Fraction(T - K) / (lb * (K + 1 - j)))) for j in range(1, K)]


def sr_total(K, schedule):
    return sum(schedule) + schedule[-1]


def sh_rounds(K, T):
    """``[(survivors, pulls_per_arm), ...]`` for Successive Halving.

    ``ceil(log2 K)`` rounds of ``floor(T / (L * survivors))`` pulls (at least 1),
    keeping the better half (rounded up). A round the remaining budget cannot
    cover is dropped, which ends the schedule early.
    """
    check_budget(K, T)
    L = max(1, math.ceil(math.log2(K)))
    rounds = []
    remaining = T
    survivors = K
    for _ in range(L):
        n = max(1, T // (L * survivors))
        n = min(n, remaining // survivors)
        if n == 0:
            break
        rounds.append((survivors, n))
        remaining -= n * survivors
        survivors = (survivors + 1) // 2
    return rounds


def uniform_pulls(K, T):
    check_budget(K, T, "uniform")
    base, extra = divmod(T, K)
    return [base + (1 if k < extra else 0) for k in range(K)]
