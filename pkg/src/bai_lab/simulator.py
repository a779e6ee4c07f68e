"""Monte Carlo estimates of the misidentification probability."""

import math
from dataclasses import dataclass, field
from statistics import NormalDist

import numpy as np

from .core import ContractError, best_arm_set
from .instances import family_instance
from .strategies import run_batch


def wilson_interval(errors, R, level=0.95):
    """Wilson score interval for ``errors`` successes out of ``R``, clamped to [0, 1]."""
    if R < 1 or not (0 <= errors <= R):
        raise ContractError(f"need 0 <= errors <= R and R >= 1; got errors={errors}, R={R}")
    if not 0.0 < level < 1.0:
        raise ContractError(f"level must lie in (0, 1); got {level!r}")
    z = NormalDist().inv_cdf(0.5 + level / 2.0)
    p = errors / R
    z2 = z * z
    denom = 1.0 + z2 / R
    centre = (p + z2 / (2.0 * R)) / denom
    half = z * math.sqrt(p * (1.0 - p) / R + z2 / (4.0 * R * R)) / denom
    low = max(0.0, centre - half)
    high = min(1.0, centre + half)
    if errors == 0:
        low = 0.0
    if errors == R:
        high = 1.0
    return low, high


@dataclass
class ErrorEstimate:
    replications: int
    errors: int
    point: float
    ci_low: float
    ci_high: float
    level: float

    @classmethod
    def from_counts(cls, errors, R, level=0.95):
        low, high = wilson_interval(errors, R, level)
        return cls(R, int(errors), errors / R, min(low, errors / R), max(high, errors / R), level)

    @property
    def below_resolution(self):
        """True when no error was observed, so only ``point < 1/R`` is known."""
        return self.errors == 0

    @property
    def log_point(self):
        return math.log(self.point) if self.errors else -math.inf

    @property
    def log_ci_high(self):
        return math.log(self.ci_high) if self.ci_high > 0 else -math.inf

    def to_dict(self):
        return {
            "replications": self.replications,
            "errors": self.errors,
            "point": self.point,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "level": self.level,
            "log_point": None if self.below_resolution else self.log_point,
            "below_resolution": self.below_resolution,
        }


def count_errors(batch, instance):
    optimal = np.array(sorted(k - 1 for k in best_arm_set(instance)), dtype=np.int64)
    return int(np.count_nonzero(~np.isin(batch.recommended, optimal)))


def estimate_error(config, instance, T, R, master_seed, level=0.95, start=0,
                   backend=None, workers=None):
    """Estimate P(recommended arm not optimal) from R replications.

    Replication r uses stream ``derive_stream_seed(master_seed, start + r)``.
    """
    if R < 1:
        raise ContractError("need at least one replication")
    batch = run_batch(config, instance, T, R, master_seed, start=start,
                      backend=backend, workers=workers)
    return ErrorEstimate.from_counts(count_errors(batch, instance), R, level)


@dataclass
class SweepRow:
    family_id: str
    strategy: str
    K: int
    T: int
    worst_i: int
    worst_error: ErrorEstimate
    per_i: list = field(default_factory=list)


def sweep_family(config, family, T_grid, R, master_seed, level=0.95,
                 backend=None, workers=None, family_id=None):
    """Per-problem error estimates over ``T_grid``; one row per T.

    Cell ``(j, i)`` uses replication indices ``[(j K + i - 1) R, (j K + i) R)``,
    so no two cells share a stream.
    """
    T_grid = [int(T) for T in T_grid]
    if not T_grid:
        raise ContractError("T_grid must be non-empty")
    family_id = family_id or family.label
    K = family.K
    instances = [family_instance(family, i) for i in range(1, K + 1)]
    rows = []
    for j, T in enumerate(T_grid):
        per_i = []
        for i, instance in enumerate(instances, start=1):
            cell = j * K + (i - 1)
            per_i.append(estimate_error(config, instance, T, R, master_seed, level=level,
                                        start=cell * R, backend=backend, workers=workers))
        worst = max(range(K), key=lambda idx: (per_i[idx].point, -idx))
        rows.append(SweepRow(family_id, config.kind, K, T, worst + 1, per_i[worst], per_i))
    return rows
