"""Problem-class constructors: flipped families, the alpha family, random instances."""

from dataclasses import dataclass

import numpy as np

from .core import BanditInstance, ContractError


@dataclass(frozen=True)
class FlippedFamily:
    """Base probabilities ``p = (1/2, p_2, ..., p_K)`` with ``p_k`` in [1/4, 1/2).

    Problem i keeps every arm at ``p_k`` except arm i, which is flipped to
    ``1 - p_i`` and becomes the unique best arm.
    """

    p: tuple
    label: str = "explicit"

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        object.__setattr__(self, "p", p)
        if len(p) < 2:
            raise ContractError("a flipped family needs K >= 2")
        if p[0] != 0.5:
            raise ContractError("p_1 must be exactly 1/2")
        for k, pk in enumerate(p[1:], start=2):
            if not (0.25 <= pk < 0.5):
                raise ContractError(f"p_{k} = {pk!r} outside [1/4, 1/2)")

    @property
    def K(self):
        return len(self.p)

    @property
    def d(self):
        return tuple(0.5 - pk for pk in self.p)

    def to_dict(self):
        return {"type": "explicit", "p_tail": list(self.p[1:])}


def make_flipped_family(p_tail, label="explicit"):
    return FlippedFamily((0.5, *[float(x) for x in p_tail]), label=label)


def family_instance(family, i):
    """Problem i of the family (1-based)."""
    if not isinstance(i, (int, np.integer)) or not (1 <= i <= family.K):
        raise ContractError(f"problem index {i!r} outside 1..{family.K}")
    means = list(family.p)
    means[i - 1] = 1.0 - family.p[i - 1]
    return BanditInstance(means)


def make_alpha_family(K, alpha):
    """Family with ``d_k = (k / K) ** alpha / 4`` for k >= 2."""
    if K < 2:
        raise ContractError("K must be at least 2")
    if alpha < 0:
        raise ContractError("alpha must be non-negative")
    tail = [0.5 - 0.25 * (k / K) ** alpha for k in range(2, K + 1)]
    return make_flipped_family(tail, label=f"alpha={alpha:g},K={K}")


def family_from_spec(spec):
    """Build a family from ``{"type": "alpha", ...}`` or ``{"type": "explicit", ...}``."""
    kind = spec.get("type")
    if kind == "alpha":
        return make_alpha_family(int(spec["K"]), float(spec["alpha"]))
    if kind == "explicit":
        return make_flipped_family(spec["p_tail"], label=spec.get("id", "explicit"))
    raise ContractError(f"unknown family type {kind!r}")


def make_uniform_random_instance(K, gap_range, rng):
    """Best arm at 1/2 (position random), the others 1/2 minus a gap drawn from ``gap_range``.

    ``rng`` is a ``numpy.random.Generator`` or an integer seed.
    """
    lo, hi = gap_range
    if K < 2:
        raise ContractError("K must be at least 2")
    if not (0.0 < lo <= hi <= 0.5):
        raise ContractError("gap_range must lie inside (0, 1/2]")
    rng = np.random.default_rng(rng)
    gaps = rng.uniform(lo, hi, size=K - 1)
    means = [0.5 - g for g in gaps]
    best = int(rng.integers(K))
    means.insert(best, 0.5)
    return BanditInstance(means)
