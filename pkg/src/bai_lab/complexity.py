"""Complexity functionals and Bernoulli KL quantities. Natural logs throughout."""

import json
import math
from dataclasses import asdict, dataclass

from .core import ContractError, best_arm_set


class UndefinedComplexityError(ContractError):
    """Every arm is optimal, so no gap is available."""


class AmbiguousOptimumError(ContractError):
    """The inclusive complexity needs a unique best arm."""


def kl_bernoulli(p, q):
    """KL(Ber(p) || Ber(q)) for p, q strictly inside (0, 1)."""
    if not (0.0 < p < 1.0 and 0.0 < q < 1.0):
        raise ContractError(f"kl_bernoulli needs p, q in (0, 1); got p={p!r}, q={q!r}")
    return p * math.log(p / q) + (1.0 - p) * math.log((1.0 - p) / (1.0 - q))


def kl_flip(p):
    """KL between Ber(p) and its mirror Ber(1 - p); symmetric in the pair."""
    if not 0.0 < p < 1.0:
        raise ContractError(f"kl_flip needs p in (0, 1); got {p!r}")
    return (1.0 - 2.0 * p) * math.log((1.0 - p) / p)


def _suboptimal_gaps(instance):
    optimal = best_arm_set(instance)
    top = instance.best_mean
    gaps = [top - m for k, m in enumerate(instance.means) if k + 1 not in optimal]
    if not gaps:
        raise UndefinedComplexityError("all arms are optimal; complexity undefined")
    return optimal, gaps


def complexity_h(instance):
    _, gaps = _suboptimal_gaps(instance)
    return sum(g**-2 for g in gaps)


def complexity_h2(instance):
    optimal, gaps = _suboptimal_gaps(instance)
    # sorted ascending gaps == means in decreasing order after the optimal block
    ordered = sorted(gaps)
    start = len(optimal) + 1
    return max(k * g**-2 for k, g in enumerate(ordered, start=start))


def complexity_h_incl(instance):
    """Sum of inverse squared gaps with the best arm charged the smallest gap."""
    optimal, gaps = _suboptimal_gaps(instance)
    if len(optimal) > 1:
        raise AmbiguousOptimumError("inclusive complexity requires a unique best arm")
    return min(gaps) ** -2 + sum(g**-2 for g in gaps)


@dataclass
class ComplexityReport:
    h_excl: float
    h2: float
    h_incl: float
    gaps: list

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict())


def complexity_report(instance):
    try:
        h_incl = complexity_h_incl(instance)
    except AmbiguousOptimumError:
        h_incl = None
    return ComplexityReport(
        h_excl=complexity_h(instance),
        h2=complexity_h2(instance),
        h_incl=h_incl,
        gaps=instance.gaps(),
    )


def family_complexities(family):
    """Return ``(H, h_star)`` where ``H[i - 1]`` is the complexity of problem i.

    Problem i's gaps are ``d_i + d_k``; ``h_star`` sums ``1 / (d_k^2 H(k))``
    over k = 2..K.
    """
    d = family.d
    K = len(d)
    H = []
    for i in range(K):
        H.append(sum((d[i] + d[k]) ** -2 for k in range(K) if k != i))
    h_star = sum(1.0 / (d[k] ** 2 * H[k]) for k in range(1, K))
    if H[0] != max(H):
        # d_1 = 0 makes every gap of problem 1 the smallest possible
        raise AssertionError("H(1) is not the largest family complexity")
    return H, h_star
