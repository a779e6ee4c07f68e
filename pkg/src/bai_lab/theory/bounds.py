"""Closed-form lower and upper bounds, evaluated in the natural-log domain."""

import math
from dataclasses import asdict, dataclass

from ..complexity import family_complexities
from ..core import ContractError
from ..instances import make_alpha_family

LOG_SIXTH = math.log(1.0 / 6.0)


@dataclass(frozen=True)
class BoundValue:
    name: str
    log_value: float
    valid: bool
    side_condition: str

    @property
    def value(self):
        return math.exp(self.log_value)

    def to_dict(self):
        return asdict(self)


def _positive(**kwargs):
    for name, value in kwargs.items():
        if value is None or not value > 0:
            raise ContractError(f"{name} must be positive; got {value!r}")


def deviation_term(T, K):
    """``2 sqrt(T log(6 T K))``, the concentration price in the lower bounds."""
    return 2.0 * math.sqrt(T * math.log(6.0 * T * K))


def known_a_condition(T, K, a):
    """Horizon requirement ``T >= a^2 * 4 log(6TK) / 60^2``, checked at the given T."""
    return T >= a * a * 4.0 * math.log(6.0 * T * K) / 3600.0


def eval_lower_bounds(T, K, a, H_of_G, H1, H_i, h_star):
    """The four minimax lower bounds as :class:`BoundValue` s.

    ``lb_thm1_a`` and ``lb_thm1_adapt`` bound the worst case over problems
    with complexity at most ``a``; ``lb_thm2_first`` and ``lb_thm2_second``
    are the flipped-family bounds with ``H1 = max_i H(i)`` and the problem-i
    quantities ``H_i`` and ``h_star``.
    """
    _positive(T=T, a=a, H_of_G=H_of_G, H1=H1, H_i=H_i, h_star=h_star)
    if K < 2:
        raise ContractError("K must be at least 2")
    dev = deviation_term(T, K)
    horizon_ok = known_a_condition(T, K, a)
    return [
        BoundValue("lb_thm1_a", LOG_SIXTH - 120.0 * T / a, horizon_ok,
                   "T >= a^2 * 4 ln(6TK) / 3600"),
        BoundValue("lb_thm1_adapt", LOG_SIXTH - 400.0 * T / (math.log(K) * H_of_G),
                   horizon_ok and a >= 11.0 * K * K,
                   "T >= a^2 * 4 ln(6TK) / 3600 and a >= 11 K^2"),
        BoundValue("lb_thm2_first", LOG_SIXTH - 60.0 * T / H1 - dev, True, "none"),
        BoundValue("lb_thm2_second", LOG_SIXTH - 60.0 * T / (H_i * h_star) - dev, True, "none"),
    ]


def eval_upper_bounds(T, K, a=None, H2=None):
    """Upper bounds on the error of the cited strategies, clamped at log 1 = 0.

    ``ub_known_a`` needs the complexity bound ``a``; ``ub_sr`` needs ``H2``.
    """
    if K < 2:
        raise ContractError("K must be at least 2")
    if not T > K:
        raise ContractError(f"upper bounds need T > K; got T={T}, K={K}")
    out = []
    if a is not None:
        _positive(a=a)
        raw = math.log(2.0 * T * K) - (T - K) / (18.0 * a)
        out.append(BoundValue("ub_known_a", min(0.0, raw), True, "a >= H"))
    if H2 is not None:
        _positive(H2=H2)
        raw = math.log(K * (K - 1) / 2.0) - (T - K) / (math.log(2.0 * K) * H2)
        out.append(BoundValue("ub_sr", min(0.0, raw), True, "none"))
    return out


def regime_prediction(K, alpha):
    """Order of the hardest alpha-family complexity, without constants."""
    if alpha < 0.5:
        return K / (1.0 - 2.0 * alpha)
    if alpha == 0.5:
        return K * math.log(K)
    return K ** (2.0 * alpha) / (2.0 * alpha - 1.0)


@dataclass(frozen=True)
class RegimeCheck:
    K: int
    alpha: float
    h1: float
    prediction: float

    @property
    def ratio(self):
        return self.h1 / self.prediction


def alpha_regime(K, alpha):
    H, _ = family_complexities(make_alpha_family(K, alpha))
    return RegimeCheck(K, alpha, H[0], regime_prediction(K, alpha))
