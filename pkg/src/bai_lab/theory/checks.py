"""Named verification suites behind ``bai-lab verify``.

Every check returns ``{name, status, lhs, rhs, tolerance, seeds}`` where
``status`` is ``pass``, ``fail`` or ``vacuous``; all randomness derives from
the suite seed, so a report is reproducible byte for byte.
"""

import math

import numpy as np

from ..complexity import (
    complexity_h2,
    complexity_h_incl,
    family_complexities,
    kl_flip,
)
from ..instances import family_instance, make_alpha_family, make_uniform_random_instance
from ..rng import derive_stream_seed
from ..strategies import KINDS, StrategyConfig, default_exploration, run_batch
from .verify import pigeonhole_indices, verify_change_of_measure, verify_markov_step, verify_xi

WITNESS_KS = (3, 4, 8, 16, 32, 64, 128, 256, 512, 1024)


def _check(name, ok, lhs, rhs, tolerance=0.0, seeds=None, vacuous=False):
    status = "vacuous" if vacuous else ("pass" if ok else "fail")
    return {"name": name, "status": status, "lhs": lhs, "rhs": rhs,
            "tolerance": tolerance, "seeds": seeds or []}


def strategy_for(kind, instance, T):
    if kind == "ucb_e":
        return StrategyConfig(kind, default_exploration(T, instance.K, complexity_h_incl(instance)))
    return StrategyConfig(kind)


def kl_suite(seed):
    grid = 0.25 + 1e-4 * np.arange(2500)
    excess = max(kl_flip(p) - 10.0 * (0.5 - p) ** 2 for p in grid)
    return [_check("kl_flip <= 10 d^2 on [0.25, 0.4999]", excess <= 0.0, excess, 0.0)]


def chain_suite(seed, n=1000):
    sub = derive_stream_seed(seed, 1)
    rng = np.random.default_rng(sub)
    worst_low = worst_high = -math.inf
    for _ in range(n):
        K = int(rng.integers(2, 51))
        inst = make_uniform_random_instance(K, (0.01, 0.5), rng)
        h2, hi = complexity_h2(inst), complexity_h_incl(inst)
        worst_low = max(worst_low, h2 / hi)
        worst_high = max(worst_high, hi / (math.log(2 * K) * h2))
    return [
        _check("h2 <= h_incl", worst_low <= 1.0, worst_low, 1.0, seeds=[sub]),
        _check("h_incl <= ln(2K) h2", worst_high <= 1.0, worst_high, 1.0, seeds=[sub]),
    ]


def witness_suite(seed, ks=WITNESS_KS):
    out = []
    for K in ks:
        H, h_star = family_complexities(make_alpha_family(K, 1.0))
        d = make_alpha_family(K, 1.0).d
        ratio = max(d[i - 1] ** 2 * H[i - 1] / (2 * i) for i in range(2, K + 1))
        out.append(_check(f"K={K}: H(1) <= 11K^2", H[0] <= 11 * K * K, H[0], 11.0 * K * K, 1e-9))
        out.append(_check(f"K={K}: d_i^2 H(i) <= 2i", ratio <= 1.0 + 1e-9, ratio, 1.0, 1e-9))
        out.append(_check(f"K={K}: h* >= 0.3 ln K", h_star >= 0.3 * math.log(K) * (1 - 1e-9),
                          h_star, 0.3 * math.log(K), 1e-9))
    return out


def com_suite(seed, tol=1e-12):
    cases = [(2, T, "uniform") for T in range(1, 9)] + [(3, 6, "successive_rejects")]
    out = []
    for K, T, kind in cases:
        family = make_alpha_family(K, 1.0)
        for i in range(1, K + 1):
            lhs, rhs, diff = verify_change_of_measure(family, i, StrategyConfig(kind), T)
            rel = diff / lhs if lhs > 0 else diff
            out.append(_check(f"K={K} T={T} {kind} i={i}", rel <= tol, lhs, rhs, tol,
                              vacuous=lhs == 0.0))
    return out


def xi_suite(seed, K=5, T=200, R=10_000):
    family = make_alpha_family(K, 1.0)
    bound = 5.0 / 6.0 - 3.0 * math.sqrt(0.14 / R)
    out = []
    for i in range(1, K + 1):
        sub = derive_stream_seed(seed, 100 + i)
        freq = verify_xi(family, i, T, R, sub)
        out.append(_check(f"P_{i}(xi) >= 5/6 (K={K}, T={T}, R={R})", freq >= bound, freq, bound,
                          3.0 * math.sqrt(0.14 / R), [sub]))
    return out


def markov_suite(seed, K=5, T=500, R=20_000):
    family = make_alpha_family(K, 1.0)
    base = family_instance(family, 1)
    out = []
    for j, kind in enumerate(KINDS):
        sub = derive_stream_seed(seed, 200 + j)
        check = verify_markov_step(strategy_for(kind, base, T), family, T, R, sub)
        bound = 1.0 / 6.0 + 3.0 * check.standard_error()
        worst = float(check.frequencies.max())
        out.append(_check(f"{kind}: P_1(T_k >= 6 t_k) <= 1/6", worst <= bound, worst, bound,
                          3.0 * check.standard_error(), [sub]))
    return out


def pigeonhole_suite(seed, K=8, T=400, n_random=10_000, R=2000):
    family = make_alpha_family(K, 1.0)
    sub = derive_stream_seed(seed, 300)
    rng = np.random.default_rng(sub)
    misses = 0
    for alloc in rng.dirichlet(np.ones(K), size=n_random) * T:
        first, second = pigeonhole_indices(alloc, family)
        misses += (first is None) + (second is None)
    out = [_check(f"random allocations (n={n_random})", misses == 0, misses, 0, seeds=[sub])]
    base = family_instance(family, 1)
    for j, kind in enumerate(KINDS):
        s = derive_stream_seed(seed, 310 + j)
        batch = run_batch(strategy_for(kind, base, T), base, T, R, s)
        first, second = pigeonhole_indices(batch.pulls.mean(axis=0), family)
        miss = (first is None) + (second is None)
        out.append(_check(f"{kind} mean allocation", miss == 0, miss, 0, seeds=[s]))
    return out


SUITES = {
    "kl": kl_suite,
    "chain": chain_suite,
    "witness": witness_suite,
    "com": com_suite,
    "xi": xi_suite,
    "markov": markov_suite,
    "pigeonhole": pigeonhole_suite,
}


def run_suites(names, seed):
    if "all" in names:
        names = list(SUITES)
    report = []
    for name in names:
        for check in SUITES[name](seed):
            report.append(dict(check, suite=name))
    return report
