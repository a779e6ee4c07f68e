"""Numerical checks of the constructive steps behind the lower bounds."""

import math
from dataclasses import dataclass

import numpy as np

from .._accel import resolve_backend, set_workers
from ..complexity import family_complexities, kl_flip
from ..core import ContractError
from ..instances import family_instance
from ..strategies import run_batch, run_on_table
from ..strategies._kernels import MISSING
from . import _xi_kernels

MAX_ENUM_T = 16
MAX_ENUM_K = 4


def log_likelihood_ratio(p):
    """``log(p / (1 - p))`` for a 1 reward; a 0 reward gives the negative."""
    return math.log(p / (1.0 - p))


def deviation_radius(T, K):
    """``2 sqrt(log(6TK) / t)`` for t = 1..T."""
    t = np.arange(1, T + 1, dtype=np.float64)
    return 2.0 * np.sqrt(math.log(6.0 * T * K) / t)


@dataclass
class KlTrace:
    arm: int
    values: np.ndarray
    reference: float
    radius: np.ndarray

    def inside_band(self):
        return bool(np.all(np.abs(self.values) - self.reference <= self.radius))


def empirical_kl_trace(rewards, p, n_arms=1, horizon=None, arm=None):
    """Running mean of ``log(dnu/dnu')(X_s)`` for an arm with base probability ``p``.

    ``n_arms`` and ``horizon`` set the deviation radius; the horizon defaults
    to the length of ``rewards``.
    """
    if not 0.25 <= p < 0.5:
        raise ContractError(f"p must lie in [1/4, 1/2); got {p!r}")
    x = np.asarray(rewards)
    if x.ndim != 1 or x.size == 0:
        raise ContractError("rewards must be a non-empty 1-D sequence")
    if not np.all((x == 0) | (x == 1)):
        raise ContractError("rewards must be binary")
    step = math.log((1.0 - p) / p)
    incr = np.where(x == 1, -step, step)
    values = np.cumsum(incr) / np.arange(1, x.size + 1)
    T = horizon or x.size
    return KlTrace(arm, values, kl_flip(p), deviation_radius(T, n_arms)[: x.size])


def _xi_inputs(family, i):
    instance = family_instance(family, i)
    means = instance.as_array()
    # arm 1 sits at p = 1/2: zero log-likelihood ratio, never leaves the band
    llr = np.array([0.0] + [math.log((1.0 - p) / p) for p in family.p[1:]])
    kl = np.array([0.0] + [kl_flip(p) for p in family.p[1:]])
    return means, llr, kl


def xi_hits(family, i, T, R, master_seed, start=0, backend=None, workers=None):
    """Boolean per replication: did the concentration event hold on problem i?"""
    if T < 1 or R < 1:
        raise ContractError("need T >= 1 and R >= 1")
    means, llr, kl = _xi_inputs(family, i)
    radius = deviation_radius(T, family.K)
    if resolve_backend(backend) == "numba":
        set_workers(workers)
        hits = np.empty(R, dtype=np.bool_)
        _xi_kernels.xi_hits_nb(means, llr, kl, radius, np.uint64(master_seed),
                               np.int64(start), R, hits)
        return hits
    return _xi_kernels.xi_hits_np(means, llr, kl, radius, master_seed, start, R)


def verify_xi(family, i, T, R, master_seed, backend=None, workers=None):
    """Fraction of R reward tables drawn from problem i on which the event holds."""
    return float(np.mean(xi_hits(family, i, T, R, master_seed, backend=backend, workers=workers)))


def enumerate_paths(config, K, T, backend=None):
    """Yield ``(table, recommended, pulls)`` for every reachable reward path.

    ``table`` holds the revealed cells; unrevealed cells stay ``MISSING``.
    Recommendations are 1-based.
    """
    if T > MAX_ENUM_T or K > MAX_ENUM_K:
        raise ContractError(
            f"enumeration budget exceeded: need K <= {MAX_ENUM_K} and T <= {MAX_ENUM_T}")
    stack = [np.full((K, T), MISSING, dtype=np.uint8)]
    while stack:
        table = stack.pop()
        rec, pulls, _, (k, s) = run_on_table(config, K, T, table, backend=backend)
        if rec < 0:
            for bit in (1, 0):
                child = table.copy()
                child[k, s] = bit
                stack.append(child)
            continue
        yield table, rec + 1, pulls


def _path_probability(table, means):
    prob = 1.0
    for k, mu in enumerate(means):
        row = table[k]
        ones = int(np.count_nonzero(row == 1))
        zeros = int(np.count_nonzero(row == 0))
        prob *= mu**ones * (1.0 - mu) ** zeros
    return prob


def verify_change_of_measure(family, i, config, T, event=None, backend=None):
    """Exact ``(lhs, rhs, |lhs - rhs|)`` for the likelihood-ratio identity.

    ``lhs = P_i(E)``; ``rhs = E_1[1{E} exp(-T_i KLhat_{i,T_i})]``, both summed
    over every reachable reward path. ``event(recommended, pulls)`` defaults
    to ``recommended == 1``.
    """
    K = family.K
    if not 1 <= i <= K:
        raise ContractError(f"problem index {i!r} outside 1..{K}")
    event = event or (lambda rec, pulls: rec == 1)
    base = family_instance(family, 1).means
    target = family_instance(family, i).means
    p_i = family.p[i - 1]
    step = math.log((1.0 - p_i) / p_i)
    lhs_terms, rhs_terms = [], []
    for table, rec, pulls in enumerate_paths(config, K, T, backend=backend):
        if not event(rec, pulls):
            continue
        lhs_terms.append(_path_probability(table, target))
        row = table[i - 1]
        ones = int(np.count_nonzero(row == 1))
        zeros = int(np.count_nonzero(row == 0))
        # T_i * KLhat_{i,T_i}: each 1 contributes -step, each 0 contributes +step
        log_weight = -(zeros - ones) * step
        rhs_terms.append(_path_probability(table, base) * math.exp(log_weight))
    lhs = math.fsum(lhs_terms)
    rhs = math.fsum(rhs_terms)
    return lhs, rhs, abs(lhs - rhs)


@dataclass
class MarkovCheck:
    t_hat: np.ndarray
    frequencies: np.ndarray
    n_estimate: int
    n_measure: int

    def standard_error(self, bound=1.0 / 6.0):
        return math.sqrt(bound * (1.0 - bound) / self.n_measure)


def verify_markov_step(config, family, T, R, master_seed, swap=False, backend=None,
                       workers=None):
    """Frequencies of ``T_k >= 6 t_k`` on problem 1, with ``t_k`` estimated out of sample.

    Replications ``[0, R/2)`` estimate ``t_k = E_1 T_k``; ``[R/2, R)`` measure the
    frequencies. ``swap=True`` exchanges the roles of the halves.
    """
    if R < 2000:
        raise ContractError("need R >= 2000 replications")
    half = R // 2
    instance = family_instance(family, 1)
    batch = run_batch(config, instance, T, 2 * half, master_seed, backend=backend,
                      workers=workers)
    first, second = batch.pulls[:half], batch.pulls[half:]
    if swap:
        first, second = second, first
    t_hat = first.mean(axis=0)
    freq = (second >= 6.0 * t_hat).mean(axis=0)
    return MarkovCheck(t_hat, freq, half, half)


def pigeonhole_indices(allocation, family, rtol=1e-12):
    """First arms ``i >= 2`` meeting each allocation shortfall, or None.

    ``allocation`` lists expected pulls of arms 1..K. Returns ``(i_first, i_second)``
    with ``t_i <= T / (H(1) d_i^2)`` and ``t_i <= T / (h* d_i^2 H(i))`` respectively.
    """
    t = np.asarray(allocation, dtype=np.float64)
    if t.shape != (family.K,):
        raise ContractError("allocation must have one entry per arm")
    if np.any(t < 0):
        raise ContractError("allocation must be non-negative")
    T = float(t.sum())
    H, h_star = family_complexities(family)
    d = family.d
    slack = 1.0 + rtol
    first = second = None
    for i in range(2, family.K + 1):
        di2 = d[i - 1] ** 2
        if first is None and t[i - 1] <= slack * T / (H[0] * di2):
            first = i
        if second is None and t[i - 1] <= slack * T / (h_star * di2 * H[i - 1]):
            second = i
    return first, second
