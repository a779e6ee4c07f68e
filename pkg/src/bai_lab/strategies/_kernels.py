"""Numba kernels: one sequential strategy run, and a parallel batch over replications.

A run reads rewards either from the counter-based stream (``table`` has zero
columns) or from a precomputed uint8 table. Table cells equal to ``MISSING``
abort the run and report the requested cell in ``miss``; the exhaustive
enumerator uses this to walk only reachable reward paths.
"""

import math

import numpy as np

from .._accel import njit, prange
from ..rng import derive_nb, unit_nb

MISSING = 255

UNIFORM, SUCCESSIVE_REJECTS, SUCCESSIVE_HALVING, UCB_E = 0, 1, 2, 3


@njit
def _reward(k, s, means, arm_seeds, table, miss):
    if table.shape[1] > 0:
        v = table[k, s]
        if v == MISSING:
            miss[0] = k
            miss[1] = s
            return -1
        return np.int64(v)
    u = unit_nb(derive_nb(arm_seeds[k], np.uint64(s)))
    return np.int64(1) if u < means[k] else np.int64(0)


@njit
def _argmax_mean(pulls, sums, active):
    best = -1
    best_mean = 0.0
    for k in range(pulls.shape[0]):
        if not active[k]:
            continue
        m = sums[k] / pulls[k] if pulls[k] > 0 else 0.0
        if best == -1 or m > best_mean:
            best = k
            best_mean = m
    return best


@njit
def _run_uniform(K, T, means, arm_seeds, table, pulls, sums, miss):
    for t in range(T):
        k = t % K
        r = _reward(k, pulls[k], means, arm_seeds, table, miss)
        if r < 0:
            return -1
        pulls[k] += 1
        sums[k] += r
    return _argmax_mean(pulls, sums, np.ones(K, dtype=np.bool_))


@njit
def _run_sr(K, schedule, means, arm_seeds, table, pulls, sums, miss):
    active = np.ones(K, dtype=np.bool_)
    for j in range(K - 1):
        n = schedule[j]
        for k in range(K):
            if not active[k]:
                continue
            while pulls[k] < n:
                r = _reward(k, pulls[k], means, arm_seeds, table, miss)
                if r < 0:
                    return -1
                pulls[k] += 1
                sums[k] += r
        # ties reject the highest label: lower labels win every comparison
        worst = -1
        worst_mean = 0.0
        for k in range(K):
            if not active[k]:
                continue
            m = sums[k] / pulls[k]
            if worst == -1 or m <= worst_mean:
                worst = k
                worst_mean = m
        active[worst] = False
    for k in range(K):
        if active[k]:
            return k
    return -1


@njit
def _run_sh(K, schedule, means, arm_seeds, table, pulls, sums, miss):
    active = np.ones(K, dtype=np.bool_)
    survivors = K
    for j in range(schedule.shape[0]):
        n = schedule[j]
        for k in range(K):
            if not active[k]:
                continue
            target = pulls[k] + n
            while pulls[k] < target:
                r = _reward(k, pulls[k], means, arm_seeds, table, miss)
                if r < 0:
                    return -1
                pulls[k] += 1
                sums[k] += r
        keep = (survivors + 1) // 2
        kept = np.zeros(K, dtype=np.bool_)
        for _ in range(keep):
            best = -1
            best_mean = 0.0
            for k in range(K):
                if not active[k] or kept[k]:
                    continue
                m = sums[k] / pulls[k]
                if best == -1 or m > best_mean:
                    best = k
                    best_mean = m
            kept[best] = True
        active = kept
        survivors = keep
    return _argmax_mean(pulls, sums, active)


@njit
def _run_ucb_e(K, T, a, means, arm_seeds, table, pulls, sums, miss):
    bonus = np.empty(T + 1, dtype=np.float64)
    for n in range(1, T + 1):
        bonus[n] = math.sqrt(a / n)
    mean = np.zeros(K, dtype=np.float64)
    for t in range(T):
        arm = -1
        best_index = 0.0
        for k in range(K):
            if pulls[k] == 0:
                arm = k
                break
            idx = mean[k] + bonus[pulls[k]]
            if arm == -1 or idx > best_index:
                arm = k
                best_index = idx
        r = _reward(arm, pulls[arm], means, arm_seeds, table, miss)
        if r < 0:
            return -1
        pulls[arm] += 1
        sums[arm] += r
        mean[arm] = sums[arm] / pulls[arm]
    return _argmax_mean(pulls, sums, np.ones(K, dtype=np.bool_))


@njit
def run_kernel(kind, K, T, a, schedule, means, arm_seeds, table, pulls, sums, miss):
    """Play one game; returns the 0-based recommendation or -1 on a missing cell."""
    if kind == UNIFORM:
        return _run_uniform(K, T, means, arm_seeds, table, pulls, sums, miss)
    if kind == SUCCESSIVE_REJECTS:
        return _run_sr(K, schedule, means, arm_seeds, table, pulls, sums, miss)
    if kind == SUCCESSIVE_HALVING:
        return _run_sh(K, schedule, means, arm_seeds, table, pulls, sums, miss)
    return _run_ucb_e(K, T, a, means, arm_seeds, table, pulls, sums, miss)


@njit(parallel=True)
def run_batch_nb(kind, K, T, a, schedule, means, master, start, R, rec_out, pulls_out, sums_out):
    for r in prange(R):
        rep = derive_nb(master, np.uint64(start + r))
        arm_seeds = np.empty(K, dtype=np.uint64)
        for k in range(K):
            arm_seeds[k] = derive_nb(rep, np.uint64(k))
        pulls = np.zeros(K, dtype=np.int64)
        sums = np.zeros(K, dtype=np.int64)
        miss = np.zeros(2, dtype=np.int64)
        table = np.zeros((K, 0), dtype=np.uint8)
        rec_out[r] = run_kernel(kind, K, T, a, schedule, means, arm_seeds, table, pulls, sums, miss)
        for k in range(K):
            pulls_out[r, k] = pulls[k]
            sums_out[r, k] = sums[k]
