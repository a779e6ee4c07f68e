"""Pure-numpy batch implementation, vectorised across replications.

Independent of the numba kernels in structure (schedules are applied to
prefix sums of a whole reward table at once) but consumes the same streams,
so both backends return identical arrays.
"""

import numpy as np

from ..rng import derive_array, replication_seeds, unit_array
from . import _kernels as K_

_CELLS_PER_CHUNK = 4_000_000


def reward_bits(rep_seeds, means, n_draws):
    """Rewards of shape ``(R, K, n_draws)`` as uint8, generated arm by arm."""
    R = rep_seeds.shape[0]
    K = means.shape[0]
    out = np.empty((R, K, n_draws), dtype=np.uint8)
    draws = np.arange(n_draws, dtype=np.uint64)[None, :]
    for k in range(K):
        arm_seeds = derive_array(rep_seeds, np.uint64(k))[:, None]
        out[:, k, :] = unit_array(derive_array(arm_seeds, draws)) < means[k]
    return out


def _prefix(bits):
    R, K, n = bits.shape
    S = np.zeros((R, K, n + 1), dtype=np.int64)
    np.cumsum(bits, axis=2, out=S[:, :, 1:])
    return S


def _first_argmax(values):
    return np.argmax(values, axis=1)


def _uniform(S, T):
    R, K, _ = S.shape
    n = np.full(K, T // K, dtype=np.int64)
    n[: T % K] += 1
    sums = S[:, np.arange(K), n]
    pulls = np.broadcast_to(n, (R, K)).copy()
    # arms left unpulled when T < K read as empirical mean 0
    rec = _first_argmax(sums / np.maximum(n, 1))
    return rec, pulls, sums


def _sr(S, schedule):
    R, K, _ = S.shape
    rows = np.arange(R)
    active = np.ones((R, K), dtype=bool)
    pulls = np.zeros((R, K), dtype=np.int64)
    for n in schedule:
        means = np.where(active, S[:, :, n] / n, np.inf)
        low = means.min(axis=1, keepdims=True)
        # highest label among the tied minima
        worst = K - 1 - np.argmax((means == low)[:, ::-1], axis=1)
        active[rows, worst] = False
        pulls[rows, worst] = n
    survivor = np.argmax(active, axis=1)
    pulls[rows, survivor] = schedule[-1]
    sums = np.take_along_axis(S, pulls[:, :, None], axis=2)[:, :, 0]
    return survivor, pulls, sums


def _sh(S, schedule):
    R, K, _ = S.shape
    rows = np.arange(R)[:, None]
    active = np.ones((R, K), dtype=bool)
    pulls = np.zeros((R, K), dtype=np.int64)
    c = 0
    survivors = K
    for n in schedule:
        c += int(n)
        pulls[active] = c
        means = np.where(active, S[:, :, c] / c, -np.inf)
        keep = (survivors + 1) // 2
        order = np.argsort(-means, axis=1, kind="stable")[:, :keep]
        active = np.zeros((R, K), dtype=bool)
        active[rows, order] = True
        survivors = keep
    sums = np.take_along_axis(S, pulls[:, :, None], axis=2)[:, :, 0]
    means = np.where(active, sums / np.maximum(pulls, 1), -np.inf)
    rec = _first_argmax(means)
    return rec, pulls, sums


def _ucb_e(bits, T, a):
    R, K, _ = bits.shape
    rows = np.arange(R)
    pulls = np.zeros((R, K), dtype=np.int64)
    sums = np.zeros((R, K), dtype=np.int64)
    index = np.empty((R, K), dtype=np.float64)
    bonus = np.empty(T + 1, dtype=np.float64)
    bonus[0] = np.inf
    bonus[1:] = np.sqrt(a / np.arange(1, T + 1))
    for _ in range(T):
        pulled = pulls > 0
        index.fill(np.inf)
        safe = np.where(pulled, pulls, 1)
        np.add(sums / safe, bonus[pulls], out=index, where=pulled)
        arm = _first_argmax(index)
        sums[rows, arm] += bits[rows, arm, pulls[rows, arm]]
        pulls[rows, arm] += 1
    means = np.where(pulls > 0, sums / np.maximum(pulls, 1), 0.0)
    return _first_argmax(means), pulls, sums


def _max_draws(kind, K, T, schedule):
    if kind == K_.UNIFORM:
        return max(1, -(-T // K))
    if kind == K_.SUCCESSIVE_REJECTS:
        return int(schedule[-1])
    if kind == K_.SUCCESSIVE_HALVING:
        return int(np.sum(schedule))
    return T - K + 1


def run_batch_np(kind, K, T, a, schedule, means, master, start, R):
    n_draws = _max_draws(kind, K, T, schedule)
    chunk = max(1, _CELLS_PER_CHUNK // (K * n_draws))
    rec = np.empty(R, dtype=np.int64)
    pulls = np.empty((R, K), dtype=np.int64)
    sums = np.empty((R, K), dtype=np.int64)
    for lo in range(0, R, chunk):
        hi = min(R, lo + chunk)
        seeds = replication_seeds(master, start + lo, hi - lo)
        bits = reward_bits(seeds, means, n_draws)
        if kind == K_.UCB_E:
            out = _ucb_e(bits, T, a)
        else:
            S = _prefix(bits)
            if kind == K_.UNIFORM:
                out = _uniform(S, T)
            elif kind == K_.SUCCESSIVE_REJECTS:
                out = _sr(S, schedule)
            else:
                out = _sh(S, schedule)
        rec[lo:hi], pulls[lo:hi], sums[lo:hi] = out
    return rec, pulls, sums
