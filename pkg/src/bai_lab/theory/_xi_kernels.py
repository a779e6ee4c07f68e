"""Kernels counting replications on which every empirical KL process stays in its band."""

import numpy as np

from .._accel import njit, prange
from ..rng import derive_nb, replication_seeds, unit_nb
from ..strategies._vectorized import reward_bits


@njit(parallel=True)
def xi_hits_nb(means, llr, kl, radius, master, start, R, hits):
    K = means.shape[0]
    T = radius.shape[0]
    for r in prange(R):
        rep = derive_nb(master, np.uint64(start + r))
        ok = True
        for k in range(K):
            if llr[k] == 0.0:
                continue
            seed = derive_nb(rep, np.uint64(k))
            s = 0.0
            for t in range(T):
                x = unit_nb(derive_nb(seed, np.uint64(t))) < means[k]
                s += -llr[k] if x else llr[k]
                if abs(s / (t + 1)) - kl[k] > radius[t]:
                    ok = False
                    break
            if not ok:
                break
        hits[r] = ok


def xi_hits_np(means, llr, kl, radius, master, start, R, chunk=None):
    K = means.shape[0]
    T = radius.shape[0]
    chunk = chunk or max(1, 4_000_000 // (K * T))
    steps = np.arange(1, T + 1, dtype=np.float64)
    hits = np.empty(R, dtype=np.bool_)
    for lo in range(0, R, chunk):
        hi = min(R, lo + chunk)
        bits = reward_bits(replication_seeds(master, start + lo, hi - lo), means, T)
        incr = np.where(bits.astype(bool), -llr[None, :, None], llr[None, :, None])
        paths = np.cumsum(incr, axis=2)
        excess = np.abs(paths / steps) - kl[None, :, None]
        hits[lo:hi] = ~np.any(excess > radius, axis=(1, 2))
    return hits
