"""Counter-based random streams.

Every uniform draw in the package is a pure function of
``(master_seed, replication, arm, draw_index)``::

    rep_seed  = derive_stream_seed(master_seed, replication)
    arm_seed  = derive_stream_seed(rep_seed, arm)          # arm is 0-based
    u         = to_unit(derive_stream_seed(arm_seed, draw_index))

so replications can run in any order on any number of workers, and two
strategies given the same seed see the same reward table. The same mixing
function is implemented three times (python ints, numpy uint64 arrays, numba
scalars); the test suite checks they agree bit for bit.
"""

import numpy as np

from ._accel import njit

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
_UNIT = 2.0**-53


def mix64(z):
    """SplitMix64 output finalizer on a python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def derive_stream_seed(master, index):
    """Seed of child stream ``index`` of ``master`` (both unsigned 64-bit)."""
    if master < 0 or index < 0:
        raise ValueError("seeds and stream indices are unsigned")
    return mix64((master + (index + 1) * GOLDEN_GAMMA) & MASK64)


def to_unit(h):
    """Top 53 bits of a 64-bit word as a float in [0, 1)."""
    return (h >> 11) * _UNIT


# wrap-around is the intended uint64 arithmetic; numpy scalars warn about it
_G = np.uint64(GOLDEN_GAMMA)
_M1 = np.uint64(_MUL1)
_M2 = np.uint64(_MUL2)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)


def mix64_array(z):
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> _S30)) * _M1
        z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def derive_array(master, index):
    """Vectorised :func:`derive_stream_seed`; broadcasts its arguments."""
    master = np.asarray(master, dtype=np.uint64)
    index = np.asarray(index, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64_array(master + (index + _ONE) * _G)


def unit_array(h):
    return (np.asarray(h, dtype=np.uint64) >> _S11).astype(np.float64) * _UNIT


def replication_seeds(master_seed, start, count):
    return derive_array(np.uint64(master_seed), np.arange(start, start + count, dtype=np.uint64))


def uniform_table(rep_seeds, n_arms, n_draws):
    """Uniforms of shape ``(len(rep_seeds), n_arms, n_draws)``."""
    rep_seeds = np.asarray(rep_seeds, dtype=np.uint64).reshape(-1, 1)
    arm_seeds = derive_array(rep_seeds, np.arange(n_arms, dtype=np.uint64)[None, :])
    draws = np.arange(n_draws, dtype=np.uint64)[None, None, :]
    return unit_array(derive_array(arm_seeds[:, :, None], draws))


@njit
def mix64_nb(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit
def derive_nb(master, index):
    return mix64_nb(master + (index + np.uint64(1)) * np.uint64(0x9E3779B97F4A7C15))


@njit
def unit_nb(h):
    return np.float64(h >> np.uint64(11)) * 1.1102230246251565e-16


class RngStream:
    """One replication's reward source: per-arm counters over a derived seed.

    Owned by a single worker; not thread-safe by design.
    """

    def __init__(self, master_seed, stream_index=0):
        if not (0 <= master_seed <= MASK64 and 0 <= stream_index <= MASK64):
            raise ValueError("master_seed and stream_index must fit in 64 unsigned bits")
        self.master_seed = int(master_seed)
        self.stream_index = int(stream_index)
        self.seed = derive_stream_seed(self.master_seed, self.stream_index)
        self._arm_seeds = {}
        self._counters = {}

    def arm_seed(self, arm):
        """Seed of the 0-based ``arm`` sub-stream."""
        seed = self._arm_seeds.get(arm)
        if seed is None:
            seed = self._arm_seeds[arm] = derive_stream_seed(self.seed, arm)
        return seed

    def counter(self, arm):
        return self._counters.get(arm, 0)

    def next_uniform(self, arm):
        s = self._counters.get(arm, 0)
        self._counters[arm] = s + 1
        return to_unit(derive_stream_seed(self.arm_seed(arm), s))

    def __repr__(self):
        return f"RngStream(master_seed={self.master_seed}, stream_index={self.stream_index})"
