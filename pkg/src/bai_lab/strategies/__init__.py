"""Fixed-budget best-arm identification strategies.

``run_strategy`` plays one game on an :class:`~bai_lab.rng.RngStream`;
``run_batch`` plays R independent replications on streams
``derive_stream_seed(master_seed, start + r)``, with either backend.
"""

from dataclasses import dataclass

import numpy as np

from .._accel import resolve_backend, set_workers
from ..core import BanditInstance, ContractError, RunResult
from . import _kernels
from ._vectorized import run_batch_np
from .schedules import (
    KINDS,
    StrategyConfig,
    check_budget,
    default_exploration,
    sh_rounds,
    sr_allocation,
    sr_total,
    uniform_pulls,
)

__all__ = [
    "KINDS",
    "BatchResult",
    "StrategyConfig",
    "check_budget",
    "default_exploration",
    "kernel_schedule",
    "run_batch",
    "run_strategy",
    "sh_rounds",
    "sr_allocation",
    "sr_total",
    "uniform_pulls",
]


@dataclass
class BatchResult:
    recommended: np.ndarray  # 0-based, shape (R,)
    pulls: np.ndarray  # shape (R, K)
    sums: np.ndarray  # shape (R, K)

    def run(self, r):
        pulls = self.pulls[r]
        sums = self.sums[r]
        means = [float(s / n) if n > 0 else 0.0 for s, n in zip(sums, pulls)]
        return RunResult(int(self.recommended[r]) + 1, [int(n) for n in pulls], means)


def kernel_schedule(config, K, T):
    """Integer schedule array the kernels consume for ``config``."""
    check_budget(K, T, config.kind)
    if config.kind == "successive_rejects":
        return np.array(sr_allocation(K, T), dtype=np.int64)
    if config.kind == "successive_halving":
        return np.array([n for _, n in sh_rounds(K, T)], dtype=np.int64)
    return np.zeros(1, dtype=np.int64)


def _exploration(config):
    return float(config.exploration_a) if config.exploration_a is not None else 0.0


def run_batch(config, instance, T, R, master_seed, start=0, backend=None, workers=None):
    """Play ``R`` replications; identical output for every backend and worker count."""
    if R < 1:
        raise ContractError("need at least one replication")
    backend = resolve_backend(backend)
    K = instance.K
    schedule = kernel_schedule(config, K, T)
    means = instance.as_array()
    a = _exploration(config)
    if backend == "numba":
        set_workers(workers)
        rec = np.empty(R, dtype=np.int64)
        pulls = np.empty((R, K), dtype=np.int64)
        sums = np.empty((R, K), dtype=np.int64)
        _kernels.run_batch_nb(
            config.code, K, T, a, schedule, means,
            np.uint64(master_seed), np.int64(start), R, rec, pulls, sums,
        )
    else:
        rec, pulls, sums = run_batch_np(config.code, K, T, a, schedule, means, master_seed, start, R)
    return BatchResult(rec, pulls, sums)


def run_strategy(config, instance: BanditInstance, T, rng, backend=None):
    """One game of ``config`` on ``instance`` with budget ``T``, rewards from ``rng``."""
    batch = run_batch(config, instance, T, 1, rng.master_seed, start=rng.stream_index,
                      backend=backend, workers=1)
    return batch.run(0)


def run_on_table(config, K, T, table, backend=None):
    """Play against a fixed uint8 reward table of shape ``(K, n)``.

    Returns ``(recommended, pulls, sums, missing)``; ``recommended`` is 0-based
    and ``-1`` when the run asked for a cell marked missing, which is reported
    as ``(arm, draw)`` in ``missing``.
    """
    backend = resolve_backend(backend)
    schedule = kernel_schedule(config, K, T)
    kernel = _kernels.run_kernel
    if backend == "numpy":
        kernel = getattr(kernel, "py_func", kernel)
    pulls = np.zeros(K, dtype=np.int64)
    sums = np.zeros(K, dtype=np.int64)
    miss = np.zeros(2, dtype=np.int64)
    rec = kernel(
        config.code, K, T, _exploration(config), schedule,
        np.zeros(K, dtype=np.float64), np.zeros(K, dtype=np.uint64),
        table, pulls, sums, miss,
    )
    return int(rec), pulls, sums, (int(miss[0]), int(miss[1]))
