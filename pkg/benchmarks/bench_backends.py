"""Time the numba and numpy backends on the same batches and check they agree.

    python benchmarks/bench_backends.py [--R 20000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from bai_lab import StrategyConfig, complexity_h_incl, family_instance, make_alpha_family
from bai_lab._accel import HAS_NUMBA
from bai_lab.strategies import KINDS, default_exploration, run_batch
from bai_lab.theory import xi_hits


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--K", type=int, default=8)
    ap.add_argument("--T", type=int, default=400)
    ap.add_argument("--R", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAS_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    fam = make_alpha_family(args.K, 1.0)
    inst = family_instance(fam, 1)
    print(f"K={args.K} T={args.T} R={args.R} (best of {args.repeat})")
    print(f"{'task':<22}{'numba s':>10}{'numpy s':>10}{'speedup':>9}  identical")
    for kind in KINDS:
        a = default_exploration(args.T, args.K, complexity_h_incl(inst)) if kind == "ucb_e" else None
        cfg = StrategyConfig(kind, a)
        run_batch(cfg, inst, args.T, 4, 0, backend="numba")  # compile outside the timing
        tn, bn = best_of(lambda: run_batch(cfg, inst, args.T, args.R, 1, backend="numba"),
                         args.repeat)
        tp, bp = best_of(lambda: run_batch(cfg, inst, args.T, args.R, 1, backend="numpy"),
                         args.repeat)
        same = np.array_equal(bn.recommended, bp.recommended) and np.array_equal(bn.pulls, bp.pulls)
        print(f"{kind:<22}{tn:>10.3f}{tp:>10.3f}{tp / tn:>9.1f}  {same}")

    xi_hits(fam, 2, 10, 4, 0, backend="numba")
    tn, hn = best_of(lambda: xi_hits(fam, 2, args.T, args.R, 1, backend="numba"), args.repeat)
    tp, hp = best_of(lambda: xi_hits(fam, 2, args.T, args.R, 1, backend="numpy"), args.repeat)
    print(f"{'xi event':<22}{tn:>10.3f}{tp:>10.3f}{tp / tn:>9.1f}  {np.array_equal(hn, hp)}")


if __name__ == "__main__":
    main()
