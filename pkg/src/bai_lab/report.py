"""CSV and plot-data emission for sweeps."""

import csv
import json
import math
import os

from .complexity import complexity_h2, family_complexities
from .instances import family_instance
from .theory import eval_lower_bounds, eval_upper_bounds

SWEEP_HEADER = "family_id,strategy,K,T,i,R,errors,p_hat,ci_low,ci_high,is_worst"
BOUND_COLUMNS = ("lb_thm1_a", "lb_thm1_adapt", "lb_thm2_first", "lb_thm2_second",
                 "ub_known_a", "ub_sr")
PLOT_HEADER = ("T", "log_p_hat", "log_ci_high", "log_resolution", *BOUND_COLUMNS)


def fmt(x):
    """Render floats with 17 significant digits; ints, strings and missing values verbatim."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return format(x, ".17g")


def _write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def sweep_table(rows):
    out = []
    for row in rows:
        for i, est in enumerate(row.per_i, start=1):
            out.append((row.family_id, row.strategy, row.K, row.T, i, est.replications,
                        est.errors, est.point, est.ci_low, est.ci_high, i == row.worst_i))
    return out


def bound_curves(family, T, worst_i):
    """Bound log-values at horizon T for the family, keyed by column name."""
    H, h_star = family_complexities(family)
    K = family.K
    Hw = H[worst_i - 1]
    values = {b.name: b.log_value for b in eval_lower_bounds(T, K, H[0], Hw, H[0], Hw, h_star)}
    if T > K:
        H2 = complexity_h2(family_instance(family, worst_i))
        for b in eval_upper_bounds(T, K, a=H[0], H2=H2):
            values[b.name] = b.log_value
    return values


def plot_table(rows, family):
    out = []
    for row in rows:
        est = row.worst_error
        curves = bound_curves(family, row.T, row.worst_i)
        out.append((row.T, est.log_point, est.log_ci_high, -math.log(est.replications),
                    *[curves.get(name) for name in BOUND_COLUMNS]))
    return out


def _slug(text):
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in text)


def emit_results(rows, out_dir, family=None, metadata=None, formats=("csv", "plot")):
    """Write sweep rows under ``out_dir``; returns the written paths.

    ``csv`` writes one line per (T, i); ``plot`` writes, per strategy, the
    worst-case log error against every bound curve (needs ``family``).
    """
    if not rows:
        raise ValueError("nothing to emit")
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    if "csv" in formats:
        path = os.path.join(out_dir, "sweep.csv")
        _write_rows(path, SWEEP_HEADER.split(","), sweep_table(rows))
        paths.append(path)
    if "plot" in formats and family is not None:
        by_strategy = {}
        for row in rows:
            by_strategy.setdefault((row.family_id, row.strategy), []).append(row)
        for (family_id, strategy), group in by_strategy.items():
            path = os.path.join(out_dir, f"plot_{_slug(family_id)}_{strategy}.csv")
            _write_rows(path, PLOT_HEADER, plot_table(group, family))
            paths.append(path)
    if metadata is not None:
        path = os.path.join(out_dir, "metadata.json")
        with open(path, "w") as fh:
            json.dump(metadata, fh, indent=2, sort_keys=True)
            fh.write("\n")
        paths.append(path)
    return paths
