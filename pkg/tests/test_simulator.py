import math

import numpy as np
import pytest
from scipy.optimize import brentq

from bai_lab import (
    BanditInstance,
    ContractError,
    ErrorEstimate,
    StrategyConfig,
    estimate_error,
    make_alpha_family,
    make_flipped_family,
    sweep_family,
    wilson_interval,
)
from bai_lab.strategies import KINDS

Z95 = 1.959963984540054


def wilson_by_root_finding(x, n, z=Z95):
    # endpoints solve |p_hat - q| = z sqrt(q (1 - q) / n)
    p = x / n
    f = lambda q: (p - q) ** 2 - z * z * q * (1 - q) / n  # noqa: E731
    # f(p_hat) < 0 except at the boundaries, where p_hat itself is a root
    low = 0.0 if x == 0 else brentq(f, 1e-15, p * (1 - 1e-12))
    high = 1.0 if x == n else brentq(f, p + 1e-12, 1 - 1e-15)
    return low, high


@pytest.mark.parametrize("x, n", [(0, 1000), (1, 1000), (17, 400), (500, 1000), (999, 1000), (3, 7)])
def test_wilson_matches_root_finding(x, n):
    low, high = wilson_interval(x, n, 0.95)
    ref_low, ref_high = wilson_by_root_finding(x, n)
    assert low == pytest.approx(ref_low, abs=1e-10)
    assert high == pytest.approx(ref_high, abs=1e-10)


def test_wilson_examples():
    low, high = wilson_interval(0, 1000, 0.95)
    assert low == 0.0
    assert high == pytest.approx(0.00383, abs=1e-5)
    low, high = wilson_interval(500, 1000, 0.95)
    assert (low + high) / 2 == pytest.approx(0.5, abs=1e-12)
    assert wilson_interval(1000, 1000, 0.9)[1] == 1.0


@pytest.mark.parametrize("args", [(-1, 10, 0.95), (11, 10, 0.95), (1, 0, 0.95), (1, 10, 1.0)])
def test_wilson_preconditions(args):
    with pytest.raises(ContractError):
        wilson_interval(*args)


def test_wilson_coverage():
    rng = np.random.default_rng(2)
    q, n = 0.3, 1000
    xs = rng.binomial(n, q, size=10_000)
    covered = sum(lo <= q <= hi for lo, hi in (wilson_interval(int(x), n) for x in xs))
    assert covered / xs.size >= 0.93


def test_interval_shrinks_with_r():
    widths = []
    for R in (100, 1000, 10_000):
        lo, hi = wilson_interval(R // 10, R)
        widths.append(hi - lo)
    assert widths[0] > widths[1] > widths[2]


def test_error_estimate_fields_and_log_domain():
    est = ErrorEstimate.from_counts(0, 1000)
    assert est.point == 0.0 and est.ci_low == 0.0 and est.below_resolution
    assert est.log_point == -math.inf
    assert est.to_dict()["log_point"] is None
    est = ErrorEstimate.from_counts(25, 1000)
    assert est.ci_low <= est.point <= est.ci_high
    assert est.log_point == pytest.approx(math.log(0.025))


@pytest.mark.parametrize("kind", KINDS)
def test_deterministic_instance_has_no_error(kind):
    cfg = StrategyConfig(kind, 1.0 if kind == "ucb_e" else None)
    est = estimate_error(cfg, BanditInstance([1.0, 0.0]), 10, 100, 0)
    assert est.point == 0.0 and est.ci_low == 0.0 and est.errors == 0


def test_estimate_is_deterministic(backend):
    inst = BanditInstance([0.5, 0.45, 0.4])
    cfg = StrategyConfig("successive_rejects")
    a = estimate_error(cfg, inst, 60, 2000, 12, backend=backend)
    b = estimate_error(cfg, inst, 60, 2000, 12, backend=backend)
    assert a == b


def test_estimate_backends_agree():
    inst = BanditInstance([0.5, 0.45, 0.4])
    cfg = StrategyConfig("successive_halving")
    assert (estimate_error(cfg, inst, 60, 3000, 12, backend="numba")
            == estimate_error(cfg, inst, 60, 3000, 12, backend="numpy"))


def test_ties_at_top_count_as_correct():
    cfg = StrategyConfig("uniform")
    est = estimate_error(cfg, BanditInstance([0.5, 0.5, 0.0]), 30, 500, 1)
    assert est.errors == 0


def test_sweep_shape_and_worst_consistency():
    fam = make_alpha_family(4, 1.0)
    rows = sweep_family(StrategyConfig("uniform"), fam, [20, 40, 80], 500, 3)
    assert len(rows) == 3
    for row in rows:
        assert len(row.per_i) == 4
        assert row.worst_error.point == max(e.point for e in row.per_i)
        assert row.per_i[row.worst_i - 1] is row.worst_error
    with pytest.raises(ContractError):
        sweep_family(StrategyConfig("uniform"), fam, [], 10, 0)


def test_sweep_cells_use_disjoint_streams():
    fam = make_alpha_family(3, 1.0)
    cfg = StrategyConfig("uniform")
    rows = sweep_family(cfg, fam, [30, 60], 200, 5)
    from bai_lab.instances import family_instance

    # cell (j=1, i=2) starts at replication index (1 * 3 + 1) * 200
    direct = estimate_error(cfg, family_instance(fam, 2), 60, 200, 5, start=800)
    assert rows[1].per_i[1] == direct


def test_sweep_deterministic_across_workers_and_backends():
    fam = make_alpha_family(4, 1.0)
    cfg = StrategyConfig("successive_rejects")
    a = sweep_family(cfg, fam, [40, 80], 800, 9, workers=1, backend="numba")
    b = sweep_family(cfg, fam, [40, 80], 800, 9, workers=3, backend="numba")
    c = sweep_family(cfg, fam, [40, 80], 800, 9, backend="numpy")
    assert a == b == c


def test_symmetric_two_arm_family():
    # problems 1 and 2 are mirror images; an odd budget avoids empirical-mean ties
    fam = make_flipped_family([0.25])
    row = sweep_family(StrategyConfig("uniform"), fam, [51], 20_000, 5)[0]
    p1, p2 = row.per_i
    assert p1.ci_low <= p2.ci_high and p2.ci_low <= p1.ci_high


def test_worst_error_non_increasing_in_t():
    fam = make_alpha_family(8, 1.0)
    rows = sweep_family(StrategyConfig("successive_rejects"), fam, [100, 200, 400, 800], 4000, 21)
    for a, b in zip(rows, rows[1:]):
        assert b.worst_error.point <= a.worst_error.ci_high
