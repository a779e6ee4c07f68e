import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bai_lab import (
    BanditInstance,
    ContractError,
    complexity_h,
    complexity_h2,
    complexity_h_incl,
    complexity_report,
    family_complexities,
    kl_bernoulli,
    kl_flip,
    make_alpha_family,
    make_flipped_family,
    make_uniform_random_instance,
)
from bai_lab.complexity import AmbiguousOptimumError, UndefinedComplexityError


def test_kl_bernoulli_examples():
    assert kl_bernoulli(0.5, 0.5) == 0.0
    assert kl_bernoulli(0.25, 0.75) == pytest.approx(0.5 * math.log(3), abs=1e-12)
    assert kl_bernoulli(0.25, 0.75) == pytest.approx(0.5493061, abs=1e-6)
    assert kl_bernoulli(0.3, 0.7) == pytest.approx(kl_bernoulli(0.7, 0.3), rel=1e-15)


@pytest.mark.parametrize("p, q", [(0.0, 0.5), (0.5, 1.0), (1.0, 0.2), (0.3, 0.0)])
def test_kl_bernoulli_domain(p, q):
    with pytest.raises(ContractError):
        kl_bernoulli(p, q)


def test_kl_flip_examples():
    assert kl_flip(0.5) == 0.0
    assert kl_flip(0.25) == pytest.approx(0.5493061, abs=1e-6)
    assert kl_flip(0.25) <= 10 * 0.25**2
    assert kl_flip(0.3) == pytest.approx(0.4 * math.log(7 / 3), abs=1e-15)
    assert kl_flip(0.3) == pytest.approx(0.3389185, abs=1e-6)
    assert kl_flip(0.3) <= 10 * 0.2**2
    for bad in (0.0, 1.0):
        with pytest.raises(ContractError):
            kl_flip(bad)


def test_kl_flip_under_quadratic_bound_dense_grid():
    p = 0.25 + 1e-5 * np.arange(25_000)
    kl = (1 - 2 * p) * np.log((1 - p) / p)
    assert np.all(kl <= 10 * (0.5 - p) ** 2)


@given(st.floats(0.01, 0.99))
def test_flip_equals_both_directions(p):
    a, b, c = kl_bernoulli(p, 1 - p), kl_bernoulli(1 - p, p), kl_flip(p)
    tol = 4 * np.spacing(max(abs(c), 1e-300))
    assert abs(a - c) <= tol + 1e-15 and abs(b - c) <= tol + 1e-15


def test_kl_flip_increasing_with_gap():
    p = np.linspace(0.4999, 0.25, 500)
    vals = [kl_flip(x) for x in p]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def frac_h(means):
    m = [Fraction(x).limit_denominator(10**6) for x in means]
    top = max(m)
    return sum(1 / (top - x) ** 2 for x in m if x != top)


@pytest.mark.parametrize(
    "means, h, h2",
    [((0.5, 0.25), 16, 32), ((0.5, 0.4, 0.3), 125, 200), ((0.5, 0.5, 0.25), 16, 48)],
)
def test_complexity_examples(means, h, h2):
    inst = BanditInstance(means)
    assert complexity_h(inst) == pytest.approx(h, rel=1e-12)
    assert float(frac_h(means)) == pytest.approx(h, rel=1e-12)
    assert complexity_h2(inst) == pytest.approx(h2, rel=1e-12)


def test_inclusive_examples_and_counterexample():
    assert complexity_h_incl(BanditInstance([0.5, 0.25])) == pytest.approx(32)
    inst = BanditInstance([0.5, 0.4, 0.3])
    h, h2, hi = complexity_h(inst), complexity_h2(inst), complexity_h_incl(inst)
    assert hi == pytest.approx(225)
    assert h2 <= hi <= math.log(6) * h2
    assert math.log(6) * 200 == pytest.approx(358.35, abs=0.01)
    # the exclusive H sits below H2 here: the chain only holds for the inclusive form
    assert h < h2


def test_complexity_errors():
    with pytest.raises(UndefinedComplexityError):
        complexity_h(BanditInstance([0.3, 0.3]))
    with pytest.raises(UndefinedComplexityError):
        complexity_h2(BanditInstance([0.3]))
    with pytest.raises(AmbiguousOptimumError):
        complexity_h_incl(BanditInstance([0.5, 0.5, 0.25]))


def test_report_json_keys():
    rep = complexity_report(BanditInstance([0.5, 0.4, 0.3]))
    assert set(rep.to_dict()) == {"h_excl", "h2", "h_incl", "gaps"}
    assert rep.gaps[0] == 0.0


@settings(max_examples=200)
@given(st.integers(2, 50), st.integers(0, 2**32 - 1))
def test_chain_on_random_unique_optimum(K, seed):
    inst = make_uniform_random_instance(K, (0.01, 0.5), seed)
    h, h2, hi = complexity_h(inst), complexity_h2(inst), complexity_h_incl(inst)
    assert h2 <= hi * (1 + 1e-12)
    assert hi <= math.log(2 * K) * h2 * (1 + 1e-12)
    assert h <= hi


def frac_family(p_tail):
    p = [Fraction(1, 2)] + [Fraction(x) for x in p_tail]
    d = [Fraction(1, 2) - x for x in p]
    K = len(d)
    H = [sum(1 / (d[i] + d[k]) ** 2 for k in range(K) if k != i) for i in range(K)]
    h_star = sum(1 / (d[k] ** 2 * H[k]) for k in range(1, K))
    return H, h_star


def test_family_example_against_exact_rationals():
    H, h_star = family_complexities(make_flipped_family([0.25, 0.375]))
    H_exact, h_exact = frac_family([Fraction(1, 4), Fraction(3, 8)])
    assert H_exact == [80, Fraction(208, 9), Fraction(640, 9)]
    assert H == pytest.approx([float(x) for x in H_exact], rel=1e-14)
    assert h_star == pytest.approx(float(h_exact), rel=1e-14)
    assert h_star == pytest.approx(1.5923, abs=1e-4)


@pytest.mark.parametrize("p2", [0.25, 0.3, 0.49])
def test_two_arm_family_h_star_is_one(p2):
    _, h_star = family_complexities(make_flipped_family([p2]))
    assert h_star == pytest.approx(1.0, rel=1e-14)


@given(st.lists(st.floats(0.25, 0.4999), min_size=1, max_size=20))
def test_family_h1_is_max(p_tail):
    H, h_star = family_complexities(make_flipped_family(p_tail))
    assert H[0] == max(H)
    assert h_star > 0
