"""Bound formulas (frozen values, monotonicity) and Monte Carlo validators."""

import math

import numpy as np
import pytest

from tracelink import (BOUND_NAMES, BoundScenario, InvalidConfig,
                       MeanDistribution, UnknownBound, anonymize,
                       generate_traces, group_mean_collision_bound,
                       learning_concentration_bound,
                       learning_concentration_bound_asymptotic,
                       mean_proximity_bound, pair_mismatch_bound,
                       pair_mismatch_bound_asymptotic, sample_population,
                       seed_stream, validate_bound, delta_n)


def test_pair_mismatch_values():
    d64 = delta_n(64, 2, 0.5)
    # exact closed form at this point is 2 e^(-sqrt(2)/4)
    assert pair_mismatch_bound(512, 512, d64, 1.0) == pytest.approx(
        1.4043770026531193, abs=1e-15)
    assert pair_mismatch_bound(512, 512, d64, 1.0) == pytest.approx(
        2 * math.exp(-math.sqrt(2) / 4), abs=1e-15)
    assert pair_mismatch_bound(100, 100, 50.0, 1.0) < 1e-300  # delta -> inf
    # m = l collapses to a single doubled exponential
    assert pair_mismatch_bound(64, 64, 0.3, 1.0) == pytest.approx(
        2 * math.exp(-64 * 0.09 / 8))


def test_pair_mismatch_monotonicity():
    base = pair_mismatch_bound(100, 100, 0.2, 1.0)
    assert pair_mismatch_bound(200, 100, 0.2, 1.0) < base
    assert pair_mismatch_bound(100, 200, 0.2, 1.0) < base
    assert pair_mismatch_bound(100, 100, 0.3, 1.0) < base
    assert pair_mismatch_bound(100, 100, 0.2, 2.0) > base


def test_pair_mismatch_asymptotic_variant():
    # 2 e^(-n^(alpha''/2) / 8 sigma^2); vacuous at small n as expected
    assert pair_mismatch_bound_asymptotic(64, 1.0, 1.0) == pytest.approx(
        2 * math.exp(-1.0))
    assert pair_mismatch_bound_asymptotic(16, 0.5, 1.0) > 1.0


def test_group_mean_collision_values():
    assert group_mean_collision_bound(10_000, 2, 1.0, 1.0) == pytest.approx(0.64)
    # s = 1 reduces to 8 n^(-alpha''/4) delta
    assert group_mean_collision_bound(256, 1, 1.0, 0.5) == pytest.approx(
        8 * 256 ** (-0.25) * 0.5)
    vals = [group_mean_collision_bound(n, 2, 1.0, 1.0) for n in (10, 100, 1000)]
    assert vals[0] > vals[1] > vals[2]
    with pytest.raises(InvalidConfig):
        group_mean_collision_bound(100, 21, 1.0, 1.0)  # factorial guard


def test_learning_concentration_values():
    # s = 1 at delta sqrt(l) = sigma sqrt(2): exactly 1/e
    l, sigma = 128, 1.0
    delta = sigma * math.sqrt(2.0 / l)
    assert learning_concentration_bound(l, delta, sigma, 1) == pytest.approx(
        math.exp(-1))
    assert learning_concentration_bound(10**6, 0.1, 1.0, 2) < 1e-300
    one = learning_concentration_bound(64, 0.2, 1.0, 3)
    assert learning_concentration_bound(64, 0.2, 1.0, 6) == pytest.approx(2 * one)
    assert learning_concentration_bound_asymptotic(16, 1.0, 1.0, 2) == \
        pytest.approx(2 * math.exp(-2.0))


def test_mean_proximity_values():
    assert mean_proximity_bound(100, 2, 1.0, 0.0) == 0.0
    assert mean_proximity_bound(100, 2, 1.0, 1.0) == pytest.approx(
        0.05059644256269407, abs=1e-15)
    # decays faster than 1/n
    assert mean_proximity_bound(200, 2, 1.0, 1.0) / \
        mean_proximity_bound(100, 2, 1.0, 1.0) < 0.5


@pytest.mark.parametrize("s,factor", [(1, 8), (2, 64), (3, 1024)])
def test_collision_bound_hand_expanded_forms(s, factor):
    # (s-1)! 8^s n^(-s alpha''/4) delta for s = 1, 2, 3
    n, app, delta = 50, 0.8, 0.7
    assert group_mean_collision_bound(n, s, app, delta) == pytest.approx(
        factor * n ** (-s * app / 4) * delta)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_proximity_bound_hand_expanded_forms(s):
    n, app, delta = 50, 0.8, 0.7
    assert mean_proximity_bound(n, s, app, delta) == pytest.approx(
        8 * s * n ** (-1 - app / 4) * delta)


@pytest.mark.parametrize("name", BOUND_NAMES)
def test_validators_satisfied_on_defaults(name):
    report = validate_bound(name, trials=2000, master_seed=3)
    assert report.satisfied, (name, report.analytic, report.empirical)
    assert 0.0 <= report.empirical <= 1.0
    assert report.stderr == pytest.approx(
        math.sqrt(report.empirical * (1 - report.empirical) / report.trials))
    assert report.trials == 2000
    assert not report.vacuous


def test_validator_flags_vacuous_bound():
    # short traces at alpha'' = 0.5: analytic 1.404... exceeds 1
    sc = BoundScenario(n=64, s=2, alpha=0.5, alpha_prime=0.5, m=512, l=512)
    report = validate_bound("pair_mismatch", scenario=sc, trials=500, master_seed=0)
    assert report.vacuous
    assert report.analytic == pytest.approx(1.4043770026531193, abs=1e-15)
    assert report.satisfied  # probabilities cannot violate a vacuous bound


def test_validator_rejects_bad_input():
    with pytest.raises(UnknownBound):
        validate_bound("tail_of_unicorn")
    with pytest.raises(InvalidConfig):
        validate_bound("pair_mismatch", trials=50)


def test_pair_mismatch_exact_law_matches_full_simulation():
    # the validator samples Xbar - Wbar from N(0, sigma^2 (1/m + 1/l));
    # cross-check against the full generation path at small m, l
    n, s, sigma, rho, m, l = 16, 2, 1.0, 0.5, 64, 64
    sc = BoundScenario(n=n, s=s, sigma=sigma, rho=rho, m=m, l=l)
    report = validate_bound("pair_mismatch", scenario=sc, trials=3000, master_seed=5)

    delta = sc.delta
    hits = 0
    trials = 3000
    for t in range(trials):
        stream = seed_stream(99, "fullpath", t)
        pop_seed, w_seed, x_seed = stream.spawn(3)
        pop = sample_population(n, s, MeanDistribution.uniform(), sigma, rho, pop_seed)
        W = generate_traces(pop, l, "learning", w_seed)
        X = generate_traces(pop, m, "actual", x_seed)
        hits += abs(X.values[0].mean() - W.values[0].mean()) >= delta
    full_rate = hits / trials
    se = math.sqrt(report.empirical * (1 - report.empirical) / report.trials
                   + full_rate * (1 - full_rate) / trials)
    assert abs(report.empirical - full_rate) <= 3 * se


def test_learning_concentration_uses_exact_event():
    # the bound dominates even at a harsher-than-default scenario
    sc = BoundScenario(n=16, s=2, sigma=1.0, rho=0.0, l=256)
    report = validate_bound("learning_concentration", scenario=sc,
                            trials=2000, master_seed=8)
    assert report.satisfied
