"""Acceptance gate: one test per criterion, printing a pass/fail line each.

A1  metric oracle equivalence (exact, 10^4 pairs, < 5 s)
A2  graph reconstruction rate >= 0.95
A3  above-threshold attack success >= 0.90
A4  below-threshold success <= 0.25
A5  success monotone in the length multiplier (2 pooled stderr slack)
A6  all four analytic bounds dominate their Monte Carlo rates
A7  perfect-prior adversary at least as good as learning adversary (paired)
A8  byte-identical CSV at any worker count
"""

import dataclasses
import math
import time

import numpy as np

from tracelink import (ExperimentConfig, MeanDistribution, MeanVector,
                       anonymize, bottleneck_assignment_oracle,
                       generate_traces, perm_inf_distance, reconstruct_graph,
                       run_bound_suite, run_sweep, run_trial,
                       sample_population, seed_stream, true_observed_graph)

UNIF = MeanDistribution.uniform()


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"{name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


def test_a1_metric_oracle_equivalence():
    rng = np.random.default_rng(20260814)
    pairs = []
    sizes = [2, 3, 4, 5, 6, 7]
    for i in range(10_000):
        s = sizes[i % len(sizes)]
        pairs.append((MeanVector(rng.normal(size=s), "learning"),
                      MeanVector(rng.normal(size=s), "observed")))
    start = time.perf_counter()
    mismatches = sum(
        perm_inf_distance(u, v).distance != bottleneck_assignment_oracle(u, v).distance
        for u, v in pairs)
    elapsed = time.perf_counter() - start
    _report("A1 metric-oracle-equivalence",
            mismatches == 0 and elapsed < 5.0,
            f"mismatches={mismatches}/10000, {elapsed:.2f}s")


def test_a2_graph_reconstruction_rate():
    n, s, sigma, rho, tau, m, trials = 32, 2, 1.0, 0.5, 0.25, 1024, 200
    exact = 0
    for t in range(trials):
        stream = seed_stream(1002, "acceptance:a2", t)
        pop_seed, x_seed, p_seed = stream.spawn(3)
        pop = sample_population(n, s, UNIF, sigma, rho, pop_seed)
        X = generate_traces(pop, m, "actual", x_seed)
        Y, perm = anonymize(X, p_seed)
        graph = reconstruct_graph(Y, tau)
        exact += graph.edges == true_observed_graph(pop, perm).edges
    rate = exact / trials
    _report("A2 graph-reconstruction", rate >= 0.95, f"exact rate={rate:.3f}")


def _phase_cfg(trials, multipliers, seed=1003):
    return ExperimentConfig(n_values=(16,), s=2, alpha=1.0, alpha_prime=1.0,
                            sigma=0.1, rho=0.5, trials_per_point=trials,
                            master_seed=seed, mode="learning", graph="recon",
                            length_multipliers=multipliers)


def test_a3_above_threshold_success():
    row = run_sweep(_phase_cfg(100, (1.0,)))[0]
    _report("A3 above-threshold-success",
            row.user1_correct_rate >= 0.90,
            f"user1 rate={row.user1_correct_rate:.3f} at m=l={row.m}")


def test_a4_below_threshold_failure():
    row = run_sweep(_phase_cfg(200, (4 / 256,)))[0]
    _report("A4 below-threshold-failure",
            row.m == 4 and row.l == 4 and row.user1_correct_rate <= 0.25,
            f"user1 rate={row.user1_correct_rate:.3f} at m=l={row.m}")


def test_a5_monotone_in_multiplier():
    mults = (0.05, 0.2, 0.5, 1.0, 2.0)
    rows = run_sweep(_phase_cfg(200, mults))
    rates = [row.user1_correct_rate for row in rows]
    ok = True
    for lo, hi in zip(rows, rows[1:]):
        pooled = (lo.user1_correct_rate + hi.user1_correct_rate) / 2
        se = math.sqrt(max(pooled * (1 - pooled), 1e-12) *
                       (1 / lo.trials + 1 / hi.trials))
        if hi.user1_correct_rate < lo.user1_correct_rate - 2 * se:
            ok = False
    _report("A5 monotone-in-multiplier", ok,
            "rates=" + "/".join(f"{r:.3f}" for r in rates))


def test_a6_bound_dominance():
    reports = run_bound_suite(trials=10_000, master_seed=0)
    ok = all(rep.satisfied for rep in reports)
    detail = "; ".join(f"{rep.name}: emp={rep.empirical:.4f} <= "
                       f"bound={min(rep.analytic, 1.0):.4f}+3se"
                       for rep in reports)
    _report("A6 bound-dominance", ok and len(reports) == 4, detail)


def test_a7_perfect_prior_dominance():
    trials = 200
    learn_cfg = _phase_cfg(trials, (1.0,), seed=1007)
    oracle_cfg = dataclasses.replace(learn_cfg, mode="oracle")
    learn_hits = np.empty(trials, dtype=int)
    oracle_hits = np.empty(trials, dtype=int)
    for t in range(trials):
        # same seed stream on both sides: the paired data differ only in prior
        learn_hits[t] = run_trial(learn_cfg, 16, 1.0, t).user1_correct
        oracle_hits[t] = run_trial(oracle_cfg, 16, 1.0, t).user1_correct
    diffs = oracle_hits - learn_hits
    tol = 3 * float(np.std(diffs, ddof=1)) * math.sqrt(trials)
    ok = oracle_hits.sum() >= learn_hits.sum() - tol
    _report("A7 perfect-prior-dominance", ok,
            f"oracle={oracle_hits.sum()}, learning={learn_hits.sum()}, "
            f"tol={tol:.2f}")


def test_a8_csv_determinism(tmp_path):
    cfg = ExperimentConfig(n_values=(8, 16), s=2, sigma=0.1, rho=0.5,
                           trials_per_point=25, master_seed=1008,
                           length_multipliers=(0.2, 1.0))
    paths = [tmp_path / f"sweep_w{w}.csv" for w in (1, 4)]
    run_sweep(cfg, workers=1, out_path=str(paths[0]))
    run_sweep(cfg, workers=4, out_path=str(paths[1]))
    again = tmp_path / "sweep_again.csv"
    run_sweep(cfg, workers=1, out_path=str(again))
    identical = (paths[0].read_bytes() == paths[1].read_bytes()
                 == again.read_bytes())
    _report("A8 csv-determinism", identical,
            f"{paths[0].stat().st_size} bytes, workers 1 vs 4 vs rerun")
