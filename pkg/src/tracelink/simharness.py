"""Experiment harness: trial scheduling, sweeps, aggregation, persistence.

A sweep runs trials_per_point independent end-to-end trials at every
(n, multiplier) grid point, where the multiplier scales the trace lengths
relative to the no-privacy threshold: m = ceil(mult * n^(2/s + alpha)) and
l = ceil(mult * n^(2/s + alpha')). Each trial is fully determined by
(master_seed, n, multiplier, trial_index) through the seed-stream contract,
so results are bit-identical at any worker count and the CSV output is
byte-stable. Trial streams do not depend on mode/graph/ambiguity, which
makes adversary variants comparable on paired data.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from . import __version__
from .attack import AttackConfig, default_cov_threshold, required_length, run_attack
from .bounds import BOUND_NAMES, BoundReport, BoundScenario, validate_bound
from .errors import InvalidConfig
from .model import MeanDistribution, anonymize, generate_traces, sample_population
from .rng import seed_stream

CSV_COLUMNS = ("n", "s", "m", "l", "multiplier", "mode", "graph", "trials",
               "graph_exact_rate", "group_correct_rate", "user1_correct_rate",
               "stderr_user1", "mean_distance", "failures_nomatch",
               "failures_ambiguous", "failures_wrong")
CSV_HEADER = ",".join(CSV_COLUMNS)

_MODE_ALIASES = {"learning": "learning", "learning-data": "learning",
                 "oracle": "oracle", "perfect-prior": "oracle"}
_GRAPH_ALIASES = {"recon": "recon", "reconstructed": "recon", "known": "known"}


def canonical_mode(value: str) -> str:
    try:
        return _MODE_ALIASES[value]
    except KeyError:
        raise InvalidConfig(f"unknown mode {value!r}") from None


def canonical_graph(value: str) -> str:
    try:
        return _GRAPH_ALIASES[value]
    except KeyError:
        raise InvalidConfig(f"unknown graph setting {value!r}") from None


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep's full parameterization (execution details excluded)."""

    n_values: tuple[int, ...] = (16,)
    s: int = 2
    alpha: float = 1.0
    alpha_prime: float = 1.0
    sigma: float = 0.1
    rho: float = 0.5
    mean_dist: MeanDistribution = field(default_factory=MeanDistribution.uniform)
    trials_per_point: int = 100
    master_seed: int = 0
    mode: str = "learning"
    graph: str = "recon"
    length_multipliers: tuple[float, ...] = (1.0,)
    ambiguity: str = "nearest"

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(v) for v in self.n_values))
        object.__setattr__(self, "length_multipliers",
                           tuple(float(v) for v in self.length_multipliers))
        object.__setattr__(self, "mode", canonical_mode(self.mode))
        object.__setattr__(self, "graph", canonical_graph(self.graph))
        if self.trials_per_point < 1:
            raise InvalidConfig("trials_per_point must be >= 1")
        if any(mult <= 0 for mult in self.length_multipliers):
            raise InvalidConfig("length multipliers must be > 0")
        if self.s < 1:
            raise InvalidConfig("s must be >= 1")
        if any(n % self.s != 0 for n in self.n_values):
            raise InvalidConfig("every n must be divisible by s")
        if self.sigma <= 0:
            raise InvalidConfig("sigma must be > 0")
        if not 0 <= self.rho < 1:
            raise InvalidConfig("rho must lie in [0, 1)")
        if self.alpha <= 0 or self.alpha_prime <= 0:
            raise InvalidConfig("alpha and alpha_prime must be > 0")
        if self.ambiguity not in ("nearest", "strict"):
            raise InvalidConfig(f"unknown ambiguity policy {self.ambiguity!r}")

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        """Build from a flat key-value document (config-file format)."""
        aliases = {"n": "n_values", "trials": "trials_per_point",
                   "seed": "master_seed", "multipliers": "length_multipliers"}
        known = {"n_values", "s", "alpha", "alpha_prime", "sigma", "rho",
                 "trials_per_point", "master_seed", "mode", "graph",
                 "length_multipliers", "ambiguity", "mean_dist", "mean_params"}
        kwargs: dict = {}
        for key, value in raw.items():
            key = aliases.get(key, key)
            if key not in known:
                raise InvalidConfig(f"unknown config key {key!r}")
            kwargs[key] = value
        if "n_values" in kwargs and isinstance(kwargs["n_values"], (int, float)):
            kwargs["n_values"] = [int(kwargs["n_values"])]
        kind = kwargs.pop("mean_dist", None)
        params = kwargs.pop("mean_params", None)
        if kind is not None:
            kwargs["mean_dist"] = MeanDistribution(kind, tuple(params or (0.0, 1.0)))
        elif params is not None:
            kwargs["mean_dist"] = MeanDistribution("uniform", tuple(params))
        return cls(**kwargs)


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one end-to-end trial (stage flags always truth-evaluated)."""

    n: int
    s: int
    m: int
    l: int
    seed: int
    graph_exact: bool
    group_correct: bool
    user1_correct: bool
    achieved_distance: float
    wall_time: float
    failure: str | None

    def __post_init__(self):
        if self.user1_correct and not self.group_correct:
            raise InvalidConfig("user1_correct requires group_correct")


def _lengths(cfg: ExperimentConfig, n: int, multiplier: float) -> tuple[int, int]:
    m = max(1, math.ceil(round(multiplier * required_length(n, cfg.s, cfg.alpha), 9)))
    l = max(1, math.ceil(round(multiplier * required_length(n, cfg.s, cfg.alpha_prime), 9)))
    return m, l


def run_trial(cfg: ExperimentConfig, n: int, multiplier: float,
              trial_index: int) -> TrialResult:
    """One end-to-end sample: population, traces, anonymization, attack."""
    if n % cfg.s != 0:
        raise InvalidConfig("n must be divisible by s")
    m, l = _lengths(cfg, n, multiplier)
    parent = seed_stream(cfg.master_seed, f"trial:n={n}:mult={multiplier!r}", trial_index)
    seed_id = int(parent.generate_state(1)[0])
    pop_seed, w_seed, x_seed, perm_seed = parent.spawn(4)

    pop = sample_population(n, cfg.s, cfg.mean_dist, cfg.sigma, cfg.rho, pop_seed)
    W = generate_traces(pop, l, "learning", w_seed)
    X = generate_traces(pop, m, "actual", x_seed)
    Y, perm = anonymize(X, perm_seed)

    tau = default_cov_threshold(cfg.sigma, cfg.rho if cfg.rho > 0 else None, n=n, m=m)
    attack_cfg = AttackConfig(alpha=cfg.alpha, alpha_prime=cfg.alpha_prime, s=cfg.s,
                              sigma=cfg.sigma, cov_threshold=tau, mode=cfg.mode,
                              graph=cfg.graph, ambiguity=cfg.ambiguity)
    start = time.perf_counter()
    res = run_attack(W, Y, attack_cfg, true_pop=pop, permutation=perm)
    wall = time.perf_counter() - start
    flags = res.stage_success
    return TrialResult(n=n, s=cfg.s, m=m, l=l, seed=seed_id,
                       graph_exact=bool(flags.graph_exact),
                       group_correct=bool(flags.group_correct),
                       user1_correct=bool(flags.user1_correct),
                       achieved_distance=res.achieved_distance,
                       wall_time=wall, failure=res.failure)


@dataclass(frozen=True)
class ResultRow:
    """Aggregate of all trials at one (n, multiplier) grid point."""

    n: int
    s: int
    m: int
    l: int
    multiplier: float
    mode: str
    graph: str
    trials: int
    graph_exact_rate: float
    group_correct_rate: float
    user1_correct_rate: float
    stderr_user1: float
    mean_distance: float
    failures_nomatch: int
    failures_ambiguous: int
    failures_wrong: int

    def to_csv_row(self) -> str:
        return ",".join([
            str(self.n), str(self.s), str(self.m), str(self.l),
            repr(float(self.multiplier)), self.mode, self.graph,
            str(self.trials), repr(float(self.graph_exact_rate)),
            repr(float(self.group_correct_rate)),
            repr(float(self.user1_correct_rate)),
            repr(float(self.stderr_user1)), repr(float(self.mean_distance)),
            str(self.failures_nomatch), str(self.failures_ambiguous),
            str(self.failures_wrong),
        ])

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in CSV_COLUMNS}


def aggregate(cfg: ExperimentConfig, n: int, multiplier: float,
              results: Iterable[TrialResult]) -> ResultRow:
    """Deterministic reduction of one grid point's trials.

    Callers must pass results in trial-index order; all statistics are then
    independent of how the trials were scheduled.
    """
    results = list(results)
    trials = len(results)
    if trials == 0:
        raise InvalidConfig("cannot aggregate zero trials")
    m, l = results[0].m, results[0].l
    graph_hits = sum(r.graph_exact for r in results)
    group_hits = sum(r.group_correct for r in results)
    user1_hits = sum(r.user1_correct for r in results)
    nomatch = sum(r.failure == "nomatch" for r in results)
    ambiguous = sum(r.failure == "ambiguous" for r in results)
    wrong = sum(r.failure == "wrong" for r in results)
    dist_sum, dist_count = 0.0, 0
    for r in results:  # index order: float summation order is fixed
        if not math.isnan(r.achieved_distance):
            dist_sum += r.achieved_distance
            dist_count += 1
    p1 = user1_hits / trials
    return ResultRow(
        n=n, s=cfg.s, m=m, l=l, multiplier=float(multiplier),
        mode=cfg.mode, graph=cfg.graph, trials=trials,
        graph_exact_rate=graph_hits / trials,
        group_correct_rate=group_hits / trials,
        user1_correct_rate=p1,
        stderr_user1=math.sqrt(p1 * (1 - p1) / trials),
        mean_distance=dist_sum / dist_count if dist_count else math.nan,
        failures_nomatch=nomatch, failures_ambiguous=ambiguous,
        failures_wrong=wrong,
    )


def _trial_spec(args) -> TrialResult:
    cfg, n, multiplier, index = args
    return run_trial(cfg, n, multiplier, index)


def run_sweep(cfg: ExperimentConfig, workers: int = 1,
              out_path: str | None = None) -> list[ResultRow]:
    """Run the full (n, multiplier) grid; optionally persist CSV or JSON.

    Rows come out sorted by (n, multiplier). The worker count affects
    scheduling only; outputs are byte-identical for any value.
    """
    if workers < 1:
        raise InvalidConfig("workers must be >= 1")
    grid = sorted((n, mult) for n in cfg.n_values for mult in cfg.length_multipliers)
    specs = [(cfg, n, mult, t) for n, mult in grid
             for t in range(cfg.trials_per_point)]
    if workers == 1 or not specs:
        outcomes = [_trial_spec(spec) for spec in specs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, len(specs) // (workers * 8))
            outcomes = list(pool.map(_trial_spec, specs, chunksize=chunk))

    rows = []
    for i, (n, mult) in enumerate(grid):
        start = i * cfg.trials_per_point
        rows.append(aggregate(cfg, n, mult,
                              outcomes[start:start + cfg.trials_per_point]))
    if out_path is not None:
        if str(out_path).endswith(".json"):
            write_rows_json(rows, cfg.master_seed, out_path)
        else:
            write_rows_csv(rows, out_path)
    return rows


def rows_to_csv(rows: list[ResultRow]) -> str:
    return "\n".join([CSV_HEADER] + [row.to_csv_row() for row in rows]) + "\n"


def write_rows_csv(rows: list[ResultRow], path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(rows_to_csv(rows))


def write_rows_json(rows: list[ResultRow], master_seed: int, path) -> None:
    def clean(row: dict) -> dict:
        # strict JSON has no NaN literal; absent distances become null
        if math.isnan(row["mean_distance"]):
            row["mean_distance"] = None
        return row

    doc = {"master_seed": master_seed, "version": __version__,
           "rows": [clean(row.to_dict()) for row in rows]}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, allow_nan=False)
        fh.write("\n")


def parse_rows_csv(path) -> list[ResultRow]:
    """Read back an emitted CSV; exact round-trip of every field."""
    with open(path, newline="") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise InvalidConfig("CSV header does not match the result schema")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(CSV_COLUMNS):
            raise InvalidConfig("CSV row width does not match the schema")
        rows.append(ResultRow(
            n=int(parts[0]), s=int(parts[1]), m=int(parts[2]), l=int(parts[3]),
            multiplier=float(parts[4]), mode=parts[5], graph=parts[6],
            trials=int(parts[7]), graph_exact_rate=float(parts[8]),
            group_correct_rate=float(parts[9]), user1_correct_rate=float(parts[10]),
            stderr_user1=float(parts[11]), mean_distance=float(parts[12]),
            failures_nomatch=int(parts[13]), failures_ambiguous=int(parts[14]),
            failures_wrong=int(parts[15]),
        ))
    return rows


def run_bound_suite(trials: int = 10_000, master_seed: int = 0,
                    scenarios: dict[str, BoundScenario] | None = None,
                    bound_names: tuple[str, ...] | None = None,
                    out_path: str | None = None) -> list[BoundReport]:
    """Validate every registered bound (or a selection) on its scenario."""
    names = bound_names if bound_names is not None else BOUND_NAMES
    reports = [validate_bound(name,
                              scenario=(scenarios or {}).get(name),
                              trials=trials, master_seed=master_seed)
               for name in names]
    if out_path is not None:
        doc = {"master_seed": master_seed, "version": __version__,
               "reports": [rep.to_dict() for rep in reports]}
        with open(out_path, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return reports
