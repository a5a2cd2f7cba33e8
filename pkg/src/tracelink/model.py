"""Ground-truth population model, correlated Gaussian traces, anonymization.

The world being simulated: n users partitioned into groups. User u emits
samples N(mu_u, sigma^2), i.i.d. across time, with intra-group correlation
rho between same-group users at equal times (equicorrelated cliques, zero
covariance across groups). Three matrices are derived per experiment:

    W  learning set, n x l, identified rows;
    X  actual set, n x m, the data to protect;
    Y  observed set, a row-permutation of X by a hidden uniform permutation,
       Y[pi(u)] = X[u].

All randomness flows through explicit seeds (see tracelink.rng); identical
(config, seed) reproduces bit-identical objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import numpy as np
from scipy import stats

from .errors import InvalidConfig
from .rng import as_generator

Role = Literal["learning", "actual", "observed"]


@dataclass(frozen=True)
class MeanDistribution:
    """Distribution of the per-user true means mu_u.

    kind "uniform": params (a, b), density bound 1/(b-a).
    kind "truncated-normal": params (center, spread, a, b), a normal
    N(center, spread^2) conditioned on [a, b]; the density bound is the pdf
    maximum, attained at center clipped into [a, b].
    """

    kind: Literal["uniform", "truncated-normal"]
    params: tuple[float, ...]

    def __post_init__(self):
        if self.kind == "uniform":
            a, b = self.params
            if not b > a:
                raise InvalidConfig("uniform requires b > a")
        elif self.kind == "truncated-normal":
            center, spread, a, b = self.params
            if not spread > 0:
                raise InvalidConfig("truncated-normal requires spread > 0")
            if not b > a:
                raise InvalidConfig("truncated-normal requires b > a")
        else:
            raise InvalidConfig(f"unknown mean distribution kind: {self.kind!r}")

    @classmethod
    def uniform(cls, a: float = 0.0, b: float = 1.0) -> "MeanDistribution":
        return cls("uniform", (float(a), float(b)))

    @classmethod
    def truncated_normal(cls, center: float, spread: float, a: float, b: float) -> "MeanDistribution":
        return cls("truncated-normal", (float(center), float(spread), float(a), float(b)))

    def _truncnorm(self):
        center, spread, a, b = self.params
        return stats.truncnorm((a - center) / spread, (b - center) / spread,
                               loc=center, scale=spread)

    @property
    def density_bound(self) -> float:
        """delta, the supremum of the density."""
        if self.kind == "uniform":
            a, b = self.params
            return 1.0 / (b - a)
        center, spread, a, b = self.params
        mode = min(max(center, a), b)
        return float(self._truncnorm().pdf(mode))

    def density(self, x) -> np.ndarray:
        if self.kind == "uniform":
            a, b = self.params
            x = np.asarray(x, dtype=float)
            return np.where((x >= a) & (x <= b), 1.0 / (b - a), 0.0)
        return np.asarray(self._truncnorm().pdf(x), dtype=float)

    def sample(self, size: int, rng) -> np.ndarray:
        rng = as_generator(rng)
        if self.kind == "uniform":
            a, b = self.params
            return rng.uniform(a, b, size)
        return np.asarray(self._truncnorm().rvs(size=size, random_state=rng), dtype=float)


@dataclass(eq=False)
class UserPopulation:
    """Hidden ground truth: means, noise scale, group partition, covariance.

    partition blocks are sorted lists of 0-based user indices, disjoint and
    covering range(n). covariance is sigma^2 on the diagonal, rho * sigma^2
    within a group, 0 across groups; positive definite for rho in [0, 1)
    with minimum eigenvalue sigma^2 (1 - rho).
    """

    n: int
    means: np.ndarray
    sigma: float
    partition: list[list[int]]
    rho: float
    covariance: np.ndarray = field(repr=False)

    @cached_property
    def cholesky(self) -> np.ndarray:
        """Lower Cholesky factor of the covariance, computed once."""
        return np.linalg.cholesky(self.covariance)

    def group_of(self, user: int) -> list[int]:
        for block in self.partition:
            if user in block:
                return block
        raise InvalidConfig(f"user {user} not covered by the partition")


@dataclass(frozen=True)
class TraceMatrix:
    """An n x T matrix of real samples with a role tag."""

    values: np.ndarray
    role: Role

    def __post_init__(self):
        if self.values.ndim != 2:
            raise InvalidConfig("trace values must be a 2-d array")
        if not np.all(np.isfinite(self.values)):
            raise InvalidConfig("trace values must be finite")

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class Permutation:
    """A bijection on range(n), stored both ways: forward[u] = pi(u)."""

    forward: np.ndarray
    inverse: np.ndarray

    @classmethod
    def from_forward(cls, forward) -> "Permutation":
        forward = np.asarray(forward, dtype=np.intp)
        n = forward.shape[0]
        if sorted(forward.tolist()) != list(range(n)):
            raise InvalidConfig("forward is not a bijection on range(n)")
        return cls(forward=forward, inverse=np.argsort(forward))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        idx = np.arange(n, dtype=np.intp)
        return cls(forward=idx, inverse=idx.copy())

    def __len__(self) -> int:
        return self.forward.shape[0]


def _build_covariance(n: int, partition: list[list[int]], sigma: float, rho: float) -> np.ndarray:
    cov = np.zeros((n, n))
    for block in partition:
        idx = np.asarray(block, dtype=np.intp)
        cov[np.ix_(idx, idx)] = rho * sigma**2
    np.fill_diagonal(cov, sigma**2)
    return cov


def sample_population(n: int, s: int, mean_dist: MeanDistribution, sigma: float,
                      rho: float, rng_seed, sizes: list[int] | None = None) -> UserPopulation:
    """Draw a population: i.i.d. means and an equicorrelated group structure.

    Args:
        n: user count, must be divisible by s unless explicit sizes are given.
        s: uniform group size.
        mean_dist: distribution of the true means.
        sigma: shared per-user standard deviation, > 0.
        rho: intra-group correlation in [0, 1).
        rng_seed: int, SeedSequence, or Generator.
        sizes: optional explicit group sizes (must sum to n); overrides s.

    Returns:
        UserPopulation with partition [[0..s-1], [s..2s-1], ...] (or the
        consecutive blocks given by sizes).
    """
    if sigma <= 0:
        raise InvalidConfig("sigma must be > 0")
    if not 0 <= rho < 1:
        raise InvalidConfig("rho must lie in [0, 1)")
    if n < 1:
        raise InvalidConfig("n must be >= 1")
    if sizes is None:
        if s < 1 or n % s != 0:
            raise InvalidConfig("n must be divisible by the group size s")
        sizes = [s] * (n // s)
    elif sum(sizes) != n or any(sz < 1 for sz in sizes):
        raise InvalidConfig("sizes must be positive and sum to n")

    partition, start = [], 0
    for sz in sizes:
        partition.append(list(range(start, start + sz)))
        start += sz

    rng = as_generator(rng_seed)
    means = mean_dist.sample(n, rng)
    cov = _build_covariance(n, partition, sigma, rho)
    return UserPopulation(n=n, means=means, sigma=sigma, partition=partition,
                          rho=rho, covariance=cov)


def generate_traces(pop: UserPopulation, T: int, role: Role, rng_seed) -> TraceMatrix:
    """Sample an n x T matrix with i.i.d. N(means, covariance) columns."""
    if T < 1:
        raise InvalidConfig("T must be >= 1")
    rng = as_generator(rng_seed)
    z = rng.standard_normal((pop.n, T))
    values = pop.means[:, None] + pop.cholesky @ z
    return TraceMatrix(values=values, role=role)


def permute_rows(X: TraceMatrix, perm: Permutation) -> TraceMatrix:
    """Apply a known permutation: output row pi(u) is X row u."""
    if len(perm) != X.rows:
        raise InvalidConfig("permutation length must equal the row count")
    return TraceMatrix(values=X.values[perm.inverse], role="observed")


def anonymize(X: TraceMatrix, rng_seed) -> tuple[TraceMatrix, Permutation]:
    """Hide row identities behind a uniformly random permutation.

    Returns (Y, pi) with Y row pi(u) equal to X row u elementwise, i.e.
    Y row v holds the trace of user pi^-1(v).
    """
    if X.role != "actual":
        raise InvalidConfig("anonymize expects the actual set (role='actual')")
    rng = as_generator(rng_seed)
    perm = Permutation.from_forward(rng.permutation(X.rows))
    return permute_rows(X, perm), perm
