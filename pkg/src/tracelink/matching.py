"""The permutation-minimized L-infinity distance D and its matching machinery.

D(U, V) = min over permutations pi of max_i |U_i - V_pi(i)|, a pseudometric
on length-s real vectors that ignores coordinate order (two vectors are at
distance 0 iff they agree as multisets). For points on the real line the
min-max (bottleneck) matching is achieved by pairing both vectors in sorted
order, so D costs O(s log s); an exhaustive factorial oracle is kept for
cross-checking at s <= 7.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import IndexOutOfRange, LengthMismatch, TooLarge
from .model import Permutation, TraceMatrix, UserPopulation

Source = Literal["learning", "observed", "true"]

_ORACLE_MAX_S = 7
# permutation tables are tiny (<= 7! x 7) and shared across calls
_PERM_TABLES: dict[int, np.ndarray] = {}


@dataclass(frozen=True)
class MeanVector:
    """A length-s vector of per-user averages (or true means) with its origin."""

    values: np.ndarray
    source: Source

    def __post_init__(self):
        if self.values.ndim != 1 or self.values.shape[0] < 1:
            raise LengthMismatch("mean vector must be 1-d and nonempty")
        if not np.all(np.isfinite(self.values)):
            raise LengthMismatch("mean vector entries must be finite")

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class MatchAssignment:
    """An achieved D value plus one permutation attaining it.

    perm maps positions of U to positions of V: distance equals
    max_i |U[i] - V[perm.forward[i]]|.
    """

    distance: float
    perm: Permutation


def empirical_mean_vector(traces: TraceMatrix, user_indices) -> MeanVector:
    """Row means of the selected users, in the given index order."""
    idx = np.asarray(user_indices, dtype=np.intp)
    if idx.size == 0:
        raise IndexOutOfRange("user_indices must be nonempty")
    if idx.min() < 0 or idx.max() >= traces.rows:
        raise IndexOutOfRange(f"user indices out of range for {traces.rows} rows")
    source: Source = "learning" if traces.role == "learning" else "observed"
    return MeanVector(values=traces.values[idx].mean(axis=1), source=source)


def true_mean_vector(pop: UserPopulation, user_indices) -> MeanVector:
    """The true means of the selected users (perfect-prior adversary input)."""
    idx = np.asarray(user_indices, dtype=np.intp)
    if idx.size == 0:
        raise IndexOutOfRange("user_indices must be nonempty")
    if idx.min() < 0 or idx.max() >= pop.n:
        raise IndexOutOfRange(f"user indices out of range for n={pop.n}")
    return MeanVector(values=pop.means[idx].copy(), source="true")


def _check_lengths(U: MeanVector, V: MeanVector) -> int:
    if len(U) != len(V):
        raise LengthMismatch(f"length mismatch: {len(U)} vs {len(V)}")
    return len(U)


def perm_inf_distance(U: MeanVector, V: MeanVector) -> MatchAssignment:
    """Exact D(U, V) by sorted-order matching.

    Sorting both vectors and pairing ranks minimizes the maximum pairwise
    distance for reals on a line; the returned permutation is the one induced
    by stable sorts (ties broken by original index ascending).
    """
    s = _check_lengths(U, V)
    order_u = np.argsort(U.values, kind="stable")
    order_v = np.argsort(V.values, kind="stable")
    forward = np.empty(s, dtype=np.intp)
    forward[order_u] = order_v
    distance = float(np.max(np.abs(U.values[order_u] - V.values[order_v])))
    return MatchAssignment(distance=distance, perm=Permutation.from_forward(forward))


def _perm_table(s: int) -> np.ndarray:
    if s not in _PERM_TABLES:
        _PERM_TABLES[s] = np.array(list(itertools.permutations(range(s))), dtype=np.intp)
    return _PERM_TABLES[s]


def bottleneck_assignment_oracle(U: MeanVector, V: MeanVector) -> MatchAssignment:
    """Exhaustive D(U, V) over all s! permutations (test oracle, s <= 7).

    Ties resolve to the lexicographically smallest permutation, so the result
    is deterministic.
    """
    s = _check_lengths(U, V)
    if s > _ORACLE_MAX_S:
        raise TooLarge(f"factorial oracle limited to s <= {_ORACLE_MAX_S}, got {s}")
    perms = _perm_table(s)
    costs = np.max(np.abs(U.values[None, :] - V.values[perms]), axis=1)
    best = int(np.argmin(costs))
    return MatchAssignment(distance=float(costs[best]),
                           perm=Permutation.from_forward(perms[best]))
