"""The three-stage adversary.

Stage 1 reconstructs the association graph of the anonymized rows: an edge
joins two rows whose sample covariance clears a threshold, and groups are the
connected components. Stage 2 identifies which observed group corresponds to
the target user's (identified) learning group by minimizing the D metric
between group mean vectors, accepting only distances within
Delta_n = n^(-1/s - alpha''/4). Stage 3 matches individual users inside the
identified group by sorted pairing of the mean estimates. A perfect-prior
variant substitutes true means for learning averages throughout.

Success at trial level is exact recovery of the target user's hidden row,
which for continuous traces is equivalent to estimating every sample of that
user exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (AmbiguousMatch, IndexOutOfRange, InvalidConfig, NoMatch,
                     Unmatched)
from .matching import (MatchAssignment, MeanVector, empirical_mean_vector,
                       perm_inf_distance, true_mean_vector)
from .model import Permutation, TraceMatrix, UserPopulation

Mode = Literal["learning", "oracle"]
Graph = Literal["known", "recon"]
Ambiguity = Literal["nearest", "strict"]


@dataclass(frozen=True)
class ReconstructedGraph:
    """Adversary's view of the dependency structure among observed rows."""

    n: int
    edges: frozenset
    groups: list[list[int]]


@dataclass(frozen=True)
class AttackConfig:
    """Adversary parameters.

    mode "learning" estimates behavior from the learning set W; "oracle"
    uses the true means (perfect prior). graph "recon" reconstructs the
    observed-side graph from Y; "known" hands the adversary the true
    observed-side partition. ambiguity "nearest" resolves several
    sub-threshold group candidates by minimum distance; "strict" treats
    that situation as failure.
    """

    alpha: float
    alpha_prime: float
    s: int
    sigma: float
    cov_threshold: float
    mode: Mode = "learning"
    graph: Graph = "recon"
    ambiguity: Ambiguity = "nearest"

    def __post_init__(self):
        if self.alpha <= 0 or self.alpha_prime <= 0:
            raise InvalidConfig("alpha and alpha_prime must be > 0")
        if self.s < 1:
            raise InvalidConfig("s must be >= 1")
        if self.sigma <= 0:
            raise InvalidConfig("sigma must be > 0")
        if self.cov_threshold <= 0:
            raise InvalidConfig("cov_threshold must be > 0")
        if self.mode not in ("learning", "oracle"):
            raise InvalidConfig(f"unknown mode {self.mode!r}")
        if self.graph not in ("known", "recon"):
            raise InvalidConfig(f"unknown graph setting {self.graph!r}")
        if self.ambiguity not in ("nearest", "strict"):
            raise InvalidConfig(f"unknown ambiguity policy {self.ambiguity!r}")

    @property
    def alpha_pp(self) -> float:
        return min(self.alpha, self.alpha_prime)


@dataclass(frozen=True)
class StageSuccess:
    """Truth-evaluated flags; None when ground truth was not supplied."""

    graph_exact: bool | None
    group_correct: bool | None
    user1_correct: bool | None


@dataclass
class AttackResult:
    """Outcome of one attack: graph, group decision, partial permutation.

    group_match maps the attacked learning group (as a tuple of user ids) to
    the matched observed ids, or to the failure tag "nomatch"/"ambiguous".
    confidence holds each matched user's achieved mean distance.
    """

    reconstructed_graph: ReconstructedGraph
    target_group: list[int]
    group_match: dict[tuple[int, ...], "list[int] | str"]
    estimated_perm: dict[int, int]
    stage_success: StageSuccess
    confidence: dict[int, float] = field(default_factory=dict)
    achieved_distance: float = math.nan
    failure: str | None = None  # None | "nomatch" | "ambiguous" | "wrong"


def delta_n(n: int, s: int, alpha_pp: float) -> float:
    """Group-acceptance threshold n^(-1/s - alpha''/4)."""
    if n < 1 or s < 1:
        raise InvalidConfig("n and s must be >= 1")
    if alpha_pp <= 0:
        raise InvalidConfig("alpha'' must be > 0")
    return float(n) ** (-1.0 / s - alpha_pp / 4.0)


def required_length(n: int, s: int, alpha: float) -> int:
    """Trace length at the no-privacy threshold, ceil(n^(2/s + alpha)).

    The inner round guards exponent combinations that land exactly on an
    integer against float dust (e.g. 100^1.5).
    """
    if n < 1 or s < 1:
        raise InvalidConfig("n and s must be >= 1")
    if alpha <= 0:
        raise InvalidConfig("alpha must be > 0")
    return math.ceil(round(float(n) ** (2.0 / s + alpha), 9))


def default_cov_threshold(sigma: float, rho: float | None = None,
                          n: int | None = None, m: int | None = None) -> float:
    """Edge-detection threshold: rho sigma^2 / 2 when rho > 0 is known,
    otherwise the data-driven 4 sigma^2 sqrt(log n / m)."""
    if rho is not None and rho > 0:
        return rho * sigma**2 / 2.0
    if n is None or m is None:
        raise InvalidConfig("data-driven threshold needs n and m")
    return 4.0 * sigma**2 * math.sqrt(math.log(n) / m)


def graph_from_covariance(cov: np.ndarray, tau: float) -> ReconstructedGraph:
    """Threshold a covariance matrix into a graph; groups = components."""
    if tau <= 0:
        raise InvalidConfig("tau must be > 0")
    cov = np.atleast_2d(np.asarray(cov, dtype=float))
    n = cov.shape[0]
    adj = cov >= tau
    np.fill_diagonal(adj, False)
    adj |= adj.T  # covariance estimates are symmetric; keep the contract explicit
    _, labels = connected_components(csr_matrix(adj), directed=False)
    groups: dict[int, list[int]] = {}
    for u, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(u)
    group_list = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    iu, iv = np.triu_indices(n, k=1)
    mask = adj[iu, iv]
    edges = frozenset(zip(iu[mask].tolist(), iv[mask].tolist()))
    return ReconstructedGraph(n=n, edges=edges, groups=group_list)


def reconstruct_graph(Y: TraceMatrix, tau: float) -> ReconstructedGraph:
    """Stage 1: sample-covariance thresholding on the observed rows."""
    if Y.rows == 1:  # no pairs to test, and no covariance estimate needed
        return ReconstructedGraph(n=1, edges=frozenset(), groups=[[0]])
    if Y.cols < 2:
        raise InvalidConfig("graph reconstruction needs at least 2 samples per row")
    return graph_from_covariance(np.cov(Y.values), tau)


def true_observed_graph(pop: UserPopulation, perm: Permutation) -> ReconstructedGraph:
    """The exact association graph on observed row indices."""
    fwd = perm.forward
    groups = sorted((sorted(int(fwd[u]) for u in block) for block in pop.partition),
                    key=lambda g: g[0])
    edges = frozenset((min(a, b), max(a, b))
                      for g in groups for i, a in enumerate(g) for b in g[i + 1:])
    return ReconstructedGraph(n=pop.n, edges=edges, groups=groups)


def identify_group(learning_group: MeanVector, observed_groups, delta: float,
                   policy: Ambiguity = "strict"):
    """Stage 2: find the observed group matching a learning signature.

    Args:
        learning_group: length-s signature (learning averages or true means).
        observed_groups: nonempty list of (group id, MeanVector) candidates.
        delta: acceptance threshold on the D distance.
        policy: "strict" demands a unique sub-threshold candidate and raises
            AmbiguousMatch otherwise; "nearest" picks the minimum-distance
            sub-threshold candidate (ties: first in input order).

    Returns:
        (group id, MatchAssignment) for the accepted candidate.

    Raises:
        NoMatch: no candidate within delta.
        AmbiguousMatch: two or more within delta under "strict".
    """
    if not observed_groups:
        raise InvalidConfig("observed_groups must be nonempty")
    assignments = [(gid, perm_inf_distance(learning_group, vec))
                   for gid, vec in observed_groups]
    within = [(gid, a) for gid, a in assignments if a.distance <= delta]
    if not within:
        best = min(a.distance for _, a in assignments)
        raise NoMatch(f"no group within delta={delta:.6g} (best distance {best:.6g})")
    if policy == "strict" and len(within) > 1:
        raise AmbiguousMatch(f"{len(within)} groups within delta={delta:.6g}")
    return min(within, key=lambda pair: pair[1].distance)


def match_within_group(learning_means: MeanVector, observed_means: MeanVector,
                       observed_user_ids, delta: float) -> dict[int, int]:
    """Stage 3: sorted pairing of individual means inside the matched group.

    Returns a map learning-position -> observed user id containing only the
    pairings whose absolute difference is within delta; positions whose
    pairing exceeds delta are simply absent (their users stay unmatched).
    """
    if len(learning_means) != len(observed_means):
        raise InvalidConfig("learning and observed vectors must share a length")
    ids = list(observed_user_ids)
    if len(ids) != len(observed_means):
        raise InvalidConfig("observed_user_ids must align with observed_means")
    order_l = np.argsort(learning_means.values, kind="stable")
    order_o = np.argsort(observed_means.values, kind="stable")
    pairing: dict[int, int] = {}
    for pos_l, pos_o in zip(order_l, order_o):
        if abs(learning_means.values[pos_l] - observed_means.values[pos_o]) <= delta:
            pairing[int(pos_l)] = ids[int(pos_o)]
    return pairing


def _finish(result: AttackResult, truth, target_user: int) -> AttackResult:
    """Fill truth-dependent flags; classify completed-but-wrong outcomes."""
    if truth is None:
        return result
    pop, perm, graph_exact = truth
    group = result.group_match[tuple(result.target_group)]
    true_obs = sorted(int(perm.forward[u]) for u in result.target_group)
    group_correct = isinstance(group, list) and sorted(group) == true_obs
    user1_correct = bool(group_correct and
                         result.estimated_perm.get(target_user) == int(perm.forward[target_user]))
    result.stage_success = StageSuccess(graph_exact=graph_exact,
                                        group_correct=group_correct,
                                        user1_correct=user1_correct)
    if user1_correct:
        result.failure = None
    elif result.failure is None:
        result.failure = "wrong"
    return result


def run_attack(W: TraceMatrix, Y: TraceMatrix, cfg: AttackConfig,
               true_pop: UserPopulation | None = None,
               permutation: Permutation | None = None,
               target_user: int = 0) -> AttackResult:
    """End-to-end attack on one anonymized data set.

    Ground truth (true_pop, permutation) is required for graph="known" and
    for evaluating stage_success; mode="oracle" additionally requires
    true_pop for the means. Stage failures (NoMatch / AmbiguousMatch /
    rejected pairings) never raise; they are recorded on the result.
    """
    n = Y.rows
    if W.rows != n:
        raise InvalidConfig("W and Y must have the same number of rows")
    if cfg.mode == "oracle" and true_pop is None:
        raise InvalidConfig("perfect-prior mode requires the true population")
    if cfg.graph == "known" and (true_pop is None or permutation is None):
        raise InvalidConfig("known-graph mode requires true_pop and permutation")

    # target group on the learning side: known from identified data when the
    # truth is supplied, else reconstructed from W by the same thresholding
    if true_pop is not None:
        learning_group = list(true_pop.group_of(target_user))
    else:
        w_graph = reconstruct_graph(W, cfg.cov_threshold)
        learning_group = next(g for g in w_graph.groups if target_user in g)

    if cfg.graph == "known":
        graph = true_observed_graph(true_pop, permutation)
        graph_exact = True
    else:
        graph = reconstruct_graph(Y, cfg.cov_threshold)
        graph_exact = (graph.edges == true_observed_graph(true_pop, permutation).edges
                       if true_pop is not None and permutation is not None else None)

    truth = ((true_pop, permutation, graph_exact)
             if true_pop is not None and permutation is not None else None)
    key = tuple(learning_group)
    result = AttackResult(
        reconstructed_graph=graph,
        target_group=learning_group,
        group_match={key: "nomatch"},
        estimated_perm={},
        stage_success=StageSuccess(graph_exact, None, None),
    )

    if len(learning_group) != cfg.s:
        result.failure = "nomatch"
        return _finish(result, truth, target_user)

    if cfg.mode == "oracle":
        signature = true_mean_vector(true_pop, learning_group)
    else:
        signature = empirical_mean_vector(W, learning_group)

    delta = delta_n(n, cfg.s, cfg.alpha_pp)
    candidates = [(i, empirical_mean_vector(Y, g))
                  for i, g in enumerate(graph.groups) if len(g) == cfg.s]
    if not candidates:
        result.failure = "nomatch"
        return _finish(result, truth, target_user)

    try:
        gid, assignment = identify_group(signature, candidates, delta,
                                         policy=cfg.ambiguity)
    except NoMatch:
        result.failure = "nomatch"
        return _finish(result, truth, target_user)
    except AmbiguousMatch:
        result.group_match[key] = "ambiguous"
        result.failure = "ambiguous"
        return _finish(result, truth, target_user)

    matched_ids = graph.groups[gid]
    result.group_match[key] = list(matched_ids)
    result.achieved_distance = assignment.distance

    observed = empirical_mean_vector(Y, matched_ids)
    pairing = match_within_group(signature, observed, matched_ids, delta)
    for pos, oid in pairing.items():
        user = learning_group[pos]
        result.estimated_perm[user] = oid
        j = matched_ids.index(oid)
        result.confidence[user] = float(abs(signature.values[pos] - observed.values[j]))

    if target_user not in result.estimated_perm:
        result.failure = "nomatch"  # user 1's own pairing was rejected
    return _finish(result, truth, target_user)


def estimate_data_point(Y: TraceMatrix, pi_hat: dict[int, int], u: int, k: int) -> float:
    """Adversary's estimate of X_u(k): the k-th sample of the row matched to u."""
    if u not in pi_hat:
        raise Unmatched(f"user {u} is not covered by the estimated permutation")
    if not 0 <= k < Y.cols:
        raise IndexOutOfRange(f"time index {k} out of range for {Y.cols} samples")
    return float(Y.values[pi_hat[u], k])
