"""tracelink: de-anonymization of correlated Gaussian time series.

Library plus simulation CLI for a three-stage matching attack on anonymized
traces of dependent users (graph reconstruction, group identification,
within-group matching), analytic failure-probability bounds with Monte Carlo
validators, and a reproducible sweep harness that locates the privacy phase
transition in the trace length. All user indices are 0-based.
"""

__version__ = "0.1.0"

from .attack import (AttackConfig, AttackResult, ReconstructedGraph,
                     StageSuccess, default_cov_threshold, delta_n,
                     estimate_data_point, identify_group, match_within_group,
                     reconstruct_graph, required_length, run_attack,
                     true_observed_graph)
from .bounds import (BOUND_NAMES, BoundReport, BoundScenario,
                     group_mean_collision_bound, learning_concentration_bound,
                     learning_concentration_bound_asymptotic,
                     mean_proximity_bound, pair_mismatch_bound,
                     pair_mismatch_bound_asymptotic, validate_bound)
from .errors import (AmbiguousMatch, IndexOutOfRange, InvalidConfig,
                     LengthMismatch, NoMatch, TooLarge, TracelinkError,
                     UnknownBound, Unmatched)
from .matching import (MatchAssignment, MeanVector,
                       bottleneck_assignment_oracle, empirical_mean_vector,
                       perm_inf_distance, true_mean_vector)
from .model import (MeanDistribution, Permutation, TraceMatrix,
                    UserPopulation, anonymize, generate_traces, permute_rows,
                    sample_population)
from .rng import as_generator, seed_stream
from .simharness import (CSV_COLUMNS, CSV_HEADER, ExperimentConfig, ResultRow,
                         TrialResult, aggregate, parse_rows_csv, rows_to_csv,
                         run_bound_suite, run_sweep, run_trial,
                         write_rows_csv, write_rows_json)

__all__ = [name for name in dir() if not name.startswith("_")]
