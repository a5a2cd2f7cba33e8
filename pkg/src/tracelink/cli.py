"""Command-line interface.

    tracelink sweep  --n 16,32 --multipliers 0.2,1.0 --trials 100 --out r.csv
    tracelink bounds --trials 10000 --out bounds.json
    tracelink trial  --n 16 --multiplier 1.0 --trial-index 0

Exit codes: 0 success, 1 invalid configuration (including bad flags),
2 I/O failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .bounds import BOUND_NAMES
from .errors import InvalidConfig, TracelinkError
from .simharness import (ExperimentConfig, rows_to_csv, run_bound_suite,
                         run_sweep, run_trial)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; the contract reserves 2 for I/O."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip() != ""]


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip() != ""]


def _add_point_flags(parser: _Parser, n_as_list: bool) -> None:
    if n_as_list:
        parser.add_argument("--n", type=_int_list, help="comma-separated user counts")
    else:
        parser.add_argument("--n", type=int, help="user count")
    parser.add_argument("--s", type=int, help="group size")
    parser.add_argument("--alpha", type=float, help="observed-length exponent margin")
    parser.add_argument("--alpha-prime", type=float, dest="alpha_prime",
                        help="learning-length exponent margin")
    parser.add_argument("--sigma", type=float, help="per-user standard deviation")
    parser.add_argument("--rho", type=float, help="intra-group correlation")
    parser.add_argument("--trials", type=int, help="trials per grid point")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--mode", choices=["learning", "oracle"],
                        help="adversary prior: learned means or true means")
    parser.add_argument("--graph", choices=["known", "recon"],
                        help="association graph given or reconstructed")
    parser.add_argument("--ambiguity", choices=["nearest", "strict"],
                        help="group-candidate tie policy")
    parser.add_argument("--config", help="JSON config file (flags override it)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="tracelink",
                     description="De-anonymization attack simulator for "
                                 "correlated Gaussian time series")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a (n, multiplier) success-rate grid")
    _add_point_flags(sweep, n_as_list=True)
    sweep.add_argument("--multipliers", type=_float_list,
                       help="comma-separated length multipliers")
    sweep.add_argument("--out", help="output path (.csv or .json); stdout if omitted")
    sweep.add_argument("--workers", type=int, default=1, help="parallel workers")

    bounds = sub.add_parser("bounds", help="validate analytic bounds by Monte Carlo")
    bounds.add_argument("--trials", type=int, default=10_000)
    bounds.add_argument("--seed", type=int, default=0)
    bounds.add_argument("--bound", choices=list(BOUND_NAMES),
                        help="validate a single bound instead of all")
    bounds.add_argument("--out", help="JSON output path; stdout if omitted")

    trial = sub.add_parser("trial", help="run and print one end-to-end trial")
    _add_point_flags(trial, n_as_list=False)
    trial.add_argument("--multiplier", type=float, default=1.0)
    trial.add_argument("--trial-index", type=int, default=0, dest="trial_index")
    trial.add_argument("--out", help="JSON output path; stdout if omitted")
    return parser


def _load_config(args) -> ExperimentConfig:
    raw: dict = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidConfig(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise InvalidConfig("config file must hold a flat JSON object")
    n_override = getattr(args, "n", None)
    if isinstance(n_override, int):
        n_override = [n_override]
    overrides = {"n_values": n_override, "s": args.s,
                 "alpha": args.alpha, "alpha_prime": args.alpha_prime,
                 "sigma": args.sigma, "rho": args.rho,
                 "trials_per_point": args.trials, "master_seed": args.seed,
                 "mode": args.mode, "graph": args.graph,
                 "ambiguity": args.ambiguity,
                 "length_multipliers": getattr(args, "multipliers", None)}
    cfg = ExperimentConfig.from_dict(raw)
    merged = dataclasses.asdict(cfg)
    merged["mean_dist"] = cfg.mean_dist  # keep the object, not its dict form
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value
    return ExperimentConfig(**merged)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)


def _cmd_sweep(args) -> int:
    cfg = _load_config(args)
    if args.out is not None:
        run_sweep(cfg, workers=args.workers, out_path=args.out)
    else:
        rows = run_sweep(cfg, workers=args.workers)
        sys.stdout.write(rows_to_csv(rows))
    return 0


def _cmd_bounds(args) -> int:
    names = (args.bound,) if args.bound else None
    reports = run_bound_suite(trials=args.trials, master_seed=args.seed,
                              bound_names=names, out_path=args.out)
    if args.out is None:
        doc = {"master_seed": args.seed, "reports": [r.to_dict() for r in reports]}
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0


def _cmd_trial(args) -> int:
    cfg = _load_config(args)
    if len(cfg.n_values) != 1:
        raise InvalidConfig("trial needs exactly one n")
    result = run_trial(cfg, cfg.n_values[0], args.multiplier, args.trial_index)
    _emit(json.dumps(dataclasses.asdict(result), indent=2) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"sweep": _cmd_sweep, "bounds": _cmd_bounds, "trial": _cmd_trial}
    try:
        return handlers[args.command](args)
    except InvalidConfig as exc:
        print(f"tracelink: invalid configuration: {exc}", file=sys.stderr)
        return 1
    except TracelinkError as exc:
        print(f"tracelink: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"tracelink: I/O failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
