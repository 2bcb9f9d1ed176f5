#!/usr/bin/env python3
"""
noisy-select - Command-line entry point

Runs fault-tolerant selection algorithms against seeded noisy oracles,
sweeps parameter grids and gates exactness at p = 0.

Exit codes: 0 on success, 1 on an acceptance failure or unexpected error,
2 on an invalid configuration.
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

# Add src directory to path
src_path = Path(__file__).parent
sys.path.insert(0, str(src_path))

from core.config_manager import ConfigManager
from core.errors import AcceptanceFailure, InvalidParameterError
from core.logger import setup_logger
from core.profile import ConstantsProfile
from fastmin import SolverMode
from harness import (Algorithm, ExperimentConfig, run_trials, summarize_result, sweep,
                     verify_exactness)
from harness.reporting import write_result, write_sweep
from performance import PerformanceMonitor

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2

SEED_ENV = "NOISY_SELECT_SEED"
LOG_LEVEL_ENV = "NOISY_SELECT_LOG_LEVEL"


def _add_experiment_flags(parser: argparse.ArgumentParser, config: ConfigManager,
                          multi: bool) -> None:
    nargs = "+" if multi else None
    parser.add_argument("--algo", required=True, choices=[a.value for a in Algorithm],
                        help="Algorithm to run")
    parser.add_argument("--n", type=int, nargs=nargs, required=True, help="Input size")
    parser.add_argument("--k", type=int, nargs=nargs, default=None,
                        help="Number of small elements (derived for findmin and dense algorithms)")
    parser.add_argument("--p", type=float, nargs=nargs,
                        default=[config.get("harness_config.p", 0.1)] if multi else config.get("harness_config.p", 0.1),
                        help="Comparison / query fault probability")
    parser.add_argument("--trials", type=int, default=config.get("harness_config.trials", 100),
                        help="Trials per cell")
    parser.add_argument("--seed", type=int, default=None,
                        help=f"Base seed (falls back to ${SEED_ENV})")
    parser.add_argument("--profile", choices=[p.value for p in ConstantsProfile],
                        default=config.get("harness_config.profile", ConstantsProfile.PRACTICAL.value))
    parser.add_argument("--gamma", type=float, default=None,
                        help="Reduction gamma (practical profile only)")
    parser.add_argument("--rep-scale", type=float, default=None,
                        help="Multiplier on repetition counts in (0, 1] (practical profile only)")
    parser.add_argument("--alpha", type=float, default=config.get("harness_config.alpha", 2.0),
                        help="Tournament growth base")
    parser.add_argument("--q", type=float, default=config.get("harness_config.q", 0.05),
                        help="FindMin failure probability")
    parser.add_argument("--i-max", type=int, default=None,
                        help="Last round of the truncated tournament")
    parser.add_argument("--mode", choices=[m.value for m in SolverMode],
                        default=config.get("harness_config.mode", SolverMode.WORST_CASE.value),
                        help="Dense solver used by ftmin")
    parser.add_argument("--safety-factor", type=float,
                        default=config.get("profiles.practical.safety_factor", 10.0),
                        help="Cap on the fast solver's queries, as a multiple of its expectation")
    parser.add_argument("--workers", type=int, default=config.get("harness_config.workers", 1),
                        help="Worker processes")
    parser.add_argument("--record-timing", action="store_true",
                        help="Record per-trial wall time (output is no longer reproducible)")
    parser.add_argument("--expect-success", type=float, default=None,
                        help="Exit 1 if any cell's success rate falls below this")
    parser.add_argument("--out", default=None, help="Output file (stdout when omitted)")
    parser.add_argument("--format", choices=["csv", "json"],
                        default=config.get("harness_config.format", "csv"))


def build_parser(config: ConfigManager) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noisy-select",
                                     description="Fault-tolerant selection experiments")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="Run trials of one configuration")
    _add_experiment_flags(run, config, multi=False)

    grid = subparsers.add_parser("sweep", help="Run a grid over n, k and p")
    _add_experiment_flags(grid, config, multi=True)

    verify = subparsers.add_parser("verify", help="Exactness gate at p = 0")
    verify.add_argument("--algo", nargs="+", choices=[a.value for a in Algorithm], default=None)
    verify.add_argument("--n", type=int, nargs="+",
                        default=config.get("harness_config.verify.sizes", [8, 64, 256]))
    verify.add_argument("--seeds", type=int, default=config.get("harness_config.verify.seeds", 100))
    verify.add_argument("--p", type=float, default=0.0)
    verify.add_argument("--profile", choices=[p.value for p in ConstantsProfile],
                        default=ConstantsProfile.PRACTICAL.value)
    verify.add_argument("--gamma", type=float, default=None)
    verify.add_argument("--rep-scale", type=float, default=None)
    return parser


def resolve_seed(seed: Optional[int], config: ConfigManager) -> int:
    if seed is not None:
        return seed
    env_seed = os.getenv(SEED_ENV)
    if env_seed:
        try:
            return int(env_seed)
        except ValueError:
            raise InvalidParameterError(f"{SEED_ENV} must be an integer, got {env_seed!r}")
    return int(config.get("harness_config.seed", 0))


def resolve_gamma(args: argparse.Namespace, config: ConfigManager) -> Optional[float]:
    if args.gamma is not None or args.profile != ConstantsProfile.PRACTICAL.value:
        return args.gamma
    return config.practical_gamma


def _first(value):
    return value[0] if isinstance(value, list) else value


def experiment_config(args: argparse.Namespace, config: ConfigManager) -> ExperimentConfig:
    """Base config from parsed flags; sweeps replace n, k and p per cell."""
    rep_scale = args.rep_scale
    if rep_scale is None and args.profile == ConstantsProfile.PRACTICAL.value:
        rep_scale = config.get("profiles.practical.repetition_scale")
    return ExperimentConfig(
        algorithm=args.algo,
        n=_first(args.n),
        k=_first(args.k),
        p=_first(args.p),
        trials=args.trials,
        seed=resolve_seed(args.seed, config),
        profile=args.profile,
        gamma=resolve_gamma(args, config),
        rep_scale=rep_scale,
        alpha=args.alpha,
        q=args.q,
        i_max=args.i_max,
        mode=args.mode,
        safety_factor=args.safety_factor,
        workers=args.workers,
        record_timing=args.record_timing,
        output=args.out,
        format=args.format,
    )


def _check_expectation(summary, threshold: Optional[float]) -> int:
    if threshold is None:
        return EXIT_OK
    for row in summary:
        if row.success_rate < threshold:
            logger.error(f"{row.algorithm} n={row.n} k={row.k} p={row.p}: success rate "
                         f"{row.success_rate:.4f} below {threshold}")
            return EXIT_FAILURE
    return EXIT_OK


def cmd_run(args: argparse.Namespace, config: ConfigManager) -> int:
    experiment = experiment_config(args, config).validate()
    monitor = PerformanceMonitor(log_every=config.get("harness_config.log_every", 0))
    monitor.initialize()
    result = run_trials(experiment, monitor)
    write_result(result)
    monitor.log_stats()
    monitor.shutdown()
    return _check_expectation(summarize_result(result), args.expect_success)


def cmd_sweep(args: argparse.Namespace, config: ConfigManager) -> int:
    base = experiment_config(args, config)
    monitor = PerformanceMonitor(log_every=config.get("harness_config.log_every", 0))
    monitor.initialize()
    summary = sweep(base, args.n, args.k, args.p, monitor)
    write_sweep(summary, {"ns": args.n, "ks": args.k, "ps": args.p})
    monitor.log_stats()
    monitor.shutdown()
    return _check_expectation(summary, args.expect_success)


def cmd_verify(args: argparse.Namespace, config: ConfigManager) -> int:
    algorithms = [Algorithm(a) for a in args.algo] if args.algo else list(Algorithm)
    gamma = resolve_gamma(args, config)
    result = verify_exactness(args.n, args.seeds, args.p, algorithms,
                              ConstantsProfile(args.profile), gamma, args.rep_scale)
    if result.passed:
        logger.info(f"verify: passed ({result.checked} runs)")
        return EXIT_OK
    logger.error(f"verify: failed after {result.checked} runs")
    return EXIT_FAILURE


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for noisy-select.
    """
    load_dotenv()
    config = ConfigManager()
    args = build_parser(config).parse_args(argv)

    level_name = (args.log_level or os.getenv(LOG_LEVEL_ENV)
                  or config.get("harness_config.log_level", "INFO")).upper()
    setup_logger(None, getattr(logging, level_name, logging.INFO))

    try:
        return COMMANDS[args.command](args, config)
    except InvalidParameterError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_INVALID
    except AcceptanceFailure as e:
        logger.error(str(e))
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Fatal error: {str(e)}", exc_info=True)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
