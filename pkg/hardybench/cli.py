"""
Command-line front end: ``hardybench verify|sweep|sharpness|constants|selftest``.

Exit status: 0 when every asserted inequality holds, 1 on a violation (the
report is still written), 2 on a configuration error (nothing is written).
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, List, NamedTuple, Optional, Sequence

import pandas as pd

from .analysis.constants import constants_table
from .analysis.functionals import evaluate_inequality
from .analysis.report import Inequality
from .config import COMMANDS, RunConfig
from .core.group import parse_group, parse_norm
from .core.profiles import parse_profile
from .data.constants import asserted_floor
from .data.corpus import get_case, get_corpus
from .data.search_spaces import get_search_space
from .selftest import run_selftest
from .sharpness.probe import estimate_stability_constant, probe_sharp_constant
from .sharpness.sweep import parameter_grid, sweep
from .utils.exceptions import ConfigError, HardyBenchError, ValidationError
from .utils.formatters import FORMATS, emit_report
from .version import __version__

logger = logging.getLogger("hardybench")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2

_DEFAULT_SPACES = {
    "lp-hardy": "hardy-ratio",
    "ckn": "ckn-p2",
    "critical-hardy": "stability-critical-hardy",
    "rellich": "stability-rellich",
}
_STABILITY_PREFIX = "stability-"


class RunOutcome(NamedTuple):
    """Exit status, written files and the report object."""

    status: int
    paths: List[Path]
    report: Any


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=str, default=None, help="JSON run configuration")
    parser.add_argument("--inequality", type=str, default=None,
                        help=f"One of {[i.value for i in Inequality]}")
    parser.add_argument("--group", type=str, default=None,
                        help="heisenberg, euclidean:N or abelian:w1,w2,...")
    parser.add_argument("--norm", type=str, default=None, help="euclidean, koranyi or power:P0")
    parser.add_argument("--profile", type=str, default=None, help="e.g. bump:m=4,R=1")
    parser.add_argument("--case", type=str, default=None, help="Shipped corpus case id")
    parser.add_argument("--space", type=str, default=None, help="Shipped search space name")
    for name in ("p", "q", "L", "k", "R", "T", "Q"):
        parser.add_argument(f"--{name}", dest=name, type=str, default=None,
                            help=f"{name} (comma-separated list allowed)")
    parser.add_argument("--r-grid", dest="r_grid", type=str, default=None,
                        help="Comma-separated R values for the distance supremum")
    parser.add_argument("--t-grid", dest="t_grid", type=str, default=None,
                        help="Comma-separated T values for the critical distance")
    parser.add_argument("--quad-tol", dest="quad_tol", type=float, default=None)
    parser.add_argument("--jobs", type=int, default=None,
                        help="Worker threads (default: $HARDYBENCH_JOBS, then 1)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--budget", type=int, default=None, help="Probe evaluation budget")
    parser.add_argument("--restarts", type=int, default=None, help="Probe restarts")
    parser.add_argument("--variant", type=str, default=None, choices=["i", "ii", "iii"],
                        help="Elementary inequality variant")
    parser.add_argument("--samples", type=int, default=None, help="Elementary inequality samples")
    parser.add_argument("--out", type=str, default=None, help="Output directory")
    parser.add_argument("--format", type=str, default=None, choices=list(FORMATS))
    parser.add_argument("--verbose", action="store_true", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardybench",
        description="Numerical verification of Hardy-type inequalities on homogeneous groups",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "verify": "Evaluate one inequality for one function",
        "sweep": "Evaluate an inequality over a parameter grid and a corpus",
        "sharpness": "Probe a sharp constant or estimate a stability constant",
        "constants": "Tabulate the closed-form constants",
        "selftest": "Run the fast invariant suite",
    }
    for command in COMMANDS:
        _add_common(sub.add_parser(command, help=helps[command]))
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """
    File configuration (if any) with the command-line flags on top.

    Raises:
        ConfigError: If the configuration cannot be parsed or references
            unknown ids
    """
    base = RunConfig.load(args.config) if args.config else RunConfig()
    overrides = {k: v for k, v in vars(args).items() if k != "config"}
    return base.merged(overrides).validate()


# Commands

def _output(config: RunConfig, stem: str) -> Path:
    return Path(config.out) / stem


def _verify(config: RunConfig) -> RunOutcome:
    quad = config.quadrature()
    if config.case is not None:
        case = get_case(config.case)
        report = case.evaluate(quad)
        stem = f"verify-{case.inequality}"
    else:
        inequality = Inequality.parse(config.inequality)
        params = config.exponent_params()
        group = norm = u = floor = None
        if inequality is not Inequality.ELEMENTARY:
            if config.profile is None:
                raise ConfigError(f"verify {inequality.value} needs --profile or --case")
            group = parse_group(config.group)
            norm = parse_norm(config.norm, group)
            u = parse_profile(config.profile)
            floor = asserted_floor(inequality.value, p=params.p, Q=group.Q, k=params.k)
        report = evaluate_inequality(
            inequality, u, group, norm, params, quad,
            r_grid=config.r_grid, t_grid=config.t_grid, floor=floor,
            variant=config.variant, samples=config.samples, seed=config.seed,
        )
        stem = f"verify-{inequality.value}"
    paths = emit_report(report, config.format, _output(config, stem))
    return RunOutcome(EXIT_OK if report.passed else EXIT_VIOLATION, paths, report)


def _sweep(config: RunConfig) -> RunOutcome:
    inequality = Inequality.parse(config.inequality)
    axes = dict(config.exponent_axes())
    if config.Q:
        axes["Q"] = config.Q
    grid = parameter_grid(**axes)
    if config.case is not None:
        corpus = [get_case(config.case)]
    elif config.profile is not None:
        corpus = [config.profile]
        if not config.Q:
            grid = [dict(point, group=config.group, norm=config.norm) for point in grid]
    else:
        corpus = get_corpus(inequality.value)
    rows = sweep(inequality, grid, corpus, jobs=config.resolved_jobs(),
                 quad=config.quadrature())
    paths = emit_report(rows, config.format, _output(config, f"sweep-{inequality.value}"))
    ok = all(row.passed for row in rows)
    return RunOutcome(EXIT_OK if ok else EXIT_VIOLATION, paths, rows)


def _sharpness(config: RunConfig) -> RunOutcome:
    name = config.space or _DEFAULT_SPACES.get(Inequality.parse(config.inequality).value)
    if name is None:
        raise ConfigError(f"No search space for {config.inequality}; pass --space")
    space = get_search_space(name)
    options = dict(budget=config.budget, restarts=config.restarts, seed=config.seed,
                   quad=config.quadrature(), jobs=config.resolved_jobs())
    if name.startswith(_STABILITY_PREFIX):
        result = estimate_stability_constant(name[len(_STABILITY_PREFIX):], space, **options)
    else:
        inequality = "lp-hardy" if name == "hardy-ratio" else "ckn"
        result = probe_sharp_constant(inequality, space, **options)
    paths = emit_report(result, config.format, _output(config, f"sharpness-{name}"))
    return RunOutcome(EXIT_OK if result.sound else EXIT_VIOLATION, paths, result)


def _constants(config: RunConfig) -> RunOutcome:
    Q = config.Q or (parse_group(config.group).Q,)
    table = constants_table(k=config.k or (2,), p=config.p or (2.0,), Q=Q,
                            L=config.L or (0.0,), q=config.q or (2.0,))
    paths = emit_report(table, config.format, _output(config, "constants"))
    return RunOutcome(EXIT_OK, paths, table)


def _selftest(config: RunConfig) -> RunOutcome:
    result = run_selftest(config.quadrature())
    stem = _output(config, "selftest")
    paths = []
    if config.format in ("json", "both"):
        paths += emit_report(result, "json", stem)
    if config.format in ("csv", "both"):
        table = pd.DataFrame([o.to_dict() for o in result.outcomes]).drop(columns="seconds")
        paths += emit_report(table, "csv", stem)
    return RunOutcome(EXIT_OK if result.ok else EXIT_VIOLATION, paths, result)


_COMMANDS = {
    "verify": _verify,
    "sweep": _sweep,
    "sharpness": _sharpness,
    "constants": _constants,
    "selftest": _selftest,
}


def run(config: RunConfig) -> RunOutcome:
    """
    Execute a validated configuration.

    Returns:
        RunOutcome with the exit status and the files written

    Raises:
        ConfigError: For inconsistent inputs discovered while building the run
        HardyBenchError: If an evaluation fails
    """
    logger.info("hardybench %s: %s", config.command, config.to_json())
    return _COMMANDS[config.command](config)


def _describe(report: Any) -> str:
    if isinstance(report, pd.DataFrame):
        return report.to_string(index=False)
    if isinstance(report, list):
        passed = sum(1 for r in report if r.passed)
        return f"{len(report)} rows, {passed} passed, {len(report) - passed} failed or violated"
    return report.summary()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Console entry point."""
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
    except ConfigError as exc:
        print(f"hardybench: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    logging.basicConfig(
        level=logging.DEBUG if config.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        outcome = run(config)
    except (ConfigError, ValidationError) as exc:
        print(f"hardybench: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HardyBenchError as exc:
        print(f"hardybench: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VIOLATION

    print(_describe(outcome.report))
    for path in outcome.paths:
        print(f"wrote {path}")
    return outcome.status
