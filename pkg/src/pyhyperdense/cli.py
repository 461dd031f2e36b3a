"""Command line interface: gen, stat, risk, sweep, boundary and plot.

Exit codes: 0 on success, 2 for usage or configuration errors and 3 for
runtime failures (budget, size guards, parse errors).
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys
from collections.abc import Iterator, Sequence
from typing import Any, Final, Optional, TextIO

from pyhyperdense.__about__ import VERSION
from pyhyperdense.boundaries import BoundaryReport
from pyhyperdense.config import BOUNDARY_CASES, POLICY_KINDS, load_sweep_config, parse_policy
from pyhyperdense.experiments import Fixed, TestSpec, boundary_for, evaluate_statistic, run_cell, sweep
from pyhyperdense.hypergraph import format_edge_list, parse_error, read_edge_list
from pyhyperdense.kernel import HdException, HdStatus
from pyhyperdense.models import NullModel, PlantedModel, RngStream, sample_null, sample_planted
from pyhyperdense.plot import plot_csv
from pyhyperdense.records import json_line, write_csv, write_jsonl
from pyhyperdense.statistics import StatName, T2Scaling, V2Denominator, hl2pt_stat
from pyhyperdense.statistics.scan import DEFAULT_RESTARTS

logger = logging.getLogger(__name__)

EXIT_OK: Final[int] = 0
EXIT_USAGE: Final[int] = 2
EXIT_RUNTIME: Final[int] = 3

_STATS: Final[list[str]] = [s.value.lower() for s in StatName]


@contextlib.contextmanager
def _output(path: str) -> Iterator[TextIO]:
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", newline="", encoding="utf-8") as file:
            yield file


def _enum_choice(enum_cls: Any, text: str) -> Any:
    return enum_cls[text.upper()]


def _add_output(parser: argparse.ArgumentParser, fmt_default: str) -> None:
    parser.add_argument("--out", default="-", help="Output path, '-' for standard output")
    parser.add_argument("--format", choices=("csv", "jsonl"), default=fmt_default, help="Record format")


def _add_model(parser: argparse.ArgumentParser, planted_required: bool) -> None:
    parser.add_argument("--N", type=int, required=True, help="Number of vertices")
    parser.add_argument("--m", type=int, required=True, help="Edge arity")
    parser.add_argument("--p0", type=float, required=True, help="Background edge rate")
    parser.add_argument("--n", type=int, required=planted_required, help="Planted set size")
    parser.add_argument("--p1", type=float, required=planted_required, help="Planted edge rate")


def _add_test_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scan-n", type=int, help="Scan or clique size (defaults to --n)")
    parser.add_argument("--fallback", action="store_true", help="Greedy scan when the exact scan is over budget")
    parser.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS, help="Greedy random restarts")
    parser.add_argument("--budget", type=int, help="Enumeration budget for exact searches")
    parser.add_argument(
        "--denominator",
        choices=[d.name.lower() for d in V2Denominator],
        default="factorial",
        help="V2 normalizer of HL2PT",
    )
    parser.add_argument(
        "--scaling", choices=[s.name.lower() for s in T2Scaling], default="displayed", help="HT2PT scaling"
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")
    common.add_argument("--seed", type=int, default=None, help="Master seed (default 0)")
    common.add_argument("--threads", type=int, default=None, help="Worker threads (default 1)")

    parser = argparse.ArgumentParser(prog="pyhyperdense", description="Dense sub-hypergraph detection")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="Sample a null or planted hypergraph as an edge list")
    _add_model(gen, planted_required=False)
    gen.add_argument("--out", default="-", help="Output path, '-' for standard output")

    stat = sub.add_parser("stat", parents=[common], help="Evaluate a test statistic on an edge-list file")
    stat.add_argument("test", choices=_STATS)
    stat.add_argument("in_file", help="Edge-list file")
    stat.add_argument("--n", type=int, help="Scan or clique size (HST, HCNT)")
    stat.add_argument("--p0", type=float, help="Known background rate for HL2PT")
    stat.add_argument("--fallback", action="store_true")
    stat.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    stat.add_argument("--budget", type=int)
    stat.add_argument("--denominator", choices=[d.name.lower() for d in V2Denominator], default="factorial")
    stat.add_argument("--scaling", choices=[s.name.lower() for s in T2Scaling], default="displayed")
    _add_output(stat, "jsonl")

    risk = sub.add_parser("risk", parents=[common], help="Monte-Carlo risk of a test at one parameter point")
    risk.add_argument("test", choices=_STATS)
    _add_model(risk, planted_required=True)
    risk.add_argument("--reps", type=int, default=200, help="Replications per hypothesis")
    risk.add_argument("--policy", choices=POLICY_KINDS, help="Threshold policy")
    risk.add_argument("--alpha", type=float, default=0.05, help="Level of mc and gaussian policies")
    risk.add_argument("--calib-reps", type=int, default=1000, help="Null draws of the mc policy")
    risk.add_argument("--t", type=float, help="Threshold of the fixed policy")
    risk.add_argument("--eta", type=float, help="eta of the analytic-known policy")
    risk.add_argument("--randomize-ties", action="store_true")
    risk.add_argument("--null-grid", type=float, nargs="+", help="Background rates for the composite null")
    risk.add_argument("--case", choices=sorted(BOUNDARY_CASES), default="known", help="Boundary reported")
    risk.add_argument("--margin", type=float, default=1.0)
    _add_test_options(risk)
    _add_output(risk, "jsonl")

    sweep_p = sub.add_parser("sweep", parents=[common], help="Run a parameter grid from a YAML configuration")
    sweep_p.add_argument("config", help="YAML sweep configuration")
    _add_output(sweep_p, "csv")

    boundary = sub.add_parser("boundary", parents=[common], help="Closed-form boundary report")
    _add_model(boundary, planted_required=False)
    boundary.add_argument("--case", choices=sorted(BOUNDARY_CASES), default="known")
    boundary.add_argument("--margin", type=float, default=1.0)
    _add_output(boundary, "jsonl")

    plot = sub.add_parser("plot", parents=[common], help="SVG heatmap of a sweep CSV")
    plot.add_argument("in_csv", help="Sweep CSV")
    plot.add_argument("--x", required=True, help="Column on the horizontal axis")
    plot.add_argument("--y", required=True, help="Column on the vertical axis")
    plot.add_argument("--value", default="risk", help="Column to color by (risk, verdict, type1, ...)")
    plot.add_argument("--out", default="-", help="Output SVG path, '-' for standard output")
    return parser


def _seed(args: argparse.Namespace) -> int:
    return 0 if args.seed is None else args.seed


def _threads(args: argparse.Namespace) -> int:
    return 1 if args.threads is None else args.threads


def cmd_gen(args: argparse.Namespace) -> None:
    stream = RngStream(_seed(args), 0)
    if args.n is not None or args.p1 is not None:
        if args.n is None or args.p1 is None:
            raise HdException(HdStatus.CONFIG_ERROR, "Planted sampling needs both --n and --p1!")
        graph = sample_planted(PlantedModel(args.N, args.m, args.n, args.p0, args.p1), stream)
    else:
        graph = sample_null(NullModel(args.N, args.m, args.p0), stream)
    logger.info("sampled %d edges", graph.edge_count())
    with _output(args.out) as out:
        out.write(format_edge_list(graph))


def _test_spec(args: argparse.Namespace, statistic: StatName, policy: Any, scan_n: Optional[int]) -> TestSpec:
    return TestSpec(
        statistic=statistic,
        policy=policy,
        scan_n=scan_n,
        scan_fallback=args.fallback,
        restarts=args.restarts,
        randomize_ties=getattr(args, "randomize_ties", False),
        v2_denominator=_enum_choice(V2Denominator, args.denominator),
        t2_scaling=_enum_choice(T2Scaling, args.scaling),
        null_grid=None if getattr(args, "null_grid", None) is None else tuple(args.null_grid),
        budget=args.budget,
    )


def _write_records(records: Sequence[Any], fmt: str, path: str) -> None:
    with _output(path) as out:
        if fmt == "csv":
            write_csv(records, out)
        else:
            write_jsonl([r._asdict() for r in records], out)


def cmd_stat(args: argparse.Namespace) -> None:
    graph = read_edge_list(args.in_file).unwrap(parse_error)
    statistic = StatName.parse(args.test)
    if statistic is StatName.HL2PT and args.p0 is not None:
        value = hl2pt_stat(graph, args.p0, _enum_choice(V2Denominator, args.denominator))
    else:
        spec = _test_spec(args, statistic, Fixed(0.0), args.n)
        value = evaluate_statistic(spec, graph, RngStream(_seed(args), 0))
    record = value.to_record()
    with _output(args.out) as out:
        if args.format == "csv":
            out.write("name,value,degenerate,approximate\n")
            out.write(f"{record['name']},{record['value']:.9g},{record['degenerate']},{record['approximate']}\n")
        else:
            out.write(json_line(record) + "\n")


def _risk_policy(args: argparse.Namespace, statistic: StatName) -> Any:
    kind = args.policy
    if kind is None:
        kind = "analytic-known" if statistic is StatName.HST else "mc"
    raw = {"kind": kind, "alpha": args.alpha, "reps": args.calib_reps, "eta": args.eta}
    if kind == "fixed":
        if args.t is None:
            raise HdException(HdStatus.CONFIG_ERROR, "The fixed policy needs --t!")
        raw["t"] = args.t
    try:
        return parse_policy(raw)
    except ValueError as exc:
        raise HdException(HdStatus.CONFIG_ERROR, str(exc)) from None


def cmd_risk(args: argparse.Namespace) -> None:
    statistic = StatName.parse(args.test)
    spec = _test_spec(args, statistic, _risk_policy(args, statistic), args.scan_n)
    cell = {"N": args.N, "m": args.m, "n": args.n, "p0": args.p0, "p1": args.p1}
    record = run_cell(
        spec,
        cell,
        args.reps,
        _seed(args),
        threads=_threads(args),
        boundary=BOUNDARY_CASES[args.case],
        margin=args.margin,
    )
    _write_records([record], args.format, args.out)


def cmd_sweep(args: argparse.Namespace) -> None:
    config = load_sweep_config(args.config).unwrap(lambda msg: HdException(HdStatus.CONFIG_ERROR, msg))
    seed = config.seed if args.seed is None else args.seed
    threads = config.threads if args.threads is None else args.threads
    records = sweep(config.grid, config.spec, config.reps, seed, threads, config.boundary, config.margin)
    failed = sum(1 for r in records if r.error)
    if failed:
        logger.warning("%d of %d sweep cells failed", failed, len(records))
    _write_records(records, args.format, args.out)


def _boundary_record(args: argparse.Namespace, report: BoundaryReport) -> dict[str, Any]:
    record = {"N": args.N, "m": args.m, "n": args.n, "p0": args.p0, "p1": args.p1}
    record.update(report.to_record())
    return record


def cmd_boundary(args: argparse.Namespace) -> None:
    case = BOUNDARY_CASES[args.case]
    if args.n is None or (args.p1 is None and args.case != "hpc"):
        raise HdException(HdStatus.CONFIG_ERROR, "Boundary reports need --n (and --p1 unless --case hpc)!")
    p1 = 1.0 if args.p1 is None else args.p1
    report = boundary_for(case, args.N, args.m, args.n, args.p0, p1, args.margin)
    record = _boundary_record(args, report)
    with _output(args.out) as out:
        if args.format == "csv":
            flat = {k: v for k, v in record.items() if k not in ("diagnostics", "recommended")}
            out.write(",".join(flat) + "\n")
            out.write(",".join("" if v is None else str(v) for v in flat.values()) + "\n")
        else:
            out.write(json_line(record) + "\n")


def cmd_plot(args: argparse.Namespace) -> None:
    svg = plot_csv(args.in_csv, args.x, args.y, args.value)
    with _output(args.out) as out:
        out.write(svg)


_COMMANDS: Final = {
    "gen": cmd_gen,
    "stat": cmd_stat,
    "risk": cmd_risk,
    "sweep": cmd_sweep,
    "boundary": cmd_boundary,
    "plot": cmd_plot,
}


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        _COMMANDS[args.command](args)
    except HdException as exc:
        print(f"pyhyperdense {args.command}: {exc.one_line()}", file=sys.stderr)
        return EXIT_USAGE if exc.status.is_usage_error else EXIT_RUNTIME
    except OSError as exc:
        print(f"pyhyperdense {args.command}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK
