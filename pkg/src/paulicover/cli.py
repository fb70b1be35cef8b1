"""Command-line front end for schedule construction, verification, simulated
learning runs, and schedule-size exploration.

Exit codes: 0 success (schedule covered / verification passed), 1 coverage or
verification failure, 2 input or usage error.  All randomness comes from
explicit seeds and every output directory gets a manifest sufficient to
reproduce the run byte-for-byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .cbsim import (
    CbConfig,
    CurveUnusableError,
    curves_to_csv,
    fit_decay,
    fit_lambda,
    fit_result_to_json,
    simulate_cb,
)
from .scheduler import (
    ScheduleError,
    general_schedule,
    heuristic_minimize,
    kn_log_schedule,
    lower_bound,
    parse_schedule_text,
    schedule_size_formula,
    schedule_to_json,
    schedule_to_text,
    table9_schedule,
    verify_cover,
)
from .spl import model_from_json, sample_model
from .topology import GraphFormatError, four_coloring, parse_graph

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2


def _atomic_write(path: Path, content: str) -> None:
    """Write via a temp file in the same directory so interrupted runs never
    leave partial output files."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_manifest(out_dir: Path, command: str, args: dict, outputs: list[str]) -> None:
    manifest = {
        "command": command,
        "arguments": args,
        "tool_version": __version__,
        "outputs": outputs,
    }
    _atomic_write(out_dir / "manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _read_graph(path: str):
    return parse_graph(Path(path).read_text())


def _cmd_schedule(args) -> int:
    g = _read_graph(args.graph)
    if args.construction == "auto":
        schedule = general_schedule(g)
    elif args.construction == "table9":
        result = four_coloring(g)
        if not result.within_four:
            raise ScheduleError("no proper 4-coloring found; try --construction auto or knlog")
        schedule = table9_schedule(g, result.coloring)
    else:
        schedule = kn_log_schedule(g.n)
    report = verify_cover(g, schedule)

    out_dir = Path(args.out_dir)
    _atomic_write(out_dir / "schedule.txt", schedule_to_text(schedule))
    _atomic_write(out_dir / "schedule.json", schedule_to_json(schedule, report))
    _write_manifest(
        out_dir,
        "schedule",
        {"graph": args.graph, "construction": args.construction},
        ["schedule.txt", "schedule.json"],
    )
    summary = {
        "bases": len(schedule),
        "construction": schedule.construction,
        "covered": report.covered,
        "exact": report.exact,
    }
    _emit(summary, args.format)
    return EXIT_OK if report.covered else EXIT_VERIFY_FAILED


def _cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    schedule = parse_schedule_text(Path(args.schedule).read_text())
    report = verify_cover(g, schedule)
    if args.format == "json":
        payload = {
            "covered": report.covered,
            "exact": report.exact,
            "missing": {f"{u}-{v}": sorted(p) for (u, v), p in report.per_edge_missing.items()},
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"bases: {len(schedule)}  covered: {report.covered}  exact: {report.exact}")
        for (u, v), pairs in sorted(report.per_edge_missing.items()):
            print(f"edge ({u}, {v}) missing: {', '.join(sorted(pairs))}")
    return EXIT_OK if report.covered else EXIT_VERIFY_FAILED


def _cmd_simulate_fit(args) -> int:
    g = _read_graph(args.graph)
    if args.model:
        truth = model_from_json(Path(args.model).read_text())
        if truth.qubit_count != g.n:
            raise ValueError("model qubit count does not match graph")
    else:
        lo, hi = (float(x) for x in args.rate_range.split(","))
        truth = sample_model(g, args.random_model, (lo, hi))
    depths = tuple(int(d) for d in args.depths.split(","))
    cfg = CbConfig(
        depths=depths,
        shots=args.shots,
        spam=args.spam,
        seed=args.seed,
        infinite_shots=args.infinite_shots,
    )

    schedule = general_schedule(g)
    curves = simulate_cb(truth, schedule, g, cfg)
    f_hat = {c.observable: fit_decay(c) for c in curves}
    result = fit_lambda(f_hat, truth.term_paulis)
    truth_rates = {t.pauli: t.rate for t in truth.terms}
    max_err = max(abs(result.lambda_hat[p] - truth_rates[p]) for p in truth_rates)

    out_dir = Path(args.out_dir)
    _atomic_write(out_dir / "curves.csv", curves_to_csv(curves))
    _atomic_write(out_dir / "fit.json", fit_result_to_json(result, max_lambda_error=max_err))
    _write_manifest(
        out_dir,
        "simulate-fit",
        {
            "graph": args.graph,
            "model": args.model,
            "random_model": args.random_model,
            "rate_range": args.rate_range,
            "depths": args.depths,
            "shots": args.shots,
            "spam": args.spam,
            "seed": args.seed,
            "infinite_shots": args.infinite_shots,
        },
        ["curves.csv", "fit.json"],
    )
    summary = {
        "curves": len(curves),
        "residual": result.residual_norm,
        "rank": result.matrix_rank,
        "terms": len(result.lambda_hat),
        "max_lambda_error": max_err,
    }
    _emit(summary, args.format)
    return EXIT_OK


def _cmd_explore(args) -> int:
    g = _read_graph(args.graph)
    constructed = general_schedule(g)
    best = heuristic_minimize(g, seed=args.seed, iteration_budget=args.budget)
    report = verify_cover(g, best)
    out_dir = Path(args.out_dir)
    _atomic_write(out_dir / "best_schedule.txt", schedule_to_text(best))
    search_log = {
        "seed": args.seed,
        "budget": args.budget,
        "constructed_length": len(constructed),
        "best_length": len(best),
        "lower_bound": lower_bound(g),
        "beat_construction": len(best) < len(constructed),
        "covered": report.covered,
    }
    _atomic_write(out_dir / "explore.json", json.dumps(search_log, indent=2, sort_keys=True) + "\n")
    _write_manifest(
        out_dir,
        "explore",
        {"graph": args.graph, "seed": args.seed, "budget": args.budget},
        ["best_schedule.txt", "explore.json"],
    )
    _emit(search_log, args.format)
    return EXIT_OK


def _cmd_formula(args) -> int:
    value = schedule_size_formula(args.n)
    print(f"n={args.n}: {value} bases ({value - 9:+d} vs the 9-basis table)")
    return EXIT_OK


def _emit(summary: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        print("  ".join(f"{k}: {v}" for k, v in summary.items()))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paulicover",
        description="Covering measurement schedules and simulated cycle-benchmarking "
        "for two-local Pauli-Lindblad noise models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, out_dir=True):
        p.add_argument("--format", choices=["text", "json"], default="text")
        if out_dir:
            p.add_argument("--out-dir", default=".", help="directory for output files")

    p = sub.add_parser("schedule", help="construct a covering schedule for a topology")
    p.add_argument("graph", help="edge-list file ('n <N>' header, '<u> <v>' lines)")
    p.add_argument("--construction", choices=["auto", "table9", "knlog"], default="auto")
    add_common(p)
    p.set_defaults(func=_cmd_schedule)

    p = sub.add_parser("verify", help="check a schedule file against a topology")
    p.add_argument("graph")
    p.add_argument("schedule", help="one full-weight Pauli basis per line")
    add_common(p, out_dir=False)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("simulate-fit", help="simulate cycle benchmarking and fit rates")
    p.add_argument("graph")
    p.add_argument("--model", help="ground-truth model JSON file")
    p.add_argument("--random-model", type=int, default=None, metavar="SEED",
                   help="sample a random two-local truth model with this seed")
    p.add_argument("--rate-range", default="0.001,0.01", help="lo,hi for random rates")
    p.add_argument("--depths", default="2,4,16,64", help="comma-separated cycle depths")
    p.add_argument("--shots", type=int, default=100_000)
    p.add_argument("--spam", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0, help="shot-noise sampling seed")
    p.add_argument("--infinite-shots", action="store_true",
                   help="exact expectations, no sampling noise")
    add_common(p)
    p.set_defaults(func=_cmd_simulate_fit)

    p = sub.add_parser("explore", help="search for schedules shorter than the construction")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=20_000, help="mutation-move budget")
    add_common(p)
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("formula", help="print the complete-graph schedule size")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_formula, format="text")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate-fit" and bool(args.model) == (args.random_model is not None):
        parser.error("simulate-fit needs exactly one of --model or --random-model")
    try:
        return args.func(args)
    except (GraphFormatError, ScheduleError, CurveUnusableError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
