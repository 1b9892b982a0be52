"""Command-line entry points: run, table, plot-data, route-report, bench-kernels."""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import replace
from pathlib import Path

from .circuits import circuit_from_text
from .errors import ConfigError, QubenchError
from .harness import (
    FIGURE_IDS,
    TABLE_IDS,
    emit_plot_data,
    load_config,
    render_table,
    resolve_device,
    run_experiments,
)
from .kernels.bench import benchmark_kernels
from .results import ResultsArchive
from .routing import report_to_csv, routing_report

ARCHIVE_NAME = "results.jsonl"


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.shots is not None:
        cfg = replace(cfg, shots=args.shots)
    if args.out is not None:
        cfg = replace(cfg, output_dir=args.out)
    archive = run_experiments(cfg)
    path = archive.write(Path(cfg.output_dir) / ARCHIVE_NAME)
    print(path)
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    archive = ResultsArchive.read(args.archive)
    sys.stdout.write(render_table(archive, args.id))
    return 0


def _cmd_plot_data(args: argparse.Namespace) -> int:
    archive = ResultsArchive.read(args.archive)
    out_dir = args.out if args.out is not None else "plot_data"
    for path in emit_plot_data(archive, args.id, out_dir):
        print(path)
    return 0


def _cmd_route_report(args: argparse.Namespace) -> int:
    try:
        text = Path(args.circuit).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read circuit file {args.circuit}: {exc}") from exc
    circuit = circuit_from_text(text)
    devices = [resolve_device(name.strip())
               for name in args.devices.split(",") if name.strip()]
    if not devices:
        raise ConfigError("no devices given")
    sys.stdout.write(report_to_csv(routing_report(circuit, devices)))
    return 0


def _cmd_bench_kernels(args: argparse.Namespace) -> int:
    widths = tuple(int(tok) for tok in args.widths.split(",") if tok.strip())
    rows = benchmark_kernels(widths=widths, reps=args.reps)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["backend", "n", "gates", "seconds", "gates_per_second"])
    for row in rows:
        writer.writerow([row["backend"], row["n"], row["gates"],
                         f"{row['seconds']:.6f}", f"{row['gates_per_second']:.1f}"])
    sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubench",
        description="Quantum benchmark harness: simulate, route, and score "
                    "circuits across device models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a benchmark config")
    p_run.add_argument("--config", required=True, help="JSON run config path")
    p_run.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
    p_run.add_argument("--shots", type=int, default=None,
                       help="override the config shot count")
    p_run.add_argument("--out", default=None,
                       help="override the config output directory")
    p_run.set_defaults(func=_cmd_run)

    p_table = sub.add_parser("table", help="render a results table as CSV")
    p_table.add_argument("archive", help="results archive (JSON lines)")
    p_table.add_argument("--id", required=True, choices=TABLE_IDS)
    p_table.set_defaults(func=_cmd_table)

    p_plot = sub.add_parser("plot-data", help="emit per-device series files")
    p_plot.add_argument("archive", help="results archive (JSON lines)")
    p_plot.add_argument("--id", required=True, choices=FIGURE_IDS)
    p_plot.add_argument("--out", default=None,
                        help="directory for series files (default plot_data)")
    p_plot.set_defaults(func=_cmd_plot_data)

    p_route = sub.add_parser("route-report",
                             help="routing overhead table for a circuit")
    p_route.add_argument("--circuit", required=True,
                         help="circuit file in the text format")
    p_route.add_argument("--devices", required=True,
                         help="comma-separated device names or file paths")
    p_route.set_defaults(func=_cmd_route_report)

    p_bench = sub.add_parser("bench-kernels",
                             help="time the numpy and numba kernel backends")
    p_bench.add_argument("--widths", default="8,12,16",
                         help="comma-separated qubit counts")
    p_bench.add_argument("--reps", type=int, default=3,
                         help="timing repetitions per point")
    p_bench.set_defaults(func=_cmd_bench_kernels)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except QubenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
