"""``spectral-lab`` command line.

Exit codes: 0 all applicable checks passed, 1 usage or I/O error,
2 an inconclusive verdict under ``--strict``, 3 a failed check or solver error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import harness
from .errors import GraphFormatError, NoConvergence, SpectralLabError
from .families import build, parse_family_spec
from .graph import format_graph, read_graph, write_graph
from .spectral import DEFAULT_TOL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(harness.EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("SPECTRAL_LAB_JOBS", "1")))
    except ValueError:
        return 1


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="certification width (default 1e-11)")
    p.add_argument("--strict", action="store_true", help="exit 2 on any inconclusive verdict")
    p.add_argument("--jobs", type=int, default=_default_jobs(), help="worker processes (env SPECTRAL_LAB_JOBS)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="spectral-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="print the lambda1 enclosure, lambda2 and eigenvector")
    p.add_argument("graph_file")

    for name, helptext in (("verify", "main-theorem campaign"), ("edges", "edge deletion/addition experiments")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--family", action="append", default=[], help="family spec, e.g. 'section4(2..40)'")
        p.add_argument("--input", action="append", default=[], help="graph file")
        if name == "edges":
            p.add_argument("--mode", choices=("delete", "add", "both"), default="both")
            p.add_argument("--max-edges", type=int, default=None, help="edges (or non-edges) per graph")

    p = sub.add_parser("friedman", parents=[common], help="second-eigenvalue study of random regular graphs")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--epsilon", type=float, default=0.2)

    p = sub.add_parser("explore", parents=[common], help="local search for small c = (Delta - lambda1) n D")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--candidate", action="append", default=[], help="graph file to seed the search")
    p.add_argument("--summary", help="write the JSON summary here instead of stdout")

    p = sub.add_parser("gen", parents=[common], help="write a family member as a graph file")
    p.add_argument("spec")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(args) -> int:
    if args.command == "spectrum":
        _emit(harness.spectrum_text(read_graph(args.graph_file), args.tol), args.out)
        return harness.EXIT_OK
    if args.command in ("verify", "edges"):
        config = harness.CampaignConfig(
            families=args.family, inputs=args.input, tol=args.tol, jobs=args.jobs, fmt=args.fmt, strict=args.strict
        )
        if args.command == "verify":
            rows = harness.run_campaign(config)
            fields, key = harness.REPORT_FIELDS, "verdict_main"
        else:
            rows = harness.run_edge_experiments(config, args.mode, args.max_edges)
            fields, key = harness.EDGE_FIELDS, "verdict"
        _emit(harness.format_report(rows, fields, args.fmt), args.out)
        return harness.exit_code(rows, key, args.strict)
    if args.command == "friedman":
        summary = harness.run_friedman_study(args.k, args.n, args.samples, args.epsilon, args.seed, args.tol)
        if args.fmt == "json":
            _emit(json.dumps(summary, indent=1) + "\n", args.out)
        else:
            _emit(harness.format_report(summary["rows"], harness.FRIEDMAN_FIELDS, "csv"), args.out)
            fraction = summary["fraction"]
            print(
                f"connected {summary['connected']}/{summary['samples']}, "
                f"fraction lambda2 <= {summary['threshold']!r}: {fraction!r}",
                file=sys.stderr,
            )
        return harness.exit_code(summary["rows"], "verdict", args.strict)
    if args.command == "explore":
        candidates = [read_graph(p) for p in args.candidate]
        state = harness.run_explorer(args.n, args.max_degree, args.iterations, args.seed, candidates, args.tol)
        summary = harness.explorer_summary(state, args.n, args.max_degree, args.seed)
        if args.out:
            write_graph(state.best, args.out)
        _emit(json.dumps(summary, indent=1) + "\n", args.summary)
        return harness.EXIT_OK if state.best_c[0] > 1.0 else harness.EXIT_SOLVER
    if args.command == "gen":
        _emit(format_graph(build(parse_family_spec(args.spec))), args.out)
        return harness.EXIT_OK
    raise AssertionError(args.command)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except NoConvergence as exc:
        print(f"spectral-lab: solver failure: {exc}", file=sys.stderr)
        return harness.EXIT_SOLVER
    except (GraphFormatError, OSError, SpectralLabError, ValueError) as exc:
        print(f"spectral-lab: error: {exc}", file=sys.stderr)
        return harness.EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
