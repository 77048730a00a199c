"""Command-line entry point.

Exit codes: 0 on success, 1 when an invariant check fails, 2 on malformed
input or a protocol error raised by an engine or adversary.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import generators
from .adversaries import KINDS
from .errors import MatchingError
from .harness import (
    RunReport,
    run_duel,
    run_instance,
    run_loadbalance_instance,
    write_csv,
    write_loadbalance_csv,
)
from .instance_io import dump_instance, load_instance

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2


def _open_out(path: Optional[str]) -> TextIO:
    if path is None or path == "-":
        return sys.stdout
    return open(path, "w", encoding="utf-8", newline="")


def _emit_csv(report: RunReport, path: Optional[str]) -> None:
    fh = _open_out(path)
    try:
        write_csv(report, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()


def _summary(report: RunReport, label: str) -> None:
    r = report.ratio
    print(
        f"{label}: ALG={report.alg} OPT={report.opt} ratio={r.numerator}/{r.denominator} "
        f"verdict={report.verdict}",
        file=sys.stderr,
    )
    for v in report.violations:
        print(f"  {v}", file=sys.stderr)


def cmd_run(args: argparse.Namespace, verify: bool) -> int:
    inst = load_instance(args.instance)
    report = run_instance(inst, args.engine, verify=verify)
    _emit_csv(report, args.output)
    if not args.quiet:
        _summary(report, "run")
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_duel(args: argparse.Namespace) -> int:
    report = run_duel(args.kind, args.k, args.N, args.seed)
    _emit_csv(report, args.output)
    if not args.quiet:
        _summary(report, f"duel {args.kind}")
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_loadbalance(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    rep = run_loadbalance_instance(inst, args.k)
    fh = _open_out(args.output)
    try:
        write_loadbalance_csv(rep, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    if args.model == "vertex":
        inst = generators.random_vertex_instance(rng, args.size, args.right or args.size, args.density, args.k)
    elif args.model == "vertex-general":
        inst = generators.random_general_vertex_instance(rng, args.size, args.density, args.k)
    elif args.model == "edge":
        inst = generators.random_edge_instance(rng, args.size, args.density, args.k, args.bipartite)
    elif args.model == "weighted":
        inst = generators.random_weighted_instance(rng, args.size, args.right or args.size)
    elif args.model == "loadbalance":
        inst = generators.random_loadbalance_instance(rng, args.size, args.right or 3, args.k)
    else:  # witness
        inst = generators.short_path_witness_instance(args.k)
    text = dump_instance(inst)
    if args.output and args.output != "-":
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="budgeted-matching", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    for name, help_text in (("run", "replay an instance file"), ("verify", "replay with every invariant check")):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("instance")
        sp.add_argument("--engine", choices=("shortest", "arbitrary"), default="shortest")
        sp.add_argument("-o", "--output", help="CSV path (default stdout)")
        sp.add_argument("-q", "--quiet", action="store_true")
        if name == "run":
            sp.add_argument("--verify", action="store_true", help="check invariants after each step")

    sp = sub.add_parser("duel", help="play an engine against a lower-bound adversary")
    sp.add_argument("kind", choices=KINDS)
    sp.add_argument("-k", type=int, default=4)
    sp.add_argument("-N", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp.add_argument("-q", "--quiet", action="store_true")

    sp = sub.add_parser("loadbalance", help="run guess-and-double load balancing")
    sp.add_argument("instance")
    sp.add_argument("-k", type=int, help="override the instance budget")
    sp.add_argument("-o", "--output")

    sp = sub.add_parser("gen", help="write a random or scripted instance")
    sp.add_argument("model", choices=("vertex", "vertex-general", "edge", "weighted", "loadbalance", "witness"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--size", type=int, default=8, help="arrivals / vertices / clients")
    sp.add_argument("--right", type=int, help="right side size (servers for loadbalance)")
    sp.add_argument("--density", type=float, default=0.3)
    sp.add_argument("-k", type=int, default=4)
    sp.add_argument("--bipartite", action="store_true")
    sp.add_argument("-o", "--output")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(args, args.verify)
        if args.command == "verify":
            return cmd_run(args, True)
        if args.command == "duel":
            return cmd_duel(args)
        if args.command == "loadbalance":
            return cmd_loadbalance(args)
        return cmd_gen(args)
    except (MatchingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
