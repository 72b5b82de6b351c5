"""Command-line interface.

Subcommands: generate, verify, roots, search, prime-check, obstruction,
export.  Exit codes: 0 success/pass, 1 verification failed, 2 usage error,
3 search budget exceeded, 4 exhausted with no solution.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, construct, export, files, search
from .core import NomadicError, UnsupportedOrderError
from .verify import full_verify

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_EXHAUSTED = 4


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _cmd_generate(args: argparse.Namespace) -> int:
    try:
        decomposition, schedule = construct.build_decomposition(args.n)
    except UnsupportedOrderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write_output(files.serialize(decomposition, schedule), args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    decomposition, schedule = files.load(args.infile)
    report = full_verify(decomposition, schedule)
    print(report)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_roots(args: argparse.Namespace) -> int:
    decomposition, _ = files.load(args.infile)
    schedule = search.find_roots(decomposition)
    if schedule is None:
        print("no collision-free root assignment exists", file=sys.stderr)
        return EXIT_EXHAUSTED
    _write_output(files.serialize(decomposition, schedule), args.out)
    return EXIT_OK


def _progress_printer(stats: dict) -> None:
    print(json.dumps({"type": "progress", **stats}, sort_keys=True), file=sys.stderr)


def _cmd_search(args: argparse.Namespace) -> int:
    if args.n % 4 == 2 and args.n >= 10 and not args.force:
        print(
            f"error: n={args.n} (2 mod 4) is beyond desk scale; pass --force to try anyway",
            file=sys.stderr,
        )
        return EXIT_USAGE
    resume = None
    checkpoint = args.checkpoint
    if checkpoint and Path(checkpoint).exists():
        resume = search.load_frontier(checkpoint, args.n)
        print(f"resuming from {checkpoint}: {len(resume)} pending branches", file=sys.stderr)
    outcome = search.search_nomadic_decomposition(
        args.n,
        budget=args.budget,
        workers=args.workers,
        order=args.order,
        resume=resume,
        progress=_progress_printer if args.progress else None,
    )
    summary = {
        "status": outcome.status.value,
        "nodes_explored": outcome.nodes_explored,
        "elapsed": round(outcome.elapsed, 3),
    }
    print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    if outcome.status is search.SearchStatus.FOUND:
        decomposition, schedule = outcome.certificate
        _write_output(files.serialize(decomposition, schedule), args.out)
        if checkpoint:
            Path(checkpoint).unlink(missing_ok=True)
        return EXIT_OK
    if outcome.status is search.SearchStatus.BUDGET_EXCEEDED:
        if checkpoint:
            search.save_frontier(checkpoint, outcome.frontier)
            print(
                f"wrote {len(outcome.frontier)} pending branches to {checkpoint}",
                file=sys.stderr,
            )
        return EXIT_BUDGET
    if checkpoint:
        Path(checkpoint).unlink(missing_ok=True)
    return EXIT_EXHAUSTED


def _cmd_prime_check(args: argparse.Namespace) -> int:
    never = analysis.verify_never_nomadic(args.p)
    print(
        json.dumps(
            {"p": args.p, "uniform_length_decomposition_never_nomadic": never},
            sort_keys=True,
        )
    )
    return EXIT_OK if never else EXIT_FAIL


def _cmd_obstruction(args: argparse.Namespace) -> int:
    result = analysis.even_closure_obstruction(args.n)
    print(json.dumps({"n": args.n, "holds": result.holds, "residue": result.residue}, sort_keys=True))
    return EXIT_OK


def _cmd_export(args: argparse.Namespace) -> int:
    decomposition, schedule = files.load(args.infile)
    if args.format == "dot":
        text = export.to_dot(decomposition, schedule)
    else:
        if args.cycle is None:
            print("error: --cycle is required for svg export (no default cycle)", file=sys.stderr)
            return EXIT_USAGE
        text = export.to_svg(
            decomposition, schedule, args.cycle, clockwise=not args.counterclockwise
        )
    _write_output(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nomadic",
        description="Nomadic near-Hamiltonian decompositions of K*_n: "
        "generate, verify, schedule, search, export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit the constructed decomposition for n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="run all checks on a decomposition file")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("roots", help="find a collision-free root assignment")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("search", help="search for a nomadic near-Hamiltonian decomposition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=float, default=None, help="wall-clock seconds")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--order", choices=[search.TIME_MAJOR, search.ROW_MAJOR],
                   default=search.TIME_MAJOR)
    p.add_argument("--checkpoint", default=None,
                   help="frontier file: resumed if present, rewritten on budget expiry")
    p.add_argument("--progress", action="store_true", help="emit JSON progress lines on stderr")
    p.add_argument("--force", action="store_true",
                   help="allow n >= 10 with n = 2 mod 4 (large state space)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("prime-check", help="confirm the uniform-length decomposition of K*_p is never nomadic")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=_cmd_prime_check)

    p = sub.add_parser("obstruction", help="evaluate the even-order closure obstruction")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_obstruction)

    p = sub.add_parser("export", help="render a decomposition file as DOT or SVG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=["dot", "svg"], required=True)
    p.add_argument("--cycle", type=int, default=None, help="cycle to draw (svg)")
    p.add_argument("--counterclockwise", action="store_true",
                   help="run positive labels counterclockwise instead")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (NomadicError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
