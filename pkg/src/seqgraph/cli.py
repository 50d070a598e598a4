"""Command line interface.

    seqgraph list
    seqgraph gen ekg --n 8
    seqgraph analyze kronecker --alpha sqrt2 --n 200 --json out.json
    seqgraph analyze --bfile b064413.txt --n 1000
    seqgraph embed kronecker --alpha golden --n 500 --method spectral --dims 3 --svg torus.svg
    seqgraph scan --config scan.json --out scan.csv

Exit status: 0 on success, 1 on usage errors, 2 on runtime errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import format_value
from .embedding import spectral_embedding, spring_layout
from .io import analyze_values, embedding_to_json, render_svg, scan_batch, write_dot, write_edge_list
from .sequences import (
    Family,
    InvalidSpec,
    SequenceSpec,
    SpiralF,
    family_from_name,
    generate,
    parse_alpha,
)

USAGE_ERROR = 1
RUNTIME_ERROR = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _add_spec_args(p: argparse.ArgumentParser, bfile: bool) -> None:
    if bfile:
        p.add_argument("family", nargs="?", help="sequence family (see `list`)")
        p.add_argument("--bfile", help="read values from an OEIS b-file instead")
    else:
        p.add_argument("family", help="sequence family (see `list`)")
    p.add_argument("--n", type=_positive_int, required=True, help="number of terms")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--alpha", default="sqrt2", help="sqrt2, golden or a decimal")
    p.add_argument("--c", type=float, default=0.5, help="comet thickness")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--f", dest="f_choice", choices=[f.value for f in SpiralF], default=SpiralF.LOG_CUBED.value)


def _spec_from_args(args) -> SequenceSpec:
    if getattr(args, "bfile", None):
        if args.family:
            raise UsageError("give either a family or --bfile, not both")
        return SequenceSpec(Family.EXTERNAL, path=args.bfile)
    if not args.family:
        raise UsageError("a family or --bfile is required")
    try:
        spec = SequenceSpec(
            family_from_name(args.family),
            base=args.base,
            alpha=parse_alpha(args.alpha),
            c=args.c,
            seed=args.seed,
            f_choice=SpiralF(args.f_choice),
        )
        spec.validate()
    except InvalidSpec as exc:
        raise UsageError(str(exc)) from None
    return spec


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="seqgraph", description="Spectral structure tests for sequences of distinct reals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="list sequence families")

    p = sub.add_parser("gen", help="print the first N terms")
    _add_spec_args(p, bfile=False)
    p.add_argument("--out", help="write to FILE instead of stdout")

    p = sub.add_parser("analyze", help="second eigenvalue and structure verdict")
    _add_spec_args(p, bfile=True)
    p.add_argument("--json", help="write the report to FILE")
    p.add_argument("--solver", choices=["dense", "iterative"], help="default: dense up to n = 2000")
    p.add_argument("--eps-rand", type=float, default=0.15)
    p.add_argument("--tau-struct", type=float, default=3.90)
    p.add_argument("--edges", help="write the edge list to FILE")
    p.add_argument("--dot", help="write a DOT file")

    p = sub.add_parser("embed", help="lay out the graph and draw it")
    _add_spec_args(p, bfile=True)
    p.add_argument("--method", choices=["spectral", "spring"], default="spectral")
    p.add_argument("--dims", type=int, choices=[2, 3], default=2)
    p.add_argument("--iterations", type=_positive_int, default=500)
    p.add_argument("--svg", required=True, help="output SVG file")
    p.add_argument("--coords", help="also write coordinates as JSON")
    p.add_argument("--dot", help="write a DOT file")

    p = sub.add_parser("scan", help="batch analysis from a JSON config")
    p.add_argument("--config", required=True, help='JSON: {"sizes": [...], "specs": [{"family": ..., ...}]}')
    p.add_argument("--out", help="write CSV to FILE instead of stdout")
    return parser


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _spec_from_config(entry: dict) -> SequenceSpec:
    if "family" not in entry:
        raise UsageError(f"scan entry without a family: {entry!r}")
    fam = family_from_name(entry["family"])
    alpha = entry.get("alpha", "sqrt2")
    spec = SequenceSpec(
        fam,
        base=int(entry.get("base", 2)),
        alpha=parse_alpha(str(alpha)),
        c=float(entry.get("c", 0.5)),
        seed=int(entry.get("seed", 0)),
        f_choice=SpiralF(entry.get("f", SpiralF.LOG_CUBED.value)),
        path=entry.get("path"),
    )
    spec.validate()
    return spec


def _run(args) -> int:
    if args.command == "list":
        for fam in Family:
            print(fam.value)
        return 0

    if args.command == "scan":
        try:
            config = json.loads(Path(args.config).read_text(encoding="utf-8"))
            specs = [_spec_from_config(e) for e in config["specs"]]
            sizes = [int(n) for n in config["sizes"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad scan config: {exc}") from None
        _write(args.out, scan_batch(specs, sizes))
        return 0

    spec = _spec_from_args(args)
    values = generate(spec, args.n)

    if args.command == "gen":
        _write(args.out, " ".join(format_value(v) for v in values) + "\n")
        return 0

    if args.command == "analyze":
        report, g = analyze_values(
            values, spec.describe(), method=args.solver, eps_rand=args.eps_rand, tau_struct=args.tau_struct
        )
        print(f"spec            {report.spec}")
        print(f"n               {report.n}")
        print(f"lambda1         {report.lambda1:.12f}")
        print(f"lambda2_signed  {report.lambda2_signed:.12f}")
        print(f"lambda2_abs     {report.lambda2_abs:.12f}")
        print(f"second_largest  {report.second_largest:.12f}")
        print(f"verdict         {report.verdict}")
        for note in report.warnings:
            print(f"warning: {note}", file=sys.stderr)
        if args.json:
            Path(args.json).write_text(report.to_json(), encoding="utf-8")
        if args.edges:
            Path(args.edges).write_text(write_edge_list(g), encoding="utf-8")
        if args.dot:
            Path(args.dot).write_text(write_dot(g), encoding="utf-8")
        return 0

    if args.command == "embed":
        from .graph import build_graph

        g = build_graph(values)
        if args.method == "spectral":
            emb = spectral_embedding(g, args.dims, seed=args.seed)
        else:
            emb = spring_layout(g, args.dims, seed=args.seed, iterations=args.iterations)
        Path(args.svg).write_text(render_svg(g, emb), encoding="utf-8")
        if args.coords:
            Path(args.coords).write_text(embedding_to_json(emb), encoding="utf-8")
        if args.dot:
            Path(args.dot).write_text(write_dot(g), encoding="utf-8")
        return 0

    raise UsageError(f"unknown command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return USAGE_ERROR
    except Exception as exc:
        print(f"seqgraph: {type(exc).__name__}: {exc}", file=sys.stderr)
        return RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
