"""Text formats: OEIS b-files, edge lists, DOT, SVG pictures, JSON reports and CSV scans."""

from __future__ import annotations

import csv
import io as _io
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from xml.sax.saxutils import escape

import numpy as np

from . import __version__
from .core import format_value
from .embedding import Embedding, normalize
from .graph import GraphStats, SequenceGraph, build_graph, graph_stats
from .sequences import SequenceSpec, generate
from .spectral import SQRT12, alon_boppana_slack, classify, eigen_spectrum


class MalformedLine(ValueError):
    def __init__(self, lineno: int, line: str):
        super().__init__(f"line {lineno}: cannot parse {line!r}")
        self.lineno = lineno


class NonMonotoneIndex(ValueError):
    def __init__(self, lineno: int, index: int, previous: int):
        super().__init__(f"line {lineno}: index {index} does not exceed {previous}")
        self.lineno = lineno


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------- b-files


@dataclass
class BFile:
    entries: list[tuple[int, int]]


def parse_bfile(text: str) -> BFile:
    entries: list[tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise MalformedLine(lineno, line)
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLine(lineno, line) from None
        if entries and index <= entries[-1][0]:
            raise NonMonotoneIndex(lineno, index, entries[-1][0])
        entries.append((index, value))
    return BFile(entries)


def write_bfile(bf: BFile) -> str:
    return "".join(f"{i} {v}\n" for i, v in bf.entries)


# ---------------------------------------------------------------- edge lists


def write_edge_list(g: SequenceGraph) -> str:
    """One ``u v m`` line per vertex pair, lexicographically sorted."""
    return "".join(f"{u} {v} {m}\n" for u, v, m in g.edges)


def parse_edge_list(text: str) -> list[tuple[int, int, int]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise MalformedLine(lineno, line)
        try:
            out.append(tuple(int(p) for p in parts))
        except ValueError:
            raise MalformedLine(lineno, line) from None
    return out


def write_dot(g: SequenceGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for i, v in enumerate(g.values):
        lines.append(f'  {i} [label="{format_value(v)}"];')
    for u, v, m in g.edges:
        lines.extend(f"  {u} -- {v};" for _ in range(m))
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- SVG


@dataclass
class SvgStyle:
    size: int = 1000
    margin: int = 40
    radius: float = 3.0
    stroke: str = "#555555"
    stroke_width: float = 0.8
    fill: str = "#1f4e99"
    double_offset: float = 4.0


def render_svg(g: SequenceGraph, e: Embedding, style: SvgStyle | None = None) -> str:
    """Draw vertices as circles and edges as paths; doubled edges become two parallel curves.

    3-d embeddings are projected onto their first two coordinates.
    """
    style = style or SvgStyle()
    if e.coords.shape[0] != g.n:
        raise DimensionMismatch(f"embedding has {e.coords.shape[0]} points, graph has {g.n} vertices")
    xy = normalize(e).coords[:, :2]
    half = style.size / 2
    scale = half - style.margin
    px = half + scale * xy[:, 0]
    py = half - scale * xy[:, 1]

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{style.size}" height="{style.size}" '
        f'viewBox="0 0 {style.size} {style.size}">',
        f'<g fill="none" stroke="{escape(style.stroke)}" stroke-width="{style.stroke_width}">',
    ]
    for u, v, m in g.edges:
        x1, y1, x2, y2 = px[u], py[u], px[v], py[v]
        if m == 1:
            out.append(f'<path d="M {x1:.2f} {y1:.2f} L {x2:.2f} {y2:.2f}"/>')
            continue
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        dx, dy = x2 - x1, y2 - y1
        length = math.hypot(dx, dy) or 1.0
        nx, ny = -dy / length, dx / length
        for sign in (1, -1):
            cx = mx + sign * style.double_offset * nx
            cy = my + sign * style.double_offset * ny
            out.append(f'<path d="M {x1:.2f} {y1:.2f} Q {cx:.2f} {cy:.2f} {x2:.2f} {y2:.2f}"/>')
    out.append("</g>")
    out.append(f'<g fill="{escape(style.fill)}" stroke="none">')
    for i in range(g.n):
        out.append(f'<circle cx="{px[i]:.2f}" cy="{py[i]:.2f}" r="{style.radius}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- reports


def report_schema() -> dict:
    text = resources.files("seqgraph").joinpath("report_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class AnalysisReport:
    spec: str
    n: int
    lambda1: float
    lambda2_abs: float
    lambda2_signed: float
    second_largest: float
    verdict: str
    eps_rand: float
    tau_struct: float
    method: str
    residual: float
    stats: dict
    timing_ms: float
    tool_version: str = __version__
    alon_boppana_ok: bool = True
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> AnalysisReport:
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> AnalysisReport:
        return cls.from_dict(json.loads(text))


def analyze_values(
    values,
    spec_text: str,
    *,
    method=None,
    eps_rand: float = 0.15,
    tau_struct: float = 3.90,
    seed: int = 0,
) -> tuple[AnalysisReport, SequenceGraph]:
    t = time.perf_counter()
    g = build_graph(values)
    spectrum = eigen_spectrum(g, method, seed=seed)
    verdict = classify(min(spectrum.lambda2_abs, 4.0), g.n, eps_rand, tau_struct)
    elapsed = (time.perf_counter() - t) * 1000.0
    notes = []
    ab_ok = True
    if g.n >= 50:
        ab_ok = spectrum.lambda2_abs >= SQRT12 - alon_boppana_slack(g.n)
        if not ab_ok:
            notes.append("lambda2_abs below the Alon-Boppana tolerance")
    stats: GraphStats = graph_stats(g)
    report = AnalysisReport(
        spec=spec_text,
        n=g.n,
        lambda1=spectrum.lambda1,
        lambda2_abs=spectrum.lambda2_abs,
        lambda2_signed=spectrum.lambda2_signed,
        second_largest=spectrum.second_largest,
        verdict=verdict.verdict.value,
        eps_rand=eps_rand,
        tau_struct=tau_struct,
        method=spectrum.method.value,
        residual=spectrum.residual,
        stats=asdict(stats),
        timing_ms=elapsed,
        alon_boppana_ok=ab_ok,
        warnings=notes,
    )
    return report, g


def analyze_spec(spec: SequenceSpec, n: int, **kw) -> tuple[AnalysisReport, SequenceGraph]:
    return analyze_values(generate(spec, n), spec.describe(), **kw)


# ---------------------------------------------------------------- batch scans

SCAN_COLUMNS = ["spec", "n", "lambda2_abs", "lambda2_signed", "verdict", "runtime_ms", "error"]


def _thread_count() -> int:
    raw = os.environ.get("SEQGRAPH_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return 1


def _scan_row(job) -> dict:
    spec, n, kw = job
    row = {"spec": spec.describe(), "n": n}
    t = time.perf_counter()
    try:
        report, _ = analyze_spec(spec, n, **kw)
        row.update(
            lambda2_abs=f"{report.lambda2_abs:.10f}",
            lambda2_signed=f"{report.lambda2_signed:.10f}",
            verdict=report.verdict,
            error="",
        )
    except Exception as exc:  # one bad row must not abort the batch
        row.update(lambda2_abs="", lambda2_signed="", verdict="", error=f"{type(exc).__name__}: {exc}")
    row["runtime_ms"] = f"{(time.perf_counter() - t) * 1000.0:.1f}"
    return row


def scan_rows(specs: list[SequenceSpec], sizes: list[int], threads: int | None = None, **kw) -> list[dict]:
    if not specs or not sizes:
        raise ValueError("scan needs at least one spec and one size")
    jobs = [(s, n, kw) for s in specs for n in sizes]
    threads = threads or _thread_count()
    if threads == 1:
        return [_scan_row(j) for j in jobs]
    with ThreadPoolExecutor(threads) as pool:
        # map keeps input order regardless of completion order
        return list(pool.map(_scan_row, jobs))


def scan_batch(specs: list[SequenceSpec], sizes: list[int], threads: int | None = None, **kw) -> str:
    """CSV with one row per (spec, n)."""
    rows = scan_rows(specs, sizes, threads, **kw)
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SCAN_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def embedding_to_json(e: Embedding) -> str:
    return json.dumps(
        {
            "method": e.method.value,
            "dims": e.dims,
            "seed": e.seed,
            "iterations": e.iterations,
            "coords": np.asarray(e.coords).tolist(),
        }
    )
