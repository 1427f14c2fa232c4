"""Reading and writing networks, plus the static ratio bar chart."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import SignedDigraph, build_graph
from .sim import SweepResult

log = logging.getLogger(__name__)


class DataError(ValueError):
    """Malformed input data; carries the offending line number when known."""

    def __init__(self, message: str, path: str | Path | None = None, line: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)
        self.line = line


@dataclass(frozen=True)
class EdgeListRecord:
    source_id: str
    target_id: str
    weight: float = 1.0


@dataclass(frozen=True)
class MitabRecord:
    interactor_a: str
    interactor_b: str
    extra: tuple[str, ...] = ()


def _lines(path: str | Path) -> Iterable[tuple[int, str]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            yield lineno, line


def parse_edgelist(path: str | Path) -> list[EdgeListRecord]:
    """Read ``source<TAB>target[<TAB>weight]`` lines; '#' lines are comments."""
    records = []
    for lineno, line in _lines(path):
        cols = line.split("\t")
        if len(cols) not in (2, 3) or not cols[0] or not cols[1]:
            raise DataError("expected source<TAB>target[<TAB>weight]", path, lineno)
        weight = 1.0
        if len(cols) == 3:
            try:
                weight = float(cols[2])
            except ValueError:
                raise DataError(f"bad weight {cols[2]!r}", path, lineno) from None
            if not math.isfinite(weight) or weight == 0:
                raise DataError(f"weight must be finite and nonzero, got {cols[2]!r}", path, lineno)
        records.append(EdgeListRecord(cols[0], cols[1], weight))
    return records


def write_edgelist(records: Iterable[EdgeListRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in records:
            fh.write(f"{r.source_id}\t{r.target_id}\t{r.weight!r}\n")


def parse_mitab(path: str | Path) -> list[MitabRecord]:
    """Interactor pairs from a MITAB export (first two columns only)."""
    records = []
    for lineno, line in _lines(path):
        cols = line.split("\t")
        if len(cols) < 2 or not cols[0] or not cols[1]:
            raise DataError("MITAB line needs at least two columns", path, lineno)
        records.append(MitabRecord(cols[0], cols[1], tuple(cols[2:])))
    return records


def dedupe_undirected(records: Iterable[MitabRecord]) -> list[MitabRecord]:
    """Keep the first record of every unordered interactor pair."""
    seen: set[frozenset[str]] = set()
    out = []
    for r in records:
        key = frozenset((r.interactor_a, r.interactor_b))
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def ids_to_graph(
    records: Sequence[EdgeListRecord | MitabRecord],
    assign_random: bool = False,
    seed: int = 0,
) -> tuple[SignedDigraph, dict[str, int]]:
    """Index string IDs in first-appearance order and build the graph.

    Without ``assign_random`` each record becomes ``source -> target`` with its
    own weight (MITAB records get +1).  With it, every edge's direction and sign
    come from fair coin flips.
    """
    ids: dict[str, int] = {}
    src, dst, w = [], [], []
    for r in records:
        if isinstance(r, MitabRecord):
            a, b, weight = r.interactor_a, r.interactor_b, 1.0
        else:
            a, b, weight = r.source_id, r.target_id, r.weight
        src.append(ids.setdefault(a, len(ids)))
        dst.append(ids.setdefault(b, len(ids)))
        w.append(weight)
    s = np.asarray(src, dtype=np.int64)
    t = np.asarray(dst, dtype=np.int64)
    wt = np.asarray(w, dtype=np.float64)
    if assign_random:
        rng = np.random.default_rng(seed)
        flip = rng.random(s.size) < 0.5
        neg = rng.random(s.size) < 0.5
        s, t = np.where(flip, t, s), np.where(flip, s, t)
        wt = np.where(neg, -np.abs(wt), np.abs(wt))
    return build_graph(len(ids), np.column_stack((s, t, wt))), ids


def graph_to_records(
    g: SignedDigraph, names: Sequence[str] | None = None
) -> list[EdgeListRecord]:
    label = (lambda i: names[i]) if names is not None else str
    return [EdgeListRecord(label(s), label(t), w) for s, t, w in g.edges()]


def load_network(path: str | Path) -> SignedDigraph:
    graph, _ = ids_to_graph(parse_edgelist(path))
    return graph


# ---------------------------------------------------------------- figure

_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b")


def emit_figure(results: Sequence[SweepResult], path: str | Path) -> list[str]:
    """Grouped SVG bar chart of the ratio at the highest pressure.

    One group per network, one bar per tolerance.  Returns warnings for
    tolerances a network is missing at that pressure.
    """
    results = [r for r in results if r.cells]
    if not results:
        raise ValueError("no sweep results to plot")
    p_max = max(c.p for r in results for c in r.cells)
    tols = sorted({c.t for r in results for c in r.cells if c.p == p_max})
    warnings = []
    bars: list[list[float | None]] = []
    for r in results:
        row = []
        for t in tols:
            cell = next((c for c in r.cells if c.p == p_max and c.t == t), None)
            if cell is None:
                warnings.append(f"{r.network}: no cell at p={p_max}, t={t:g}")
            row.append(None if cell is None else cell.ratio)
        bars.append(row)
    for msg in warnings:
        log.warning(msg)

    bar_w, gap, pad_l, pad_b, pad_t, plot_h = 18, 24, 60, 50, 40, 300
    group_w = len(tols) * bar_w
    width = pad_l + len(results) * (group_w + gap) + gap + 120
    height = pad_t + plot_h + pad_b
    top = max((v for row in bars for v in row if v is not None), default=0.0) or 1.0
    base = pad_t + plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<text x="{pad_l}" y="20">V/W at p={p_max}</text>',
        f'<line x1="{pad_l}" y1="{base}" x2="{width - 120}" y2="{base}" stroke="#000"/>',
        f'<line x1="{pad_l}" y1="{pad_t}" x2="{pad_l}" y2="{base}" stroke="#000"/>',
        f'<text x="{pad_l - 6}" y="{pad_t + 4}" text-anchor="end">{top:.3g}</text>',
        f'<text x="{pad_l - 6}" y="{base + 4}" text-anchor="end">0</text>',
    ]
    for gi, (r, row) in enumerate(zip(results, bars)):
        x0 = pad_l + gap + gi * (group_w + gap)
        for ti, v in enumerate(row):
            if v is None:
                continue
            h = plot_h * v / top
            out.append(
                f'<rect class="bar" x="{x0 + ti * bar_w}" y="{base - h:.2f}" width="{bar_w - 2}" '
                f'height="{h:.2f}" fill="{_PALETTE[ti % len(_PALETTE)]}">'
                f"<title>{_esc(r.network)} t={tols[ti]:g}: {v:.6g}</title></rect>"
            )
        out.append(
            f'<text x="{x0 + group_w / 2:.1f}" y="{base + 16}" text-anchor="middle">'
            f"{_esc(r.network)}</text>"
        )
    lx = width - 110
    for ti, t in enumerate(tols):
        y = pad_t + ti * 16
        out.append(f'<rect x="{lx}" y="{y}" width="10" height="10" fill="{_PALETTE[ti % len(_PALETTE)]}"/>')
        out.append(f'<text x="{lx + 14}" y="{y + 9}">t={t:g}</text>')
    out.append("</svg>\n")
    Path(path).write_text("\n".join(out), encoding="utf-8", newline="\n")
    return warnings


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
