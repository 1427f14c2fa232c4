"""Pressure/tolerance sweeps over random oracle advice.

Each round draws ``p`` distinct nodes, advises each one up or down by a fair
coin, reduces the resulting NE instance to a knapsack and solves it exactly.
A cell of the sweep averages value and weight over its rounds.

Every round gets its own RNG keyed by ``(master_seed, p, t, round_index)``, so
results do not depend on how rounds are spread over worker processes.
"""

from __future__ import annotations

import csv
import logging
import math
import struct
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph import SignedDigraph
from .knapsack import solve_dp
from .model import NEInstance, OracleAdvice, ne_to_kp

log = logging.getLogger(__name__)

DEFAULT_PRESSURES = (5, 10, 50, 500)
DEFAULT_TOLERANCES = (5.0, 10.0, 50.0, 500.0)
CSV_COLUMNS = (
    "network", "n", "p", "t", "rounds", "mean_value", "mean_weight",
    "ratio", "seed", "solver", "weight_scale",
)
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SweepConfig:
    pressures: tuple[int, ...] = DEFAULT_PRESSURES
    tolerances: tuple[float, ...] = DEFAULT_TOLERANCES
    rounds: int = 10_000
    master_seed: int = 0
    worker_count: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "pressures", tuple(int(p) for p in self.pressures))
        object.__setattr__(self, "tolerances", tuple(float(t) for t in self.tolerances))
        if any(p < 1 for p in self.pressures):
            raise ValueError("pressures must be >= 1")
        if any(math.isnan(t) or t < 0 for t in self.tolerances):
            raise ValueError("tolerances must be >= 0")
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")


@dataclass(frozen=True)
class CellResult:
    p: int
    t: float
    mean_value: float
    mean_weight: float
    ratio: float
    rounds_completed: int


@dataclass
class SweepResult:
    network: str
    node_count: int
    seed: int
    cells: list[CellResult] = field(default_factory=list)
    solver: str = "dp"
    weight_scale: float = 1.0
    warnings: list[str] = field(default_factory=list)

    def cell(self, p: int, t: float) -> CellResult:
        for c in self.cells:
            if c.p == p and c.t == float(t):
                return c
        raise KeyError((p, t))

    def best_cell(self) -> CellResult:
        """Cell with the highest ratio (first one wins ties)."""
        return max(self.cells, key=lambda c: c.ratio)


def ratio_of(mean_value: float, mean_weight: float) -> float:
    """Value-to-weight ratio; zero weight reports the value itself."""
    return mean_value / mean_weight if mean_weight > 0 else mean_value


def round_rng(master_seed: int, p: int, t: float, round_index: int) -> np.random.Generator:
    t_bits = struct.unpack("<Q", struct.pack("<d", float(t)))[0]
    return np.random.default_rng([master_seed & _MASK64, p, t_bits, round_index])


def sample_advice(g: SignedDigraph, p: int, rng: np.random.Generator) -> OracleAdvice:
    """Advise ``p`` nodes drawn without replacement, each up or down by fair coin."""
    n = g.node_count
    if not 1 <= p <= n:
        raise ValueError(f"pressure {p} outside [1, {n}]")
    chosen = rng.choice(n, size=p, replace=False)
    signs = np.where(rng.random(p) < 0.5, -1, 1).astype(np.int8)
    advice = np.zeros(n, dtype=np.int8)
    advice[chosen] = signs
    return OracleAdvice(advice)


def solve_advice(g: SignedDigraph, advice: OracleAdvice, t: float) -> tuple[float, float]:
    """Optimal (value, weight) for one advice at tolerance ``t``."""
    reduced = ne_to_kp(NEInstance(g, advice, t))
    sol = solve_dp(reduced.instance)
    return sol.total_value, sol.total_weight


def run_round(
    g: SignedDigraph, p: int, t: float, rng: np.random.Generator
) -> tuple[float, float]:
    return solve_advice(g, sample_advice(g, p, rng), t)


def _run_rounds(
    g: SignedDigraph, p: int, t: float, seed: int, start: int, stop: int
) -> list[tuple[float, float]]:
    return [run_round(g, p, t, round_rng(seed, p, t, i)) for i in range(start, stop)]


_WORKER_GRAPH: SignedDigraph | None = None


def _init_worker(g: SignedDigraph) -> None:
    global _WORKER_GRAPH
    _WORKER_GRAPH = g


def _worker_task(args: tuple[int, float, int, int, int]) -> list[tuple[float, float]]:
    assert _WORKER_GRAPH is not None
    return _run_rounds(_WORKER_GRAPH, *args)


def _aggregate(p: int, t: float, outcomes: Sequence[tuple[float, float]]) -> CellResult:
    k = len(outcomes)
    mean_v = math.fsum(v for v, _ in outcomes) / k
    mean_w = math.fsum(w for _, w in outcomes) / k
    return CellResult(p, t, mean_v, mean_w, ratio_of(mean_v, mean_w), k)


def run_cell(
    g: SignedDigraph, p: int, t: float, rounds: int, master_seed: int = 0
) -> CellResult:
    return _aggregate(p, t, _run_rounds(g, p, t, master_seed, 0, rounds))


def run_sweep(g: SignedDigraph, cfg: SweepConfig, network: str = "network") -> SweepResult:
    """Run every (p, t) cell of ``cfg`` on ``g``.

    Cells whose pressure exceeds the node count are skipped with a warning.
    The result is identical for any ``cfg.worker_count``.
    """
    result = SweepResult(network, g.node_count, cfg.master_seed)
    cells = []
    for p in cfg.pressures:
        if p > g.node_count:
            msg = f"skipping p={p}: network {network!r} has only {g.node_count} nodes"
            log.warning(msg)
            result.warnings.append(msg)
            continue
        cells.extend((p, t) for t in cfg.tolerances)

    chunk = max(1, math.ceil(cfg.rounds / (4 * cfg.worker_count)))
    tasks = [
        (p, t, cfg.master_seed, start, min(start + chunk, cfg.rounds))
        for p, t in cells
        for start in range(0, cfg.rounds, chunk)
    ]
    if cfg.worker_count == 1 or len(tasks) == 1:
        outputs = [_run_rounds(g, *task) for task in tasks]
    else:
        with ProcessPoolExecutor(
            max_workers=cfg.worker_count, initializer=_init_worker, initargs=(g,)
        ) as pool:
            outputs = list(pool.map(_worker_task, tasks))

    per_cell: dict[tuple[int, float], list[tuple[float, float]]] = {c: [] for c in cells}
    for task, out in zip(tasks, outputs):
        per_cell[(task[0], task[1])].extend(out)
    result.cells = [_aggregate(p, t, per_cell[(p, t)]) for p, t in cells]
    return result


def _rel_diff(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def convergence_check(
    g: SignedDigraph,
    cell: tuple[int, float],
    i1: int,
    i2: int,
    master_seed: int = 0,
    second_seed: int | None = None,
) -> float:
    """Largest relative change of mean value/weight between two round counts.

    The longer run uses ``second_seed`` (default ``master_seed + 1``) so the two
    estimates are drawn from disjoint streams.
    """
    if i2 < i1:
        raise ValueError("i2 must be >= i1")
    p, t = cell
    if second_seed is None:
        second_seed = master_seed + 1
    a = run_cell(g, p, t, i1, master_seed)
    b = run_cell(g, p, t, i2, second_seed)
    return max(_rel_diff(a.mean_value, b.mean_value), _rel_diff(a.mean_weight, b.mean_weight))


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def write_csv(results: Sequence[SweepResult], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for res in results:
            for c in res.cells:
                writer.writerow([
                    res.network, res.node_count, c.p, _fmt(c.t), c.rounds_completed,
                    _fmt(c.mean_value), _fmt(c.mean_weight), _fmt(c.ratio),
                    res.seed, res.solver, _fmt(res.weight_scale),
                ])


def read_csv(path: str | Path) -> list[SweepResult]:
    """Parse a results CSV back into one :class:`SweepResult` per network."""
    results: dict[str, SweepResult] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        for row in reader:
            res = results.get(row["network"])
            if res is None:
                res = results[row["network"]] = SweepResult(
                    row["network"], int(row["n"]), int(row["seed"]),
                    solver=row["solver"], weight_scale=float(row["weight_scale"]),
                )
            res.cells.append(CellResult(
                int(row["p"]), float(row["t"]), float(row["mean_value"]),
                float(row["mean_weight"]), float(row["ratio"]), int(row["rounds"]),
            ))
    return list(results.values())
