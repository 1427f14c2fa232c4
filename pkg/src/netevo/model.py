"""Network evolution (NE) instances and their knapsack reductions.

An oracle advice assigns every node ``-1`` (should be repressed), ``+1``
(should be promoted) or ``0`` (indifferent).  Node ``j`` earns *benefit* from
each outgoing edge whose sign agrees with the advice on its target and incurs
*damage* from each one that disagrees.  Solving the instance means choosing
the set of nodes to force so that total benefit is maximal while total damage
stays within the tolerance, which is exactly a 0/1 knapsack problem.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .graph import SignedDigraph, build_graph
from .knapsack import KnapsackInstance, KnapsackSolution, solve_dp

PAPER_FAITHFUL = "paper_faithful"
CORRECTED = "corrected"
_MODE_ALIASES = {"paper": PAPER_FAITHFUL, PAPER_FAITHFUL: PAPER_FAITHFUL, CORRECTED: CORRECTED}


@dataclass(frozen=True, eq=False)
class OracleAdvice:
    advice: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.advice, dtype=np.int8)
        if a.ndim != 1 or not np.isin(a, (-1, 0, 1)).all():
            raise ValueError("advice entries must be -1, 0 or +1")
        a.setflags(write=False)
        object.__setattr__(self, "advice", a)

    def __len__(self) -> int:
        return int(self.advice.shape[0])

    def __neg__(self) -> "OracleAdvice":
        return OracleAdvice(-self.advice)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OracleAdvice) and np.array_equal(self.advice, other.advice)

    __hash__ = None  # type: ignore[assignment]

    def pressure(self) -> int:
        return int(np.count_nonzero(self.advice))

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.advice)


@dataclass(frozen=True)
class NEInstance:
    graph: SignedDigraph
    advice: OracleAdvice
    tolerance: float

    def __post_init__(self) -> None:
        if not isinstance(self.advice, OracleAdvice):
            object.__setattr__(self, "advice", OracleAdvice(self.advice))
        if len(self.advice) != self.graph.node_count:
            raise ValueError(
                f"advice has length {len(self.advice)}, graph has {self.graph.node_count} nodes"
            )
        if math.isnan(self.tolerance) or self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")

    def to_dict(self) -> dict:
        return {
            "n": self.graph.node_count,
            "edges": [list(e) for e in self.graph.edges()],
            "advice": self.advice.advice.tolist(),
            "tolerance": self.tolerance,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NEInstance":
        try:
            g = build_graph(int(data["n"]), [tuple(e) for e in data["edges"]])
            return cls(g, OracleAdvice(data["advice"]), float(data["tolerance"]))
        except KeyError as exc:
            raise ValueError(f"NE JSON is missing key {exc}") from None

    @classmethod
    def load(cls, path: str | Path) -> "NEInstance":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass(frozen=True, eq=False)
class BenefitDamage:
    benefits: np.ndarray
    damages: np.ndarray


@dataclass(frozen=True)
class NESolution:
    selection: tuple[int, ...]
    total_benefit: float
    total_damage: float


@dataclass(frozen=True)
class ReducedKnapsack:
    """A knapsack instance plus the node index of every item."""

    instance: KnapsackInstance
    nodes: tuple[int, ...]
    node_count: int
    weight_scale: float = 1.0


def compute_benefit_damage(g: SignedDigraph, a: OracleAdvice) -> BenefitDamage:
    """Per-node benefit and damage under advice ``a``.

    Only the incoming edges of advised nodes are visited, so the cost is the
    summed in-degree of the support rather than the edge count.
    """
    if not isinstance(a, OracleAdvice):
        a = OracleAdvice(a)
    n = g.node_count
    if len(a) != n:
        raise ValueError(f"advice has length {len(a)}, graph has {n} nodes")
    support = a.support()
    starts = g.in_ptr[support]
    lengths = g.in_ptr[support + 1] - starts
    total = int(lengths.sum())
    benefits = np.zeros(n)
    damages = np.zeros(n)
    if total:
        # flat positions into in_edges for the concatenated support slices
        offsets = np.repeat(starts - np.cumsum(lengths) + lengths, lengths)
        eids = g.in_edges[offsets + np.arange(total)]
        src = g.sources[eids]
        w = g.weights[eids]
        agree = w * a.advice[g.targets[eids]] > 0
        mag = np.abs(w)
        benefits = np.bincount(src[agree], mag[agree], minlength=n)
        damages = np.bincount(src[~agree], mag[~agree], minlength=n)
    return BenefitDamage(benefits, damages)


def kp_to_ne(kp: KnapsackInstance, mode: str = CORRECTED) -> NEInstance:
    """Encode a knapsack instance as an NE instance.

    Every node is advised ``+1``.  Row ``j`` of the interaction matrix spreads
    ``v_j`` over the first ``floor(r/2)`` columns and ``-w_j`` over the rest.
    In ``paper_faithful`` mode both halves are divided by ``floor(r/2)``,
    which inflates damages by ``ceil(r/2)/floor(r/2)`` for odd ``r``; the
    ``corrected`` mode divides the negative half by ``r - floor(r/2)`` so the
    round trip is exact for every ``r``.
    """
    mode = _MODE_ALIASES.get(mode)
    if mode is None:
        raise ValueError("mode must be 'paper_faithful' or 'corrected'")
    r = kp.size
    if r < 2:
        raise ValueError("the reduction needs at least 2 items")
    half = r // 2
    neg_div = half if mode == PAPER_FAITHFUL else r - half
    edges = []
    for j in range(r):
        for k in range(r):
            w = kp.values[j] / half if k < half else -kp.weights[j] / neg_div
            if w != 0:
                edges.append((j, k, w))
    return NEInstance(build_graph(r, edges), OracleAdvice(np.ones(r, dtype=np.int8)), kp.capacity)


def _as_integral_weights(d: np.ndarray, scale: float) -> np.ndarray:
    scaled = d * scale
    near = np.rint(scaled)
    snap = np.abs(scaled - near) <= 1e-9 * np.maximum(1.0, np.abs(scaled))
    # round up when not already integral so feasibility is never overstated
    return np.where(snap, near, np.ceil(scaled))


def ne_to_kp(ne: NEInstance, weight_scale: float = 1.0, keep_inert: bool = False) -> ReducedKnapsack:
    """Reverse reduction: values = benefits, weights = damages, capacity = tolerance.

    Nodes with zero benefit and zero damage cannot change the optimum and are
    dropped unless ``keep_inert`` is set.  ``weight_scale`` only affects the
    solver (see :func:`solve_ne`); the emitted weights are the raw damages.
    """
    bd = compute_benefit_damage(ne.graph, ne.advice)
    if keep_inert:
        nodes = np.arange(ne.graph.node_count)
    else:
        nodes = np.flatnonzero((bd.benefits > 0) | (bd.damages > 0))
    inst = KnapsackInstance(
        bd.benefits[nodes].tolist(), bd.damages[nodes].tolist(), ne.tolerance
    )
    return ReducedKnapsack(inst, tuple(int(i) for i in nodes), ne.graph.node_count, weight_scale)


Solver = Callable[[KnapsackInstance], KnapsackSolution]


def solve_ne(
    ne: NEInstance, solver: Solver | None = None, weight_scale: float = 1.0
) -> NESolution:
    """Choose the forced node set maximising benefit under the damage budget.

    With the default DP solver, damages are scaled by ``weight_scale`` and
    rounded up to integers when needed.
    """
    reduced = ne_to_kp(ne, weight_scale)
    inst = reduced.instance
    if solver is None:
        int_w = _as_integral_weights(np.asarray(inst.weights), weight_scale)
        scaled = KnapsackInstance(inst.values, int_w.tolist(), inst.capacity * weight_scale)
        sol = solve_dp(scaled)
    else:
        sol = solver(inst)
    selection = [0] * reduced.node_count
    for item, x in enumerate(sol.selection):
        if x:
            selection[reduced.nodes[item]] = 1
    chosen = [i for i, x in enumerate(sol.selection) if x]
    benefit = math.fsum(inst.values[i] for i in chosen)
    damage = math.fsum(inst.weights[i] for i in chosen)
    return NESolution(tuple(selection), benefit, damage)
