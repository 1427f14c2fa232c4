"""0/1 knapsack solvers.

All exact solvers share one canonical tie-break so that their selections are
comparable item by item: maximise total value, then minimise total weight,
then take the lexicographically smallest selection vector (earlier items are
left out whenever that costs nothing).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MAX_BRUTEFORCE_ITEMS = 25
MAX_DP_CELLS = 200_000_000
_INTEGRAL_EPS = 1e-9


@dataclass(frozen=True)
class KnapsackInstance:
    values: tuple[float, ...]
    weights: tuple[float, ...]
    capacity: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "capacity", float(self.capacity))
        if len(self.values) != len(self.weights):
            raise ValueError("values and weights must have the same length")
        for name, seq in (("values", self.values), ("weights", self.weights)):
            if any(not math.isfinite(x) or x < 0 for x in seq):
                raise ValueError(f"{name} must be finite and non-negative")
        if math.isnan(self.capacity) or self.capacity < 0:
            raise ValueError("capacity must be non-negative")

    @property
    def size(self) -> int:
        return len(self.values)

    def to_json(self) -> str:
        return json.dumps(
            {"values": list(self.values), "weights": list(self.weights), "capacity": self.capacity}
        )

    @classmethod
    def from_dict(cls, data: dict) -> "KnapsackInstance":
        try:
            return cls(data["values"], data["weights"], data["capacity"])
        except KeyError as exc:
            raise ValueError(f"knapsack JSON is missing key {exc}") from None

    @classmethod
    def load(cls, path: str | Path) -> "KnapsackInstance":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass(frozen=True)
class KnapsackSolution:
    selection: tuple[int, ...]
    total_value: float
    total_weight: float
    optimal: bool = True
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def chosen(self) -> list[int]:
        return [i for i, x in enumerate(self.selection) if x]


def _totals(inst: KnapsackInstance, selection: list[int]) -> tuple[float, float]:
    v = math.fsum(x * v for x, v in zip(selection, inst.values))
    w = math.fsum(x * w for x, w in zip(selection, inst.weights))
    return v, w


def _scaled_weights(inst: KnapsackInstance, scale: float) -> np.ndarray:
    scaled = np.asarray(inst.weights, dtype=np.float64) * scale
    rounded = np.rint(scaled)
    off = np.abs(scaled - rounded) > _INTEGRAL_EPS * np.maximum(1.0, np.abs(scaled))
    if off.any():
        i = int(np.flatnonzero(off)[0])
        raise ValueError(
            f"weight {inst.weights[i]} of item {i} is not integral at scale {scale}"
        )
    return rounded.astype(np.int64)


def solve_dp(inst: KnapsackInstance, weight_scale: float = 1.0) -> KnapsackSolution:
    """Exact solve by dynamic programming over the (scaled) weight axis.

    Weights times ``weight_scale`` must be integers.  The capacity is scaled
    and floored, which loses nothing when every weight is an integer.
    Runs in O(r * C) time.
    """
    r = inst.size
    weights = _scaled_weights(inst, weight_scale)
    values = np.asarray(inst.values, dtype=np.float64)
    total = int(weights.sum())
    cap_scaled = inst.capacity * weight_scale
    cap = total if cap_scaled >= total else int(math.floor(cap_scaled + _INTEGRAL_EPS))

    selection = [0] * r
    # free items always help; items that cannot fit or add nothing never do
    candidates = []
    for i in range(r):
        if weights[i] == 0:
            selection[i] = 1 if values[i] > 0 else 0
        elif values[i] > 0 and weights[i] <= cap:
            candidates.append(i)

    if candidates:
        if len(candidates) * (cap + 1) > MAX_DP_CELLS:
            raise OverflowError(
                f"DP table of {len(candidates)} x {cap + 1} cells exceeds the limit"
            )
        best_val = np.zeros(cap + 1)
        best_wt = np.zeros(cap + 1, dtype=np.int64)
        take = np.zeros((len(candidates), cap + 1), dtype=bool)
        # suffix DP: row j describes items candidates[j:], so the forward
        # reconstruction can prefer leaving early items out on ties
        for j in range(len(candidates) - 1, -1, -1):
            i = candidates[j]
            w, v = int(weights[i]), values[i]
            cand_val = best_val[: cap + 1 - w] + v
            cand_wt = best_wt[: cap + 1 - w] + w
            cur_val = best_val[w:]
            cur_wt = best_wt[w:]
            better = (cand_val > cur_val) | ((cand_val == cur_val) & (cand_wt < cur_wt))
            take[j, w:] = better
            best_val[w:] = np.where(better, cand_val, cur_val)
            best_wt[w:] = np.where(better, cand_wt, cur_wt)
        c = cap
        for j, i in enumerate(candidates):
            if take[j, c]:
                selection[i] = 1
                c -= int(weights[i])

    value, weight = _totals(inst, selection)
    return KnapsackSolution(tuple(selection), value, weight, True, {"solver": "dp"})


def solve_bruteforce(inst: KnapsackInstance) -> KnapsackSolution:
    """Exhaustive enumeration of all 2^r selections (r <= 25)."""
    r = inst.size
    if r > MAX_BRUTEFORCE_ITEMS:
        raise ValueError(f"brute force limited to {MAX_BRUTEFORCE_ITEMS} items, got {r}")
    values = np.asarray(inst.values, dtype=np.float64)
    weights = np.asarray(inst.weights, dtype=np.float64)
    # item 0 is the most significant bit, so mask order is lexicographic order
    shifts = np.arange(r - 1, -1, -1, dtype=np.int64)
    best_mask, best_v, best_w = 0, 0.0, 0.0
    block = 1 << 16
    for lo in range(0, 1 << r, block):
        masks = np.arange(lo, min(lo + block, 1 << r), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.float64)
        tot_w = bits @ weights
        tot_v = bits @ values
        ok = np.flatnonzero(tot_w <= inst.capacity)
        if ok.size == 0:
            continue
        v = tot_v[ok]
        top = ok[v == v.max()]
        i = top[np.argmin(tot_w[top])]  # argmin keeps the first, i.e. smallest mask
        if tot_v[i] > best_v or (tot_v[i] == best_v and tot_w[i] < best_w):
            best_mask, best_v, best_w = int(masks[i]), float(tot_v[i]), float(tot_w[i])
    selection = [(best_mask >> int(k)) & 1 for k in shifts]
    value, weight = _totals(inst, selection)
    return KnapsackSolution(tuple(selection), value, weight, True, {"solver": "brute"})


def solve_greedy(inst: KnapsackInstance) -> KnapsackSolution:
    """Value-density greedy baseline; not optimal in general."""

    def density(i: int) -> float:
        w = inst.weights[i]
        return math.inf if w == 0 else inst.values[i] / w

    order = sorted(range(inst.size), key=lambda i: -density(i))
    selection = [0] * inst.size
    load = 0.0
    for i in order:
        if inst.values[i] <= 0:
            continue
        if load + inst.weights[i] <= inst.capacity:
            selection[i] = 1
            load += inst.weights[i]
    value, weight = _totals(inst, selection)
    return KnapsackSolution(tuple(selection), value, weight, False, {"solver": "greedy"})


SOLVERS = {"dp": solve_dp, "brute": solve_bruteforce, "greedy": solve_greedy}
