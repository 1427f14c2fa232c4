"""Synthetic network generators.

Every generator first builds an undirected skeleton, then gives each edge a
direction and a sign by independent fair coin flips.  Magnitudes are 1.0.

Calibration against the reference network sizes (n = 2000):

* ``barabasi_albert`` with ``m = 3`` gives about 6.0 neighbours per node.
* ``erdos_renyi`` with ``p = 0.2`` gives about 399.
* ``scale_free`` with the default ``beta = 0.54`` (networkx's directed
  preferential-attachment defaults, alpha = 0.41, gamma = 0.05) gives about
  3.2-3.5 once multi-edges and self-loops are collapsed.  The tuning constant
  is :data:`SCALE_FREE_BETA`.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np

from .graph import SignedDigraph, build_graph

MODELS = ("barabasi_albert", "erdos_renyi", "scale_free", "complete")
ALIASES = {"ba": "barabasi_albert", "er": "erdos_renyi", "scalefree": "scale_free"}

DEFAULT_PARAMS = {
    "barabasi_albert": 3.0,
    "erdos_renyi": 0.2,
    "scale_free": 0.54,
    "complete": 0.0,
}
SCALE_FREE_BETA = DEFAULT_PARAMS["scale_free"]
# alpha:gamma split of the node-adding probability mass in networkx's defaults
_SF_ALPHA_SHARE = 0.41 / (0.41 + 0.05)


@dataclass(frozen=True)
class GenSpec:
    model: str
    n: int
    model_param: float | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        model = ALIASES.get(self.model, self.model)
        if model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {MODELS}")
        object.__setattr__(self, "model", model)
        if self.model_param is None:
            object.__setattr__(self, "model_param", DEFAULT_PARAMS[model])
        if self.n < 2:
            raise ValueError("n must be at least 2")
        param = self.model_param
        if model == "barabasi_albert" and not (1 <= param < self.n and float(param).is_integer()):
            raise ValueError(f"BA needs an integer m with 1 <= m < n, got {param}")
        if model == "erdos_renyi" and not 0.0 <= param <= 1.0:
            raise ValueError(f"ER edge probability must lie in [0, 1], got {param}")
        if model == "scale_free" and not 0.0 <= param < 1.0:
            raise ValueError(f"scale-free beta must lie in [0, 1), got {param}")


def _skeleton(spec: GenSpec, rng: np.random.Generator) -> np.ndarray:
    """Undirected simple edge list ``(u, v)`` with ``u < v``."""
    n = spec.n
    if spec.model == "complete":
        iu = np.triu_indices(n, k=1)
        return np.column_stack(iu)
    if spec.model == "erdos_renyi":
        iu = np.triu_indices(n, k=1)
        mask = rng.random(iu[0].size) < spec.model_param
        return np.column_stack((iu[0][mask], iu[1][mask]))
    nx_seed = int(rng.integers(2**31))
    if spec.model == "barabasi_albert":
        G = nx.barabasi_albert_graph(n, int(spec.model_param), seed=nx_seed)
    else:
        beta = spec.model_param
        alpha = (1.0 - beta) * _SF_ALPHA_SHARE
        gamma = 1.0 - beta - alpha
        G = nx.Graph(
            nx.scale_free_graph(n, alpha=alpha, beta=beta, gamma=gamma, seed=nx_seed)
        )
        G.remove_edges_from(list(nx.selfloop_edges(G)))
    pairs = np.array(sorted((min(u, v), max(u, v)) for u, v in G.edges()), dtype=np.int64)
    return pairs.reshape(-1, 2)


def _orient(
    n: int, u: np.ndarray, v: np.ndarray, mag: np.ndarray, rng: np.random.Generator
) -> SignedDigraph:
    flip = rng.random(u.size) < 0.5
    neg = rng.random(u.size) < 0.5
    src = np.where(flip, v, u)
    dst = np.where(flip, u, v)
    w = np.where(neg, -mag, mag)
    return build_graph(n, np.column_stack((src, dst, w)))


def generate(spec: GenSpec) -> SignedDigraph:
    """Generate a signed digraph; deterministic in ``spec.seed``."""
    rng = np.random.default_rng(spec.seed)
    pairs = _skeleton(spec, rng)
    return _orient(
        spec.n, pairs[:, 0], pairs[:, 1], np.ones(len(pairs)), rng
    )


def randomize_signs_directions(g: SignedDigraph, seed: int) -> SignedDigraph:
    """Re-draw every edge's direction and sign by fair coin, keeping magnitudes."""
    rng = np.random.default_rng(seed)
    return _orient(g.node_count, g.sources, g.targets, np.abs(g.weights), rng)
