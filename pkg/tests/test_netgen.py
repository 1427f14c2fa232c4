import numpy as np
import pytest

from netevo.graph import build_graph, degree_stats
from netevo.netgen import GenSpec, generate, randomize_signs_directions


def skeleton(g):
    return sorted(
        (min(s, t), max(s, t)) for s, t in zip(g.sources.tolist(), g.targets.tolist())
    )


def test_complete_small():
    g = generate(GenSpec("complete", 4, seed=1))
    assert g.edge_count == 6
    assert degree_stats(g).degree_histogram == {3: 4}
    assert set(np.abs(g.weights)) == {1.0}


@pytest.mark.parametrize("model", ["ba", "er", "scalefree", "complete"])
def test_generated_graph_invariants(model):
    g = generate(GenSpec(model, 300, seed=7))
    assert not g.has_self_loops()
    assert np.all(np.abs(g.weights) == 1.0)
    pairs = skeleton(g)
    assert len(pairs) == len(set(pairs))


@pytest.mark.parametrize("model", ["ba", "er", "scalefree", "complete"])
def test_generation_is_deterministic(model):
    a = generate(GenSpec(model, 200, seed=11))
    b = generate(GenSpec(model, 200, seed=11))
    c = generate(GenSpec(model, 200, seed=12))
    assert a == b
    assert a != c


@pytest.mark.parametrize(
    "model, n, param",
    [
        ("ba", 1, None),
        ("ba", 10, 0),
        ("ba", 10, 10),
        ("ba", 10, 2.5),
        ("er", 10, 1.5),
        ("er", 10, -0.1),
        ("scalefree", 10, 1.0),
        ("lattice", 10, None),
    ],
)
def test_invalid_specs(model, n, param):
    with pytest.raises(ValueError):
        GenSpec(model, n, param)


def test_ba_heavier_tail_than_er():
    for seed in range(5):
        ba = generate(GenSpec("ba", 2000, 3, seed))
        mean = degree_stats(ba).avg_neighbors
        er = generate(GenSpec("er", 2000, mean / 1999, seed))
        assert degree_stats(ba).max_degree > degree_stats(er).max_degree


def test_scale_free_density_near_reference():
    means = [degree_stats(generate(GenSpec("scalefree", 2000, seed=s))).avg_neighbors for s in range(5)]
    assert 2.8 <= np.mean(means) <= 3.8


def test_randomize_single_edge_outcomes():
    g = build_graph(2, [(0, 1, 1.0)])
    outcomes = {randomize_signs_directions(g, s).edges()[0] for s in range(200)}
    assert outcomes == {(0, 1, 1.0), (0, 1, -1.0), (1, 0, 1.0), (1, 0, -1.0)}


def test_randomize_preserves_skeleton_and_magnitude():
    g = build_graph(4, [(0, 1, 2.0), (2, 1, -0.5), (3, 0, 1.0)])
    r = randomize_signs_directions(g, 5)
    assert skeleton(r) == skeleton(g)
    mags = {tuple(sorted((s, t))): abs(w) for s, t, w in r.edges()}
    assert mags == {(0, 1): 2.0, (1, 2): 0.5, (0, 3): 1.0}
    assert r == randomize_signs_directions(g, 5)


def test_sign_fraction_concentrates():
    g = generate(GenSpec("er", 1000, 0.2, seed=3))
    assert g.edge_count > 90_000
    r = randomize_signs_directions(g, 9)
    frac = np.mean(r.weights > 0)
    assert 0.48 <= frac <= 0.52
    assert 0.48 <= np.mean(r.sources < r.targets) <= 0.52


def test_sign_independent_of_degree():
    g = generate(GenSpec("ba", 2000, 3, seed=2))
    deg = np.bincount(np.concatenate([g.sources, g.targets]), minlength=g.node_count)
    edge_deg = deg[g.sources] + deg[g.targets]
    order = np.argsort(edge_deg, kind="stable")
    positive = g.weights[order] > 0
    for decile in np.array_split(positive, 10):
        assert abs(decile.mean() - 0.5) <= 0.05
