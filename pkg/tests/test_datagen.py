import json
from importlib.resources import files

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial import Delaunay

from graphrecon import bruteforce
from graphrecon.datagen import (GenConfig, delaunay, delaunay_triangles, generate_graph,
                                graph_from_dict, graph_to_dict, keep_count, read_graph,
                                sample_points, subsample_edges, worked_example_graph, write_graph)
from graphrecon.errors import DegenerateConfiguration
from graphrecon.geometry import edge_crossings, min_pairwise_angle

from conftest import seeds


def scipy_edges(pts):
    edges = set()
    for t in Delaunay(np.asarray(pts)).simplices:
        for i in range(3):
            a, b = int(t[i]), int(t[(i + 1) % 3])
            edges.add((min(a, b), max(a, b)))
    return edges


@pytest.mark.parametrize("seed", range(40))
def test_delaunay_matches_scipy(seed):
    pts = sample_points(5 + seed, seed)
    assert delaunay(pts) == scipy_edges(pts)


@given(seeds, st.integers(3, 30))
def test_empty_circumcircles(seed, n):
    pts = sample_points(n, seed)
    tris = delaunay_triangles(pts)
    assert not bruteforce.empty_circumcircle_violations(pts, tris)
    # Euler: 2n - 2 - hull triangles, so at most 2n - 5
    assert len(tris) <= 2 * n - 5


def test_small_inputs():
    assert delaunay([(0.0, 0.0), (1.0, 0.5)]) == {(0, 1)}
    assert delaunay([(0.0, 0.0)]) == set()
    with pytest.raises(DegenerateConfiguration):
        delaunay([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)])
    with pytest.raises(DegenerateConfiguration):
        delaunay([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.3, 2.0)])


@pytest.mark.parametrize("alpha, total, kept", [
    (0.0, 10, 0), (1.0, 10, 10), (0.35, 10, 4), (0.3, 10, 3), (0.7, 10, 7), (0.1, 3, 1)])
def test_keep_count(alpha, total, kept):
    assert keep_count(alpha, total) == kept


@given(seeds, st.integers(3, 25), st.floats(0.0, 1.0))
def test_subsample(seed, n, alpha):
    pts = sample_points(n, seed)
    full = delaunay(pts)
    g = subsample_edges(pts, full, alpha, seed)
    assert g.m == keep_count(alpha, len(full))
    assert g.edges <= full
    assert not edge_crossings(g)


def test_subsample_rejects_bad_alpha():
    with pytest.raises(ValueError):
        subsample_edges([(0.0, 0.0), (1.0, 1.0)], {(0, 1)}, 1.5, 0)


def test_generation_is_deterministic():
    cfg = GenConfig(n=20, alpha=0.4, seed=11, min_angle_filter=1e-6)
    assert generate_graph(cfg) == generate_graph(cfg)
    assert generate_graph(cfg) != generate_graph(GenConfig(n=20, alpha=0.4, seed=12))


@given(seeds, st.integers(3, 15))
def test_min_angle_filter(seed, n):
    g = generate_graph(GenConfig(n=n, seed=seed, min_angle_filter=1e-3))
    assert 0.5 * min_pairwise_angle(g.vertices) >= 1e-3


@given(seeds, st.integers(2, 10), st.integers(3, 5), st.floats(0.0, 1.0))
def test_higher_dim_generation(seed, n, d, alpha):
    g = generate_graph(GenConfig(n=n, alpha=alpha, seed=seed, dim=d))
    assert g.dim == d and g.n == n
    assert g.n_components() == 1
    rest = n * (n - 1) // 2 - (n - 1)
    assert g.m == n - 1 + keep_count(alpha, rest)


def test_config_validation():
    for kwargs in ({"n": 0}, {"n": 3, "alpha": -0.1}, {"n": 3, "dim": 1}):
        with pytest.raises(ValueError):
            GenConfig(**kwargs)


def test_json_roundtrip(tmp_path):
    g = generate_graph(GenConfig(n=15, alpha=0.5, seed=3))
    path = tmp_path / "g.json"
    write_graph(g, path)
    assert read_graph(path) == g
    assert graph_from_dict(json.loads(path.read_text())) == g
    with pytest.raises(ValueError):
        graph_from_dict({"dim": 3, "vertices": [[0, 0]], "edges": []})


def test_stored_worked_example():
    data = json.loads(files("graphrecon").joinpath("data/worked_example.json").read_text())
    assert graph_from_dict(data) == worked_example_graph()
    assert graph_to_dict(worked_example_graph()) == data
