import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from graphrecon import bruteforce
from graphrecon.datagen import GenConfig, generate_graph, sample_points, worked_example_graph
from graphrecon.errors import DegenerateDirection, MinAngleTooSmall, ProjectionDegenerate, TooFewPoints
from graphrecon.geometry import EmbeddedGraph, apex_line_angles, rotate_2d, vertex_height
from graphrecon.oracle import DiagramOracle
from graphrecon.edge_recon import (TWO_POINT_THETA, apex_angles, bowtie_half_angle, edge_test,
                                   indegree, indegree_from_diagram, lift, make_bowtie,
                                   reconstruct_edges_2d, reconstruct_edges_dd)
from graphrecon.persistence import compute_apd, restrict

from conftest import angles, graphs, random_graph, seeds, unit

WORKED_THETAS = [0.23685, 0.21867, 0.39852, 0.17985]


def test_worked_example_angles():
    V = worked_example_graph().vertices
    assert apex_angles(V) == pytest.approx(WORKED_THETAS, abs=1e-5)
    assert bowtie_half_angle(V) == pytest.approx(0.0899267, abs=1e-7)


def test_worked_example_edge_tests():
    g = worked_example_graph()
    o = DiagramOracle(g)
    theta = bowtie_half_angle(g.vertices)
    V = g.vertices
    t = edge_test(o, V[2], V[3], theta)  # (0.25,0) -> (1,1): edge
    assert (t.indeg1, t.indeg2) == (2, 1) and t.exists
    t = edge_test(o, V[2], V[0], theta)  # (0.25,0) -> (-1,2): not an edge
    assert (t.indeg1, t.indeg2) == (1, 1) and not t.exists
    er = reconstruct_edges_2d(DiagramOracle(g), V)
    assert er.edges == g.edges and er.queries_used == 12


def test_two_points_use_fixed_angle():
    assert bowtie_half_angle([(0.0, 0.0), (1.0, 0.3)]) == TWO_POINT_THETA
    with pytest.raises(TooFewPoints):
        bowtie_half_angle([(0.0, 0.0)])
    for edges in ([], [(0, 1)]):
        g = EmbeddedGraph([(0.0, 0.0), (1.0, 0.3)], edges)
        assert reconstruct_edges_2d(DiagramOracle(g), g.vertices).edges == g.edges


def test_min_angle_assertion():
    with pytest.raises(MinAngleTooSmall) as info:
        bowtie_half_angle(worked_example_graph().vertices, min_angle=0.1)
    assert info.value.theta == pytest.approx(0.0899267, abs=1e-7)


@given(seeds, st.integers(3, 15))
def test_apex_angles_agree_with_numpy(seed, n):
    pts = sample_points(n, seed)
    assert apex_angles(pts) == pytest.approx(list(apex_line_angles(pts)), abs=1e-12)


@given(graphs(max_n=12), angles, st.data())
def test_indegree_from_diagram(g, a, data):
    s = unit(a)
    try:
        diag = compute_apd(g, s)
    except DegenerateDirection:
        assume(False)
    v = data.draw(st.integers(0, g.n - 1))
    h = vertex_height(s, g.vertices[v])
    expected = bruteforce.direct_indegree(g, v, s)
    assert indegree(diag, h) == expected
    assert indegree_from_diagram(restrict(diag, 0), restrict(diag, 1), h) == expected


@given(seeds, st.integers(3, 12), st.data())
def test_bowtie_isolates_one_vertex(seed, n, data):
    pts = sample_points(n, seed)
    theta = bowtie_half_angle(pts)
    v = data.draw(st.integers(0, n - 1))
    w = data.draw(st.integers(0, n - 1).filter(lambda k: k != v))
    bt = make_bowtie(pts[v], pts[w], theta)
    assert bruteforce.bowtie_isolates(pts, v, w, bt.s1, bt.s2)


@given(seeds, st.integers(3, 20), st.sampled_from([0.1, 0.5, 1.0]))
def test_plane_graph_edges(seed, n, alpha):
    g = generate_graph(GenConfig(n=n, alpha=alpha, seed=seed, min_angle_filter=1e-6))
    o = DiagramOracle(g)
    er = reconstruct_edges_2d(o, g.vertices, keep_tests=True)
    assert er.edges == g.edges
    assert o.query_count == er.queries_used == n * n - n
    for (i, j), t in er.tests.items():
        # the decision does not depend on which endpoint is the apex
        assert edge_test(o, g.vertices[j], g.vertices[i], er.theta).exists == t.exists


@given(seeds, st.integers(3, 10), st.integers(3, 4))
def test_nonplanar_edges_in_higher_dim(seed, n, d):
    g = random_graph(n, seed, 0.5, dim=d)
    o = DiagramOracle(g)
    er = reconstruct_edges_dd(o, g.vertices)
    assert er.edges == g.edges
    assert er.queries_used == n * n - n


def test_lift():
    assert lift((0.6, 0.8), 4) == (0.6, 0.8, 0.0, 0.0)


def test_projection_degenerate():
    g = EmbeddedGraph([(0.0, 0.0, 0.1), (1.0, 1.0, 0.7), (2.0, 2.0, 0.4)])
    with pytest.raises(ProjectionDegenerate):
        reconstruct_edges_dd(DiagramOracle(g), g.vertices)


def test_second_worked_edge_direction():
    # the clockwise normal variant of the non-edge test gives the same answer
    g = worked_example_graph()
    theta = bowtie_half_angle(g.vertices)
    o = DiagramOracle(g)
    v = g.vertices[2]
    s = (0.848, 0.530)
    n = math.hypot(*s)
    s = (s[0] / n, s[1] / n)
    in1 = indegree(o.query(rotate_2d(s, theta)), vertex_height(rotate_2d(s, theta), v))
    in2 = indegree(o.query(rotate_2d(s, -theta)), vertex_height(rotate_2d(s, -theta), v))
    assert (in1, in2) == (1, 1)
