"""Edge decisions from indegree differences across a bow tie.

For a candidate pair ``(v, v')`` we look at ``v`` from two directions tilted
by ``+theta`` and ``-theta`` away from the normal of ``v' - v``. The wedge
between the two lower half-planes at ``v`` contains ``v'`` and no other
vertex as long as ``theta`` is at most half the smallest angle between lines
through ``v``, so the two indegrees of ``v`` differ by one exactly when the
edge is present.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import MinAngleTooSmall, ProjectionDegenerate, TooFewPoints
from .geometry import (Direction, Edge, Point, collinear_triples, dot, duplicate_coordinates,
                       perpendicular_2d, rotate_2d)
from .oracle import DiagramOracle
from .persistence import AugmentedDiagram

DEFAULT_MIN_ANGLE = 1e-6
EPS_HEIGHT = 1e-9
TWO_POINT_THETA = math.pi / 4


@dataclass(frozen=True)
class BowTie:
    apex: Point
    s1: Direction
    s2: Direction
    half_angle: float


class EdgeTest(NamedTuple):
    exists: bool
    indeg1: int
    indeg2: int
    bowtie: BowTie


@dataclass
class EdgeReconstruction:
    edges: set[Edge]
    queries_used: int
    theta: float = math.nan
    preprocess_ns: int = 0
    loop_ns: int = 0
    loop_diagram_ns: int = 0
    loop_cpu_ns: int = 0
    loop_diagram_cpu_ns: int = 0
    tests: dict = field(default_factory=dict, repr=False)


def apex_angles(points: Sequence[Point]) -> list[float]:
    """theta(v) per vertex: the smallest gap between adjacent lines through v.

    Each vertex sorts the others by angle independently (O(n^2 log n) total).
    Vertices with a single neighbour line get ``nan``.
    """
    out = []
    for i, (vx, vy) in enumerate(points):
        angles = sorted(math.atan2(q[1] - vy, q[0] - vx) % math.pi
                        for j, q in enumerate(points) if j != i)
        if len(angles) < 2:
            out.append(math.nan)
            continue
        gap = angles[0] + math.pi - angles[-1]
        for a, b in zip(angles, angles[1:]):
            if b - a < gap:
                gap = b - a
        out.append(gap)
    return out


def bowtie_half_angle(points: Sequence[Point], min_angle: float = DEFAULT_MIN_ANGLE) -> float:
    if len(points) < 2:
        raise TooFewPoints("bow ties need at least two vertices")
    if len(points) == 2:
        theta = TWO_POINT_THETA
    else:
        theta = 0.5 * min(apex_angles([p[:2] for p in points]))
    if theta < min_angle:
        raise MinAngleTooSmall(theta, min_angle)
    return theta


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= EPS_HEIGHT * max(1.0, abs(b))


def indegree_from_diagram(diag0: AugmentedDiagram, diag1: AugmentedDiagram, v_height: float) -> int:
    """Finite 0-dim deaths plus 1-dim births at ``v_height``.

    Both arguments may be the same full diagram; points of the other
    dimension are skipped.
    """
    count = 0
    for p in diag0.points:
        if p.dim == 0 and _close(p.death, v_height):
            count += 1
    for p in diag1.points:
        if p.dim == 1 and _close(p.birth, v_height):
            count += 1
    return count


def indegree(diag: AugmentedDiagram, v_height: float) -> int:
    return indegree_from_diagram(diag, diag, v_height)


def make_bowtie(v: Point, v2: Point, theta: float) -> BowTie:
    s = perpendicular_2d((v2[0] - v[0], v2[1] - v[1]))
    return BowTie(tuple(v[:2]), rotate_2d(s, theta), rotate_2d(s, -theta), theta)


def lift(s: Direction, d: int) -> Direction:
    """Embed a planar direction into R^d with zero trailing components."""
    return tuple(s) + (0.0,) * (d - len(s))


def edge_test(o: DiagramOracle, v: Point, v2: Point, theta: float) -> EdgeTest:
    bt = make_bowtie(v, v2, theta)
    d = len(v)
    s1, s2 = lift(bt.s1, d), lift(bt.s2, d)
    in1 = indegree(o.query(s1), dot(v, s1))
    in2 = indegree(o.query(s2), dot(v, s2))
    return EdgeTest(abs(in1 - in2) == 1, in1, in2, bt)


def edge_exists(o: DiagramOracle, v: Point, v2: Point, theta: float) -> bool:
    return edge_test(o, v, v2, theta).exists


def _reconstruct(o: DiagramOracle, V: Sequence[Point], theta_points: Sequence[Point],
                 min_angle: float, keep_tests: bool) -> EdgeReconstruction:
    q0 = o.query_count
    t0 = time.perf_counter_ns()
    theta = bowtie_half_angle(theta_points, min_angle)
    t1 = time.perf_counter_ns()
    c1 = time.thread_time_ns()
    diag0, cdiag0 = o.diagram_time_ns, o.diagram_cpu_ns
    edges: set[Edge] = set()
    tests = {}
    n = len(V)
    for i in range(n):
        for j in range(i + 1, n):
            res = edge_test(o, V[i], V[j], theta)
            if res.exists:
                edges.add((i, j))
            if keep_tests:
                tests[(i, j)] = res
    c2 = time.thread_time_ns()
    t2 = time.perf_counter_ns()
    return EdgeReconstruction(edges, o.query_count - q0, theta, t1 - t0, t2 - t1,
                              o.diagram_time_ns - diag0, c2 - c1,
                              o.diagram_cpu_ns - cdiag0, tests)


def reconstruct_edges_2d(o: DiagramOracle, V: Sequence[Point], min_angle: float = DEFAULT_MIN_ANGLE,
                         keep_tests: bool = False) -> EdgeReconstruction:
    """Test every unordered vertex pair; two queries per pair."""
    return _reconstruct(o, V, V, min_angle, keep_tests)


def reconstruct_edges_dd(o: DiagramOracle, V: Sequence[Point], min_angle: float = DEFAULT_MIN_ANGLE,
                         keep_tests: bool = False) -> EdgeReconstruction:
    """Same test on the projection to the first two axes, directions lifted back."""
    proj = [tuple(p[:2]) for p in V]
    bad = duplicate_coordinates(proj) + collinear_triples(proj)
    if bad:
        raise ProjectionDegenerate(f"projected vertices violate general position: {bad[:3]}")
    return _reconstruct(o, V, proj, min_angle, keep_tests)
