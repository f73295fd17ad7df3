"""Slow, independent reference computations for cross-checking.

Nothing here shares code paths with the fast implementations beyond the
height function: components are recomputed from scratch by BFS at every
sublevel, angles are enumerated over all triples, Delaunay triangles are
checked point by point.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from typing import Sequence

from .geometry import Direction, EmbeddedGraph, Point, vertex_height

INF = math.inf


def _components(vertices: set[int], adj: dict[int, list[int]]) -> list[set[int]]:
    seen: set[int] = set()
    comps = []
    for start in sorted(vertices):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            u = queue.popleft()
            for w in adj.get(u, ()):
                if w in vertices and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def betti_sweep_diagram(g: EmbeddedGraph, s: Direction) -> list[tuple[int, float, float]]:
    """Augmented diagram as a sorted multiset of ``(dim, birth, death)``.

    At each vertex height the sublevel subgraph is rebuilt and its components
    recomputed. Components that merged since the previous level die there,
    except the one holding the oldest vertex; the remaining new edges each
    open an independent cycle (cycle rank is m - n + c).
    """
    h = [vertex_height(s, v) for v in g.vertices]
    order = sorted(range(g.n), key=h.__getitem__)
    adj: dict[int, list[int]] = {}
    for i, j in g.edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)

    def elder(comp):
        return min(comp, key=h.__getitem__)

    points = []
    present: set[int] = set()
    prev_elders: set[int] = set()
    prev_cycles = 0
    for v in order:
        present.add(v)
        comps = _components(present, adj)
        n_edges = sum(1 for i, j in g.edges if i in present and j in present)
        cycles = n_edges - len(present) + len(comps)
        alive = prev_elders | {v}
        for comp in comps:
            old = [u for u in alive if u in comp]
            keep = elder(comp)
            for u in old:
                if u != keep:
                    points.append((0, h[u], h[v]))
        for _ in range(cycles - prev_cycles):
            points.append((1, h[v], INF))
        prev_elders = {elder(c) for c in comps}
        prev_cycles = cycles
    for u in prev_elders:
        points.append((0, h[u], INF))
    return sorted(points)


def direct_indegree(g: EmbeddedGraph, v: int, s: Direction) -> int:
    """Edges at ``v`` whose other endpoint is not higher than ``v``."""
    hv = vertex_height(s, g.vertices[v])
    count = 0
    for i, j in g.edges:
        if v in (i, j):
            other = j if i == v else i
            if vertex_height(s, g.vertices[other]) <= hv:
                count += 1
    return count


def _line_angle(b: Point, a: Point, c: Point) -> float:
    u = (a[0] - b[0], a[1] - b[1])
    w = (c[0] - b[0], c[1] - b[1])
    cross = u[0] * w[1] - u[1] * w[0]
    dotp = u[0] * w[0] + u[1] * w[1]
    ang = math.atan2(abs(cross), dotp)  # in [0, pi]
    return min(ang, math.pi - ang)


def brute_apex_angles(points: Sequence[Point]) -> list[float]:
    """Smallest line angle at each apex over all pairs of other points."""
    out = []
    for b in range(len(points)):
        best = math.inf
        others = [i for i in range(len(points)) if i != b]
        for a, c in itertools.combinations(others, 2):
            best = min(best, _line_angle(points[b], points[a], points[c]))
        out.append(best)
    return out


def brute_min_angle(points: Sequence[Point]) -> float:
    return min(brute_apex_angles(points))


def _circumcircle(a, b, c):
    d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    a2, b2, c2 = a[0] ** 2 + a[1] ** 2, b[0] ** 2 + b[1] ** 2, c[0] ** 2 + c[1] ** 2
    ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d
    uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d
    return (ux, uy), math.hypot(a[0] - ux, a[1] - uy)


def empty_circumcircle_violations(points: Sequence[Point], triangles, rel_tol: float = 1e-9) -> list:
    """Triangles whose circumcircle strictly contains another input point."""
    bad = []
    for t in triangles:
        centre, r = _circumcircle(*(points[i] for i in t))
        for k, p in enumerate(points):
            if k in t:
                continue
            if math.hypot(p[0] - centre[0], p[1] - centre[1]) < r * (1 - rel_tol):
                bad.append((t, k))
    return bad


def bowtie_isolates(points: Sequence[Point], v: int, w: int, s1: Direction, s2: Direction) -> bool:
    """True if the closed bow tie at ``points[v]`` from ``s1, s2`` holds no
    point except ``points[w]``."""
    pv = points[v]
    h1, h2 = vertex_height(s1, pv), vertex_height(s2, pv)
    for k, p in enumerate(points):
        if k in (v, w):
            continue
        below1 = vertex_height(s1, p) <= h1
        below2 = vertex_height(s2, p) <= h2
        on1 = vertex_height(s1, p) == h1
        on2 = vertex_height(s2, p) == h2
        if below1 != below2 or on1 or on2:
            return False
    pw = points[w]
    return (vertex_height(s1, pw) <= h1) != (vertex_height(s2, pw) <= h2)
