"""Vertex coordinates from 0-dimensional diagrams.

In the plane three diagrams suffice: the births along ``e1`` and ``e2`` give
the vertical and horizontal lines through the vertices, and a third direction
tilted so that sorted heights along it follow the sorted y-coordinates pins
each horizontal line to its vertex. In ``R^d`` the ``d`` axis diagrams span a
grid of ``n^d`` candidates and one extra direction separates the true ones.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import MatchCountMismatch, NeedTwoVertices, SingularIntersection
from .geometry import Direction, Point, axis_direction, dot, normalize, perpendicular_2d
from .oracle import DiagramOracle

EPS_MATCH = 1e-9
EPS_SINGULAR = 1e-14


@dataclass(frozen=True)
class HeightList:
    direction: Direction
    heights: tuple[float, ...]

    @classmethod
    def from_births(cls, direction, births) -> "HeightList":
        return cls(tuple(direction), tuple(sorted(births)))

    @property
    def width(self) -> float:
        return self.heights[-1] - self.heights[0]

    @property
    def min_gap(self) -> float:
        h = self.heights
        return min(b - a for a, b in zip(h, h[1:]))


@dataclass
class VertexReconstruction:
    vertices: list[Point]
    queries_used: int
    directions_used: list[Direction] = field(default_factory=list)
    heights: list[HeightList] = field(default_factory=list)


def _heights(o: DiagramOracle, s: Direction) -> HeightList:
    return HeightList.from_births(s, o.query_restricted(s, 0).births(0))


def third_direction_2d(L1: HeightList, L2: HeightList) -> Direction:
    if len(L1.heights) < 2:
        raise NeedTwoVertices("a single vertex is read off the two axis diagrams")
    w = L1.width
    h = L2.min_gap
    return perpendicular_2d((w, h / 2))


def reconstruct_vertices_2d(o: DiagramOracle) -> VertexReconstruction:
    q0 = o.query_count
    L1 = _heights(o, (1.0, 0.0))
    L2 = _heights(o, (0.0, 1.0))
    n = len(L1.heights)
    if n <= 1:
        verts = [(L1.heights[0], L2.heights[0])] if n else []
        return VertexReconstruction(verts, o.query_count - q0, [L1.direction, L2.direction], [L1, L2])
    s = third_direction_2d(L1, L2)
    Ls = _heights(o, s)
    # intersect y = L2[i] with <p, s> = Ls[i]
    sx, sy = s
    if abs(sx) < EPS_SINGULAR:
        raise SingularIntersection(f"third direction {s!r} is parallel to the horizontal lines")
    verts = []
    for y, c in zip(L2.heights, Ls.heights):
        verts.append(((c - sy * y) / sx, y))
    return VertexReconstruction(verts, o.query_count - q0, [L1.direction, L2.direction, s], [L1, L2, Ls])


def localization_direction_dd(height_lists: list[HeightList]) -> Direction:
    """Direction separating all grid points spanned by the axis height lists."""
    d = len(height_lists)
    if d < 2:
        raise ValueError("need at least two axis height lists")
    if len(height_lists[0].heights) < 2:
        raise NeedTwoVertices("a single vertex is read off the axis diagrams")
    w = max(L.width for L in height_lists)
    h = 0.5 * min(L.min_gap for L in height_lists)
    return normalize([-1.0 / w] * (d - 1) + [(d - 1) / h])


def _match_tolerance(height: float) -> float:
    return EPS_MATCH * max(1.0, abs(height))


def iter_candidate_matches(axis_lists: list[HeightList], s: Direction, Ls: HeightList):
    """Yield ``(point, target_index, error)`` for grid points whose height
    along ``s`` lies within tolerance of a height in ``Ls``.

    The grid is walked over its first ``d - 1`` axes; the last axis is
    handled as one numpy vector, so memory stays O(n).
    """
    targets = np.asarray(Ls.heights)
    last = np.asarray(axis_lists[-1].heights)
    for head in itertools.product(*(L.heights for L in axis_lists[:-1])):
        base = dot(head, s[:-1])
        hs = base + last * s[-1]
        idx = np.clip(np.searchsorted(targets, hs), 1, len(targets) - 1)
        near = np.minimum(np.abs(hs - targets[idx - 1]), np.abs(hs - targets[idx]))
        tol = EPS_MATCH * np.maximum(1.0, np.abs(hs))
        for k in np.nonzero(near <= tol)[0]:
            p = head + (float(last[k]),)
            # confirm with the shared dot product before accepting
            hp = dot(p, s)
            j = bisect.bisect_left(Ls.heights, hp)
            for t in (j - 1, j):
                if 0 <= t < len(Ls.heights):
                    err = abs(hp - Ls.heights[t])
                    if err <= _match_tolerance(hp):
                        yield p, t, err


def select_matches(candidates, n_targets: int) -> list[Point]:
    """Closest candidate per target height.

    Grid points sharing their last coordinate are separated only
    generically, so for d >= 3 a spurious point can fall within tolerance
    of a true height. A true vertex reproduces its height bit for bit (same
    coordinates, same dot product), so the closest candidate wins; an exact
    tie between two distinct points is a genuine degeneracy.
    """
    best: dict[int, tuple[float, Point]] = {}
    tied: set[int] = set()
    for p, t, err in candidates:
        if t not in best or err < best[t][0]:
            best[t] = (err, p)
            tied.discard(t)
        elif err == best[t][0] and p != best[t][1]:
            tied.add(t)
    if len(best) != n_targets:
        raise MatchCountMismatch(f"matched {len(best)} heights, expected {n_targets}")
    if tied:
        raise MatchCountMismatch(f"ambiguous grid matches for heights {sorted(tied)}")
    points = [best[t][1] for t in range(n_targets)]
    if len(set(points)) != n_targets:
        raise MatchCountMismatch("one grid point matched several heights")
    return points


def reconstruct_vertices_dd(o: DiagramOracle, d: int) -> VertexReconstruction:
    q0 = o.query_count
    axis_lists = [_heights(o, axis_direction(k, d)) for k in range(d)]
    n = len(axis_lists[0].heights)
    dirs = [L.direction for L in axis_lists]
    if n <= 1:
        verts = [tuple(L.heights[0] for L in axis_lists)] if n else []
        return VertexReconstruction(verts, o.query_count - q0, dirs, axis_lists)
    s = localization_direction_dd(axis_lists)
    Ls = _heights(o, s)
    verts = sorted(select_matches(iter_candidate_matches(axis_lists, s, Ls), n))
    return VertexReconstruction(verts, o.query_count - q0, dirs + [s], axis_lists + [Ls])
