"""Points, directions, heights and general-position checks.

Points and directions are plain tuples of floats. Every height in the package
goes through :func:`dot`, which sums strictly left to right, so the oracle and
the reconstruction side compute bitwise-identical heights for identical inputs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, TooFewPoints, ZeroVector

Point = tuple[float, ...]
Direction = tuple[float, ...]
Edge = tuple[int, int]
Simplex = Union[int, Edge]

EPS_UNIT = 1e-12
EPS_COLLINEAR = 1e-12


def dot(a: Sequence[float], b: Sequence[float]) -> float:
    # explicit loop: builtin sum() is not guaranteed to keep a fixed rounding order
    if len(a) != len(b):
        raise DimensionMismatch(f"dimensions differ: {len(a)} vs {len(b)}")
    h = 0.0
    for x, y in zip(a, b):
        h += x * y
    return h


def norm(v: Sequence[float]) -> float:
    return math.sqrt(dot(v, v))


def normalize(v: Sequence[float]) -> Direction:
    r = norm(v)
    if r == 0.0 or not math.isfinite(r):
        raise ZeroVector(f"cannot normalize {tuple(v)!r}")
    return tuple(float(x) / r for x in v)


def is_unit(s: Sequence[float], tol: float = EPS_UNIT) -> bool:
    return abs(norm(s) - 1.0) <= tol


def axis_direction(k: int, d: int) -> Direction:
    """The standard basis vector e_{k+1} of R^d (``k`` is zero-based)."""
    return tuple(1.0 if i == k else 0.0 for i in range(d))


@dataclass(frozen=True)
class EmbeddedGraph:
    """Straight-line embedded graph: vertex coordinates plus undirected edges.

    Edges are stored as ``(i, j)`` with ``i < j``. Construction validates
    finiteness, dimensions, self-loops and duplicates; general position is a
    separate question, see :func:`check_general_position`.
    """

    vertices: tuple[Point, ...]
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __init__(self, vertices: Iterable[Sequence[float]], edges: Iterable[Sequence[int]] = ()):
        verts = tuple(tuple(float(x) for x in v) for v in vertices)
        if verts:
            d = len(verts[0])
            if d < 1:
                raise DimensionMismatch("vertices need at least one coordinate")
            for v in verts:
                if len(v) != d:
                    raise DimensionMismatch("vertices have mixed dimensions")
                if not all(math.isfinite(x) for x in v):
                    raise ValueError(f"non-finite vertex {v!r}")
            if len(set(verts)) != len(verts):
                raise ValueError("duplicate vertices")
        n = len(verts)
        es = set()
        for e in edges:
            i, j = (int(e[0]), int(e[1]))
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise IndexOutOfRange(f"edge {(i, j)} references a missing vertex")
            key = (min(i, j), max(i, j))
            if key in es:
                raise ValueError(f"duplicate edge {key}")
            es.add(key)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(es))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def dim(self) -> int:
        return len(self.vertices[0]) if self.vertices else 0

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def n_components(self) -> int:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        c = self.n
        for i, j in self.edges:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                c -= 1
        return c


def vertex_height(s: Direction, v: Point) -> float:
    return dot(v, s)


def simplex_height(s: Direction, g: EmbeddedGraph, simplex: Simplex) -> float:
    """Lower-star height: a vertex's own height, an edge's higher endpoint."""
    if isinstance(simplex, tuple):
        i, j = simplex
        for k in (i, j):
            if not 0 <= k < g.n:
                raise IndexOutOfRange(f"vertex index {k} out of range")
        return max(vertex_height(s, g.vertices[i]), vertex_height(s, g.vertices[j]))
    if not 0 <= simplex < g.n:
        raise IndexOutOfRange(f"vertex index {simplex} out of range")
    return vertex_height(s, g.vertices[simplex])


def perpendicular_2d(vec: Sequence[float]) -> Direction:
    """Counter-clockwise unit perpendicular ``(-y, x) / |vec|``."""
    if len(vec) != 2:
        raise DimensionMismatch("perpendicular_2d expects a 2-vector")
    x, y = float(vec[0]), float(vec[1])
    if x == 0.0 and y == 0.0:
        raise ZeroVector("perpendicular of the zero vector")
    return normalize((-y, x))


def rotate_2d(s: Direction, angle: float) -> Direction:
    if len(s) != 2:
        raise DimensionMismatch("rotate_2d expects a 2-dimensional direction")
    c, sn = math.cos(angle), math.sin(angle)
    return normalize((c * s[0] - sn * s[1], sn * s[0] + c * s[1]))


def orientation(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> float:
    """Twice the signed area of triangle abc in the (x1, x2) plane."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a, b, c) -> bool:
    return (orientation(a, b, c) == 0.0
            and min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))


def segments_cross(p1, p2, q1, q2) -> bool:
    """True if segments p1p2 and q1q2 meet anywhere except a shared endpoint."""
    ends_p = {tuple(p1), tuple(p2)}
    ends_q = {tuple(q1), tuple(q2)}
    if ends_p == ends_q:
        return True
    if ends_p & ends_q:
        # one shared endpoint: they overlap only when collinear
        return any(_on_segment(p1, p2, c) for c in (q1, q2) if tuple(c) not in ends_p) or \
            any(_on_segment(q1, q2, c) for c in (p1, p2) if tuple(c) not in ends_q)
    d1 = orientation(q1, q2, p1)
    d2 = orientation(q1, q2, p2)
    d3 = orientation(p1, p2, q1)
    d4 = orientation(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (_on_segment(q1, q2, p1) or _on_segment(q1, q2, p2)
            or _on_segment(p1, p2, q1) or _on_segment(p1, p2, q2))


class Violation(NamedTuple):
    kind: str  # "duplicate-coordinate" | "collinear-triple" | "edge-crossing"
    indices: tuple
    axis: int | None = None


@dataclass(frozen=True)
class GeneralPositionReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def duplicate_coordinates(points: Sequence[Point]) -> list[Violation]:
    out = []
    if not points:
        return out
    for k in range(len(points[0])):
        seen: dict[float, int] = {}
        for i, p in enumerate(points):
            if p[k] in seen:
                out.append(Violation("duplicate-coordinate", (seen[p[k]], i), axis=k))
            else:
                seen[p[k]] = i
    return out


def collinear_triples(points: Sequence[Point], eps: float = EPS_COLLINEAR) -> list[Violation]:
    n = len(points)
    if n < 3 or len(points[0]) < 2:
        return []
    P = np.asarray([p[:2] for p in points], dtype=float)
    out = []
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            rest = P[j + 1:]
            det = (P[j, 0] - P[i, 0]) * (rest[:, 1] - P[i, 1]) - (P[j, 1] - P[i, 1]) * (rest[:, 0] - P[i, 0])
            for k in np.nonzero(np.abs(det) < eps)[0]:
                out.append(Violation("collinear-triple", (i, j, j + 1 + int(k))))
    return out


def edge_crossings(g: EmbeddedGraph) -> list[Violation]:
    out = []
    edges = g.sorted_edges()
    V = g.vertices
    for (a, b), (c, d) in itertools.combinations(edges, 2):
        if segments_cross(V[a], V[b], V[c], V[d]):
            out.append(Violation("edge-crossing", ((a, b), (c, d))))
    return out


def check_general_position(g: EmbeddedGraph, planar: bool | None = None) -> GeneralPositionReport:
    """Collect every violation of the general-position assumption.

    ``planar`` defaults to ``True`` for graphs in the plane; crossings are
    only checked when it is set and the graph is 2-dimensional.
    """
    if planar is None:
        planar = g.dim == 2
    violations = duplicate_coordinates(g.vertices) + collinear_triples(g.vertices)
    if planar and g.dim == 2:
        violations += edge_crossings(g)
    return GeneralPositionReport(tuple(violations))


def apex_line_angles(points: Sequence[Point]) -> np.ndarray:
    """theta(v) for every point: the smallest angle between two adjacent lines
    through v and the other points, lines taken modulo pi.

    With a single other point there is one line and no adjacent pair; the
    entry is ``nan`` then.
    """
    P = np.asarray([p[:2] for p in points], dtype=float)
    n = len(P)
    out = np.full(n, np.nan)
    for i in range(n):
        d = np.delete(P, i, axis=0) - P[i]
        if len(d) < 2:
            continue
        a = np.sort(np.mod(np.arctan2(d[:, 1], d[:, 0]), math.pi))
        wrap = a[0] + math.pi - a[-1]
        out[i] = min(np.diff(a).min(), wrap)
    return out


def min_pairwise_angle(points: Sequence[Point]) -> float:
    """Smallest angle abc over all triples, lines taken modulo pi, in (0, pi/2]."""
    if len(points) < 3:
        raise TooFewPoints("need at least three points")
    return float(np.nanmin(apex_line_angles(points)))
