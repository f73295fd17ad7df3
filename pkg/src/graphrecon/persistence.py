"""Directional augmented persistence diagrams of embedded graphs.

The lower-star filtration of a graph in direction ``s`` adds every vertex at
its height and every edge at the height of its higher endpoint. Processing
the simplices in that order with a union-find structure yields one diagram
point per simplex: each vertex opens a 0-dimensional class, each edge either
kills the younger of two classes (elder rule) or opens a 1-cycle. Points with
``birth == death`` are kept, they are what makes the diagram *augmented*.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .errors import DegenerateDirection, DimensionMismatch
from .geometry import Direction, EmbeddedGraph, Simplex, vertex_height

INF = math.inf


class FiltrationEvent(NamedTuple):
    simplex: Simplex
    height: float

    @property
    def dim(self) -> int:
        return 1 if isinstance(self.simplex, tuple) else 0


class DiagramPoint(NamedTuple):
    dim: int
    birth: float
    death: float
    birth_simplex: Simplex
    death_simplex: Optional[Simplex] = None

    @property
    def persistence(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class AugmentedDiagram:
    points: tuple[DiagramPoint, ...]
    direction: Direction

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def restrict(self, dim: int) -> "AugmentedDiagram":
        return restrict(self, dim)

    @property
    def n_events(self) -> int:
        """Birth and finite-death events; one per simplex, so ``n + m``.

        The point count itself is ``m + c``: a finite 0-dimensional point
        carries two events, a vertex birth and an edge death.
        """
        return sum(1 + (p.death != INF) for p in self.points)

    def births(self, dim: int = 0) -> list[float]:
        return [p.birth for p in self.points if p.dim == dim]

    def as_multiset(self) -> list[tuple[int, float, float]]:
        return sorted((p.dim, p.birth, p.death) for p in self.points)


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path compression and union by rank."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        """Merge the sets of two roots and return the new root."""
        if self.rank[a] < self.rank[b]:
            a, b = b, a
        self.parent[b] = a
        if self.rank[a] == self.rank[b]:
            self.rank[a] += 1
        return a


def build_lower_star_filtration(g: EmbeddedGraph, s: Direction) -> list[FiltrationEvent]:
    """Simplices sorted by ``(height, dim, id)``.

    Raises :class:`DegenerateDirection` when two vertices share a height,
    compared with exact float equality.
    """
    if g.n and len(s) != g.dim:
        raise DimensionMismatch(f"direction has dimension {len(s)}, graph has {g.dim}")
    heights = [vertex_height(s, v) for v in g.vertices]
    order = sorted(range(g.n), key=heights.__getitem__)
    for a, b in zip(order, order[1:]):
        if heights[a] == heights[b]:
            raise DegenerateDirection(
                f"vertices {a} and {b} share height {heights[a]!r} in direction {s!r}")
    keyed = [((heights[i], 0, (i,)), i) for i in range(g.n)]
    for i, j in g.edges:
        keyed.append(((max(heights[i], heights[j]), 1, (i, j)), (i, j)))
    keyed.sort(key=lambda kv: kv[0])
    return [FiltrationEvent(simplex, key[0]) for key, simplex in keyed]


def compute_apd(g: EmbeddedGraph, s: Direction) -> AugmentedDiagram:
    events = build_lower_star_filtration(g, s)
    uf = UnionFind(g.n)
    # birth (height, vertex) of the oldest vertex in each root's component
    elder: dict[int, tuple[float, int]] = {}
    points: list[DiagramPoint] = []
    for simplex, h in events:
        if not isinstance(simplex, tuple):
            elder[simplex] = (h, simplex)
            continue
        ra, rb = uf.find(simplex[0]), uf.find(simplex[1])
        if ra == rb:
            points.append(DiagramPoint(1, h, INF, simplex))
            continue
        old, young = (elder[ra], elder[rb]) if elder[ra] < elder[rb] else (elder[rb], elder[ra])
        points.append(DiagramPoint(0, young[0], h, young[1], simplex))
        root = uf.union(ra, rb)
        del elder[ra if root == rb else rb]
        elder[root] = old
    for h, v in elder.values():
        points.append(DiagramPoint(0, h, INF, v))
    # canonical order by (dim, birth simplex): the presentation must not
    # leak the filtration order, which depends on the edge set
    points.sort(key=_point_order)
    return AugmentedDiagram(tuple(points), tuple(s))


def _point_order(p: DiagramPoint):
    sx = p.birth_simplex
    return (p.dim, sx if isinstance(sx, tuple) else (sx,))


def restrict(diag: AugmentedDiagram, dim: int) -> AugmentedDiagram:
    return AugmentedDiagram(tuple(p for p in diag.points if p.dim == dim), diag.direction)


# --- CSV serialization -----------------------------------------------------

CSV_HEADER = ("dim", "birth", "death", "birth_simplex", "death_simplex")


def _fmt_float(x: float) -> str:
    return "inf" if x == INF else format(x, ".17g")


def _fmt_simplex(sx: Optional[Simplex]) -> str:
    if sx is None:
        return ""
    if isinstance(sx, tuple):
        return f"{sx[0]}-{sx[1]}"
    return str(sx)


def _parse_simplex(text: str) -> Optional[Simplex]:
    if text == "":
        return None
    if "-" in text:
        a, b = text.split("-")
        return (int(a), int(b))
    return int(text)


def diagram_to_csv(diag: AugmentedDiagram) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for p in diag.points:
        w.writerow((p.dim, _fmt_float(p.birth), _fmt_float(p.death),
                    _fmt_simplex(p.birth_simplex), _fmt_simplex(p.death_simplex)))
    return buf.getvalue()


def diagram_from_csv(text: str, direction: Direction) -> AugmentedDiagram:
    rows = csv.DictReader(line for line in io.StringIO(text) if not line.startswith("#"))
    points = [
        DiagramPoint(int(r["dim"]), float(r["birth"]), float(r["death"]),
                     _parse_simplex(r["birth_simplex"]), _parse_simplex(r["death_simplex"]))
        for r in rows
    ]
    return AugmentedDiagram(tuple(points), tuple(direction))


def diagram_multiset(points: Iterable[DiagramPoint]) -> list[tuple[int, float, float]]:
    return sorted((p.dim, p.birth, p.death) for p in points)
