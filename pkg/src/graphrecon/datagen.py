"""Random test graphs and the graph JSON format.

Planar instances are random subgraphs of the Delaunay triangulation of
uniform points in the unit square. Higher-dimensional instances are random
spanning trees in the unit cube plus a fraction of the remaining pairs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateConfiguration
from .geometry import (EPS_COLLINEAR, EmbeddedGraph, Point, collinear_triples,
                       duplicate_coordinates, min_pairwise_angle)

EPS_INCIRCLE = 1e-12
GHOST = -1
MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class GenConfig:
    n: int
    alpha: float = 1.0
    seed: int = 0
    # reject instances whose bow tie half-angle (half the smallest triple
    # angle) is below this value
    min_angle_filter: Optional[float] = None
    dim: int = 2

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if self.dim < 2:
            raise ValueError("dim must be at least 2")


def _general_position(points: Sequence[Point]) -> bool:
    return not duplicate_coordinates(points) and not collinear_triples(points, EPS_COLLINEAR)


def _sample_points(n: int, rng: np.random.Generator, dim: int = 2) -> list[Point]:
    for _ in range(MAX_ATTEMPTS):
        pts = [tuple(float(x) for x in row) for row in rng.random((n, dim))]
        if _general_position(pts):
            return pts
    raise DegenerateConfiguration(f"no general-position sample after {MAX_ATTEMPTS} draws")


def sample_points(n: int, seed: int, dim: int = 2) -> list[Point]:
    """``n`` i.i.d. uniform points in the unit square (cube), resampled until
    they are in general position."""
    return _sample_points(n, np.random.default_rng(seed), dim)


# --- Delaunay triangulation (Bowyer-Watson with ghost triangles) -----------

def _orient(a, b, c) -> tuple[float, float]:
    l = (b[0] - a[0]) * (c[1] - a[1])
    r = (b[1] - a[1]) * (c[0] - a[0])
    return l - r, abs(l) + abs(r)


def _incircle(a, b, c, d) -> tuple[float, float]:
    """Determinant > 0 iff d is inside the circumcircle of ccw triangle abc,
    together with its permanent (the matching sum of absolute terms)."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    t1 = alift * (bdx * cdy - bdy * cdx)
    t2 = blift * (cdx * ady - cdy * adx)
    t3 = clift * (adx * bdy - ady * bdx)
    perm = (alift * (abs(bdx * cdy) + abs(bdy * cdx))
            + blift * (abs(cdx * ady) + abs(cdy * adx))
            + clift * (abs(adx * bdy) + abs(ady * bdx)))
    return t1 + t2 + t3, perm


def _canonical(t: tuple[int, int, int]) -> tuple[int, int, int]:
    # ghost vertex last; otherwise smallest index first
    k = t.index(GHOST) + 1 if GHOST in t else t.index(min(t))
    return t[k % 3], t[(k + 1) % 3], t[(k + 2) % 3]


def _conflicts(t, p, P) -> bool:
    a, b, c = t
    if c == GHOST:
        det, perm = _orient(P[a], P[b], p)
        if abs(det) <= EPS_INCIRCLE * perm:
            raise DegenerateConfiguration("point collinear with a hull edge")
        return det > 0
    det, perm = _incircle(P[a], P[b], P[c], p)
    if abs(det) <= EPS_INCIRCLE * perm:
        raise DegenerateConfiguration("four (nearly) cocircular points")
    return det > 0


def delaunay_triangles(points: Sequence[Point]) -> list[tuple[int, int, int]]:
    """Counter-clockwise Delaunay triangles by incremental insertion.

    The unbounded outside is covered by ghost triangles ``(a, b, GHOST)``
    across each hull edge, whose "circumcircle" is the open half-plane beyond
    that edge. This avoids the missing-hull-edge artefacts of a finite
    super-triangle.
    """
    P = [tuple(p[:2]) for p in points]
    n = len(P)
    if n < 3:
        return []
    det, perm = _orient(P[0], P[1], P[2])
    if abs(det) <= EPS_INCIRCLE * perm:
        raise DegenerateConfiguration("first three points are collinear")
    a, b, c = (0, 1, 2) if det > 0 else (0, 2, 1)
    tris = {_canonical(t) for t in [(a, b, c), (b, a, GHOST), (c, b, GHOST), (a, c, GHOST)]}
    for k in range(3, n):
        p = P[k]
        bad = [t for t in tris if _conflicts(t, p, P)]
        directed = {(t[i], t[(i + 1) % 3]) for t in bad for i in range(3)}
        boundary = [(u, w) for (u, w) in directed if (w, u) not in directed]
        tris.difference_update(bad)
        for u, w in boundary:
            tris.add(_canonical((u, w, k)))
    return sorted(t for t in tris if GHOST not in t)


def delaunay(points: Sequence[Point]) -> set[tuple[int, int]]:
    """Edge set of the Delaunay triangulation."""
    if len(points) == 2:
        return {(0, 1)}
    edges = set()
    for t in delaunay_triangles(points):
        for i in range(3):
            u, w = t[i], t[(i + 1) % 3]
            edges.add((min(u, w), max(u, w)))
    return edges


# --- subsampling -----------------------------------------------------------

def keep_count(alpha: float, total: int) -> int:
    # guard against alpha * total landing a hair above an integer
    return min(total, math.ceil(alpha * total - 1e-9))


def subsample_edges(points: Sequence[Point], edges, alpha: float, seed: int) -> EmbeddedGraph:
    """Keep ``ceil(alpha * |E|)`` edges chosen uniformly without replacement."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    ordered = sorted(edges)
    k = keep_count(alpha, len(ordered))
    rng = np.random.default_rng(seed)
    picked = rng.choice(len(ordered), size=k, replace=False) if k else []
    return EmbeddedGraph(points, [ordered[i] for i in sorted(picked)])


# --- whole instances -------------------------------------------------------

def _angle_ok(points, min_angle) -> bool:
    if min_angle is None or len(points) < 3:
        return True
    return 0.5 * min_pairwise_angle(points) >= min_angle


def sample_delaunay(n: int, rng: np.random.Generator, min_angle: Optional[float] = None):
    """Points plus their Delaunay edges, resampled on degeneracy or small angles."""
    for _ in range(MAX_ATTEMPTS):
        pts = _sample_points(n, rng)
        if not _angle_ok(pts, min_angle):
            continue
        try:
            return pts, delaunay(pts) if n >= 2 else set()
        except DegenerateConfiguration:
            continue
    raise DegenerateConfiguration(f"no acceptable instance after {MAX_ATTEMPTS} draws")


def generate_graph(cfg: GenConfig) -> EmbeddedGraph:
    """Deterministic in ``(n, alpha, seed, min_angle_filter, dim)``."""
    rng = np.random.default_rng(cfg.seed)
    if cfg.dim > 2:
        return _generate_dd(cfg, rng)
    pts, edges = sample_delaunay(cfg.n, rng, cfg.min_angle_filter)
    sub_seed = int(rng.integers(2**63))
    return subsample_edges(pts, edges, cfg.alpha, sub_seed)


def _generate_dd(cfg: GenConfig, rng: np.random.Generator) -> EmbeddedGraph:
    for _ in range(MAX_ATTEMPTS):
        pts = _sample_points(cfg.n, rng, cfg.dim)
        if _angle_ok([p[:2] for p in pts], cfg.min_angle_filter):
            break
    else:
        raise DegenerateConfiguration("no acceptable instance")
    perm = rng.permutation(cfg.n)
    tree = set()
    for k in range(1, cfg.n):
        a, b = int(perm[k]), int(perm[rng.integers(k)])
        tree.add((min(a, b), max(a, b)))
    rest = [(i, j) for i in range(cfg.n) for j in range(i + 1, cfg.n) if (i, j) not in tree]
    k = keep_count(cfg.alpha, len(rest))
    extra = rng.choice(len(rest), size=k, replace=False) if k else []
    return EmbeddedGraph(pts, sorted(tree) + [rest[i] for i in extra])


def worked_example_graph() -> EmbeddedGraph:
    """Four-vertex plane graph used as the golden end-to-end example."""
    return EmbeddedGraph(
        [(-1.0, 2.0), (0.0, -1.0), (0.25, 0.0), (1.0, 1.0)],
        [(0, 1), (1, 2), (1, 3), (2, 3)],
    )


# --- graph JSON ------------------------------------------------------------

def graph_to_dict(g: EmbeddedGraph) -> dict:
    return {"dim": g.dim, "vertices": [list(v) for v in g.vertices],
            "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_dict(data: dict) -> EmbeddedGraph:
    g = EmbeddedGraph(data["vertices"], data.get("edges", []))
    if g.n and "dim" in data and int(data["dim"]) != g.dim:
        raise ValueError(f"declared dim {data['dim']} but vertices have {g.dim} coordinates")
    return g


def write_graph(g: EmbeddedGraph, path) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(g)) + "\n")


def read_graph(path) -> EmbeddedGraph:
    return graph_from_dict(json.loads(Path(path).read_text()))
