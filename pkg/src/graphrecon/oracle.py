"""Query-metered access to the diagrams of a hidden graph."""

from __future__ import annotations

import threading
import time

from .errors import DimensionMismatch
from .geometry import Direction, EmbeddedGraph, is_unit
from .persistence import AugmentedDiagram, compute_apd, restrict


class DiagramOracle:
    """Answers direction queries with augmented persistence diagrams.

    The graph is held privately; reconstruction code sees nothing but
    diagrams. Every request counts, including repeats. ``cache=True`` reuses
    diagrams for repeated directions (benchmark repeats only); such requests
    still count, and ``cache_hits`` records how many were served from memory.

    ``diagram_time_ns`` (wall clock) and ``diagram_cpu_ns`` (thread CPU
    clock) accumulate the time spent producing diagrams so that callers can
    subtract it from their own timings.
    """

    def __init__(self, graph: EmbeddedGraph, cache: bool = False):
        self.__graph = graph
        self._cache = {} if cache else None
        self._lock = threading.Lock()
        self._log: list[Direction] = []
        self.cache_hits = 0
        self.diagram_time_ns = 0
        self.diagram_cpu_ns = 0

    @property
    def query_count(self) -> int:
        return len(self._log)

    @property
    def log(self) -> list[Direction]:
        with self._lock:
            return list(self._log)

    def reset(self) -> None:
        with self._lock:
            self._log.clear()
            self.cache_hits = 0
            self.diagram_time_ns = 0
            self.diagram_cpu_ns = 0
        self.diagram_cpu_ns = 0

    def query(self, s: Direction) -> AugmentedDiagram:
        return self._answer(tuple(float(x) for x in s), None)

    def query_restricted(self, s: Direction, dim: int) -> AugmentedDiagram:
        """One query, restricted to a single homology dimension."""
        return self._answer(tuple(float(x) for x in s), dim)

    def _answer(self, s: Direction, dim: int | None) -> AugmentedDiagram:
        t0 = time.perf_counter_ns()
        c0 = time.thread_time_ns()
        g = self.__graph
        if g.n and len(s) != g.dim:
            raise DimensionMismatch(f"direction has dimension {len(s)}, graph has {g.dim}")
        if not is_unit(s):
            raise ValueError(f"direction {s!r} is not a unit vector")
        diag = None
        if self._cache is not None:
            diag = self._cache.get(s)
        hit = diag is not None
        if diag is None:
            diag = compute_apd(g, s)
            if self._cache is not None:
                self._cache[s] = diag
        if dim is not None:
            diag = restrict(diag, dim)
        cpu = time.thread_time_ns() - c0
        elapsed = time.perf_counter_ns() - t0
        with self._lock:
            self._log.append(s)
            self.cache_hits += hit
            self.diagram_time_ns += elapsed
            self.diagram_cpu_ns += cpu
        return diag
