"""Round trips, timing benchmarks and the small-angle study."""

from __future__ import annotations

import csv
import gc
import io
import math
import time
from dataclasses import asdict, dataclass, field, fields
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import stats

from .datagen import GenConfig, generate_graph, sample_delaunay, sample_points, subsample_edges
from .edge_recon import DEFAULT_MIN_ANGLE, reconstruct_edges_2d, reconstruct_edges_dd
from .errors import MinAngleTooSmall, ReconstructionError
from .geometry import EmbeddedGraph, Point, min_pairwise_angle
from .oracle import DiagramOracle
from .vertex_recon import reconstruct_vertices_2d, reconstruct_vertices_dd

COORD_TOL = 1e-9
BENCH_SCHEMA = "# graphrecon-bench v1"
MINANGLE_SCHEMA = "# graphrecon-minangle v1"


def vertex_budget(n: int, d: int = 2) -> int:
    if n <= 1:
        return d
    return 3 if d == 2 else d + 1


def edge_budget(n: int) -> int:
    return n * n - n


def match_vertices(recovered: Sequence[Point], truth: Sequence[Point]) -> tuple[list[int], float]:
    """Map each recovered point to its nearest true vertex.

    Returns ``(mapping, max_error)`` where ``mapping[i]`` indexes ``truth``
    and ``max_error`` is the worst per-coordinate deviation. A mapping that is
    not a bijection gets ``inf`` error.
    """
    if len(recovered) != len(truth):
        return [], math.inf
    if not truth:
        return [], 0.0
    T = np.asarray(truth, dtype=float)
    mapping, worst = [], 0.0
    for p in recovered:
        dev = np.abs(T - np.asarray(p)).max(axis=1)
        k = int(np.argmin(dev))
        mapping.append(k)
        worst = max(worst, float(dev[k]))
    if len(set(mapping)) != len(truth):
        return mapping, math.inf
    return mapping, worst


@dataclass
class RoundtripReport:
    success: bool
    n: int
    m: int
    dim: int
    vertex_queries: int = 0
    edge_queries: int = 0
    total_queries: int = 0
    max_coord_error: float = math.inf
    missing_edges: list = field(default_factory=list)
    extra_edges: list = field(default_factory=list)
    budgets_ok: bool = False
    theta: float = math.nan
    error: Optional[str] = None
    vertices: list = field(default_factory=list, repr=False)
    edges: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["missing_edges"] = [list(e) for e in self.missing_edges]
        d["extra_edges"] = [list(e) for e in self.extra_edges]
        d["edges"] = [list(e) for e in self.edges]
        d["vertices"] = [list(v) for v in self.vertices]
        for k in ("max_coord_error", "theta"):
            if not math.isfinite(d[k]):
                d[k] = None
        return d


def reconstruct(o: DiagramOracle, d: int = 2, min_angle: float = DEFAULT_MIN_ANGLE):
    """Both phases against an oracle; returns the two phase results."""
    if d == 2:
        vr = reconstruct_vertices_2d(o)
        er = reconstruct_edges_2d(o, vr.vertices, min_angle) if len(vr.vertices) >= 2 else None
    else:
        vr = reconstruct_vertices_dd(o, d)
        er = reconstruct_edges_dd(o, vr.vertices, min_angle) if len(vr.vertices) >= 2 else None
    return vr, er


def roundtrip(g: EmbeddedGraph, min_angle: float = DEFAULT_MIN_ANGLE) -> RoundtripReport:
    """Reconstruct ``g`` through an oracle, then compare with ``g``.

    The graph is only consulted for the final comparison.
    """
    d = g.dim or 2
    rep = RoundtripReport(False, g.n, g.m, d)
    o = DiagramOracle(g)
    try:
        vr, er = reconstruct(o, d, min_angle)
    except MinAngleTooSmall:
        raise
    except ReconstructionError as exc:
        rep.error = f"{type(exc).__name__}: {exc}"
        return rep
    rep.vertices = list(vr.vertices)
    rep.vertex_queries = vr.queries_used
    rep.edge_queries = er.queries_used if er else 0
    rep.total_queries = o.query_count
    rep.theta = er.theta if er else math.nan
    recovered_edges = er.edges if er else set()
    rep.edges = sorted(recovered_edges)
    mapping, rep.max_coord_error = match_vertices(vr.vertices, g.vertices)
    if math.isfinite(rep.max_coord_error):
        mapped = {tuple(sorted((mapping[i], mapping[j]))) for i, j in recovered_edges}
        rep.missing_edges = sorted(g.edges - mapped)
        rep.extra_edges = sorted(mapped - g.edges)
    rep.budgets_ok = (rep.vertex_queries == vertex_budget(g.n, d)
                      and rep.edge_queries == (edge_budget(g.n) if g.n >= 2 else 0)
                      and rep.total_queries == rep.vertex_queries + rep.edge_queries)
    rep.success = (rep.max_coord_error <= COORD_TOL and not rep.missing_edges
                   and not rep.extra_edges and rep.budgets_ok)
    return rep


# --- timing ----------------------------------------------------------------

@dataclass
class ExperimentRecord:
    n: int
    alpha: float
    seed: int
    graph: int
    repeat: int
    phase: str  # "vertex" | "edge"
    wall_time_ns: int  # diagram time subtracted
    loop_time_ns: int  # edge phase: pair loop only, diagram time subtracted
    queries: int
    success: bool
    min_angle: float
    m: int
    # thread CPU time, diagram time subtracted; unaffected by preemption
    cpu_time_ns: int = 0
    loop_cpu_ns: int = 0


@dataclass(frozen=True)
class PhaseTiming:
    wall_ns: int
    cpu_ns: int
    loop_wall_ns: int = 0
    loop_cpu_ns: int = 0


def time_vertex_phase(o: DiagramOracle):
    """Run the planar vertex phase; returns ``(result, PhaseTiming)`` without diagram time."""
    d0, c0 = o.diagram_time_ns, o.diagram_cpu_ns
    t0 = time.perf_counter_ns()
    k0 = time.thread_time_ns()
    vr = reconstruct_vertices_2d(o)
    k1 = time.thread_time_ns()
    t1 = time.perf_counter_ns()
    return vr, PhaseTiming((t1 - t0) - (o.diagram_time_ns - d0),
                           (k1 - k0) - (o.diagram_cpu_ns - c0))


def time_edge_phase(o: DiagramOracle, V, min_angle: float = DEFAULT_MIN_ANGLE):
    """Planar edge phase; returns ``(result, PhaseTiming)`` without diagram time."""
    d0, c0 = o.diagram_time_ns, o.diagram_cpu_ns
    t0 = time.perf_counter_ns()
    k0 = time.thread_time_ns()
    er = reconstruct_edges_2d(o, V, min_angle)
    k1 = time.thread_time_ns()
    t1 = time.perf_counter_ns()
    return er, PhaseTiming((t1 - t0) - (o.diagram_time_ns - d0),
                           (k1 - k0) - (o.diagram_cpu_ns - c0),
                           er.loop_ns - er.loop_diagram_ns,
                           er.loop_cpu_ns - er.loop_diagram_cpu_ns)


def run_bench(n_list: Iterable[int], alphas: Iterable[float] = (0.1,), graphs: int = 10,
              repeats: int = 5, seed: int = 0, min_angle: float = DEFAULT_MIN_ANGLE,
              vertex_repeats: Optional[int] = None) -> list[ExperimentRecord]:
    """Time both phases on random graphs.

    For each ``n`` and graph index one point set and triangulation is drawn;
    every ``alpha`` subsamples that same triangulation. Every instance gets
    a caching oracle and an untimed warm-up run before it is timed, and the
    garbage collector is off while timing. Diagram time is subtracted from
    every timing, on both the wall clock and the thread CPU clock.

    Vertex-phase runs take microseconds, so a burst of scheduler noise can
    swamp a whole block of them. They are therefore timed in rounds, one run
    per instance per round in shuffled order, for ``vertex_repeats`` rounds
    (default ``repeats``). Edge-phase repeats run back to back per instance.
    """
    alphas = list(alphas)
    instances = []
    for n in n_list:
        for gi in range(graphs):
            rng = np.random.default_rng([seed, n, gi])
            pts, dt_edges = sample_delaunay(n, rng, min_angle)
            sub_seed = int(rng.integers(2**63))
            angle = min_pairwise_angle(pts)
            for alpha in alphas:
                instances.append((n, gi, alpha, subsample_edges(pts, dt_edges, alpha, sub_seed), angle))

    oracles = [DiagramOracle(inst[3], cache=True) for inst in instances]
    results = [time_vertex_phase(o)[0] for o in oracles]
    vtimes: list[list[PhaseTiming]] = [[] for _ in instances]
    order = list(range(len(instances)))
    shuffle = np.random.default_rng([seed, 7])
    records = []
    gc_was_enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        for _ in range(vertex_repeats or repeats):
            shuffle.shuffle(order)
            for k in order:
                oracles[k].reset()
                vr, vt = time_vertex_phase(oracles[k])
                vtimes[k].append(vt)
        for k, (n, gi, alpha, g, angle) in enumerate(instances):
            o, vr = oracles[k], results[k]
            er, _ = time_edge_phase(o, vr.vertices, min_angle)
            ok = _matches(g, vr.vertices, er.edges)
            for r, vt in enumerate(vtimes[k]):
                records.append(ExperimentRecord(n, alpha, seed, gi, r, "vertex", vt.wall_ns, 0,
                                                vr.queries_used, ok, angle, g.m, vt.cpu_ns, 0))
            for r in range(repeats):
                o.reset()
                er, et = time_edge_phase(o, vr.vertices, min_angle)
                records.append(ExperimentRecord(n, alpha, seed, gi, r, "edge", et.wall_ns,
                                                et.loop_wall_ns, er.queries_used, ok, angle, g.m,
                                                et.cpu_ns, et.loop_cpu_ns))
            oracles[k] = None  # drop the diagram cache
            gc.collect()
    finally:
        if gc_was_enabled:
            gc.enable()
    return records


def _matches(g: EmbeddedGraph, verts, edges) -> bool:
    mapping, err = match_vertices(verts, g.vertices)
    if err > COORD_TOL:
        return False
    return {tuple(sorted((mapping[i], mapping[j]))) for i, j in edges} == set(g.edges)


@dataclass
class Fit:
    intercept: float
    slope: float
    r2: float
    slope_ci: tuple[float, float]
    n_points: int


def fit_ols(x: Sequence[float], y: Sequence[float], confidence: float = 0.99) -> Fit:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    res = stats.linregress(x, y)
    dof = len(x) - 2
    tcrit = stats.t.ppf(0.5 + confidence / 2, dof)
    half = tcrit * res.stderr
    return Fit(float(res.intercept), float(res.slope), float(res.rvalue ** 2),
               (float(res.slope - half), float(res.slope + half)), len(x))


def repeat_means(records: Sequence[ExperimentRecord], phase: str, column: str = "cpu_time_ns"):
    """Mean over repeats for each (n, alpha, graph): ``{key: mean_ns}``."""
    groups: dict[tuple, list[int]] = {}
    for r in records:
        if r.phase == phase and r.success:
            groups.setdefault((r.n, r.alpha, r.graph), []).append(getattr(r, column))
    return {k: float(np.mean(v)) for k, v in groups.items()}


def scaling_fits(records: Sequence[ExperimentRecord], clock: str = "cpu") -> dict[str, Fit]:
    """Vertex time against n log n and edge loop time against n^3.

    ``clock`` picks the thread CPU columns (default) or the wall-clock ones.
    """
    vcol, ecol = ("cpu_time_ns", "loop_cpu_ns") if clock == "cpu" else ("wall_time_ns", "loop_time_ns")
    vm = repeat_means(records, "vertex", vcol)
    em = repeat_means(records, "edge", ecol)
    vx = [k[0] * math.log(k[0]) for k in vm]
    ex = [float(k[0]) ** 3 for k in em]
    return {"vertex_nlogn": fit_ols(vx, list(vm.values())),
            "edge_n3": fit_ols(ex, list(em.values()))}


def alpha_fits(records: Sequence[ExperimentRecord], phase: str = "vertex",
               confidence: float = 0.99, column: str = "cpu_time_ns") -> dict[int, Fit]:
    """Per-``n`` regression of phase time on alpha."""
    means = repeat_means(records, phase, column)
    out = {}
    for n in sorted({k[0] for k in means}):
        keys = [k for k in means if k[0] == n]
        out[n] = fit_ols([k[1] for k in keys], [means[k] for k in keys], confidence)
    return out


def records_to_csv(records: Sequence[ExperimentRecord]) -> str:
    buf = io.StringIO()
    buf.write(BENCH_SCHEMA + "\n")
    names = [f.name for f in fields(ExperimentRecord)]
    w = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(asdict(r))
    return buf.getvalue()


# --- small angles ----------------------------------------------------------

def model_triple_probability(eps: float = 1e-6) -> float:
    return eps / math.pi


def model_failure_probability(n: int, eps: float = 1e-6) -> float:
    """P(some angle < eps among n points) assuming independent angles."""
    k = n * (n - 1) * (n - 2)
    return -math.expm1(k * math.log1p(-model_triple_probability(eps)))


def first_n_exceeding(p: float = 0.05, eps: float = 1e-6, n_max: int = 10_000) -> int:
    for n in range(3, n_max):
        if model_failure_probability(n, eps) > p:
            return n
    raise ValueError("threshold not reached")


@dataclass
class MinAngleRow:
    n: int
    trials: int
    failures: int
    fraction: float
    ci_low: float
    ci_high: float
    model: float
    median_min_angle: float


def min_angle_study(n_list: Iterable[int], trials: int = 1000, seed: int = 0,
                    eps: float = 1e-6, confidence: float = 0.99) -> list[MinAngleRow]:
    rows = []
    for n in n_list:
        rng = np.random.default_rng([seed, n])
        angles = []
        for _ in range(trials):
            pts = sample_points(n, int(rng.integers(2**63)))
            angles.append(min_pairwise_angle(pts))
        k = sum(a < eps for a in angles)
        ci = stats.binomtest(k, trials).proportion_ci(confidence_level=confidence, method="exact")
        rows.append(MinAngleRow(n, trials, k, k / trials, ci.low, ci.high,
                                model_failure_probability(n, eps), float(np.median(angles))))
    return rows


def minangle_to_csv(rows: Sequence[MinAngleRow]) -> str:
    buf = io.StringIO()
    buf.write(MINANGLE_SCHEMA + "\n")
    names = [f.name for f in fields(MinAngleRow)]
    w = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(asdict(r))
    return buf.getvalue()


def generate_batch(n_values: Sequence[int], alphas: Sequence[float], count: int, seed: int = 0,
                   min_angle: Optional[float] = DEFAULT_MIN_ANGLE) -> list[EmbeddedGraph]:
    """``count`` graphs cycling through the given sizes and edge fractions."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        cfg = GenConfig(n=int(n_values[i % len(n_values)]),
                        alpha=float(alphas[(i // len(n_values)) % len(alphas)]),
                        seed=int(rng.integers(2**63)), min_angle_filter=min_angle)
        out.append(generate_graph(cfg))
    return out
