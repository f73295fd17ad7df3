"""Command-line entry point: ``graphrecon <command> ...``.

Exit codes: 0 success, 2 reconstruction mismatch, 3 min-angle assertion,
4 I/O or input error. Failures print a JSON object on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import bruteforce
from .datagen import GenConfig, generate_graph, graph_to_dict, read_graph
from .edge_recon import DEFAULT_MIN_ANGLE, indegree, reconstruct_edges_2d, reconstruct_edges_dd
from .errors import MinAngleTooSmall, ReconstructionError
from .experiments import (alpha_fits, min_angle_study, minangle_to_csv, reconstruct,
                          records_to_csv, roundtrip, run_bench, scaling_fits)
from .geometry import EmbeddedGraph, normalize, vertex_height
from .oracle import DiagramOracle
from .persistence import compute_apd, diagram_to_csv
from .vertex_recon import reconstruct_vertices_2d, reconstruct_vertices_dd

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_MIN_ANGLE = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, code: int, payload: dict):
        super().__init__(payload.get("error", ""))
        self.code = code
        self.payload = payload


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise CliError(EXIT_IO, {"error": f"cannot write {out}: {exc}"}) from exc


def _load(path) -> EmbeddedGraph:
    try:
        return read_graph(path)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(EXIT_IO, {"error": f"cannot read graph from {path}: {exc}"}) from exc


def _json(obj) -> str:
    return json.dumps(obj, allow_nan=False) + "\n"


def _min_angle_failure(exc: MinAngleTooSmall) -> CliError:
    return CliError(EXIT_MIN_ANGLE, {"success": False, "error": "min_angle",
                                     "theta": exc.theta, "threshold": exc.threshold})


def _recon_failure(exc: ReconstructionError) -> CliError:
    return CliError(EXIT_MISMATCH, {"success": False, "error": f"{type(exc).__name__}: {exc}"})


# --- commands --------------------------------------------------------------

def cmd_gen(args) -> int:
    try:
        cfg = GenConfig(n=args.n, alpha=args.alpha, seed=args.seed,
                        min_angle_filter=args.min_angle, dim=args.dim)
        g = generate_graph(cfg)
    except (ValueError, ReconstructionError) as exc:
        raise CliError(EXIT_IO, {"error": f"{type(exc).__name__}: {exc}"}) from exc
    _emit(_json(graph_to_dict(g)), args.out)
    return EXIT_OK


def cmd_recon(args) -> int:
    g = _load(args.input)
    d = g.dim or args.dim
    o = DiagramOracle(g)
    try:
        if args.phase == "vertices":
            vr = reconstruct_vertices_2d(o) if d == 2 else reconstruct_vertices_dd(o, d)
            out = {"dim": d, "vertices": [list(v) for v in vr.vertices], "edges": [],
                   "queries": vr.queries_used}
        elif args.phase == "edges":
            # vertex positions are taken as known, from the input file
            fn = reconstruct_edges_2d if d == 2 else reconstruct_edges_dd
            er = fn(o, g.vertices, args.min_angle)
            out = {"dim": d, "vertices": [list(v) for v in g.vertices],
                   "edges": [list(e) for e in sorted(er.edges)],
                   "queries": er.queries_used, "theta": er.theta}
        else:
            vr, er = reconstruct(o, d, args.min_angle)
            out = {"dim": d, "vertices": [list(v) for v in vr.vertices],
                   "edges": [list(e) for e in sorted(er.edges)] if er else [],
                   "queries": o.query_count}
    except MinAngleTooSmall as exc:
        raise _min_angle_failure(exc) from exc
    except ReconstructionError as exc:
        raise _recon_failure(exc) from exc
    _emit(_json(out), args.out)
    return EXIT_OK


def cmd_oracle_dump(args) -> int:
    g = _load(args.input)
    try:
        s = normalize(_floats(args.direction))
        o = DiagramOracle(g)
        diag = o.query(s) if args.hom_dim is None else o.query_restricted(s, args.hom_dim)
    except (ReconstructionError, ValueError) as exc:
        raise CliError(EXIT_IO, {"error": f"{type(exc).__name__}: {exc}"}) from exc
    header = "# direction " + ",".join(format(x, ".17g") for x in s) + "\n"
    _emit(header + diagram_to_csv(diag), args.out)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    if args.input:
        graphs = [_load(args.input)]
    else:
        rng = np.random.default_rng(args.seed)
        graphs = [generate_graph(GenConfig(n=args.n, alpha=args.alpha, dim=args.dim,
                                           seed=int(rng.integers(2**63)),
                                           min_angle_filter=args.min_angle))
                  for _ in range(args.count)]

    def run(g):
        try:
            return roundtrip(g, args.min_angle)
        except MinAngleTooSmall as exc:
            return exc

    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        results = list(pool.map(run, graphs))
    for r in results:
        if isinstance(r, MinAngleTooSmall):
            raise _min_angle_failure(r)
    reports = [r.to_dict() for r in results]
    ok = all(r["success"] for r in reports)
    payload = reports[0] if len(reports) == 1 else {
        "success": ok, "count": len(reports), "failures": sum(not r["success"] for r in reports),
        "reports": reports}
    if not ok:
        raise CliError(EXIT_MISMATCH, payload)
    _emit(_json(payload), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    records = run_bench(_ints(args.n), _floats(args.alpha), graphs=args.graphs,
                        repeats=args.repeats, seed=args.seed, min_angle=args.min_angle,
                        vertex_repeats=args.vertex_repeats)
    _emit(records_to_csv(records), args.out)
    summary = {k: vars(f) for k, f in scaling_fits(records).items()}
    if len(set(_floats(args.alpha))) > 1:
        summary["vertex_alpha"] = {n: vars(f) for n, f in alpha_fits(records).items()}
    sys.stderr.write(json.dumps(summary, default=list) + "\n")
    return EXIT_OK


def cmd_minangle(args) -> int:
    rows = min_angle_study(_ints(args.n), trials=args.trials, seed=args.seed)
    _emit(minangle_to_csv(rows), args.out)
    return EXIT_OK


def _verify(n_max: int, graphs: int, directions: int, seed: int) -> dict:
    """Fast implementations against the brute-force references."""
    rng = np.random.default_rng(seed)
    checked = diag_bad = indeg_bad = 0
    for n in range(1, n_max + 1):
        for _ in range(graphs):
            g = generate_graph(GenConfig(n=n, alpha=float(rng.random()),
                                         seed=int(rng.integers(2**63))))
            for _ in range(directions):
                s = normalize(rng.standard_normal(2))
                fast = compute_apd(g, s).as_multiset()
                slow = bruteforce.betti_sweep_diagram(g, s)
                if len(fast) != len(slow) or any(
                        a[0] != b[0] or not _close(a[1], b[1]) or not _close(a[2], b[2])
                        for a, b in zip(fast, slow)):
                    diag_bad += 1
                diag = compute_apd(g, s)
                for v in range(g.n):
                    h = vertex_height(s, g.vertices[v])
                    if indegree(diag, h) != bruteforce.direct_indegree(g, v, s):
                        indeg_bad += 1
                checked += 1
    return {"success": diag_bad == 0 and indeg_bad == 0, "checked": checked,
            "diagram_mismatches": diag_bad, "indegree_mismatches": indeg_bad}


def _close(a: float, b: float, tol: float = 1e-12) -> bool:
    return a == b or abs(a - b) <= tol


def cmd_verify(args) -> int:
    result = _verify(args.n_max, args.graphs, args.directions, args.seed)
    if not result["success"]:
        raise CliError(EXIT_MISMATCH, result)
    _emit(_json(result), args.out)
    return EXIT_OK


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphrecon",
                                description="Reconstruct embedded graphs from directional persistence diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True, out=True):
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        if out:
            sp.add_argument("--out", help="output file (default: stdout)")

    sp = sub.add_parser("gen", help="generate a random graph as JSON")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--min-angle", type=float, default=None,
                    help="reject point sets whose bow tie half-angle is below this")
    common(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("recon", help="reconstruct from the diagrams of a stored graph")
    sp.add_argument("phase", choices=["vertices", "edges", "full"])
    sp.add_argument("--input", required=True)
    sp.add_argument("--dim", type=int, default=2, help="ambient dimension for an empty graph")
    sp.add_argument("--min-angle", type=float, default=DEFAULT_MIN_ANGLE)
    common(sp, seed=False)
    sp.set_defaults(func=cmd_recon)

    sp = sub.add_parser("oracle-dump", help="write one diagram as CSV")
    sp.add_argument("--input", required=True)
    sp.add_argument("--direction", required=True, help="comma-separated, normalized before use")
    sp.add_argument("--hom-dim", type=int, choices=[0, 1], default=None)
    common(sp, seed=False)
    sp.set_defaults(func=cmd_oracle_dump)

    sp = sub.add_parser("roundtrip", help="generate or load, reconstruct, compare")
    sp.add_argument("--input")
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--min-angle", type=float, default=DEFAULT_MIN_ANGLE)
    common(sp)
    sp.set_defaults(func=cmd_roundtrip)

    sp = sub.add_parser("bench", help="time both phases; CSV on stdout, fit summary on stderr")
    sp.add_argument("--n", default="10,20,30,40,50,60,70,80")
    sp.add_argument("--alpha", default="0.1")
    sp.add_argument("--graphs", type=int, default=5)
    sp.add_argument("--repeats", type=int, default=2)
    sp.add_argument("--vertex-repeats", type=int, default=30)
    sp.add_argument("--min-angle", type=float, default=DEFAULT_MIN_ANGLE)
    common(sp)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("minangle", help="empirical vs modelled small-angle probability")
    sp.add_argument("--n", default="10,20,30,40,50,56,60,70")
    sp.add_argument("--trials", type=int, default=1000)
    common(sp)
    sp.set_defaults(func=cmd_minangle)

    sp = sub.add_parser("verify", help="cross-check diagrams and indegrees by brute force")
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--graphs", type=int, default=3)
    sp.add_argument("--directions", type=int, default=10)
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stdout.write(json.dumps(exc.payload, default=str) + "\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
