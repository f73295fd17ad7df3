"""Timing experiment: vertex phase vs n log n, edge loop vs n^3, and the
alpha sweep at fixed n. Writes CSVs plus a JSON fit summary."""

import argparse
import json
from pathlib import Path

from graphrecon.experiments import alpha_fits, records_to_csv, run_bench, scaling_fits


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--graphs", type=int, default=10)
    ap.add_argument("--vertex-repeats", type=int, default=50)
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    scaling = run_bench(range(10, 81, 10), alphas=(0.1,), graphs=args.graphs, repeats=3,
                        seed=args.seed, vertex_repeats=args.vertex_repeats)
    (out / "bench_scaling.csv").write_text(records_to_csv(scaling))
    sweep = run_bench((10, 25, 50), alphas=[a / 10 for a in range(1, 11)], graphs=args.graphs,
                      repeats=2, seed=args.seed, vertex_repeats=args.vertex_repeats)
    (out / "bench_alpha.csv").write_text(records_to_csv(sweep))

    summary = {
        "scaling_cpu": {k: vars(f) for k, f in scaling_fits(scaling).items()},
        "scaling_wall": {k: vars(f) for k, f in scaling_fits(scaling, clock="wall").items()},
        "vertex_vs_alpha": {n: vars(f) for n, f in alpha_fits(sweep, "vertex").items()},
        "edge_vs_alpha": {n: vars(f) for n, f in alpha_fits(sweep, "edge", column="loop_cpu_ns").items()},
    }
    text = json.dumps(summary, indent=2, default=list)
    (out / "bench_summary.json").write_text(text + "\n")
    print(text)


if __name__ == "__main__":
    main()
