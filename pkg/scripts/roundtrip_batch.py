"""Round-trip reconstruction over a batch of random plane graphs."""

import argparse
import json
import time

from graphrecon.experiments import generate_batch, roundtrip


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    t0 = time.perf_counter()
    graphs = generate_batch(list(range(5, 51, 5)), [a / 10 for a in range(1, 11)], args.count, args.seed)
    reports = [roundtrip(g) for g in graphs]
    failures = [r.to_dict() for r in reports if not r.success]
    print(json.dumps({"count": len(reports), "successes": len(reports) - len(failures),
                      "seconds": round(time.perf_counter() - t0, 2), "failures": failures}, indent=2))


if __name__ == "__main__":
    main()
