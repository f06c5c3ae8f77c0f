#!/usr/bin/env python
"""How many (u, v) pairs stay consistent with k observed products p_a(u)p_a(v)."""

import argparse
import json
import statistics
import sys
from pathlib import Path

from partition_schemes.adversary import run_experiment


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--alpha", type=int, default=1)
    parser.add_argument("--bound", type=int, default=30)
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", type=Path, default=Path("results/adversary.json"))
    args = parser.parse_args()

    pairs = [(u, v) for u in range(1, args.bound + 1) for v in range(u, args.bound + 1)]
    report = run_experiment(pairs, alpha=args.alpha, k=args.k, bound=args.bound, seed=args.seed)

    print(f"{len(pairs)} hidden pairs, alpha={args.alpha}, bound={args.bound}")
    print(f"{'k':>3} {'mean':>8} {'median':>7} {'max':>5} {'unique':>7}")
    for j in range(args.k):
        sizes = [row["sizes"][j] for row in report["pairs"]]
        unique = sum(s == 1 for s in sizes) / len(sizes)
        print(f"{j + 1:>3} {statistics.mean(sizes):>8.2f} {statistics.median(sizes):>7} {max(sizes):>5} {unique:>7.1%}")
    print(f"wall time {report['wall_time_s']:.2f}s")

    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(f"report written to {args.out}")
    return 0 if all(row["contains_true"] for row in report["pairs"]) else 1


if __name__ == "__main__":
    sys.exit(main())
