#!/usr/bin/env python3
"""Layering benchmark sweep: node counts x thread counts, JSON per run.

Usage: python scripts/bench_sweep.py [--max-nodes N] [--density D] [--seed N]
"""

import argparse
import json
import sys

from spectop import run_bench


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-nodes", type=int, default=1_000_000)
    parser.add_argument("--density", type=float, default=2.0)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    nodes = 10_000
    baseline_sizes = {}
    agree = True
    while nodes <= args.max_nodes:
        for threads in (1, 2, 8):
            result = run_bench(nodes, density=args.density, seed=args.seed,
                               threads=threads, verify=(threads == 1))
            print(json.dumps(result.to_dict()))
            if threads == 1:
                baseline_sizes[nodes] = result.layer_sizes
                agree = agree and result.agree
            else:
                agree = agree and result.layer_sizes == baseline_sizes[nodes]
        nodes *= 10
    print(json.dumps({"all_runs_consistent": agree}))
    return 0 if agree else 1


if __name__ == "__main__":
    sys.exit(main())
