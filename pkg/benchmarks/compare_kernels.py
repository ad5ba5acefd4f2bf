#!/usr/bin/env python3
"""Compare the compiled and pure-Python search kernels on the scaling family.

Both kernels visit the identical search tree, so the node column must match
line for line; the interesting output is the wall-time ratio.

Usage:
    python benchmarks/compare_kernels.py [--k-min 8] [--k-max 14] [--repeats 3]
"""

import argparse
import sys

from electiongame import bench, kernels


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k-min", type=int, default=8)
    parser.add_argument("--k-max", type=int, default=14)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args(argv)

    names = kernels.available()
    if "fast" not in names:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1

    print(f"{'k':>3} {'nodes':>10} {'python (s)':>12} {'fast (s)':>12} {'speedup':>8}")
    for k in range(args.k_min, args.k_max + 1):
        problem = bench.scaling_instance(k)
        results = {}
        for name in ("python", "fast"):
            answer, seconds = bench.time_solve(problem, name, repeats=args.repeats)
            results[name] = (answer, seconds)
        answer_py, t_py = results["python"]
        answer_fast, t_fast = results["fast"]
        if answer_py.nodes != answer_fast.nodes:
            print(f"node count mismatch at k={k}: "
                  f"{answer_py.nodes} vs {answer_fast.nodes}", file=sys.stderr)
            return 1
        print(f"{k:>3} {answer_fast.nodes:>10} {t_py:>12.6f} {t_fast:>12.6f} "
              f"{t_py / t_fast:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
