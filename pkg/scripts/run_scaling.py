#!/usr/bin/env python3
"""Empirical scaling of the advancing-surface solver on hexagons.

For each side length n, builds hexagon(n), samples n random interior
constrained edges, times the full solve (Thurston bracketing + slab sweep),
and fits a log-log slope across the measured sizes.
"""

import argparse
import math
import random
import time

from calissons.grid import GridEdge, GridVertex, hexagon_region
from calissons.solver_finite import Solution, solve_finite


def measure(n: int, seed: int, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        rng = random.Random(seed)
        region = hexagon_region(n)
        interior = region.interior_edges()
        x = [GridEdge(GridVertex(*k[0].pos), k[1]) for k in rng.sample(interior, n)]
        t0 = time.perf_counter()
        outcome = solve_finite(region, x)
        best = min(best, time.perf_counter() - t0)
        label = "solvable" if isinstance(outcome, Solution) else "unsolvable"
    print(f"hexagon({n:3d})  |X|={n:3d}  {best:8.3f}s  {label}")
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 40])
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    times = {n: measure(n, args.seed, args.repeats) for n in args.sizes}
    ns = sorted(times)
    if len(ns) >= 2:
        slope = (math.log(times[ns[-1]]) - math.log(times[ns[0]])) / (
            math.log(ns[-1]) - math.log(ns[0])
        )
        print(f"log-log slope over n={ns[0]}..{ns[-1]}: {slope:.2f}")


if __name__ == "__main__":
    main()
