#!/usr/bin/env python3
"""Generate a few sample puzzle documents and solve them end to end."""

import json
import random
from pathlib import Path

from calissons.instances import random_instance
from calissons.interface.documents import PuzzleDocument, dump_json
from calissons.interface.ops import op_render, op_solve
from calissons.solver_finite import Solution, solve_finite

OUT = Path(__file__).resolve().parent.parent / "out"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    rng = random.Random(7)
    made = 0
    while made < 5:
        region, x = random_instance(rng, max_triangles=30, x_density=0.08)
        if not x or not isinstance(solve_finite(region, x), Solution):
            continue
        start = region.boundary[0][0]
        doc = PuzzleDocument(
            {
                "type": "boundary",
                "start": [start.u, start.v],
                "steps": [str(s) for _, s in region.boundary],
            },
            x,
            title=f"demo {made}",
        )
        (OUT / f"demo{made}.json").write_text(dump_json(doc.to_json()))
        result = op_solve(doc, "advancing", "lowest")
        (OUT / f"demo{made}.solution.json").write_text(dump_json(result["tiling"]))
        from calissons.tiling import tiling_from_json

        tiling = tiling_from_json(doc.region(), result["tiling"])
        (OUT / f"demo{made}.svg").write_text(op_render(doc, tiling, "svg"))
        print(f"wrote demo{made}: {len(region.triangles)} triangles, {len(x)} constraints")
        made += 1


if __name__ == "__main__":
    main()
