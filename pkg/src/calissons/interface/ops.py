"""Engine operations shared verbatim by the CLI and the HTTP service, so
both surfaces produce identical verdicts and serialisations."""

from __future__ import annotations

from typing import Optional

from ..baselines import enumerate_tilings, sat_encode
from ..constraints import build_projected_graph
from ..solver_finite import (
    Solution,
    Untilable,
    solve_finite,
    solve_finite_bf,
    thurston_extremes,
)
from ..solver_infinite import Solvable, decide_infinite
from ..tiling import Tiling, check
from .documents import DocumentError, PuzzleDocument


def op_solve(document: PuzzleDocument, method: str = "advancing", which: str = "lowest") -> dict:
    if document.is_infinite:
        raise DocumentError(
            "infinite_region", "use decide for the infinite grid", "region"
        )
    region = document.region()
    if method == "advancing":
        outcome = solve_finite(region, document.x_edges, which)
    elif method == "bellman-ford":
        outcome = solve_finite_bf(region, document.x_edges, which)
    else:
        raise DocumentError("bad_method", f"unknown method {method!r}", "method")
    graph_dump = build_projected_graph(region, document.x_edges).dump()
    if isinstance(outcome, Solution):
        return {
            "verdict": "solvable",
            "method": method,
            "which": which,
            "tiling": outcome.tiling.to_json(),
            "projected_graph": graph_dump,
        }
    return {
        "verdict": "unsolvable",
        "method": method,
        "which": which,
        "witness": outcome.witness.to_json(),
        "projected_graph": graph_dump,
    }


def op_decide(document: PuzzleDocument) -> dict:
    if not document.is_infinite:
        raise DocumentError(
            "finite_region", "decide runs on the infinite grid; use solve", "region"
        )
    outcome = decide_infinite(document.x_edges)
    if isinstance(outcome, Solvable):
        return {"verdict": "solvable"}
    return {"verdict": "unsolvable", "witness": outcome.to_json()}


def op_check(document: PuzzleDocument, tiling: Tiling) -> dict:
    region = document.region()
    violations = check(region, document.x_edges, tiling)
    return {
        "verdict": "valid" if not violations else "invalid",
        "violations": [v.to_json() for v in violations],
    }


def op_extremes(document: PuzzleDocument) -> dict:
    region = document.region()
    outcome = thurston_extremes(region)
    if isinstance(outcome, Untilable):
        return {"verdict": "untilable", "witness": outcome.to_json()}
    return {
        "verdict": "tilable",
        "min": outcome.min_tiling.to_json(),
        "max": outcome.max_tiling.to_json(),
    }


def op_enumerate(document: PuzzleDocument, limit: Optional[int] = None) -> dict:
    region = document.region()
    result = enumerate_tilings(region, document.x_edges, limit=limit)
    return {
        "verdict": "solvable" if result.count else "unsolvable",
        "count": result.count,
        "truncated": result.truncated,
        "tilings": [t.to_json() for t in result.tilings],
    }


def op_encode_sat(document: PuzzleDocument) -> str:
    region = document.region()
    return sat_encode(region, document.x_edges).to_dimacs()


def op_render(document: PuzzleDocument, tiling: Optional[Tiling], fmt: str) -> str:
    from .render import render_ascii, render_svg

    if fmt == "svg":
        return render_svg(document, tiling)
    if fmt == "ascii":
        return render_ascii(document, tiling)
    raise DocumentError("bad_format", f"unknown render format {fmt!r}", "format")
