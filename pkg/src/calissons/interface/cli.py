"""Command-line interface.

Exit codes: 0 solvable/valid, 1 unsolvable/invalid, 2 malformed input.
Verdicts and artifacts go to standard output (or --out).
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Optional

from .documents import DocumentError, PuzzleDocument, dump_json, load_document, load_tiling
from . import ops


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError("io_error", f"cannot read {path}: {exc}", path) from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _verdict_status(result: dict) -> int:
    return 0 if result.get("verdict") in ("solvable", "valid", "tilable") else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="calissons", description="calissons puzzle engine"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve a finite puzzle")
    solve.add_argument("file")
    solve.add_argument("--method", choices=["advancing", "bellman-ford"], default="advancing")
    group = solve.add_mutually_exclusive_group()
    group.add_argument("--lowest", action="store_true")
    group.add_argument("--highest", action="store_true")
    solve.add_argument("--out")

    decide = sub.add_parser("decide", help="decide an infinite-grid puzzle")
    decide.add_argument("file")
    decide.add_argument("--out")

    chk = sub.add_parser("check", help="validate a tiling against a puzzle")
    chk.add_argument("file")
    chk.add_argument("tiling_file")
    chk.add_argument("--out")

    enum = sub.add_parser("enumerate", help="list all solutions (small regions)")
    enum.add_argument("file")
    enum.add_argument("--limit", type=int, default=None)
    enum.add_argument("--out")

    ext = sub.add_parser("extremes", help="minimum and maximum tilings")
    ext.add_argument("file")
    ext.add_argument("--out")

    sat = sub.add_parser("encode-sat", help="DIMACS CNF encoding")
    sat.add_argument("file")
    sat.add_argument("--out")

    rend = sub.add_parser("render", help="draw the puzzle (optionally with a tiling)")
    rend.add_argument("file")
    rend.add_argument("tiling_file", nargs="?")
    rend.add_argument("--format", choices=["svg", "ascii"], default="svg")
    rend.add_argument("--out")

    gen = sub.add_parser("gen", help="generate a random puzzle document")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--triangles", type=int, default=24)
    gen.add_argument("--density", type=float, default=0.15)
    gen.add_argument("--out")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except DocumentError as exc:
        sys.stdout.write(dump_json(exc.to_json()))
        return 2


def _dispatch(args) -> int:
    if args.command == "solve":
        document = load_document(_read(args.file))
        which = "highest" if args.highest else "lowest"
        result = ops.op_solve(document, args.method, which)
        _emit(dump_json(result), args.out)
        return _verdict_status(result)

    if args.command == "decide":
        document = load_document(_read(args.file))
        result = ops.op_decide(document)
        _emit(dump_json(result), args.out)
        return _verdict_status(result)

    if args.command == "check":
        document = load_document(_read(args.file))
        tiling = load_tiling(_read(args.tiling_file), document.region())
        result = ops.op_check(document, tiling)
        _emit(dump_json(result), args.out)
        return _verdict_status(result)

    if args.command == "enumerate":
        document = load_document(_read(args.file))
        result = ops.op_enumerate(document, args.limit)
        _emit(dump_json(result), args.out)
        return _verdict_status(result)

    if args.command == "extremes":
        document = load_document(_read(args.file))
        result = ops.op_extremes(document)
        _emit(dump_json(result), args.out)
        return _verdict_status(result)

    if args.command == "encode-sat":
        document = load_document(_read(args.file))
        _emit(ops.op_encode_sat(document), args.out)
        return 0

    if args.command == "render":
        document = load_document(_read(args.file))
        tiling = None
        if args.tiling_file:
            tiling = load_tiling(_read(args.tiling_file), document.region())
        _emit(ops.op_render(document, tiling, args.format), args.out)
        return 0

    if args.command == "gen":
        from ..instances import random_instance

        rng = random.Random(args.seed)
        region, x_edges = random_instance(rng, args.triangles, args.density)
        start = region.boundary[0][0]
        doc = PuzzleDocument(
            {
                "type": "boundary",
                "start": [start.u, start.v],
                "steps": [str(s) for _, s in region.boundary],
            },
            x_edges,
            title=f"random instance (seed {args.seed})",
        )
        _emit(dump_json(doc.to_json()), args.out)
        return 0

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
        return 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
