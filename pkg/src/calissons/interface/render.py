"""Deterministic SVG and ASCII renderers.

The drawing plane embeds canonical coordinates with the z axis pointing up
the screen: x = (u - v) * sqrt(3)/2, y = (u + v) / 2 with the y axis
inverted for screen space.  Calissons are coloured by face normal and
constrained edges are drawn bold.
"""

from __future__ import annotations

import math
from typing import Optional

from ..grid import Axis, GridEdge, GridVertex, Region
from ..tiling import Tiling
from .documents import DocumentError, PuzzleDocument

SQRT3_2 = math.sqrt(3) / 2

SVG_COLORS = {"blue": "#4a90d9", "red": "#d9534a", "yellow": "#e8c74a"}
FILL_LETTER = {"blue": "b", "red": "r", "yellow": "y"}


def _xy(u: int, v: int) -> tuple[float, float]:
    return ((u - v) * SQRT3_2, (u + v) * 0.5)


def _fmt(value: float) -> str:
    out = f"{value:.3f}"
    return "0.000" if out == "-0.000" else out


def _region_edges(region: Region) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    seen = set()
    for (tail, axis), head in region.edge_head.items():
        seen.add((tail.pos, head.pos))
    return sorted(seen)


def render_svg(
    document: PuzzleDocument,
    tiling: Optional[Tiling] = None,
) -> str:
    """SVG text; without a tiling, the bare grid with its constraints."""
    if document.is_infinite:
        positions = set()
        for e in document.x_edges:
            for p in e.endpoints():
                positions.add(p.pos)
        if not positions:
            positions = {(0, 0)}
        us = [p[0] for p in positions]
        vs = [p[1] for p in positions]
        pad = 2
        grid_edges = []
        for u in range(min(us) - pad, max(us) + pad + 1):
            for v in range(min(vs) - pad, max(vs) + pad + 1):
                for axis in Axis:
                    e = GridEdge(GridVertex(u, v), axis)
                    hp = e.head.pos
                    if min(us) - pad <= hp[0] <= max(us) + pad and min(vs) - pad <= hp[1] <= max(vs) + pad:
                        grid_edges.append((e.origin.pos, hp))
        grid_edges.sort()
    else:
        region = document.region()
        if tiling is not None and tiling.region != region:
            raise DocumentError("tiling_mismatch", "tiling belongs to another region", "$")
        grid_edges = _region_edges(region)

    points = [p for seg in grid_edges for p in seg]
    xs = [_xy(*p)[0] for p in points]
    ys = [_xy(*p)[1] for p in points]
    margin = 0.6
    min_x, max_x = min(xs) - margin, max(xs) + margin
    min_y, max_y = min(ys) - margin, max(ys) + margin

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(min_x)} {_fmt(min_y)} {_fmt(max_x - min_x)} {_fmt(max_y - min_y)}">'
    ]
    if tiling is not None:
        for cal in tiling.sorted_calissons():
            pts = " ".join(
                f"{_fmt(_xy(*corner)[0])},{_fmt(_xy(*corner)[1])}"
                for corner in cal.corner_cycle()
            )
            lines.append(
                f'<polygon points="{pts}" fill="{SVG_COLORS[cal.color]}" '
                'stroke="#333333" stroke-width="0.04"/>'
            )
    else:
        for a, b in grid_edges:
            (x1, y1), (x2, y2) = _xy(*a), _xy(*b)
            lines.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                'stroke="#bbbbbb" stroke-width="0.03"/>'
            )
    for e in sorted(document.x_edges):
        (x1, y1), (x2, y2) = _xy(*e.origin.pos), _xy(*e.head.pos)
        lines.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            'stroke="#000000" stroke-width="0.12" stroke-linecap="round"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_ascii(
    document: PuzzleDocument,
    tiling: Optional[Tiling] = None,
) -> str:
    """Character rendering: rows follow u+v, columns follow u-v.

    Edges use /, backslash and |; constrained edges are overstruck with #,
    and tiled calissons carry their colour letter at the centre.
    """
    if document.is_infinite:
        raise DocumentError("infinite_region", "ASCII rendering needs a finite region", "region")
    region = document.region()
    if tiling is not None and tiling.region != region:
        raise DocumentError("tiling_mismatch", "tiling belongs to another region", "$")

    cells: dict[tuple[int, int], str] = {}

    def put(row: int, col: int, char: str) -> None:
        cells[(row, col)] = char

    def edge_cells(a: tuple[int, int], b: tuple[int, int]) -> list[tuple[int, int]]:
        (r1, c1) = (2 * (a[0] + a[1]), 4 * (a[0] - a[1]))
        (r2, c2) = (2 * (b[0] + b[1]), 4 * (b[0] - b[1]))
        if c1 == c2:  # z edge, vertical
            lo, hi = sorted((r1, r2))
            return [(r, c1) for r in range(lo + 1, hi)]
        return [((r1 + r2) // 2, (c1 + c2) // 2)]

    def edge_char(a: tuple[int, int], b: tuple[int, int]) -> str:
        if a[0] - a[1] == b[0] - b[1]:
            return "|"
        rising = (b[0] + b[1]) - (a[0] + a[1])
        leaning = (b[0] - b[1]) - (a[0] - a[1])
        return "\\" if rising * leaning > 0 else "/"

    covered = tiling.diagonal_edges() if tiling is not None else set()
    for (tail, axis), head in sorted(region.edge_head.items()):
        if tiling is not None and GridEdge(GridVertex(*tail.pos), axis) in covered:
            continue
        a, b = tail.pos, head.pos
        for cell in edge_cells(a, b):
            put(*cell, edge_char(a, b))
    for vertex in region.vertices:
        put(2 * (vertex.u + vertex.v), 4 * (vertex.u - vertex.v), "+")
    if tiling is not None:
        for cal in tiling.sorted_calissons():
            corners = cal.corner_cycle()
            row = sum(2 * (u + v) for u, v in corners) // 4
            col = sum(4 * (u - v) for u, v in corners) // 4
            put(row, col, FILL_LETTER[cal.color])
    for e in sorted(document.x_edges):
        for cell in edge_cells(e.origin.pos, e.head.pos):
            put(*cell, "#")

    by_row: dict[int, dict[int, str]] = {}
    for (r, c), ch in cells.items():
        by_row.setdefault(r, {})[c] = ch
    lo_c = min(c for _, c in cells)
    out_lines = []
    for r in range(min(by_row), max(by_row) + 1):
        row_cells = by_row.get(r)
        if not row_cells:
            out_lines.append("")
            continue
        line = "".join(row_cells.get(c, " ") for c in range(lo_c, max(row_cells) + 1))
        out_lines.append(line.rstrip())
    # flip so greater heights sit higher on screen
    return "\n".join(reversed(out_lines)) + "\n"
