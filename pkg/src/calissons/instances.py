"""Seeded random puzzle instances for tests and the CLI generator.

Regions grow triangle by triangle from a seed; the boundary contour is then
traced (interior kept on the left) and handed to the real region
constructor, which arbitrates validity.  Candidate sets that enclose holes
or pinch apart fail reconstruction and are resampled.
"""

from __future__ import annotations

import random

from .grid import (
    DIR_INDEX,
    DIR_ORDER,
    GridEdge,
    GridVertex,
    Region,
    RegionError,
    Step,
    Triangle,
    edge_between,
    edge_flanks,
    right,
    sector_triangle,
)


def _triangle_edges(tri: Triangle) -> list[GridEdge]:
    corners = tri.corners()
    return [edge_between(corners[i], corners[(i + 1) % 3]) for i in range(3)]


def _neighbours(tri: Triangle) -> list[Triangle]:
    out = []
    for edge in _triangle_edges(tri):
        a, b = edge_flanks(edge)
        out.append(b if a == tri else a)
    return out


def trace_boundary(triangles: set[Triangle]) -> tuple[tuple[int, int], list[Step]]:
    """Walk the outer contour of a triangle set, interior on the left."""
    boundary: dict[tuple[tuple[int, int], Step], tuple[int, int]] = {}
    for tri in triangles:
        for edge in _triangle_edges(tri):
            flank_left, flank_right = edge_flanks(edge)
            if flank_left == tri and flank_right not in triangles:
                start = edge.origin.pos
                step = Step(edge.axis, +1)
            elif flank_right == tri and flank_left not in triangles:
                start = edge.head.pos
                step = Step(edge.axis, -1)
            else:
                continue
            boundary[(start, step)] = (
                start[0] + step.delta[0],
                start[1] + step.delta[1],
            )
    if not boundary:
        raise RegionError("empty_interior", "no boundary to trace")
    start_key = min(boundary, key=lambda key: (key[0], DIR_INDEX[key[1]]))
    pos, step = start_key
    steps = [step]
    used = {start_key}
    while len(steps) <= 4 * len(boundary):
        pos = boundary[(pos, step)]
        step = _next_step(boundary, triangles, pos, step)
        key = (pos, step)
        if key == start_key:
            if len(used) != len(boundary):
                raise RegionError(
                    "disconnected_interior", "boundary has several contours"
                )
            return start_key[0], steps
        if key in used:
            raise RegionError("self_crossing", f"boundary walk loops at {pos}")
        used.add(key)
        steps.append(step)
    raise RegionError("self_crossing", "boundary walk does not close")


def _next_step(boundary, triangles, pos, in_step) -> Step:
    # Hug the interior: rotate clockwise from the reversed incoming ray
    # while the adjacent sector still holds a region triangle.
    r = DIR_INDEX[in_step.reversed()]
    for _ in range(6):
        if sector_triangle(pos, (r - 1) % 6) not in triangles:
            break
        r = (r - 1) % 6
    step = DIR_ORDER[r]
    if (pos, step) not in boundary:
        raise RegionError("self_crossing", f"boundary walk stuck at {pos}")
    return step


def random_region(rng: random.Random, target_triangles: int, max_tries: int = 200) -> Region:
    """A random simply connected region with roughly the target size."""
    for _ in range(max_tries):
        tris = {right(0, 0)}
        frontier = [t for t in _neighbours(right(0, 0))]
        while len(tris) < target_triangles and frontier:
            idx = rng.randrange(len(frontier))
            cand = frontier.pop(idx)
            if cand in tris:
                continue
            tris.add(cand)
            frontier.extend(t for t in _neighbours(cand) if t not in tris)
        try:
            start, steps = trace_boundary(tris)
            region = Region(tris, start, steps)
        except (RegionError, AssertionError):
            continue
        if region.triangles == frozenset(tris):
            return region
    raise RuntimeError("could not sample a valid region")


def random_instance(
    rng: random.Random,
    max_triangles: int = 40,
    x_density: float = 0.25,
) -> tuple[Region, list[GridEdge]]:
    """Random region plus a random set of interior constrained edges."""
    size = rng.randrange(4, max_triangles + 1)
    region = random_region(rng, size)
    interior = region.interior_edges()
    x_edges = []
    for tail, axis in interior:
        if rng.random() < x_density:
            x_edges.append(GridEdge(GridVertex(*tail.pos), axis))
    return region, x_edges
