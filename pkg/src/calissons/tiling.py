"""Tilings, height fields, the puzzle rule checker, and conversions.

A tiling of a region is a set of calissons whose triangle footprints
partition the region's triangles.  Tilings support three interchangeable
views: the calisson set, a vertex height field (stack cut levels), and the
frontier arcs of the corresponding cube-DAG cut.

Heights follow the cube convention throughout: stepping along +x, +y or +z
across a calisson boundary raises the level by 1, and the edge under a
calisson drops it by 2.  Cube lifts are pinned by anchoring the region's
lexicographically smallest vertex entity at level u + v, which makes every
producer emit bit-identical calisson sets for equal tilings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Mapping

from .grid import (
    Axis,
    Calisson,
    GridEdge,
    GridVertex,
    Region,
    Triangle,
    edge_flanks,
    lift,
)
from .constraints import Cube, resolve_x_edges

ViolationKind = Literal[
    "gap", "overlap", "x_overlapped", "saliency_same_color", "off_region"
]


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    location: Triangle | GridEdge

    def to_json(self) -> dict:
        if isinstance(self.location, Triangle):
            loc = {
                "triangle": {
                    "anchor": [self.location.anchor.u, self.location.anchor.v],
                    "chirality": self.location.chirality.value,
                }
            }
        else:
            loc = {
                "edge": {
                    "v": [self.location.origin.u, self.location.origin.v],
                    "axis": self.location.axis.letter,
                }
            }
        return {"kind": self.kind, **loc}


@dataclass(frozen=True)
class Tiling:
    region: Region
    calissons: frozenset[Calisson]

    def sorted_calissons(self) -> list[Calisson]:
        return sorted(self.calissons, key=lambda c: (c.cube, int(c.normal)))

    def to_json(self) -> list[dict]:
        return [
            {"cube": list(c.cube), "normal": c.normal.letter}
            for c in self.sorted_calissons()
        ]

    def diagonal_edges(self) -> set[GridEdge]:
        return {c.diagonal for c in self.calissons}


@dataclass(frozen=True)
class HeightField:
    """Vertex-entity heights, defined up to an additive constant."""

    values: Mapping[GridVertex, int]

    def aligned_to(self, vertex: GridVertex, value: int = 0) -> "HeightField":
        shift = value - self.values[vertex]
        return HeightField({v: h + shift for v, h in self.values.items()})

    def __getitem__(self, vertex: GridVertex) -> int:
        return self.values[vertex]


def tiling_from_json(region: Region, data: list[dict]) -> Tiling:
    cals = []
    for item in data:
        cube = tuple(int(c) for c in item["cube"])
        normal = Axis("xyz".index(item["normal"]))
        cals.append(Calisson(cube, normal))
    return Tiling(region, frozenset(cals))


def check(region: Region, x_edges: Iterable[GridEdge], t: Tiling) -> list[Violation]:
    """All rule violations of ``t``, empty iff it is a valid solution.

    gap/overlap/off_region police the partition; x_overlapped polices the
    non-overlap rule for constrained edges; saliency_same_color fires when
    the two calissons flanking a constrained edge share a colour.
    """
    violations: list[Violation] = []
    coverage: dict[Triangle, list[Calisson]] = {tri: [] for tri in region.triangles}
    for cal in sorted(t.calissons, key=lambda c: (c.cube, int(c.normal))):
        for tri in cal.triangles():
            if tri in coverage:
                coverage[tri].append(cal)
            else:
                violations.append(Violation("off_region", tri))
    for tri in sorted(coverage):
        hits = coverage[tri]
        if not hits:
            violations.append(Violation("gap", tri))
        elif len(hits) > 1:
            violations.append(Violation("overlap", tri))

    diagonals = {c.diagonal: c for c in t.calissons}
    x_keys = resolve_x_edges(region, x_edges)
    for tail, axis in x_keys:
        pos_edge = GridEdge(GridVertex(*tail.pos), axis)
        if pos_edge in diagonals:
            violations.append(Violation("x_overlapped", pos_edge))
            continue
        flank_left, flank_right = edge_flanks(pos_edge)
        left_hits = coverage.get(flank_left, [])
        right_hits = coverage.get(flank_right, [])
        if len(left_hits) == 1 and len(right_hits) == 1:
            if left_hits[0].normal is right_hits[0].normal:
                violations.append(Violation("saliency_same_color", pos_edge))
        # partially covered flanks already reported as gap/overlap
    return violations


def heights_from_tiling(
    t: Tiling, source: GridVertex, source_height: int
) -> HeightField:
    """Propagate heights along tiling edges from ``source``.

    Every region edge either borders two calissons (level +1 along the
    +axis direction) or is overlapped by one (level -2).  Simply connected
    regions make the result path independent; an inconsistency therefore
    signals a malformed tiling and raises.
    """
    region = t.region
    covered = t.diagonal_edges()
    values: dict[GridVertex, int] = {source: source_height}
    stack = [source]
    while stack:
        v = stack.pop()
        h = values[v]
        for axis, head in region.out_arcs[v]:
            delta = -2 if GridEdge(GridVertex(*v.pos), axis) in covered else +1
            _assign(values, stack, head, h + delta)
        for axis, tail in region.in_arcs[v]:
            delta = -2 if GridEdge(GridVertex(*tail.pos), axis) in covered else +1
            _assign(values, stack, tail, h - delta)
    missing = set(region.vertices) - set(values)
    if missing:
        raise ValueError(f"tiling graph leaves {len(missing)} vertices unreached")
    return HeightField(values)


def _assign(values: dict, stack: list, vertex: GridVertex, h: int) -> None:
    old = values.get(vertex)
    if old is None:
        values[vertex] = h
        stack.append(vertex)
    elif old != h:
        raise ValueError(f"inconsistent heights at {vertex}: {old} vs {h}")


def canonical_height_field(t: Tiling) -> HeightField:
    anchor = t.region.anchor
    return heights_from_tiling(t, anchor, anchor.u + anchor.v)


def canonical_tiling(t: Tiling) -> Tiling:
    """Re-lift every calisson to the canonical anchor normalisation, so
    tilings from different producers compare bit-for-bit."""
    keys = [t.region.resolve_edge(c.diagonal) for c in t.calissons]
    return tiling_from_matching(t.region, keys)


def tiling_from_matching(region: Region, covered_edges: Iterable[tuple[GridVertex, Axis]]) -> Tiling:
    """Build the canonical tiling whose calissons overlap exactly the given
    interior edge entities (one per calisson)."""
    covered = set(covered_edges)
    anchor = region.anchor
    values: dict[GridVertex, int] = {anchor: anchor.u + anchor.v}
    stack = [anchor]
    while stack:
        v = stack.pop()
        h = values[v]
        for axis, head in region.out_arcs[v]:
            delta = -2 if (v, axis) in covered else +1
            _assign(values, stack, head, h + delta)
        for axis, tail in region.in_arcs[v]:
            delta = -2 if (tail, axis) in covered else +1
            _assign(values, stack, tail, h - delta)
    cals = []
    for tail, axis in covered:
        head = region.edge_head[(tail, axis)]
        cals.append(Calisson(lift(head, values[head]), axis))
    return Tiling(region, frozenset(cals))


def heights_to_cut_frontier(
    region: Region, field: HeightField
) -> list[tuple[Cube, Cube]]:
    """Ascending cube arcs crossing the cut described by a height field."""
    arcs = []
    values = _normalised(region, field)
    for (tail, axis), head in sorted(region.edge_head.items()):
        dh = values[head] - values[tail]
        if dh == -2:
            upper = lift(head, values[head])
            lower = tuple(
                upper[i] - (1 if i == int(axis) else 0) for i in range(3)
            )
            arcs.append((lower, upper))
    return arcs


def tiling_from_cut(region: Region, cut_frontier: Iterable[tuple[Cube, Cube]]) -> Tiling:
    """Project frontier faces of a cube-DAG cut onto calissons.

    Each frontier arc is an ascending cube arc (lower, upper); its shared
    face projects to the calisson stored at the upper cube with the arc's
    axis as normal.  Raises if the projected faces fail to partition the
    region, which signals a broken cut.
    """
    cals = []
    for lower, upper in cut_frontier:
        delta = tuple(u - l for u, l in zip(upper, lower))
        if sorted(delta) != [0, 0, 1]:
            raise ValueError(f"not an ascending cube arc: {lower} -> {upper}")
        cals.append(Calisson(tuple(upper), Axis(delta.index(1))))
    t = Tiling(region, frozenset(cals))
    bad = [v for v in check(region, [], t) if v.kind in ("gap", "overlap", "off_region")]
    if bad:
        raise ValueError(f"cut frontier does not project to a tiling: {bad[:3]}")
    return t


def tiling_from_distances(region: Region, field: HeightField) -> Tiling:
    """Tiling induced by a shortest-distance height field.

    Adjacent vertices at distance 1 are joined by tiling edges; a drop of 2
    along a +axis step marks the edge overlapped by a calisson.  Any other
    gap means the field is not a valid cut profile and raises.
    """
    values = _normalised(region, field)
    covered: list[tuple[GridVertex, Axis]] = []
    for (tail, axis), head in region.edge_head.items():
        dh = values[head] - values[tail]
        if dh == -2:
            covered.append((tail, axis))
        elif dh != 1:
            raise ValueError(
                f"height gap {dh} across edge {(tail, axis)}: not a cut profile"
            )
    per_tri: dict[Triangle, int] = {tri: 0 for tri in region.triangles}
    for key in covered:
        for tri in region.edge_triangles[key]:
            per_tri[tri] += 1
    uncovered = [tri for tri, n in per_tri.items() if n != 1]
    if uncovered:
        raise ValueError(f"triangles not covered exactly once: {sorted(uncovered)[:3]}")
    return tiling_from_matching(region, covered)


def _normalised(region: Region, field: HeightField) -> dict[GridVertex, int]:
    """Shift a relative field so values equal true stack levels (u+v mod 3),
    anchoring the region's reference vertex exactly."""
    anchor = region.anchor
    shift = (anchor.u + anchor.v) - field.values[anchor]
    values = {v: h + shift for v, h in field.values.items()}
    for v, h in values.items():
        if (h - v.u - v.v) % 3:
            raise ValueError(f"height {h} at {v} is off-lattice")
    return values
