"""Cube-level constraint machinery.

Cubes of the 3D lattice form an ascending DAG (arcs raise the coordinate
sum by one).  A constrained grid edge induces a periodic family of
*unbreakable* cube pairs that no valid surface cut may separate: pairs
{F_k, B_{k+1}} encode non-overlap of the edge, pairs {L_k, R_k} encode the
saliency rule.  Projecting these families onto the grid collapses them to
finitely many weighted arcs, which together with the ascending arcs and
the boundary-descent arcs form the projected weighted graph used by the
shortest-distance solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .grid import (
    Axis,
    GridEdge,
    GridVertex,
    Region,
    RegionError,
    Step,
    edge_flanks,
    lift,
)

Cube = tuple[int, int, int]

_UNIT = {Axis.X: (1, 0, 0), Axis.Y: (0, 1, 0), Axis.Z: (0, 0, 1)}


def cube_height(c: Cube) -> int:
    return c[0] + c[1] + c[2]


def cube_add(c: Cube, d: Cube) -> Cube:
    return (c[0] + d[0], c[1] + d[1], c[2] + d[2])


def cube_sub(c: Cube, d: Cube) -> Cube:
    return (c[0] - d[0], c[1] - d[1], c[2] - d[2])


def cube_leq(a: Cube, b: Cube) -> bool:
    """Componentwise order of the ascending-DAG transitive closure."""
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2]


def ascending_neighbours(c: Cube) -> tuple[Cube, Cube, Cube]:
    return (
        (c[0] + 1, c[1], c[2]),
        (c[0], c[1] + 1, c[2]),
        (c[0], c[1], c[2] + 1),
    )


# For each edge axis: (axis offset of B_k relative to F_k via the two
# complementary axes, offsets of L_k and R_k relative to F_k).  L and R are
# the lateral cubes whose shared faces flank the edge; F sits over the edge
# tail, B over the head.
_FAMILY_SHAPE: dict[Axis, tuple[Axis, Axis]] = {
    # axis: (axis whose negative step gives L_k, axis whose negative step gives R_k)
    Axis.Z: (Axis.Y, Axis.X),
    Axis.X: (Axis.Y, Axis.Z),
    Axis.Y: (Axis.X, Axis.Z),
}


class FamilyRole(NamedTuple):
    vertex: GridVertex
    role: str  # "F" | "B" | "L" | "R"


@dataclass(frozen=True)
class UnbreakableFamily:
    """The periodic cube-pair family attached to one constrained grid edge.

    All members repeat with period (1,1,1); ``f0`` is the cube over the
    edge tail at the canonical lift level.  Every cube of the four stacks
    involved plays exactly one role, so membership and partners are O(1).
    """

    source_edge: GridEdge
    f0: Cube
    b0: Cube
    l0: Cube
    r0: Cube

    @property
    def axis(self) -> Axis:
        return self.source_edge.axis

    def f_k(self, k: int) -> Cube:
        return cube_add(self.f0, (k, k, k))

    def b_k(self, k: int) -> Cube:
        return cube_add(self.b0, (k, k, k))

    def l_k(self, k: int) -> Cube:
        return cube_add(self.l0, (k, k, k))

    def r_k(self, k: int) -> Cube:
        return cube_add(self.r0, (k, k, k))

    def nonoverlap_pair(self, k: int) -> tuple[Cube, Cube]:
        """{F_k, B_{k+1}}: separating these overlaps the edge (rule i)."""
        return (self.f_k(k), self.b_k(k + 1))

    def saliency_pair(self, k: int) -> tuple[Cube, Cube]:
        """{L_k, R_k}: separating these gives equal colours (rule ii)."""
        return (self.l_k(k), self.r_k(k))

    def role_heights_mod3(self) -> dict[str, int]:
        return {
            "F": cube_height(self.f0) % 3,
            "B": cube_height(self.b0) % 3,
            "L": cube_height(self.l0) % 3,
            "R": cube_height(self.r0) % 3,
        }

    def projections(self) -> dict[str, GridVertex]:
        from .grid import canonicalize

        return {
            "F": canonicalize(*self.f0),
            "B": canonicalize(*self.b0),
            "L": canonicalize(*self.l0),
            "R": canonicalize(*self.r0),
        }


def unbreakable_family(edge: GridEdge) -> UnbreakableFamily:
    """Base cubes of the unbreakable family for ``edge`` (canonical lift)."""
    p = edge.origin
    f0 = lift(p, p.u + p.v)
    la, ra = _FAMILY_SHAPE[edge.axis]
    l0 = cube_sub(f0, _UNIT[la])
    r0 = cube_sub(f0, _UNIT[ra])
    b0 = cube_sub(cube_sub(f0, _UNIT[la]), _UNIT[ra])
    return UnbreakableFamily(edge, f0, b0, l0, r0)


class Arc(NamedTuple):
    src: GridVertex
    dst: GridVertex
    weight: int
    tag: str  # ascending | boundary_rev | x_rev | saliency


@dataclass(frozen=True)
class ProjectedGraph:
    """Weighted arcs over the region's vertex entities.

    Ascending arcs carry +1, boundary and constrained-edge reversals -1,
    saliency diagonals 0 (both ways).  Weights equal the height difference
    between destination and source cubes of the lifted arc.
    """

    vertices: tuple[GridVertex, ...]
    arcs: tuple[Arc, ...]

    def adjacency(self) -> dict[GridVertex, list[Arc]]:
        adj: dict[GridVertex, list[Arc]] = {v: [] for v in self.vertices}
        for arc in self.arcs:
            adj[arc.src].append(arc)
        return adj

    def dump(self) -> dict:
        """Structured-text form for overlays and golden tests."""
        return {
            "vertices": [[v.u, v.v, v.copy] for v in self.vertices],
            "arcs": [
                {
                    "from": [a.src.u, a.src.v, a.src.copy],
                    "to": [a.dst.u, a.dst.v, a.dst.copy],
                    "weight": a.weight,
                    "tag": a.tag,
                }
                for a in self.arcs
            ],
        }


def resolve_x_edges(region: Region, x_edges: Iterable[GridEdge]) -> list[tuple[GridVertex, Axis]]:
    """Map position-level constrained edges to interior edge entities,
    rejecting duplicates, boundary edges and edges outside the region."""
    seen: dict[tuple[GridVertex, Axis], GridEdge] = {}
    for edge in x_edges:
        key = region.resolve_edge(edge)
        if key not in seen:
            seen[key] = edge
    return sorted(seen)


def saliency_endpoints(
    region: Region, key: tuple[GridVertex, Axis]
) -> tuple[GridVertex, GridVertex]:
    """Entities of the two lateral corners of the calisson overlapping the
    given interior edge (the projections of L_k and R_k)."""
    tail, axis = key
    edge = GridEdge(GridVertex(*tail.pos), axis)
    flank_left, flank_right = edge_flanks(edge)
    la, ra = _FAMILY_SHAPE[axis]
    l_pos = tail.stepped(Step(la, -1)).pos
    r_pos = tail.stepped(Step(ra, -1)).pos
    out: dict[tuple[int, int], GridVertex] = {}
    for tri in region.edge_triangles[key]:
        for corner, ent in zip(tri.corners(), region.triangle_entities[tri]):
            out[corner] = ent
    try:
        return out[l_pos], out[r_pos]
    except KeyError as exc:  # pragma: no cover - interior edges always have both
        raise RegionError("edge_outside", f"lateral corner missing for {key}") from exc


def build_projected_graph(region: Region, x_edges: Iterable[GridEdge]) -> ProjectedGraph:
    """Ascending +1 arcs on every region edge, -1 reversals on boundary and
    constrained edges, two-way 0 arcs on saliency diagonals."""
    keys = resolve_x_edges(region, x_edges)
    arcs: list[Arc] = []
    for tail in sorted(region.out_arcs):
        for axis, head in region.out_arcs[tail]:
            arcs.append(Arc(tail, head, +1, "ascending"))
    for tail, axis in sorted(region.boundary_edges):
        head = region.edge_head[(tail, axis)]
        arcs.append(Arc(head, tail, -1, "boundary_rev"))
    for key in keys:
        tail, axis = key
        head = region.edge_head[key]
        arcs.append(Arc(head, tail, -1, "x_rev"))
        a, b = saliency_endpoints(region, key)
        arcs.append(Arc(a, b, 0, "saliency"))
        arcs.append(Arc(b, a, 0, "saliency"))
    return ProjectedGraph(tuple(sorted(region.vertices)), tuple(arcs))
