"""Triangular-grid geometry in canonical homogeneous coordinates.

A point of the 3D cubic lattice projects along (1,1,1) onto the triangular
grid; the canonical representative of the projection of (x, y, z) is
(u, v) = (x - z, y - z).  Everything downstream (triangles, calissons,
regions, cube stacks) is phrased in these integer coordinates.

Regions are finite, simply connected sets of grid triangles.  Boundary
vertices and edges that the contour visits more than once are duplicated:
each visit becomes its own vertex entity, identified by a small ``copy``
index, and owns the wedge of triangles swept between its incoming and
outgoing contour edges.
"""

from __future__ import annotations

import enum
from typing import Iterable, NamedTuple, Sequence


class Axis(enum.IntEnum):
    X = 0
    Y = 1
    Z = 2

    @property
    def letter(self) -> str:
        return "xyz"[int(self)]


#: Canonical-plane displacement of a unit step along each axis.
AXIS_STEP = {Axis.X: (1, 0), Axis.Y: (0, 1), Axis.Z: (-1, -1)}

#: Calisson colour associated with each face normal.
AXIS_COLOR = {Axis.X: "blue", Axis.Y: "red", Axis.Z: "yellow"}


class Step(NamedTuple):
    """A directed unit step: ``sign`` is +1 for +axis, -1 for -axis."""

    axis: Axis
    sign: int

    @property
    def delta(self) -> tuple[int, int]:
        du, dv = AXIS_STEP[self.axis]
        return (self.sign * du, self.sign * dv)

    def reversed(self) -> "Step":
        return Step(self.axis, -self.sign)

    def __str__(self) -> str:
        return ("+" if self.sign > 0 else "-") + self.axis.letter


def parse_step(text: str) -> Step:
    if len(text) != 2 or text[0] not in "+-" or text[1] not in "xyzXYZ":
        raise ValueError(f"bad step {text!r}, expected e.g. '+x' or '-z'")
    return Step(Axis("xyz".index(text[1].lower())), +1 if text[0] == "+" else -1)


# The six directions around a vertex in counterclockwise order (canonical
# plane, standard orientation).  Plus-directions sit at even indices.
DIR_ORDER: tuple[Step, ...] = (
    Step(Axis.X, +1),  # ( 1,  0)
    Step(Axis.Z, -1),  # ( 1,  1)
    Step(Axis.Y, +1),  # ( 0,  1)
    Step(Axis.X, -1),  # (-1,  0)
    Step(Axis.Z, +1),  # (-1, -1)
    Step(Axis.Y, -1),  # ( 0, -1)
)
DIR_INDEX = {step: i for i, step in enumerate(DIR_ORDER)}


class GridVertex(NamedTuple):
    """Canonical projected vertex; ``copy`` distinguishes duplicated
    boundary incidences (0 for interior and single-visit vertices)."""

    u: int
    v: int
    copy: int = 0

    @property
    def pos(self) -> tuple[int, int]:
        return (self.u, self.v)

    def shifted(self, du: int, dv: int) -> "GridVertex":
        return GridVertex(self.u + du, self.v + dv, self.copy)

    def stepped(self, step: Step) -> "GridVertex":
        du, dv = step.delta
        return GridVertex(self.u + du, self.v + dv, self.copy)


def canonicalize(x: int, y: int, z: int) -> GridVertex:
    """Canonical representative of the projection of (x, y, z)."""
    return GridVertex(x - z, y - z, 0)


def lift(vertex: GridVertex | tuple[int, int], height: int) -> tuple[int, int, int]:
    """The 3D lattice point over ``vertex`` whose coordinate sum equals
    ``height``.  Requires height = u + v (mod 3)."""
    u, v = vertex[0], vertex[1]
    k, rem = divmod(height - u - v, 3)
    if rem:
        raise ValueError(f"height {height} unreachable over ({u},{v}): stack heights are {u + v} mod 3")
    return (u + k, v + k, k)


def height_delta(step: Step) -> int:
    """Height change of a path step: -axis steps climb, +axis steps descend."""
    return -step.sign


def path_heights(start_height: int, steps: Sequence[Step]) -> list[int]:
    """Heights along a path: prefix sums of the per-step deltas."""
    heights = [start_height]
    for step in steps:
        heights.append(heights[-1] + height_delta(step))
    return heights


class Chirality(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class Triangle(NamedTuple):
    """Grid triangle.  Right(a) = {a, a+dx, a+dx+dy}; Left(a) = {a, a+dy, a+dx+dy}."""

    anchor: GridVertex
    chirality: Chirality

    def corners(self) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
        u, v = self.anchor.u, self.anchor.v
        if self.chirality is Chirality.RIGHT:
            return ((u, v), (u + 1, v), (u + 1, v + 1))
        return ((u, v), (u, v + 1), (u + 1, v + 1))

    def corner_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.corners())


def right(u: int, v: int) -> Triangle:
    return Triangle(GridVertex(u, v), Chirality.RIGHT)


def left(u: int, v: int) -> Triangle:
    return Triangle(GridVertex(u, v), Chirality.LEFT)


# Triangle occupying the sector between consecutive direction rays i and i+1
# around a vertex p (sector indices follow DIR_ORDER).
def sector_triangle(pos: tuple[int, int], sector: int) -> Triangle:
    u, v = pos
    return (
        right(u, v),
        left(u, v),
        right(u - 1, v),
        left(u - 1, v - 1),
        right(u - 1, v - 1),
        left(u, v - 1),
    )[sector % 6]


# Inverse table: for each chirality, the sector index the triangle occupies
# at each of its three corners, in corners() order.
TRIANGLE_CORNER_SECTORS = {
    Chirality.RIGHT: (0, 2, 4),
    Chirality.LEFT: (1, 5, 3),
}


class GridEdge(NamedTuple):
    """Undirected grid edge, stored from the endpoint the +axis step leaves."""

    origin: GridVertex
    axis: Axis

    @property
    def head(self) -> GridVertex:
        return self.origin.stepped(Step(self.axis, +1))

    def endpoints(self) -> tuple[GridVertex, GridVertex]:
        return (self.origin, self.head)

    def translated(self, du: int, dv: int) -> "GridEdge":
        return GridEdge(self.origin.shifted(du, dv), self.axis)


def edge_between(a: GridVertex | tuple[int, int], b: GridVertex | tuple[int, int]) -> GridEdge:
    """Normalized edge joining two adjacent vertices."""
    au, av = a[0], a[1]
    bu, bv = b[0], b[1]
    delta = (bu - au, bv - av)
    for axis in Axis:
        if delta == AXIS_STEP[axis]:
            return GridEdge(GridVertex(au, av), axis)
        if (-delta[0], -delta[1]) == AXIS_STEP[axis]:
            return GridEdge(GridVertex(bu, bv), axis)
    raise ValueError(f"vertices {a} and {b} are not adjacent")


def edge_flanks(edge: GridEdge) -> tuple[Triangle, Triangle]:
    """The two triangles sharing ``edge``: (left flank, right flank) with
    respect to travel in the +axis direction."""
    u, v = edge.origin.u, edge.origin.v
    if edge.axis is Axis.X:
        return (right(u, v), left(u, v - 1))
    if edge.axis is Axis.Y:
        return (right(u - 1, v), left(u, v))
    return (right(u - 1, v - 1), left(u - 1, v - 1))


class Calisson(NamedTuple):
    """Projection of the lower face (along ``normal``) of the unit cube at
    ``cube``; the face is shared with the cube one step back along the
    normal axis."""

    cube: tuple[int, int, int]
    normal: Axis

    @property
    def color(self) -> str:
        return AXIS_COLOR[self.normal]

    @property
    def plus_corner(self) -> GridVertex:
        """The rhombus corner whose two calisson edges leave along +axis steps."""
        return canonicalize(*self.cube)

    @property
    def diagonal(self) -> GridEdge:
        """The grid edge the calisson overlaps (its short diagonal)."""
        origin = self.plus_corner.stepped(Step(self.normal, -1))
        return GridEdge(origin, self.normal)

    def triangles(self) -> tuple[Triangle, Triangle]:
        return edge_flanks(self.diagonal)

    def corner_cycle(self) -> tuple[tuple[int, int], ...]:
        """The four rhombus corners in cyclic order (for rendering)."""
        p = self.plus_corner.pos
        others = [a for a in Axis if a is not self.normal]
        da, db = AXIS_STEP[others[0]], AXIS_STEP[others[1]]
        return (
            p,
            (p[0] + da[0], p[1] + da[1]),
            (p[0] + da[0] + db[0], p[1] + da[1] + db[1]),
            (p[0] + db[0], p[1] + db[1]),
        )

    def contour_steps(self) -> list[Step]:
        others = [a for a in Axis if a is not self.normal]
        return [
            Step(others[0], +1),
            Step(others[1], +1),
            Step(others[0], -1),
            Step(others[1], -1),
        ]


def calisson_over(edge: GridEdge, height: int | None = None) -> Calisson:
    """The calisson whose diagonal is ``edge``; its cube is lifted so the
    plus corner sits at ``height`` (defaults to the canonical level u+v)."""
    plus = edge.head
    if height is None:
        height = plus.u + plus.v
    return Calisson(lift(plus, height), edge.axis)


class RegionError(ValueError):
    """Invalid region construction input."""

    def __init__(self, code: str, message: str, location: object = None):
        super().__init__(message)
        self.code = code
        self.location = location


class Region:
    """A finite, simply connected set of grid triangles together with its
    oriented boundary contour and the duplicated-vertex bookkeeping.

    The contour is stored counterclockwise (interior on the left).  Each
    contour visit of a vertex position is one vertex entity; `duplication`
    maps a position to all entities living there.
    """

    def __init__(
        self,
        triangles: Iterable[Triangle],
        start: tuple[int, int],
        steps: Sequence[Step],
    ):
        self.triangles: frozenset[Triangle] = frozenset(triangles)
        if not self.triangles:
            raise RegionError("empty_interior", "region encloses no triangles")
        self._assemble(start, list(steps))

    # -- construction -------------------------------------------------

    def _assemble(self, start: tuple[int, int], steps: list[Step]) -> None:
        positions = [start]
        for step in steps:
            du, dv = step.delta
            u, v = positions[-1]
            positions.append((u + du, v + dv))
        if positions[-1] != start:
            raise RegionError("non_closed", f"contour ends at {positions[-1]}, expected {start}")
        positions.pop()
        n = len(steps)

        # Visits: node i sits between steps[i-1] and steps[i].
        visits_at: dict[tuple[int, int], list[int]] = {}
        for i, pos in enumerate(positions):
            visits_at.setdefault(pos, []).append(i)
        for pos, visits in visits_at.items():
            if len(visits) > 3:
                raise RegionError("self_crossing", f"vertex {pos} visited {len(visits)} times", pos)

        copy_of_visit: dict[int, int] = {}
        duplication: dict[tuple[int, int], list[GridVertex]] = {}
        for pos, visits in visits_at.items():
            if len(visits) == 1:
                copy_of_visit[visits[0]] = 0
                duplication[pos] = [GridVertex(pos[0], pos[1], 0)]
            else:
                duplication[pos] = []
                for rank, i in enumerate(visits, start=1):
                    copy_of_visit[i] = rank
                    duplication[pos].append(GridVertex(pos[0], pos[1], rank))
        node_entity = {
            i: GridVertex(pos[0], pos[1], copy_of_visit[i]) for i, pos in enumerate(positions)
        }

        # Wedges: sectors swept counterclockwise from the outgoing ray to
        # the reversed incoming ray.  A zero gap is a spur tip (full turn)
        # when the adjacent sector holds a region triangle.
        sector_owner: dict[tuple[tuple[int, int], int], GridVertex] = {}
        wedge_of_entity: dict[GridVertex, tuple[int, ...]] = {}
        for i, pos in enumerate(positions):
            out_dir = steps[i]
            in_dir = steps[(i - 1) % n]
            a = DIR_INDEX[out_dir]
            b = DIR_INDEX[in_dir.reversed()]
            k = (b - a) % 6
            if k == 0 and sector_triangle(pos, a) in self.triangles:
                k = 6
            sectors = tuple((a + j) % 6 for j in range(k))
            entity = node_entity[i]
            for s in sectors:
                tri = sector_triangle(pos, s)
                if tri not in self.triangles:
                    raise RegionError(
                        "self_crossing",
                        f"contour passages cross at {pos}: wedge triangle {tri} is outside",
                        pos,
                    )
                key = (pos, s)
                if key in sector_owner:
                    raise RegionError("self_crossing", f"sector {s} at {pos} claimed twice", pos)
                sector_owner[key] = entity
            wedge_of_entity[entity] = sectors

        self._sector_owner = sector_owner
        self.duplication = {pos: tuple(ents) for pos, ents in duplication.items()}
        self.boundary: tuple[tuple[GridVertex, Step], ...] = tuple(
            (node_entity[i], steps[i]) for i in range(n)
        )
        self._node_entity = node_entity

        # Left flank of every traversal must be inside the region.
        for entity, step in self.boundary:
            e = (
                GridEdge(GridVertex(*entity.pos), step.axis)
                if step.sign > 0
                else GridEdge(GridVertex(*entity.stepped(step).pos), step.axis)
            )
            flank_left, flank_right = edge_flanks(e)
            flank = flank_left if step.sign > 0 else flank_right
            if flank not in self.triangles:
                raise RegionError(
                    "orientation",
                    "contour is not counterclockwise or does not bound the region",
                    entity.pos,
                )

        # Resolve triangle corners to entities.
        tri_entities: dict[Triangle, tuple[GridVertex, GridVertex, GridVertex]] = {}
        for tri in self.triangles:
            ents = []
            for corner, sector in zip(tri.corners(), TRIANGLE_CORNER_SECTORS[tri.chirality]):
                ents.append(self._entity_at(corner, sector))
            tri_entities[tri] = tuple(ents)
        self.triangle_entities = tri_entities

        vertices: set[GridVertex] = set()
        for ents in tri_entities.values():
            vertices.update(ents)
        for entity, _ in self.boundary:
            vertices.add(entity)
        self.vertices: frozenset[GridVertex] = frozenset(vertices)

        # Edge entities keyed by (tail entity, axis); record incident
        # triangles, head entities and adjacency.
        edge_tris: dict[tuple[GridVertex, Axis], list[Triangle]] = {}
        edge_head: dict[tuple[GridVertex, Axis], GridVertex] = {}
        for tri, ents in tri_entities.items():
            corners = tri.corners()
            for ia, ib in ((0, 1), (1, 2), (2, 0)):
                pa, pb = corners[ia], corners[ib]
                ea, eb = ents[ia], ents[ib]
                e = edge_between(pa, pb)
                tail, head = (ea, eb) if e.origin.pos == pa else (eb, ea)
                key = (tail, e.axis)
                if key in edge_head and edge_head[key] != head:
                    raise RegionError("self_crossing", f"edge {key} resolves inconsistently")
                edge_head[key] = head
                edge_tris.setdefault(key, []).append(tri)
        for key, tris in edge_tris.items():
            if len(tris) > 2:
                raise RegionError("self_crossing", f"edge {key} bounds {len(tris)} triangles")
            tris.sort()
        self.edge_triangles = {k: tuple(v) for k, v in edge_tris.items()}
        self.edge_head = edge_head

        boundary_edges: set[tuple[GridVertex, Axis]] = set()
        for i in range(n):
            step = steps[i]
            tail = node_entity[i] if step.sign > 0 else node_entity[(i + 1) % n]
            key = (tail, step.axis)
            if key not in self.edge_triangles:
                raise RegionError("contour_mismatch", f"contour edge {key} bounds no triangle")
            boundary_edges.add(key)
        self.boundary_edges = frozenset(boundary_edges)

        out_arcs: dict[GridVertex, list[tuple[Axis, GridVertex]]] = {v: [] for v in self.vertices}
        in_arcs: dict[GridVertex, list[tuple[Axis, GridVertex]]] = {v: [] for v in self.vertices}
        edges_by_pos: dict[tuple[tuple[int, int], Axis], list] = {}
        for (tail, axis), head in sorted(edge_head.items()):
            out_arcs[tail].append((axis, head))
            in_arcs[head].append((axis, tail))
            edges_by_pos.setdefault((tail.pos, axis), []).append((tail, axis))
        self.out_arcs = {v: tuple(a) for v, a in out_arcs.items()}
        self.in_arcs = {v: tuple(a) for v, a in in_arcs.items()}
        self._edges_by_pos = edges_by_pos

        self._check_connected()

    def _entity_at(self, pos: tuple[int, int], sector: int) -> GridVertex:
        owner = self._sector_owner.get((pos, sector))
        if owner is not None:
            return owner
        if pos in self.duplication:
            raise RegionError(
                "contour_mismatch", f"sector {sector} at boundary vertex {pos} unowned", pos
            )
        return GridVertex(pos[0], pos[1], 0)

    def entity_at(self, pos: tuple[int, int], sector: int) -> GridVertex:
        """Vertex entity owning the given sector of the star around ``pos``."""
        return self._entity_at(pos, sector)

    def _check_connected(self) -> None:
        tris = list(self.triangles)
        seen = {tris[0]}
        stack = [tris[0]]
        by_edge: dict[tuple[GridVertex, Axis], tuple[Triangle, ...]] = self.edge_triangles
        neighbour: dict[Triangle, list[Triangle]] = {t: [] for t in tris}
        for pair in by_edge.values():
            if len(pair) == 2:
                neighbour[pair[0]].append(pair[1])
                neighbour[pair[1]].append(pair[0])
        while stack:
            t = stack.pop()
            for other in neighbour[t]:
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        if len(seen) != len(tris):
            raise RegionError(
                "disconnected_interior",
                f"triangle set splits into components ({len(seen)} of {len(tris)} reachable)",
            )

    # -- queries -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Region)
            and self.triangles == other.triangles
            and self.boundary == other.boundary
        )

    def __hash__(self) -> int:
        return hash((self.triangles, self.boundary))

    @property
    def anchor(self) -> GridVertex:
        """Deterministic reference vertex: the lexicographically smallest entity."""
        return min(self.vertices)

    def interior_edges(self) -> list[tuple[GridVertex, Axis]]:
        return sorted(k for k, tris in self.edge_triangles.items() if len(tris) == 2)

    def resolve_edge(self, edge: GridEdge) -> tuple[GridVertex, Axis]:
        """Map a position-level edge to its unique interior edge entity.

        Rejects edges outside the region and edges on the (possibly
        duplicated) boundary, where the saliency rule is undefined.
        """
        candidates = self._edges_by_pos.get((edge.origin.pos, edge.axis), [])
        if not candidates:
            raise RegionError("edge_outside", f"edge {edge} is not in the region", edge)
        interior = [k for k in candidates if len(self.edge_triangles[k]) == 2]
        if not interior:
            raise RegionError("edge_on_boundary", f"edge {edge} lies on the region boundary", edge)
        return interior[0]

    def left_count(self) -> int:
        return sum(1 for t in self.triangles if t.chirality is Chirality.LEFT)

    def right_count(self) -> int:
        return sum(1 for t in self.triangles if t.chirality is Chirality.RIGHT)


def hexagon_region(n: int) -> Region:
    """The regular hexagon of side ``n``: 6n^2 triangles, boundary length 6n."""
    if n < 1:
        raise RegionError("bad_size", f"hexagon side must be >= 1, got {n}")
    tris: list[Triangle] = []
    inside = lambda u, v: abs(u) <= n and abs(v) <= n and abs(u - v) <= n
    for u in range(-n, n + 1):
        for v in range(-n, n + 1):
            for tri in (right(u, v), left(u, v)):
                if all(inside(cu, cv) for cu, cv in tri.corners()):
                    tris.append(tri)
    steps: list[Step] = []
    for step in (
        Step(Axis.Y, +1),
        Step(Axis.X, -1),
        Step(Axis.Z, +1),
        Step(Axis.Y, -1),
        Step(Axis.X, +1),
        Step(Axis.Z, -1),
    ):
        steps.extend([step] * n)
    return Region(tris, (n, 0), steps)


def region_from_boundary(start: tuple[int, int], steps: Sequence[Step]) -> Region:
    """Region enclosed by a counterclockwise boundary contour.

    Vertices and edges the contour visits several times are duplicated.
    Rejects open contours, clockwise or self-crossing contours, and empty
    interiors.
    """
    steps = list(steps)
    if not steps:
        raise RegionError("non_closed", "empty contour")
    positions = [start]
    for step in steps:
        du, dv = step.delta
        u, v = positions[-1]
        positions.append((u + du, v + dv))
    if positions[-1] != start:
        raise RegionError("non_closed", f"contour ends at {positions[-1]}, expected {start}")

    area2 = 0
    for (au, av), (bu, bv) in zip(positions, positions[1:]):
        area2 += au * bv - bu * av
    if area2 < 0:
        raise RegionError("orientation", "contour must run counterclockwise")
    if area2 == 0:
        raise RegionError("empty_interior", "contour encloses no area")

    tris = _enclosed_triangles(positions)
    if not tris:
        raise RegionError("empty_interior", "contour encloses no triangles")
    return Region(tris, start, steps)


def _enclosed_triangles(positions: list[tuple[int, int]]) -> list[Triangle]:
    """Triangles of winding number one with respect to the closed contour.

    Crossing counts use the ray in the +u direction from the triangle
    centroid; centroids have third-integer coordinates so no crossing is
    ever degenerate.
    """
    us = [p[0] for p in positions]
    vs = [p[1] for p in positions]
    segs = list(zip(positions, positions[1:]))
    tris: list[Triangle] = []
    for u in range(min(us) - 1, max(us) + 1):
        for v in range(min(vs) - 1, max(vs) + 1):
            for tri in (right(u, v), left(u, v)):
                su = sum(c[0] for c in tri.corners())  # 3 * centroid
                sv = sum(c[1] for c in tri.corners())
                winding = 0
                for (au, av), (bu, bv) in segs:
                    dv = bv - av
                    if dv == 0:
                        continue
                    lo, hi = (3 * av, 3 * bv) if dv > 0 else (3 * bv, 3 * av)
                    if not (lo < sv < hi):
                        continue
                    if au == bu:  # axis-Y segment
                        cross3 = 3 * au
                    else:  # diagonal segment, du == dv
                        cross3 = 3 * au + (sv - 3 * av) * (1 if (bu - au) == dv else -1)
                    if cross3 > su:
                        winding += 1 if dv > 0 else -1
                if winding == 1:
                    tris.append(tri)
                elif winding not in (0,):
                    raise RegionError(
                        "self_crossing", f"triangle {tri} has winding number {winding}"
                    )
    return tris
