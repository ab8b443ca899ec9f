"""Finite-region solvers.

Two routes to a solution:

* the advancing-surface solver: Thurston's algorithm brackets the set of
  valid surface cuts between a minimum and a maximum tiling, the cubes in
  between form a slab, and a connected-component sweep over the slab's
  ascending DAG plus the unbreakable pairs yields the lowest (or highest)
  cut that satisfies the constraints, or a witness path proving there is
  none;

* the generalized-Thurston solver: single-source shortest distances on the
  projected weighted graph (Bellman-Ford, since constrained edges introduce
  negative weights) either expose an absorbing cycle or produce a height
  field that converts straight into a tiling.

Thurston's algorithm itself is the classic decimation: walk the boundary
to pin heights (rejecting contours that do not close), then repeatedly
tile the extreme vertex of the active contour, advancing it until the
region is exhausted or an overlap/height conflict proves untilability.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Literal, Optional

from .grid import (
    Calisson,
    DIR_INDEX,
    DIR_ORDER,
    GridEdge,
    GridVertex,
    Region,
    lift,
    sector_triangle,
)
from .constraints import Cube, resolve_x_edges, saliency_endpoints
from .shortest_paths import NegativeCycle, shortest_distances
from .tiling import (
    HeightField,
    Tiling,
    canonical_tiling,
    heights_to_cut_frontier,
    tiling_from_cut,
    tiling_from_distances,
)


@dataclass(frozen=True)
class Untilable:
    reason: Literal["boundary_closure", "decimation"]
    detail: object

    def to_json(self) -> dict:
        return {"kind": "untilable_region", "reason": self.reason, "detail": str(self.detail)}


@dataclass(frozen=True)
class Extremes:
    min_tiling: Tiling
    max_tiling: Tiling
    min_heights: HeightField
    max_heights: HeightField


@dataclass(frozen=True)
class CutWitness:
    """Forced-cube chain from one sentinel side to the other, each step a
    cube-DAG arc or an unbreakable pair."""

    cubes: list[tuple[GridVertex, int]]  # (vertex entity, cube height), front first
    moves: list[str]  # "dag" | "unbreakable", len == len(cubes) - 1

    def to_json(self) -> dict:
        return {
            "kind": "cut_path",
            "cubes": [list(lift(v, h)) for v, h in self.cubes],
            "moves": list(self.moves),
        }


@dataclass(frozen=True)
class CycleWitness:
    vertices: list[GridVertex]
    total_weight: int

    def to_json(self) -> dict:
        return {
            "kind": "absorbing_cycle",
            "vertices": [[v.u, v.v, v.copy] for v in self.vertices],
            "total_weight": self.total_weight,
        }


@dataclass(frozen=True)
class Solution:
    tiling: Tiling
    extremal: Literal["lowest", "highest"]


@dataclass(frozen=True)
class Unsolvable:
    witness: Untilable | CutWitness | CycleWitness


SolveOutcome = Solution | Unsolvable


# --------------------------------------------------------------------------
# Thurston's algorithm (decimation form)
# --------------------------------------------------------------------------


class _Node:
    __slots__ = ("pos", "entity", "h", "prev", "next", "alive", "seq")

    def __init__(self, pos, entity, h, seq):
        self.pos = pos
        self.entity = entity
        self.h = h
        self.seq = seq
        self.prev: "_Node" = self
        self.next: "_Node" = self
        self.alive = True


def _far_entity(region: Region, pos, out_idx: int) -> GridVertex:
    """Entity for a freshly created contour node.

    The wedge ahead of the node usually owns the sector just left of its
    outgoing edge; when the node sits flush against the region boundary
    that sector is outside, and the sectors of the calisson just placed
    (clockwise of the outgoing ray) resolve the copy instead.
    """
    from .grid import RegionError

    for sector in (out_idx, (out_idx - 1) % 6, (out_idx - 2) % 6):
        try:
            return region.entity_at(pos, sector)
        except RegionError:
            continue
    raise AssertionError(f"no region material around contour node at {pos}")


def thurston_extremes(region: Region, _tie: int = 0) -> Extremes | Untilable:
    """Minimum and maximum tilings of a bare region (no edge constraints).

    The maximum pass decimates minimum-height contour vertices with
    calissons opening along +axis steps; the symmetric pass yields the
    minimum.  Returns the pair, with heights pinned at the contour start,
    or the reason the region cannot be tiled.
    """
    hi = _thurston_pass(region, build_max=True, tie=_tie)
    if isinstance(hi, Untilable):
        return hi
    lo = _thurston_pass(region, build_max=False, tie=_tie)
    if isinstance(lo, Untilable):  # pragma: no cover - passes agree on tilability
        return lo
    max_tiling, max_heights = hi
    min_tiling, min_heights = lo
    return Extremes(min_tiling, max_tiling, min_heights, max_heights)


def _thurston_pass(
    region: Region, build_max: bool, tie: int = 0
) -> tuple[Tiling, HeightField] | Untilable:
    steps = [step for _, step in region.boundary]
    entities = [ent for ent, _ in region.boundary]
    n = len(steps)

    # Boundary heights: cube convention, +axis climbs by one.
    h0 = entities[0].u + entities[0].v
    h = h0
    node_h = []
    for step in steps:
        node_h.append(h)
        h += step.sign
    if h != h0:
        return Untilable("boundary_closure", h - h0)

    heights: dict[GridVertex, int] = {}

    def record(entity: GridVertex, value: int) -> bool:
        old = heights.get(entity)
        if old is None:
            heights[entity] = value
            return True
        return old == value

    seq = itertools.count()
    nodes = [_Node(entities[i].pos, entities[i], node_h[i], next(seq)) for i in range(n)]
    for i, node in enumerate(nodes):
        node.prev = nodes[(i - 1) % n]
        node.next = nodes[(i + 1) % n]
        if not record(node.entity, node.h):
            return Untilable("decimation", node.pos)

    sign = 1 if build_max else -1

    def key(node: _Node):
        if tie == 0:
            return (sign * node.h, node.pos[0], node.pos[1], node.seq)
        return (sign * node.h, -node.pos[0], -node.pos[1], -node.seq)

    heap: list = [(key(nd), nd) for nd in nodes]
    heapq.heapify(heap)

    remaining = set(region.triangles)
    placed: list[Calisson] = []

    def direction(frm: _Node, to: _Node) -> Step:
        du, dv = to.pos[0] - frm.pos[0], to.pos[1] - frm.pos[1]
        for step in DIR_ORDER:
            if step.delta == (du, dv):
                return step
        raise AssertionError(f"contour nodes not adjacent: {frm.pos} -> {to.pos}")

    defer_budget = 12 * len(region.triangles) + 60
    while remaining:
        if not heap:  # pragma: no cover - the contour always borders work left
            return Untilable("decimation", "contour exhausted")
        popped_key, s = heapq.heappop(heap)
        if not s.alive:
            continue
        out_dir = direction(s, s.next)
        in_dir = direction(s.prev, s)
        a = DIR_INDEX[out_dir]
        b = DIR_INDEX[in_dir.reversed()]
        k_rays = (b - a) % 6
        k_cap = k_rays
        if k_rays == 0:
            # Doubled edge: either a spur tip whose interior wraps all the
            # way around, or a flattened spike to fold back together.
            assert s.prev.pos == s.next.pos
            if sector_triangle(s.pos, a) in remaining:
                k_cap = 6
            else:
                prev, nxt = s.prev, s.next
                s.alive = False
                if prev is nxt:
                    prev.alive = False
                    continue
                assert prev.pos == nxt.pos and prev.h == nxt.h
                nxt.alive = False
                prev.alive = False
                merged = _Node(prev.pos, prev.entity, prev.h, next(seq))
                merged.prev = prev.prev
                merged.next = nxt.next
                merged.prev.next = merged
                merged.next.prev = merged
                if merged.prev is merged:
                    merged.alive = False
                    continue
                heapq.heappush(heap, (key(merged), merged))
                continue

        # Tile only the contiguous run of untiled sectors ahead of the
        # outgoing edge; material past a consumed sector belongs to another
        # contour passage.
        k = 0
        while k < k_cap and sector_triangle(s.pos, (a + k) % 6) in remaining:
            k += 1
        if k == 0:
            # Fold corner with nothing left on this side; its walls collapse
            # once the partner passages are processed, so retry later.
            defer_budget -= 1
            if defer_budget < 0:  # pragma: no cover - safety net
                raise RuntimeError(f"decimation stalled at {s.pos}")
            bumped = (popped_key[0] + 1, popped_key[1], popped_key[2], next(seq))
            heapq.heappush(heap, (bumped, s))
            continue
        if k % 2:
            return Untilable("decimation", s.pos)

        rays = [DIR_ORDER[(a + j) % 6] for j in range(k + 1)]
        for j in range(0, k, 2):
            remaining.discard(sector_triangle(s.pos, (a + j) % 6))
            remaining.discard(sector_triangle(s.pos, (a + j + 1) % 6))
            middle = rays[j + 1]
            if middle.sign < 0:
                plus_pos, plus_h = s.pos, s.h
            else:
                d0, d2 = rays[j].delta, rays[j + 2].delta
                plus_pos = (s.pos[0] + d0[0] + d2[0], s.pos[1] + d0[1] + d2[1])
                plus_h = s.h - 2
            placed.append(Calisson(lift(plus_pos, plus_h), middle.axis))

        # Splice the far side of the new rhombi into the contour.  When the
        # live run stops short of the incoming ray, s survives as the fold
        # corner between the fresh chain and its old incoming edge.
        chain: list[_Node] = []
        full = k == k_cap or k == 6
        if not full:
            wall = rays[k]
            wall_pos = (s.pos[0] + wall.delta[0], s.pos[1] + wall.delta[1])
            chain.append(_Node(wall_pos, None, s.h + wall.sign, next(seq)))
        for j in range(k - 2, -1, -2):
            mid_pos = (
                s.pos[0] + rays[j].delta[0] + rays[j + 2].delta[0],
                s.pos[1] + rays[j].delta[1] + rays[j + 2].delta[1],
            )
            chain.append(_Node(mid_pos, None, s.h + 2 * (1 if build_max else -1), next(seq)))
            if j > 0:
                spoke_pos = (s.pos[0] + rays[j].delta[0], s.pos[1] + rays[j].delta[1])
                chain.append(_Node(spoke_pos, None, s.h + (1 if build_max else -1), next(seq)))
        if full:
            s.alive = False
            sequence = [s.prev] + chain + [s.next]
        else:
            sequence = [s] + chain + [s.next]
            heapq.heappush(heap, (key(s), s))
        for left_, right_ in zip(sequence, sequence[1:]):
            left_.next = right_
            right_.prev = left_
        for node in chain:
            out_step = direction(node, node.next)
            node.entity = _far_entity(region, node.pos, DIR_INDEX[out_step])
            if not record(node.entity, node.h):
                return Untilable("decimation", node.pos)
            heapq.heappush(heap, (key(node), node))

    tiling = canonical_tiling(Tiling(region, frozenset(placed)))
    return tiling, HeightField(heights)


# --------------------------------------------------------------------------
# Cube slab and the advancing surface
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CubeSlab:
    """Cubes between the minimum and maximum cuts, with one sentinel per
    stack on each side: Back at theta_min - 3 (topmost cube below every
    valid cut), Front at theta_max (lowest cube above every valid cut)."""

    region: Region
    theta_min: dict[GridVertex, int]
    theta_max: dict[GridVertex, int]

    def interior_count(self) -> int:
        return sum(
            (self.theta_max[v] - self.theta_min[v]) // 3 for v in self.theta_min
        )

    def interior_cubes(self):
        for v in sorted(self.theta_min):
            for h in range(self.theta_min[v], self.theta_max[v], 3):
                yield (v, h)

    def in_back(self, vertex: GridVertex, h: int) -> bool:
        return h < self.theta_min[vertex]

    def in_front(self, vertex: GridVertex, h: int) -> bool:
        return h >= self.theta_max[vertex]


def build_slab(region: Region) -> CubeSlab | Untilable:
    extremes = thurston_extremes(region)
    if isinstance(extremes, Untilable):
        return extremes
    return slab_from_extremes(region, extremes)


def slab_from_extremes(region: Region, extremes: Extremes) -> CubeSlab:
    tmin = dict(extremes.min_heights.values)
    tmax = dict(extremes.max_heights.values)
    assert all(tmin[v] <= tmax[v] for v in tmin)
    return CubeSlab(region, tmin, tmax)


@dataclass(frozen=True)
class _FamilyRecord:
    tail: GridVertex
    head: GridVertex
    lateral_l: GridVertex
    lateral_r: GridVertex
    base: int  # cube heights over `tail` are base mod 3


def _family_records(region: Region, x_keys) -> list[_FamilyRecord]:
    records = []
    for key in x_keys:
        tail, axis = key
        head = region.edge_head[key]
        l_ent, r_ent = saliency_endpoints(region, key)
        records.append(_FamilyRecord(tail, head, l_ent, r_ent, tail.u + tail.v))
    return records


def advancing_surface(
    slab: CubeSlab,
    x_edges: Iterable[GridEdge],
    direction: Literal["from_back", "from_front"] = "from_back",
) -> SolveOutcome:
    """Connected-component sweep over the slab DAG plus unbreakable pairs.

    From the back, the closure of everything forced below a valid cut is
    explored through reversed DAG arcs and unbreakable partners; touching
    the front sentinels proves unsolvability (with the path as witness),
    otherwise the closure tops out at the lowest valid cut.  From the
    front the sweep is mirrored and yields the highest cut.
    """
    region = slab.region
    from_back = direction == "from_back"
    x_keys = resolve_x_edges(region, x_edges)
    records = _family_records(region, x_keys)
    partner_index: dict[GridVertex, list[tuple[str, _FamilyRecord]]] = {}
    for rec in records:
        partner_index.setdefault(rec.tail, []).append(("F", rec))
        partner_index.setdefault(rec.head, []).append(("B", rec))
        partner_index.setdefault(rec.lateral_l, []).append(("L", rec))
        partner_index.setdefault(rec.lateral_r, []).append(("R", rec))

    parent: dict[tuple[GridVertex, int], tuple[Optional[tuple[GridVertex, int]], str]] = {}
    queue: list[tuple[GridVertex, int]] = []

    def violating(vertex: GridVertex, h: int) -> bool:
        return slab.in_front(vertex, h) if from_back else slab.in_back(vertex, h)

    def settled(vertex: GridVertex, h: int) -> bool:
        # already on the seeding side of every valid cut: nothing to force
        return slab.in_back(vertex, h) if from_back else slab.in_front(vertex, h)

    conflict: Optional[tuple[GridVertex, int]] = None

    def visit(state, par, move) -> bool:
        nonlocal conflict
        vertex, h = state
        if settled(vertex, h):
            return True
        if state in parent:
            return True
        parent[state] = (par, move)
        if violating(vertex, h):
            conflict = state
            return False
        queue.append(state)
        return True

    # Seeds: partners of cubes already settled on the seeding side.
    for rec in records:
        ents = (rec.tail, rec.head, rec.lateral_l, rec.lateral_r)
        lo = min(slab.theta_min[e] for e in ents) - 6
        hi = max(slab.theta_max[e] for e in ents) + 6
        k_lo = (lo - rec.base) // 3 - 1
        k_hi = (hi - rec.base) // 3 + 1
        for k in range(k_lo, k_hi + 1):
            hf = rec.base + 3 * k
            pairs = (
                ((rec.tail, hf), (rec.head, hf + 1)),
                ((rec.lateral_l, hf - 1), (rec.lateral_r, hf - 1)),
            )
            for c1, c2 in pairs:
                s1, s2 = settled(*c1), settled(*c2)
                if s1 and not s2:
                    if not visit(c2, c1, "unbreakable"):
                        return Unsolvable(_make_witness(parent, conflict, from_back))
                elif s2 and not s1:
                    if not visit(c1, c2, "unbreakable"):
                        return Unsolvable(_make_witness(parent, conflict, from_back))

    # Closure: reversed DAG arcs (from the back) and unbreakable partners.
    head_idx = 0
    while head_idx < len(queue):
        state = queue[head_idx]
        head_idx += 1
        vertex, h = state
        if from_back:
            dag_moves = [(tail, h - 1) for _, tail in region.in_arcs[vertex]]
        else:
            dag_moves = [(head, h + 1) for _, head in region.out_arcs[vertex]]
        for nxt in dag_moves:
            if not visit(nxt, state, "dag"):
                return Unsolvable(_make_witness(parent, conflict, from_back))
        for role, rec in partner_index.get(vertex, ()):
            if role == "F":
                nxt = (rec.head, h + 1)
            elif role == "B":
                nxt = (rec.tail, h - 1)
            elif role == "L":
                nxt = (rec.lateral_r, h)
            else:
                nxt = (rec.lateral_l, h)
            if not visit(nxt, state, "unbreakable"):
                return Unsolvable(_make_witness(parent, conflict, from_back))

    # The closure caps the cut from one side.
    forced: dict[GridVertex, int] = {}
    for vertex, h in parent:
        if from_back:
            forced[vertex] = max(forced.get(vertex, h), h)
        else:
            forced[vertex] = min(forced.get(vertex, h), h)
    theta: dict[GridVertex, int] = {}
    for vertex in slab.theta_min:
        if from_back:
            theta[vertex] = max(
                slab.theta_min[vertex],
                forced[vertex] + 3 if vertex in forced else slab.theta_min[vertex],
            )
        else:
            theta[vertex] = min(
                slab.theta_max[vertex],
                forced[vertex] if vertex in forced else slab.theta_max[vertex],
            )
    field = HeightField(theta)
    frontier = heights_to_cut_frontier(region, field)
    tiling = canonical_tiling(tiling_from_cut(region, frontier))
    return Solution(tiling, "lowest" if from_back else "highest")


def _make_witness(parent, conflict, from_back: bool) -> CutWitness:
    chain = [conflict]
    moves: list[str] = []
    state = conflict
    while state in parent:
        par, move = parent[state]
        if par is None:
            break
        chain.append(par)
        moves.append(move)
        state = par
    if not from_back:
        chain.reverse()
        moves.reverse()
    return CutWitness(chain, moves)


def solve_finite(
    region: Region,
    x_edges: Iterable[GridEdge],
    which: Literal["lowest", "highest"] = "lowest",
) -> SolveOutcome:
    """Advancing-surface solution (lowest by default)."""
    extremes = thurston_extremes(region)
    if isinstance(extremes, Untilable):
        return Unsolvable(extremes)
    slab = slab_from_extremes(region, extremes)
    direction = "from_back" if which == "lowest" else "from_front"
    return advancing_surface(slab, x_edges, direction)


def solve_finite_bf(
    region: Region,
    x_edges: Iterable[GridEdge],
    which: Literal["lowest", "highest"] = "lowest",
    source: Optional[GridVertex] = None,
) -> SolveOutcome:
    """Generalized Thurston: Bellman-Ford distances on the projected graph."""
    from .constraints import build_projected_graph

    graph = build_projected_graph(region, x_edges)
    if source is None:
        source = region.anchor
    if source not in region.vertices:
        raise ValueError(f"source vertex {source} is not in the region")
    adjacency: dict[GridVertex, list[tuple[GridVertex, int]]] = {
        v: [] for v in graph.vertices
    }
    for arc in graph.arcs:
        if which == "lowest":
            adjacency[arc.dst].append((arc.src, arc.weight))
        else:
            adjacency[arc.src].append((arc.dst, arc.weight))
    for lst in adjacency.values():
        lst.sort()
    result = shortest_distances(adjacency, [source])
    if isinstance(result, NegativeCycle):
        cycle = result.vertices
        if which == "lowest":
            cycle = list(reversed(cycle))
        return Unsolvable(CycleWitness(cycle, result.weight))
    missing = set(graph.vertices) - set(result.dist)
    if missing:  # pragma: no cover - projected graphs are strongly connected
        raise RuntimeError(f"projected graph not connected from {source}")
    if which == "lowest":
        field = HeightField({v: -d for v, d in result.dist.items()})
    else:
        field = HeightField(dict(result.dist))
    return Solution(tiling_from_distances(region, field), which)
