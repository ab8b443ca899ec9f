"""Solvability on the whole triangular grid.

With no boundary, only the constrained edges matter.  The projected
weighted graph is reduced to its critical vertices (endpoints of the
descending and saliency arcs each constrained edge induces); arcs of the
complete reduced digraph carry either the special weight (-1 reversal, 0
saliency) or the ascending-path distance, which on the full grid is a
closed formula.  The instance is solvable exactly when the reduced graph
has no absorbing cycle, decided by one Bellman-Ford sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .grid import GridEdge, GridVertex, Step
from .constraints import _FAMILY_SHAPE
from .shortest_paths import NegativeCycle, shortest_distances


def ascending_distance(a: GridVertex | tuple[int, int], b: GridVertex | tuple[int, int]) -> int:
    """Length of the shortest +axis-step path from a to b on the full grid.

    Lift-independent: with coordinate deltas (dx, dy, dz) between any lifts,
    the value is dx + dy + dz - 3 * min(dx, dy, dz).
    """
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    dz = 0
    return dx + dy + dz - 3 * min(dx, dy, dz)


@dataclass(frozen=True)
class ReducedGraph:
    """Complete weighted digraph over the critical vertices."""

    vertices: tuple[GridVertex, ...]
    special: dict[tuple[GridVertex, GridVertex], int]

    def weight(self, a: GridVertex, b: GridVertex) -> int:
        w = ascending_distance(a, b)
        s = self.special.get((a, b))
        return w if s is None else min(w, s)

    def adjacency(self) -> dict[GridVertex, list[tuple[GridVertex, int]]]:
        return {
            a: [(b, self.weight(a, b)) for b in self.vertices if b != a]
            for a in self.vertices
        }


def critical_vertices(edge: GridEdge) -> tuple[GridVertex, ...]:
    """The four vertices a constrained edge makes critical: its endpoints
    and the lateral corners of the calisson overlapping it."""
    p = GridVertex(edge.origin.u, edge.origin.v, 0)
    la, ra = _FAMILY_SHAPE[edge.axis]
    return (
        p,
        p.stepped(Step(edge.axis, +1)),
        p.stepped(Step(la, -1)),
        p.stepped(Step(ra, -1)),
    )


def build_reduced_graph(x_edges: Iterable[GridEdge]) -> ReducedGraph:
    """Reduced graph of a nonempty constrained-edge set.

    Arc weight = min(special weight, ascending distance); special arcs are
    the -1 reversal along each constrained edge and the two-way 0 saliency
    arcs between the lateral corners.
    """
    edges = sorted(set(x_edges))
    if not edges:
        raise ValueError("reduced graph of an empty edge set is undefined")
    vertices: set[GridVertex] = set()
    special: dict[tuple[GridVertex, GridVertex], int] = {}

    def add_special(a: GridVertex, b: GridVertex, w: int) -> None:
        old = special.get((a, b))
        if old is None or w < old:
            special[(a, b)] = w

    for edge in edges:
        tail, head, lat_l, lat_r = critical_vertices(edge)
        vertices.update((tail, head, lat_l, lat_r))
        add_special(head, tail, -1)
        add_special(lat_l, lat_r, 0)
        add_special(lat_r, lat_l, 0)
    return ReducedGraph(tuple(sorted(vertices)), special)


@dataclass(frozen=True)
class Solvable:
    pass


@dataclass(frozen=True)
class UnsolvableCycle:
    cycle: list[GridVertex]
    total_weight: int

    def to_json(self) -> dict:
        return {
            "kind": "absorbing_cycle",
            "vertices": [[v.u, v.v] for v in self.cycle],
            "total_weight": self.total_weight,
        }


def decide_infinite(x_edges: Iterable[GridEdge]) -> Solvable | UnsolvableCycle:
    """Decide Calissons(X, full grid).

    An empty constraint set is trivially solvable (a single-colour brick
    pattern tiles the plane).  Otherwise Bellman-Ford from any vertex of
    the complete reduced graph either terminates, proving solvability, or
    yields a negative cycle whose weight re-checks below zero.
    """
    edges = sorted(set(x_edges))
    if not edges:
        return Solvable()
    graph = build_reduced_graph(edges)
    adjacency = graph.adjacency()
    result = shortest_distances(adjacency, [graph.vertices[0]])
    if isinstance(result, NegativeCycle):
        cycle = result.vertices
        weight = sum(
            graph.weight(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
        )
        assert weight < 0
        return UnsolvableCycle(cycle, weight)
    return Solvable()
