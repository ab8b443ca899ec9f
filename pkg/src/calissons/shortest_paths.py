"""Queue-based Bellman-Ford (SPFA) with exact negative-cycle extraction.

Vertices are arbitrary hashable keys.  A vertex relaxed more often than the
vertex count triggers a predecessor walk that returns the offending cycle,
re-checkable by summing its arc weights.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

Vertex = Hashable


@dataclass
class NegativeCycle:
    vertices: list  # cyclic sequence, first vertex not repeated at the end
    weight: int


@dataclass
class Distances:
    dist: dict
    pred: dict  # vertex -> (previous vertex, arc weight) or None for sources


def shortest_distances(
    adjacency: Mapping[Vertex, Sequence[tuple[Vertex, int]]],
    sources: Iterable[Vertex],
) -> Distances | NegativeCycle:
    """Single- or multi-source shortest distances tolerant of negative arcs.

    ``adjacency`` maps a vertex to its (neighbour, weight) arcs; iteration
    order is preserved, so sorted adjacency gives deterministic output.
    """
    dist: dict = {}
    pred: dict = {}
    relaxations: dict = {}
    n_vertices = len(adjacency)
    queue: deque = deque()
    queued: set = set()
    for s in sources:
        dist[s] = 0
        pred[s] = None
        queue.append(s)
        queued.add(s)

    while queue:
        u = queue.popleft()
        queued.discard(u)
        du = dist[u]
        for v, w in adjacency.get(u, ()):
            nd = du + w
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                pred[v] = (u, w)
                count = relaxations.get(v, 0) + 1
                relaxations[v] = count
                if count > n_vertices:
                    return _extract_cycle(pred, v)
                if v not in queued:
                    queue.append(v)
                    queued.add(v)
    return Distances(dist, pred)


def _extract_cycle(pred: dict, start) -> NegativeCycle:
    # Walk predecessors far enough to be inside the cycle, then collect it.
    v = start
    for _ in range(len(pred) + 1):
        entry = pred.get(v)
        if entry is None:  # pragma: no cover - cycles never reach a source
            break
        v = entry[0]
    cycle = [v]
    weight = 0
    u = v
    while True:
        prev, w = pred[u]
        weight += w
        if prev == v:
            break
        cycle.append(prev)
        u = prev
    cycle.reverse()
    return NegativeCycle(cycle, weight)
