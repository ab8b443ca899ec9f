"""Independent verification machinery: brute-force enumeration, a
bipartite-matching tiler, and a 3-SAT encoding with a small complete solver.

The enumerator is the ground truth the fast solvers are tested against; it
backtracks over the lexicographically first uncovered triangle and never
shares code with the DAG-cut or shortest-path machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .grid import (
    Axis,
    Calisson,
    Chirality,
    GridEdge,
    GridVertex,
    Region,
    Triangle,
    calisson_over,
)
from .constraints import resolve_x_edges
from .tiling import Tiling, check, tiling_from_matching

EdgeKey = tuple[GridVertex, Axis]


def macmahon_boxed_count(a: int, b: int, c: int) -> int:
    """Number of plane partitions in an a x b x c box (product formula)."""
    total = Fraction(1)
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                total *= Fraction(i + j + k - 1, i + j + k - 2)
    assert total.denominator == 1
    return int(total)


@dataclass
class EnumerationResult:
    tilings: list[Tiling]
    truncated: bool

    @property
    def count(self) -> int:
        return len(self.tilings)


def enumerate_tilings(
    region: Region,
    x_edges: Iterable[GridEdge],
    limit: Optional[int] = None,
    saliency: bool = True,
    max_triangles: int = 64,
) -> EnumerationResult:
    """All tilings satisfying non-overlap (and, unless ``saliency`` is off,
    the different-colours rule), in deterministic order.

    Guarded against oversized regions; raise the guard deliberately for
    bigger exhaustive runs.
    """
    if len(region.triangles) > max_triangles:
        raise ValueError(
            f"{len(region.triangles)} triangles exceeds the exhaustive guard "
            f"({max_triangles}); pass max_triangles explicitly to override"
        )
    x_iter = list(x_edges)
    x_keys = set(resolve_x_edges(region, x_iter))
    order = sorted(region.triangles)

    # Candidate partner edges per triangle: interior edges not constrained.
    tri_edges: dict[Triangle, list[EdgeKey]] = {tri: [] for tri in order}
    for key, tris in sorted(region.edge_triangles.items()):
        if len(tris) == 2 and key not in x_keys:
            for tri in tris:
                tri_edges[tri].append(key)
    # Flanks of each constrained edge, for saliency pruning.
    x_flanks: list[tuple[EdgeKey, Triangle, Triangle]] = []
    for key in sorted(x_keys):
        t1, t2 = region.edge_triangles[key]
        x_flanks.append((key, t1, t2))
    flanks_holding: dict[Triangle, list[int]] = {}
    for i, (_, t1, t2) in enumerate(x_flanks):
        flanks_holding.setdefault(t1, []).append(i)
        flanks_holding.setdefault(t2, []).append(i)

    covered: dict[Triangle, Optional[EdgeKey]] = {tri: None for tri in order}
    chosen: list[EdgeKey] = []
    found: list[Tiling] = []
    truncated = False

    def axis_of(key: EdgeKey) -> Axis:
        return key[1]

    def saliency_ok(tri: Triangle) -> bool:
        for i in flanks_holding.get(tri, ()):
            key, t1, t2 = x_flanks[i]
            c1, c2 = covered[t1], covered[t2]
            if c1 is not None and c2 is not None and axis_of(c1) is axis_of(c2):
                return False
        return True

    def extend() -> bool:
        if limit is not None and len(found) >= limit:
            return False
        target = next((tri for tri in order if covered[tri] is None), None)
        if target is None:
            tiling = tiling_from_matching(region, chosen)
            effective = x_iter if saliency else []
            assert check(region, effective, tiling) == []
            found.append(tiling)
            return limit is None or len(found) < limit
        for key in tri_edges[target]:
            a, b = region.edge_triangles[key]
            other = b if a == target else a
            if covered[other] is not None:
                continue
            covered[target] = covered[other] = key
            chosen.append(key)
            ok = (not saliency) or (saliency_ok(target) and saliency_ok(other))
            keep_going = extend() if ok else True
            chosen.pop()
            covered[target] = covered[other] = None
            if not keep_going:
                return False
        return True

    completed = extend()
    if not completed and limit is not None and len(found) >= limit:
        truncated = True
    return EnumerationResult(found, truncated)


@dataclass
class NoPerfectMatching:
    matched: int
    needed: int


def matching_solve(region: Region, x_edges: Iterable[GridEdge]) -> Tiling | NoPerfectMatching:
    """Tile by maximum bipartite matching of left/right triangles.

    Adjacency excludes pairs separated by a constrained edge, so the result
    honours non-overlap but may break the saliency rule.
    """
    x_keys = set(resolve_x_edges(region, x_edges))
    lefts = sorted(t for t in region.triangles if t.chirality is Chirality.LEFT)
    rights = sorted(t for t in region.triangles if t.chirality is Chirality.RIGHT)
    adj: dict[Triangle, list[tuple[Triangle, EdgeKey]]] = {t: [] for t in lefts}
    for key, tris in sorted(region.edge_triangles.items()):
        if len(tris) == 2 and key not in x_keys:
            a, b = tris
            l, r = (a, b) if a.chirality is Chirality.LEFT else (b, a)
            adj[l].append((r, key))

    match_l: dict[Triangle, tuple[Triangle, EdgeKey]] = {}
    match_r: dict[Triangle, Triangle] = {}

    def augment(l: Triangle, seen: set[Triangle]) -> bool:
        for r, key in adj[l]:
            if r in seen:
                continue
            seen.add(r)
            if r not in match_r or augment(match_r[r], seen):
                match_r[r] = l
                match_l[l] = (r, key)
                return True
        return False

    for l in lefts:
        augment(l, set())
    if len(match_l) != len(lefts) or len(lefts) != len(rights):
        return NoPerfectMatching(len(match_l), max(len(lefts), len(rights)))
    return tiling_from_matching(region, [key for (_, key) in match_l.values()])


@dataclass
class Cnf:
    """CNF over calisson placement variables (DIMACS-compatible)."""

    num_vars: int
    clauses: list[tuple[int, ...]]
    calisson_of_var: dict[int, Calisson]
    edge_of_var: dict[int, EdgeKey] = field(default_factory=dict)

    def to_dimacs(self) -> str:
        lines = [
            f"c variable map: {len(self.calisson_of_var)} calisson placements"
        ]
        for var in sorted(self.calisson_of_var):
            cal = self.calisson_of_var[var]
            x, y, z = cal.cube
            lines.append(f"c var {var} = cube ({x},{y},{z}) normal {cal.normal.letter}")
        lines.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        for clause in self.clauses:
            lines.append(" ".join(str(l) for l in clause) + " 0")
        return "\n".join(lines) + "\n"


def sat_encode(region: Region, x_edges: Iterable[GridEdge]) -> Cnf:
    """Clause classes: triangle coverage, pairwise non-overlap, unit bans
    for placements overlapping a constrained edge, and saliency
    implications between the flanks of each constrained edge."""
    x_keys = set(resolve_x_edges(region, x_edges))
    placements = [key for key, tris in sorted(region.edge_triangles.items()) if len(tris) == 2]
    cal_of_key = {key: calisson_over(GridEdge(GridVertex(*key[0].pos), key[1])) for key in placements}
    ordered = sorted(placements, key=lambda k: (cal_of_key[k].cube, int(cal_of_key[k].normal)))
    var_of_key = {key: i + 1 for i, key in enumerate(ordered)}
    cal_of_var = {var_of_key[k]: cal_of_key[k] for k in ordered}
    edge_of_var = {var_of_key[k]: k for k in ordered}

    clauses: list[tuple[int, ...]] = []
    by_triangle: dict[Triangle, list[int]] = {tri: [] for tri in region.triangles}
    for key in ordered:
        for tri in region.edge_triangles[key]:
            by_triangle[tri].append(var_of_key[key])
    for tri in sorted(by_triangle):
        cover = sorted(by_triangle[tri])
        clauses.append(tuple(cover))  # natural width 1..3
        for i in range(len(cover)):
            for j in range(i + 1, len(cover)):
                clauses.append((-cover[i], -cover[j]))
    for key in sorted(x_keys):
        clauses.append((-var_of_key[key],))
    for key in sorted(x_keys):
        t1, t2 = region.edge_triangles[key]
        banned = var_of_key[key]
        for var in by_triangle[t1]:
            if var == banned:
                continue
            colour = cal_of_var[var].normal
            partners = [
                w
                for w in by_triangle[t2]
                if w != banned and cal_of_var[w].normal is not colour
            ]
            if partners:
                # placing `var` forces the opposite colour across the edge
                clauses.append(tuple([-var] + sorted(partners)))
            else:
                clauses.append((-var,))
    return Cnf(len(ordered), clauses, cal_of_var, edge_of_var)


@dataclass
class Unsatisfiable:
    pass


def dpll_solve(f: Cnf, max_vars: int = 120) -> dict[int, bool] | Unsatisfiable:
    """Complete DPLL with unit propagation; guarded to encoder-test scale."""
    if f.num_vars > max_vars:
        raise ValueError(f"{f.num_vars} variables exceeds the DPLL guard ({max_vars})")

    def propagate(assign: dict[int, bool]) -> Optional[dict[int, bool]]:
        assign = dict(assign)
        changed = True
        while changed:
            changed = False
            for clause in f.clauses:
                unassigned = []
                satisfied = False
                for lit in clause:
                    val = assign.get(abs(lit))
                    if val is None:
                        unassigned.append(lit)
                    elif (lit > 0) == val:
                        satisfied = True
                        break
                if satisfied:
                    continue
                if not unassigned:
                    return None
                if len(unassigned) == 1:
                    lit = unassigned[0]
                    assign[abs(lit)] = lit > 0
                    changed = True
        return assign

    def search(assign: dict[int, bool]) -> Optional[dict[int, bool]]:
        assign = propagate(assign)
        if assign is None:
            return None
        for var in range(1, f.num_vars + 1):
            if var not in assign:
                for value in (True, False):
                    result = search({**assign, var: value})
                    if result is not None:
                        return result
                return None
        return assign

    result = search({})
    if result is None:
        return Unsatisfiable()
    return {v: result.get(v, False) for v in range(1, f.num_vars + 1)}


def decode_assignment(region: Region, f: Cnf, assignment: dict[int, bool]) -> Tiling:
    chosen = [f.edge_of_var[var] for var, val in assignment.items() if val]
    return tiling_from_matching(region, chosen)


def windowed_infinite_oracle(x_edges, pad: Optional[int] = None) -> bool:
    """Full-grid solvability by negative-cycle search on a finite window.

    Builds the projected weighted graph (no boundary arcs) over a box
    around the constrained edges, padded far enough that shortest
    ascending detours between critical vertices stay inside, and runs a
    multi-source Bellman-Ford.  True means solvable.
    """
    from .shortest_paths import NegativeCycle, shortest_distances
    from .solver_infinite import critical_vertices
    from .grid import AXIS_STEP, Axis, GridVertex

    edges = sorted(set(x_edges))
    if not edges:
        return True
    crit = set()
    for e in edges:
        crit.update(critical_vertices(e))
    us = [v.u for v in crit]
    vs = [v.v for v in crit]
    diameter = max(
        max(us) - min(us), max(vs) - min(vs),
        max(u - v for u, v in zip(us, vs)) - min(u - v for u, v in zip(us, vs)),
    )
    if pad is None:
        pad = 2 + diameter
    lo_u, hi_u = min(us) - pad, max(us) + pad
    lo_v, hi_v = min(vs) - pad, max(vs) + pad

    def inside(u, v):
        return lo_u <= u <= hi_u and lo_v <= v <= hi_v

    adjacency = {}
    for u in range(lo_u, hi_u + 1):
        for v in range(lo_v, hi_v + 1):
            arcs = []
            for axis in Axis:
                du, dv = AXIS_STEP[axis]
                if inside(u + du, v + dv):
                    arcs.append((GridVertex(u + du, v + dv), 1))
            adjacency[GridVertex(u, v)] = arcs
    for e in edges:
        tail, head, lat_l, lat_r = critical_vertices(e)
        if not all(inside(p.u, p.v) for p in (tail, head, lat_l, lat_r)):
            raise ValueError("window too small for the given edges")
        adjacency[head].append((tail, -1))
        adjacency[lat_l].append((lat_r, 0))
        adjacency[lat_r].append((lat_l, 0))
    result = shortest_distances(adjacency, sorted(adjacency))
    return not isinstance(result, NegativeCycle)
