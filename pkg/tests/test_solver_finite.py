import random

import pytest

from calissons.baselines import enumerate_tilings
from calissons.grid import (
    Axis,
    GridEdge,
    GridVertex,
    hexagon_region,
    parse_step,
    region_from_boundary,
)
from calissons.instances import random_instance, random_region
from calissons.solver_finite import (
    CutWitness,
    Extremes,
    Solution,
    Unsolvable,
    Untilable,
    advancing_surface,
    build_slab,
    solve_finite,
    solve_finite_bf,
    thurston_extremes,
)
from calissons.tiling import canonical_height_field, check

# A closure-zero chevron that Thurston rejects during decimation.
CHEVRON_START = (-1, -1)
CHEVRON_STEPS = [parse_step(s) for s in ["+x", "+x", "+y", "-z", "-x", "-x", "-y", "+z"]]


def steps(text):
    return [parse_step(tok) for tok in text.split()]


def validate_cut_witness(region, x_edges, w):
    """Every step must be a genuine cube-DAG arc of the region or an
    unbreakable pair of some constrained edge, and the chain must run from
    the front sentinels to the back ones."""
    from calissons.constraints import resolve_x_edges
    from calissons.solver_finite import _family_records

    assert len(w.cubes) == len(w.moves) + 1
    slab = build_slab(region)
    v0, h0 = w.cubes[0]
    vn, hn = w.cubes[-1]
    assert slab.in_front(v0, h0)
    assert slab.in_back(vn, hn)

    records = _family_records(region, resolve_x_edges(region, x_edges))
    for (v1, h1), (v2, h2), move in zip(w.cubes, w.cubes[1:], w.moves):
        if move == "dag":
            if h2 == h1 + 1:
                lo, hi = v1, v2
            else:
                assert h2 == h1 - 1
                lo, hi = v2, v1
            assert any(head == hi for _, head in region.out_arcs[lo])
        else:
            assert move == "unbreakable"
            found = False
            for rec in records:
                base = rec.base
                for (va, ha), (vb, hb) in (((v1, h1), (v2, h2)), ((v2, h2), (v1, h1))):
                    if va == rec.tail and vb == rec.head and hb == ha + 1 and (ha - base) % 3 == 0:
                        found = True
                    if va == rec.lateral_l and vb == rec.lateral_r and ha == hb and (ha - base) % 3 == 2:
                        found = True
            assert found, f"no unbreakable pair matches {(v1, h1)} - {(v2, h2)}"


class TestThurston:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_hexagons_tilable(self, n):
        ext = thurston_extremes(hexagon_region(n))
        assert isinstance(ext, Extremes)
        region = hexagon_region(n)
        assert check(region, [], ext.min_tiling) == []
        assert check(region, [], ext.max_tiling) == []
        assert all(
            ext.min_heights[v] <= ext.max_heights[v] for v in region.vertices
        )

    def test_hexagon1_extremes_are_the_two_tilings(self):
        region = hexagon_region(1)
        ext = thurston_extremes(region)
        both = {t.calissons for t in enumerate_tilings(region, []).tilings}
        assert {ext.min_tiling.calissons, ext.max_tiling.calissons} == both
        assert ext.min_tiling.calissons != ext.max_tiling.calissons

    def test_unbalanced_region_fails_at_closure(self):
        # side-2 triangle: all-plus contour, closure +6
        out = thurston_extremes(region_from_boundary((0, 0), steps("+x +x +y +y +z +z")))
        assert isinstance(out, Untilable)
        assert out.reason == "boundary_closure"
        assert out.detail == 6

    def test_chevron_fails_at_decimation(self):
        region = region_from_boundary(CHEVRON_START, CHEVRON_STEPS)
        assert region.left_count() == region.right_count()  # parity is fine
        out = thurston_extremes(region)
        assert isinstance(out, Untilable)
        assert out.reason == "decimation"
        assert enumerate_tilings(region, []).count == 0  # genuinely untilable

    def test_tie_order_does_not_change_extremes(self):
        rng = random.Random(21)
        for _ in range(40):
            region = random_region(rng, rng.randrange(4, 22))
            a = thurston_extremes(region)
            b = thurston_extremes(region, _tie=1)
            assert isinstance(a, Untilable) == isinstance(b, Untilable)
            if isinstance(a, Extremes):
                assert a.min_tiling.calissons == b.min_tiling.calissons
                assert a.max_tiling.calissons == b.max_tiling.calissons

    def test_verdict_matches_enumeration(self):
        rng = random.Random(22)
        for _ in range(120):
            region = random_region(rng, rng.randrange(4, 18))
            tilable = enumerate_tilings(region, []).count > 0
            assert isinstance(thurston_extremes(region), Extremes) == tilable


class TestSlab:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_hexagon_interior_is_n_cubed(self, n):
        slab = build_slab(hexagon_region(n))
        assert slab.interior_count() == n**3

    def test_unit_hexagon_single_cube(self):
        slab = build_slab(hexagon_region(1))
        cubes = list(slab.interior_cubes())
        assert len(cubes) == 1

    def test_untilable_propagates(self):
        out = build_slab(region_from_boundary((0, 0), steps("+x +x +y +y +z +z")))
        assert isinstance(out, Untilable)

    def test_back_front_sentinels(self):
        slab = build_slab(hexagon_region(2))
        for v in slab.theta_min:
            assert slab.in_back(v, slab.theta_min[v] - 3)
            assert not slab.in_back(v, slab.theta_min[v])
            assert slab.in_front(v, slab.theta_max[v])


class TestAdvancingSurface:
    def test_empty_x_gives_min_tiling(self):
        for n in (1, 2, 3):
            region = hexagon_region(n)
            ext = thurston_extremes(region)
            out = solve_finite(region, [])
            assert isinstance(out, Solution)
            assert out.tiling.calissons == ext.min_tiling.calissons
            out_hi = solve_finite(region, [], "highest")
            assert out_hi.tiling.calissons == ext.max_tiling.calissons

    def test_enclosed_triangle_unsolvable(self):
        region = hexagon_region(2)
        x = [
            GridEdge(GridVertex(0, 0), Axis.X),
            GridEdge(GridVertex(1, 0), Axis.Y),
            GridEdge(GridVertex(1, 1), Axis.Z),
        ]
        out = solve_finite(region, x)
        assert isinstance(out, Unsolvable)
        assert isinstance(out.witness, CutWitness)
        validate_cut_witness(region, x, out.witness)

    def test_witnesses_validate_on_random_instances(self):
        rng = random.Random(1717)
        seen = 0
        while seen < 25:
            region, x = random_instance(rng, max_triangles=26, x_density=0.2)
            out = solve_finite(region, x)
            if isinstance(out, Solution) or not isinstance(out.witness, CutWitness):
                continue
            validate_cut_witness(region, x, out.witness)
            seen += 1

    def test_solvable_instance_with_x(self):
        region = hexagon_region(2)
        x = [GridEdge(GridVertex(0, 0), Axis.Z)]
        out = solve_finite(region, x)
        assert isinstance(out, Solution)
        assert check(region, x, out.tiling) == []

    def test_monotonicity_in_x(self):
        # a solvable superset implies a solvable subset
        rng = random.Random(31)
        checked = 0
        while checked < 60:
            region, x = random_instance(rng, max_triangles=22, x_density=0.15)
            if len(x) < 2:
                continue
            if isinstance(solve_finite(region, x), Solution):
                sub = x[: len(x) // 2]
                assert isinstance(solve_finite(region, sub), Solution)
                checked += 1


class TestCrossSolver:
    def test_agreement_and_checker(self):
        rng = random.Random(41)
        solvable = 0
        for _ in range(150):
            region, x = random_instance(rng, max_triangles=24, x_density=0.12)
            truth = enumerate_tilings(region, x, limit=1).count > 0
            adv = solve_finite(region, x)
            bf = solve_finite_bf(region, x)
            assert isinstance(adv, Solution) == truth
            assert isinstance(bf, Solution) == truth
            if truth:
                solvable += 1
                assert check(region, x, adv.tiling) == []
                assert check(region, x, bf.tiling) == []
                assert adv.tiling.calissons == bf.tiling.calissons
        assert solvable >= 10

    def test_bf_cycle_witness_recomputes_negative(self):
        from calissons.constraints import build_projected_graph
        from calissons.solver_finite import CycleWitness

        region = hexagon_region(2)
        x = [
            GridEdge(GridVertex(0, 0), Axis.X),
            GridEdge(GridVertex(1, 0), Axis.Y),
            GridEdge(GridVertex(1, 1), Axis.Z),
        ]
        out = solve_finite_bf(region, x)
        assert isinstance(out, Unsolvable) and isinstance(out.witness, CycleWitness)
        cyc = out.witness.cycle if hasattr(out.witness, "cycle") else out.witness.vertices
        graph = build_projected_graph(region, x)
        weights = {}
        for arc in graph.arcs:
            key = (arc.src, arc.dst)
            weights[key] = min(weights.get(key, arc.weight), arc.weight)
        total = 0
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            total += weights[(a, b)]
        assert total == out.witness.total_weight < 0

    def test_bf_bad_source_rejected(self):
        region = hexagon_region(1)
        with pytest.raises(ValueError):
            solve_finite_bf(region, [], source=GridVertex(9, 9, 0))

    def test_extremality_sandwich(self):
        rng = random.Random(51)
        checked = 0
        while checked < 25:
            region, x = random_instance(rng, max_triangles=16, x_density=0.1)
            result = enumerate_tilings(region, x)
            if result.count == 0:
                continue
            lo = solve_finite(region, x, "lowest")
            hi = solve_finite(region, x, "highest")
            lo_h = canonical_height_field(lo.tiling)
            hi_h = canonical_height_field(hi.tiling)
            for t in result.tilings:
                f = canonical_height_field(t)
                assert all(lo_h[v] <= f[v] <= hi_h[v] for v in region.vertices)
            checked += 1

    def test_determinism(self):
        region = hexagon_region(3)
        x = [GridEdge(GridVertex(0, 0), Axis.Z), GridEdge(GridVertex(1, 0), Axis.X)]
        first = solve_finite(region, x)
        second = solve_finite(region, x)
        assert first.tiling.to_json() == second.tiling.to_json()
        b1 = solve_finite_bf(region, x)
        b2 = solve_finite_bf(region, x)
        assert b1.tiling.to_json() == b2.tiling.to_json()
