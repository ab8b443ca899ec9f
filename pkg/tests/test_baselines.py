import random

import pytest

from calissons.baselines import (
    Cnf,
    NoPerfectMatching,
    Unsatisfiable,
    decode_assignment,
    dpll_solve,
    enumerate_tilings,
    macmahon_boxed_count,
    matching_solve,
    sat_encode,
)
from calissons.grid import Axis, GridEdge, GridVertex, hexagon_region
from calissons.instances import random_instance
from calissons.solver_finite import Solution, solve_finite
from calissons.tiling import check

TRIANGLE_X = [
    GridEdge(GridVertex(0, 0), Axis.X),
    GridEdge(GridVertex(1, 0), Axis.Y),
    GridEdge(GridVertex(1, 1), Axis.Z),
]

# On hexagon(2) this constraint set admits solutions, but the matching
# tiler picks one that puts equal colours across a constrained edge.
MATCHING_TRAP = [
    GridEdge(GridVertex(0, -1), Axis.Y),
    GridEdge(GridVertex(0, 0), Axis.Y),
    GridEdge(GridVertex(0, 0), Axis.Z),
]


class TestMacMahon:
    @pytest.mark.parametrize("n,count", [(1, 2), (2, 20), (3, 980)])
    def test_cubic_boxes(self, n, count):
        assert macmahon_boxed_count(n, n, n) == count

    def test_rectangular_box(self):
        assert macmahon_boxed_count(1, 1, 1) == 2
        assert macmahon_boxed_count(2, 1, 1) == 3


class TestEnumerate:
    def test_hexagon1(self):
        assert enumerate_tilings(hexagon_region(1), []).count == 2

    def test_hexagon2(self):
        assert enumerate_tilings(hexagon_region(2), []).count == 20

    def test_enclosed_triangle_kills_everything(self):
        assert enumerate_tilings(hexagon_region(2), TRIANGLE_X).count == 0

    def test_limit_truncates(self):
        result = enumerate_tilings(hexagon_region(2), [], limit=5)
        assert result.count == 5 and result.truncated

    def test_guard(self):
        with pytest.raises(ValueError):
            enumerate_tilings(hexagon_region(4), [], max_triangles=64)
        assert enumerate_tilings(hexagon_region(2), [], max_triangles=24).count == 20

    def test_every_tiling_passes_check(self):
        region = hexagon_region(2)
        x = [GridEdge(GridVertex(0, 0), Axis.Z)]
        result = enumerate_tilings(region, x)
        assert result.count > 0
        for t in result.tilings:
            assert check(region, x, t) == []

    def test_deterministic_order(self):
        a = enumerate_tilings(hexagon_region(2), [])
        b = enumerate_tilings(hexagon_region(2), [])
        assert [t.to_json() for t in a.tilings] == [t.to_json() for t in b.tilings]

    def test_nonoverlap_only_flag_is_weaker(self):
        region = hexagon_region(2)
        x = MATCHING_TRAP
        strict = enumerate_tilings(region, x).count
        loose = enumerate_tilings(region, x, saliency=False).count
        assert loose > strict > 0


class TestMatching:
    def test_hexagon_perfect(self):
        out = matching_solve(hexagon_region(2), [])
        assert not isinstance(out, NoPerfectMatching)
        assert check(hexagon_region(2), [], out) == []

    def test_trap_instance_breaks_saliency_only(self):
        region = hexagon_region(2)
        out = matching_solve(region, MATCHING_TRAP)
        assert not isinstance(out, NoPerfectMatching)
        kinds = {v.kind for v in check(region, MATCHING_TRAP, out)}
        assert kinds == {"saliency_same_color"}
        solved = solve_finite(region, MATCHING_TRAP)
        assert isinstance(solved, Solution)
        assert check(region, MATCHING_TRAP, solved.tiling) == []

    def test_isolating_x_gives_no_matching(self):
        out = matching_solve(hexagon_region(2), TRIANGLE_X)
        assert isinstance(out, NoPerfectMatching)

    def test_soundness_against_nonoverlap_enumerator(self):
        rng = random.Random(61)
        agree = 0
        for _ in range(80):
            region, x = random_instance(rng, max_triangles=18, x_density=0.2)
            loose = enumerate_tilings(region, x, limit=1, saliency=False).count > 0
            got = matching_solve(region, x)
            assert (not isinstance(got, NoPerfectMatching)) == loose
            if loose:
                kinds = {v.kind for v in check(region, x, got)}
                assert kinds <= {"saliency_same_color"}
                agree += 1
        assert agree >= 10


class TestSat:
    def test_hexagon1_clause_shape(self):
        cnf = sat_encode(hexagon_region(1), [])
        assert cnf.num_vars == 6  # one per interior edge
        coverage = [c for c in cnf.clauses if all(l > 0 for l in c)]
        assert len(coverage) == 6  # one per triangle
        assert all(1 <= len(c) <= 3 for c in coverage)

    def test_unit_clause_per_constrained_edge(self):
        region = hexagon_region(2)
        x = [GridEdge(GridVertex(0, 0), Axis.Z)]
        cnf = sat_encode(region, x)
        units = [c for c in cnf.clauses if len(c) == 1 and c[0] < 0]
        banned_edges = {cnf.edge_of_var[-c[0]] for c in units}
        assert region.resolve_edge(x[0]) in banned_edges

    def test_satisfiable_matches_enumerator(self):
        region = hexagon_region(2)
        cnf = sat_encode(region, [])
        result = dpll_solve(cnf)
        assert not isinstance(result, Unsatisfiable)
        tiling = decode_assignment(region, cnf, result)
        assert check(region, [], tiling) == []

    def test_unsat_on_enclosed_triangle(self):
        region = hexagon_region(2)
        out = dpll_solve(sat_encode(region, TRIANGLE_X))
        assert isinstance(out, Unsatisfiable)

    def test_verdict_agreement_on_samples(self):
        rng = random.Random(71)
        for _ in range(40):
            region, x = random_instance(rng, max_triangles=16, x_density=0.15)
            cnf = sat_encode(region, x)
            if cnf.num_vars > 120:
                continue
            truth = enumerate_tilings(region, x, limit=1).count > 0
            out = dpll_solve(cnf)
            assert (not isinstance(out, Unsatisfiable)) == truth
            if truth:
                assert check(region, x, decode_assignment(region, cnf, out)) == []

    def test_guard(self):
        with pytest.raises(ValueError):
            dpll_solve(sat_encode(hexagon_region(4), []))

    def test_dimacs_format(self):
        cnf = sat_encode(hexagon_region(1), [])
        text = cnf.to_dimacs()
        lines = text.strip().splitlines()
        header = [l for l in lines if l.startswith("p cnf ")]
        assert header == [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
        assert all(l.endswith(" 0") for l in lines if l and not l.startswith(("c", "p")))
        assert sum(1 for l in lines if l.startswith("c var ")) == cnf.num_vars
