import pytest
from hypothesis import given, strategies as st

from calissons.constraints import (
    Arc,
    build_projected_graph,
    cube_leq,
    resolve_x_edges,
    saliency_endpoints,
    unbreakable_family,
)
from calissons.grid import (
    Axis,
    GridEdge,
    GridVertex,
    RegionError,
    hexagon_region,
    region_from_boundary,
    Step,
)

edges_strategy = st.builds(
    GridEdge,
    st.builds(GridVertex, st.integers(-8, 8), st.integers(-8, 8), st.just(0)),
    st.sampled_from(list(Axis)),
)


class TestCubeOrder:
    def test_basic(self):
        assert cube_leq((0, 0, 0), (1, 1, 1))
        assert not cube_leq((0, 1, 0), (1, 0, 2))
        assert not cube_leq((1, 0, 2), (0, 1, 0))

    @given(edges_strategy, st.integers(-3, 3))
    def test_lateral_cubes_incomparable(self, edge, k):
        fam = unbreakable_family(edge)
        assert not cube_leq(fam.l_k(k), fam.r_k(k))
        assert not cube_leq(fam.r_k(k), fam.l_k(k))


class TestFamilies:
    def test_vertical_edge_bases(self):
        fam = unbreakable_family(GridEdge(GridVertex(0, 0), Axis.Z))
        assert fam.f_k(0) == (0, 0, 0)
        assert fam.b_k(1) == (0, 0, 1)
        assert fam.l_k(0) == (0, -1, 0)
        assert fam.r_k(0) == (-1, 0, 0)

    def test_x_edge_bases(self):
        fam = unbreakable_family(GridEdge(GridVertex(0, 0), Axis.X))
        assert fam.l_k(0) == (0, -1, 0)
        assert fam.r_k(0) == (0, 0, -1)
        assert fam.f_k(0) == (0, 0, 0)
        assert fam.b_k(0) == (0, -1, -1)

    @given(edges_strategy, st.integers(-2, 2))
    def test_chain_order(self, edge, k):
        fam = unbreakable_family(edge)
        assert cube_leq(fam.f_k(k - 1), fam.b_k(k))
        assert cube_leq(fam.b_k(k), fam.l_k(k))
        assert cube_leq(fam.b_k(k), fam.r_k(k))
        assert cube_leq(fam.l_k(k), fam.f_k(k))
        assert cube_leq(fam.r_k(k), fam.f_k(k))

    @given(edges_strategy)
    def test_nonoverlap_pair_is_the_edge_arc(self, edge):
        fam = unbreakable_family(edge)
        f, b = fam.nonoverlap_pair(0)
        delta = tuple(bb - ff for ff, bb in zip(f, b))
        assert sorted(delta) == [0, 0, 1]
        assert Axis(delta.index(1)) is edge.axis


class TestProjectedGraph:
    def test_hexagon1_counts(self):
        reg = hexagon_region(1)
        g = build_projected_graph(reg, [])
        by_tag = {}
        for a in g.arcs:
            by_tag.setdefault(a.tag, []).append(a)
        assert len(by_tag["boundary_rev"]) == 6
        assert len(by_tag["ascending"]) == 12
        assert "saliency" not in by_tag

    def test_saliency_arc_endpoints(self):
        reg = hexagon_region(2)
        g = build_projected_graph(reg, [GridEdge(GridVertex(0, 0), Axis.Z)])
        sal = sorted(
            (a.src.pos, a.dst.pos) for a in g.arcs if a.tag == "saliency"
        )
        assert sal == [((-1, 0), (0, -1)), ((0, -1), (-1, 0))]
        xrev = [(a.src.pos, a.dst.pos) for a in g.arcs if a.tag == "x_rev"]
        assert xrev == [((-1, -1), (0, 0))]

    def test_x_on_boundary_rejected(self):
        reg = hexagon_region(2)
        with pytest.raises(RegionError) as err:
            build_projected_graph(reg, [GridEdge(GridVertex(2, 0), Axis.Y)])
        assert err.value.code == "edge_on_boundary"

    def test_x_outside_rejected(self):
        reg = hexagon_region(1)
        with pytest.raises(RegionError) as err:
            build_projected_graph(reg, [GridEdge(GridVertex(9, 9), Axis.X)])
        assert err.value.code == "edge_outside"

    def test_every_minus_arc_reverses_a_plus_arc(self):
        reg = hexagon_region(2)
        g = build_projected_graph(reg, [GridEdge(GridVertex(0, 0), Axis.Z)])
        plus = {(a.src, a.dst) for a in g.arcs if a.weight == 1}
        for a in g.arcs:
            if a.weight == -1:
                assert (a.dst, a.src) in plus

    def test_arc_count_bound(self):
        reg = hexagon_region(3)
        x = [GridEdge(GridVertex(0, 0), Axis.Z), GridEdge(GridVertex(1, 0), Axis.Y)]
        g = build_projected_graph(reg, x)
        assert len(g.arcs) <= 3 * len(g.vertices) + 2 * len(reg.boundary) + 4 * len(x)

    @given(st.integers(-4, 4), st.integers(-4, 4))
    def test_translation_covariance(self, du, dv):
        steps = [Step(Axis.X, +1)] * 2 + [Step(Axis.Y, +1)] + [Step(Axis.X, -1)] * 2 + [Step(Axis.Y, -1)]
        x = [GridEdge(GridVertex(1, 0), Axis.Y)]
        g1 = build_projected_graph(region_from_boundary((0, 0), steps), x)
        g2 = build_projected_graph(
            region_from_boundary((du, dv), steps), [e.translated(du, dv) for e in x]
        )
        moved = {
            Arc(a.src.shifted(du, dv), a.dst.shifted(du, dv), a.weight, a.tag)
            for a in g1.arcs
        }
        assert moved == set(g2.arcs)

    def test_x_distance_pinned_to_one(self):
        # Along a constrained edge both the +1 arc and its -1 reversal exist,
        # so any feasible distance solution steps by exactly one there.
        from calissons.shortest_paths import shortest_distances, Distances

        reg = hexagon_region(2)
        key_edge = GridEdge(GridVertex(0, 0), Axis.Z)
        g = build_projected_graph(reg, [key_edge])
        adjacency = {
            v: [(a.dst, a.weight) for a in arcs] for v, arcs in g.adjacency().items()
        }
        result = shortest_distances(adjacency, [min(g.vertices)])
        assert isinstance(result, Distances)
        tail = GridVertex(0, 0, 0)
        head = GridVertex(-1, -1, 0)
        assert result.dist[head] == result.dist[tail] + 1
