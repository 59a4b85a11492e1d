"""Core graph machinery: parsing, subdivision, contraction, radius."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsity import (
    Graph,
    GraphFormatError,
    complete_graph,
    contract_components,
    cycle_graph,
    find_isomorphism,
    format_edge_list,
    format_graph6,
    one_subdivision,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    path_graph,
    radius_certificate,
    subdivide,
)
from sparsity.graphs import bfs_distances


def small_graphs(draw_n=st.integers(0, 8)):
    @st.composite
    def build(draw):
        n = draw(draw_n)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
        return Graph.from_edges(n, chosen)

    return build()


class TestParsing:
    def test_edge_list_path(self):
        g = parse_edge_list("0 1\n1 2")
        assert g.n == 3
        assert g.edges() == [(0, 1), (1, 2)]

    def test_comments_blanks_duplicates(self):
        g = parse_edge_list("# header\n0 1\n\n1 0  # same edge twice\n1 2\n")
        assert g.edges() == [(0, 1), (1, 2)]

    def test_self_loop_rejected(self):
        with pytest.raises(GraphFormatError):
            parse_edge_list("0 0")

    def test_malformed_line(self):
        with pytest.raises(GraphFormatError):
            parse_edge_list("0 1 2")

    def test_graph6_star(self):
        g = parse_graph6("D?{")
        assert g.n == 5
        assert g.edges() == [(0, 4), (1, 4), (2, 4), (3, 4)]
        assert format_graph6(g) == "D?{"

    def test_graph6_header_and_errors(self):
        assert parse_graph6(">>graph6<<Bg").edges() == [(0, 1), (1, 2)]
        with pytest.raises(GraphFormatError):
            parse_graph6("~??")  # long form
        with pytest.raises(GraphFormatError):
            parse_graph6("B")  # truncated
        with pytest.raises(GraphFormatError):
            format_graph6(Graph.from_edges(63, []))

    def test_autodetect(self):
        assert parse_graph("0 1\n1 2").edges() == parse_graph("Bg").edges()

    @settings(max_examples=60, deadline=None)
    @given(small_graphs())
    def test_graph6_round_trip(self, g):
        assert parse_graph6(format_graph6(g)) == g

    @settings(max_examples=60, deadline=None)
    @given(small_graphs())
    def test_edge_list_round_trip(self, g):
        # edge lists cannot express trailing isolated vertices
        trimmed = max((v for e in g.edges() for v in e), default=-1) + 1
        back = parse_edge_list(format_edge_list(g))
        assert back.edges() == g.edges()
        assert back.n == trimmed


class TestSubdivide:
    def test_k3_once_is_c6(self):
        sg = subdivide(complete_graph(3), {e: 1 for e in complete_graph(3).edges()})
        assert sg.result.n == 6 and sg.result.m == 6
        assert find_isomorphism(sg.result, cycle_graph(6)) is not None

    def test_k4_twice_counts(self):
        g = complete_graph(4)
        sg = subdivide(g, {e: 2 for e in g.edges()})
        assert sg.result.n == 16 and sg.result.m == 18

    def test_identity_subdivision(self):
        g = path_graph(2)
        sg = subdivide(g, {(0, 1): 0})
        assert sg.result == g
        assert sg.division_map()[(0, 1)] == ()

    def test_division_vertices_have_degree_two(self):
        g = complete_graph(4)
        sg = subdivide(g, {e: 3 for e in g.edges()})
        for v in range(g.n, sg.result.n):
            assert sg.result.degree(v) == 2
            assert sg.provenance[v][0] == "division"

    def test_missing_edge_rejected(self):
        g = path_graph(3)
        with pytest.raises(ValueError):
            subdivide(g, {(0, 1): 1})

    def test_unknown_edge_rejected(self):
        g = path_graph(3)
        with pytest.raises(ValueError):
            subdivide(g, {(0, 1): 1, (1, 2): 0, (0, 2): 2})

    def test_subdivide_contract_recovers_base(self):
        rng = random.Random(11)
        for _ in range(20):
            n = rng.randint(1, 5)
            edges = [
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < 0.5
            ]
            g = Graph.from_edges(n, edges)
            sg = subdivide(g, {e: rng.randint(0, 1) for e in g.edges()})
            # fold each division path into its smaller endpoint
            parts = {v: [v] for v in range(g.n)}
            for (u, v), seq in sg.divisions:
                parts[u].extend(seq)
            quotient, proj = contract_components(sg.result, list(parts.values()))
            assert set(proj.values()) == set(range(quotient.n))
            assert find_isomorphism(quotient, g) is not None


class TestContract:
    def test_p4_middle_edge(self):
        g = path_graph(4)
        q, proj = contract_components(g, [[1, 2]])
        assert find_isomorphism(q, path_graph(3)) is not None
        assert proj[1] == proj[2]

    def test_perfect_matching_to_isolated(self):
        m = 4
        g = Graph.from_edges(2 * m, [(2 * i, 2 * i + 1) for i in range(m)])
        q, _ = contract_components(g, [[2 * i, 2 * i + 1] for i in range(m)])
        assert q.n == m and q.m == 0

    def test_c6_two_sides_give_k2(self):
        # hand check: parts {0,1,2} and {3,4,5} of the 6-cycle are joined
        # by edges (2,3) and (5,0), which merge into one edge
        q, proj = contract_components(cycle_graph(6), [[0, 1, 2], [3, 4, 5]])
        assert q == complete_graph(2)
        assert {proj[0], proj[3]} == {0, 1}

    def test_quotient_is_simple_and_projection_onto(self):
        rng = random.Random(5)
        for _ in range(25):
            n = rng.randint(2, 8)
            g = Graph.from_edges(
                n,
                [
                    (u, v)
                    for u in range(n)
                    for v in range(u + 1, n)
                    if rng.random() < 0.5
                ],
            )
            comp = sorted(bfs_distances(g, 0))
            take = comp[: rng.randint(1, len(comp))]
            if len(bfs_distances(g, take[0], within=frozenset(take))) != len(take):
                continue
            q, proj = contract_components(g, [take])
            assert set(proj.values()) == set(range(q.n))
            assert all(u != v for u, v in q.edges())

    def test_disconnected_part_rejected(self):
        with pytest.raises(ValueError):
            contract_components(path_graph(4), [[0, 3]])

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            contract_components(path_graph(4), [[0, 1], [1, 2]])


class TestRadius:
    def test_p5_centre(self):
        cert = radius_certificate(path_graph(5), range(5))
        assert cert.radius == 2 and cert.centre == 2

    def test_single_vertex(self):
        assert radius_certificate(path_graph(3), [1]).radius == 0

    def test_c6_radius_three(self):
        # BFS oracle: every vertex of an even cycle has eccentricity n/2
        g = cycle_graph(6)
        expected = min(
            max(bfs_distances(g, v).values()) for v in range(6)
        )
        cert = radius_certificate(g, range(6))
        assert cert.radius == expected == 3

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError):
            radius_certificate(path_graph(4), [0, 3])

    @settings(max_examples=40, deadline=None)
    @given(small_graphs(st.integers(1, 7)))
    def test_radius_matches_bfs_eccentricity(self, g):
        comp = frozenset(bfs_distances(g, 0))
        cert = radius_certificate(g, comp)
        best = min(
            max(bfs_distances(g, v, within=comp).values()) for v in sorted(comp)
        )
        assert cert.radius == best
        assert max(bfs_distances(g, cert.centre, within=comp).values()) == cert.radius


def test_one_subdivision_structure():
    g = complete_graph(4)
    sg = one_subdivision(g)
    assert sg.result.n == g.n + g.m
    assert sg.result.m == 2 * g.m
    assert sg.path_of(1, 0)[0] == 1 and sg.path_of(1, 0)[-1] == 0
