"""Crossing counts and the two drawing audits."""

import random
from fractions import Fraction
from math import comb

import pytest

from sparsity import (
    DegenerateGeometryError,
    Drawing,
    Graph,
    audit_crossing_lemma,
    audit_crossings_per_edge,
    complete_graph,
    convex_drawing,
    convex_positions,
    count_crossings,
    parse_drawing,
    path_graph,
    per_edge_crossings,
)


def oracle_crossings(g, coords):
    """Independent float oracle: solve the 2x2 system for each disjoint
    edge pair and count parameter hits strictly inside both segments."""
    count = 0
    edges = g.edges()
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1:]:
            if {a, b} & {c, d}:
                continue
            (x1, y1), (x2, y2) = coords[a], coords[b]
            (x3, y3), (x4, y4) = coords[c], coords[d]
            den = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
            if den == 0:
                continue
            t = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / den
            s = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / den
            if 1e-12 < t < 1 - 1e-12 and 1e-12 < s < 1 - 1e-12:
                count += 1
    return count


class TestCounting:
    def test_planar_k4(self):
        d = Drawing.straight_line(complete_graph(4), [(0, 0), (4, 0), (2, 4), (2, 1)])
        assert count_crossings(d) == 0

    def test_convex_k5(self):
        d = convex_drawing(complete_graph(5))
        assert count_crossings(d) == 5

    @pytest.mark.parametrize("n", range(4, 10))
    def test_convex_complete_matches_binomial_and_oracle(self, n):
        g = complete_graph(n)
        coords = convex_positions(n)
        d = Drawing.straight_line(g, coords)
        got = count_crossings(d)
        assert got == comb(n, 4)
        assert got == oracle_crossings(g, [(float(x), float(y)) for x, y in coords])

    def test_explicit_mode(self):
        d = Drawing.explicit(path_graph(4), [((0, 1), (2, 3))])
        assert count_crossings(d) == 1

    def test_shared_endpoint_never_counts(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        d = Drawing.straight_line(g, [(0, 0), (1, 1), (2, 0)])
        assert count_crossings(d) == 0

    def test_vertex_in_edge_interior_rejected(self):
        # vertex 2 sits inside the segment of edge (0, 1)
        with pytest.raises(DegenerateGeometryError):
            Drawing.straight_line(path_graph(3), [(0, 0), (2, 0), (1, 0)])
        with pytest.raises(DegenerateGeometryError):
            Drawing.straight_line(
                Graph.from_edges(3, [(0, 2)]), [(0, 0), (1, 0), (2, 0)]
            )

    def test_coincident_vertices_rejected(self):
        with pytest.raises(DegenerateGeometryError):
            Drawing.straight_line(path_graph(2), [(0, 0), (0, 0)])

    def test_collinear_overlap_is_degenerate(self):
        # vertex 2 sits on edge (0, 1): rejected when the drawing is built
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(DegenerateGeometryError):
            Drawing.straight_line(g, [(0, 0), (3, 0), (1, 0), (4, 0)])

    def test_relabel_invariance(self):
        rng = random.Random(3)
        g = complete_graph(6)
        coords = convex_positions(6)
        base = count_crossings(Drawing.straight_line(g, coords))
        for _ in range(5):
            perm = list(range(6))
            rng.shuffle(perm)
            g2 = Graph.from_edges(6, [(perm[u], perm[v]) for u, v in g.edges()])
            c2 = [None] * 6
            for v in range(6):
                c2[perm[v]] = coords[v]
            assert count_crossings(Drawing.straight_line(g2, c2)) == base

    def test_rigid_motion_invariance(self):
        # rational rotation by a 3-4-5 angle plus a translation
        g = complete_graph(6)
        coords = convex_positions(6)
        base = count_crossings(Drawing.straight_line(g, coords))
        moved = [
            (
                Fraction(3, 5) * x - Fraction(4, 5) * y + 7,
                Fraction(4, 5) * x + Fraction(3, 5) * y - 2,
            )
            for x, y in coords
        ]
        assert count_crossings(Drawing.straight_line(g, moved)) == base

    def test_float_coordinates_use_epsilon_path(self):
        g = complete_graph(4)
        d = Drawing.straight_line(g, [(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (2.0, 1.0)])
        assert not d.exact
        assert count_crossings(d) == 0


class TestCrossingLemma:
    def test_sparse_not_applicable(self):
        d = Drawing.straight_line(path_graph(3), [(0, 0), (1, 2), (2, 0)])
        rep = audit_crossing_lemma(d)
        assert not rep.applicable and rep.passed

    def test_convex_k12(self):
        rep = audit_crossing_lemma(convex_drawing(complete_graph(12)))
        assert rep.applicable and rep.passed
        assert rep.crossings == 495
        assert rep.bound == Fraction(66**3, 64 * 144)

    def test_explicit_dense_graph(self):
        # 20 vertices, 80 edges, 100 declared crossings: bound is 20
        rng = random.Random(1)
        edges = set()
        while len(edges) < 80:
            u, v = rng.sample(range(20), 2)
            edges.add((min(u, v), max(u, v)))
        g = Graph.from_edges(20, sorted(edges))
        es = g.edges()
        pairs = []
        for e in es:
            for f in es:
                if not set(e) & set(f) and (e, f) not in pairs and (f, e) not in pairs:
                    pairs.append((e, f))
                if len(pairs) == 100:
                    break
            if len(pairs) == 100:
                break
        rep = audit_crossing_lemma(Drawing.explicit(g, pairs))
        assert rep.applicable and rep.passed
        assert rep.crossings == 100 and rep.bound == Fraction(80**3, 64 * 400)


class TestPerEdge:
    def test_planar_graph_k1(self):
        d = Drawing.straight_line(complete_graph(4), [(0, 0), (4, 0), (2, 4), (2, 1)])
        rep = audit_crossings_per_edge(d, 1)
        assert rep.passed and rep.max_per_edge == 0

    def test_convex_k5_fails_k1(self):
        # the five diagonals cross pairwise in a pentagram: two each
        rep = audit_crossings_per_edge(convex_drawing(complete_graph(5)), 1)
        assert not rep.passed and rep.failure == "per-edge count"
        assert rep.max_per_edge == 2

    def test_empty_graph_vacuous(self):
        rep = audit_crossings_per_edge(Drawing.straight_line(Graph.from_edges(0, []), []), 3)
        assert rep.passed

    def test_per_edge_counts_sum(self):
        d = convex_drawing(complete_graph(6))
        counts = per_edge_crossings(d)
        assert sum(counts.values()) == 2 * comb(6, 4)


def test_parse_drawing_formats():
    g = path_graph(3)
    d = parse_drawing("coords\n0 0 0\n1 1 1\n2 2 0\n", g)
    assert d.coords == ((0, 0), (1, 1), (2, 0))
    h = Graph.from_edges(4, [(0, 1), (2, 3)])
    d2 = parse_drawing("crossings\n0 1 2 3\n", h)
    assert count_crossings(d2) == 1
