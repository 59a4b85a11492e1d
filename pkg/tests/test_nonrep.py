"""Square-free words, repetition search, and the colouring constructions."""

import random

import pytest

from sparsity import (
    Colouring,
    Graph,
    RootedForest,
    SearchBudgetExceeded,
    SizeCapExceeded,
    acyclic_from_subdivision,
    audit_forest_colouring,
    audit_knd_lower_bound,
    check_star_acyclic,
    colour_kn_prime,
    colour_knd,
    colour_subdivision,
    complete_graph,
    cycle_graph,
    find_nonrepetitive_colouring,
    find_repetition,
    find_square,
    forest_classes_from_arcs,
    is_nonrepetitive,
    kn_prime_colour_count,
    nonrep_forest,
    nonrep_graph,
    one_subdivision,
    path_graph,
    pi_exact,
    pi_from_subdivision,
    some_nonrepetitive_colouring,
    star_graph,
    subdivide,
    thue_word,
)

LETTER = {"a": 0, "b": 1, "c": 2}


def oracle_repetition(g, colours):
    """Independent brute force: enumerate every simple path by extending
    vertex lists, then compare colour halves."""
    paths = [[v] for v in range(g.n)]
    while paths:
        p = paths.pop()
        if len(p) % 2 == 0:
            half = len(p) // 2
            if [colours[v] for v in p[:half]] == [colours[v] for v in p[half:]]:
                return p
        if len(p) < 2 * (g.n // 2):
            for w in sorted(g.adj[p[-1]]):
                if w not in p:
                    paths.append(p + [w])
    return None


class TestThue:
    def test_first_six(self):
        assert thue_word(6) == "abcacb"

    def test_empty(self):
        assert thue_word(0) == ""

    def test_square_free_500(self):
        assert find_square(thue_word(500)) is None

    def test_prefix_property(self):
        w = thue_word(300)
        for n in (0, 1, 7, 50, 299):
            assert thue_word(n) == w[:n]

    def test_find_square_detects(self):
        assert find_square("abcabc") == (0, 3)
        assert find_square("abacaba") is None
        assert find_square("aa") == (0, 1)


class TestFindRepetition:
    def test_alternating_path(self):
        assert find_repetition(path_graph(4), [1, 2, 1, 2]) == (0, 1, 2, 3)

    def test_c4_three_colours(self):
        assert find_repetition(cycle_graph(4), [1, 2, 1, 3]) is None

    def test_thue_coloured_path(self):
        n = 12
        cols = [LETTER[ch] for ch in thue_word(n)]
        assert find_repetition(path_graph(n), cols) is None

    def test_lexicographically_least(self):
        # two repetitions exist; the one starting at vertex 0 wins
        g = path_graph(6)
        rep = find_repetition(g, [1, 1, 2, 3, 3, 2])
        assert rep == (0, 1)

    def test_max_half_limits_search(self):
        g = path_graph(4)
        assert find_repetition(g, [1, 2, 1, 2], max_half=1) is None

    def test_budget_exhaustion_raises(self):
        g = complete_graph(8)
        with pytest.raises(SearchBudgetExceeded):
            find_repetition(g, list(range(8)), budget=10)

    def test_agrees_with_oracle(self):
        rng = random.Random(19)
        for _ in range(60):
            n = rng.randint(1, 7)
            g = Graph.from_edges(
                n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
            )
            cols = [rng.randint(0, 2) for _ in range(n)]
            mine = find_repetition(g, cols)
            other = oracle_repetition(g, cols)
            assert (mine is None) == (other is None)


class TestPiExact:
    def test_cycles(self):
        assert pi_exact(cycle_graph(4))[0] == 3
        assert pi_exact(cycle_graph(5))[0] == 4

    def test_k4(self):
        assert pi_exact(complete_graph(4))[0] == 4

    def test_sharpness_context(self):
        assert pi_exact(cycle_graph(5))[0] == pi_exact(cycle_graph(4))[0] + 1

    def test_witness_is_nonrepetitive(self):
        k, col = pi_exact(cycle_graph(6))
        assert is_nonrepetitive(cycle_graph(6), col)
        assert col.used() == k

    def test_cap(self):
        with pytest.raises(SizeCapExceeded):
            pi_exact(complete_graph(10))

    def test_chain_pi_star_chromatic(self, small_connected_graphs):
        rng = random.Random(40)
        sample = [g for g in small_connected_graphs if g.n <= 5]
        sample += rng.sample([g for g in small_connected_graphs if g.n == 6], 8)
        for g in sample:
            pi = pi_exact(g)[0]
            star = _exact_mode_number(g, "star")
            chi = _exact_mode_number(g, "proper")
            assert pi >= star >= chi


def _exact_mode_number(g, mode):
    """Exhaustive minimum colours for a check_star_acyclic mode."""
    for k in range(1, g.n + 1):
        for assignment in _canonical_assignments(g.n, k):
            if check_star_acyclic(g, assignment, mode)[0]:
                return k
    return g.n


def _canonical_assignments(n, k):
    # first-appearance canonical colourings with at most k colours
    def rec(prefix, used):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(min(used + 1, k)):
            yield from rec(prefix + [c], max(used, c + 1))

    yield from rec([], 0)


class TestChecks:
    def test_alternating_c4_not_acyclic(self):
        ok, witness = check_star_acyclic(cycle_graph(4), [0, 1, 0, 1], "acyclic")
        assert not ok
        assert sorted(witness) == [0, 1, 2, 3]

    def test_nonrepetitive_implies_star(self):
        rng = random.Random(3)
        for _ in range(10):
            n = rng.randint(2, 7)
            g = Graph.from_edges(
                n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
            )
            col = some_nonrepetitive_colouring(g)
            assert check_star_acyclic(g, col, "star")[0]

    def test_strong_star_implies_nonrepetitive(self):
        # all-distinct colours on any graph form a strong star colouring
        rng = random.Random(14)
        for _ in range(10):
            n = rng.randint(2, 7)
            g = Graph.from_edges(
                n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
            )
            cols = list(range(n))
            if check_star_acyclic(g, cols, "strong_star")[0]:
                assert find_repetition(g, cols) is None

    def test_strong_star_violation_witness(self):
        g = path_graph(4)
        ok, witness = check_star_acyclic(g, [0, 1, 0, 1], "strong_star")
        assert not ok
        e, f = witness
        assert not set(e) & set(f)

    def test_proper_violation(self):
        ok, witness = check_star_acyclic(path_graph(2), [5, 5], "proper")
        assert not ok and witness == (0, 1)

    def test_star_violation_is_p4(self):
        g = path_graph(4)
        ok, witness = check_star_acyclic(g, [0, 1, 0, 1], "star")
        assert not ok and len(witness) == 4


class TestColourSubdivision:
    def test_triangle_single_round(self):
        g = complete_graph(3)
        _, c = pi_exact(g)
        sg = one_subdivision(g)
        out = colour_subdivision(g, c, sg)
        assert out.used() == c.used() + 1
        assert is_nonrepetitive(sg.result, out)

    def test_identity_counts(self):
        g = path_graph(3)
        _, c = pi_exact(g)
        sg = subdivide(g, {e: 0 for e in g.edges()})
        out = colour_subdivision(g, c, sg)
        assert out.colours == c.colours

    def test_two_round_case(self):
        g = cycle_graph(5)
        _, c = pi_exact(g)
        sg = subdivide(g, {e: (2 if e != (0, 1) else 1) for e in g.edges()})
        out = colour_subdivision(g, c, sg)
        assert out.used() <= c.used() + 2
        assert is_nonrepetitive(sg.result, out)

    def test_k4_five_divisions(self):
        g = complete_graph(4)
        _, c = pi_exact(g)
        sg = subdivide(g, {e: 5 for e in g.edges()})
        out = colour_subdivision(g, c, sg)
        assert out.used() <= c.used() + 3 == 7
        assert is_nonrepetitive(sg.result, out)

    def test_repetitive_input_rejected(self):
        g = path_graph(4)
        sg = one_subdivision(g)
        with pytest.raises(ValueError):
            colour_subdivision(g, Colouring(g, (0, 1, 0, 1)), sg)


class TestForestClasses:
    def test_single_edge(self):
        f = RootedForest.least_roots(path_graph(2))
        out = forest_classes_from_arcs(f, {(1, 0): 1})
        assert out.used() == 2 <= 3

    def test_alternating_path(self):
        f = RootedForest.least_roots(path_graph(5))
        arcs = f.arcs()
        colours = {arc: 1 + (i % 2) for i, arc in enumerate(sorted(arcs))}
        out = forest_classes_from_arcs(f, colours)
        assert out.used() <= 5
        _assert_pair_property(f, colours, out)

    def test_star_all_one_colour(self):
        f = RootedForest.from_roots(star_graph(4), [0])
        out = forest_classes_from_arcs(f, {(v, 0): 1 for v in range(1, 5)})
        assert out.used() == 2
        assert len({out.colours[v] for v in range(1, 5)}) == 1

    def test_random_forests_audit(self):
        rng = random.Random(10)
        for _ in range(15):
            f = _random_forest(rng, rng.randint(2, 9))
            k = rng.randint(1, 3)
            colours = {arc: rng.randint(1, k) for arc in f.arcs()}
            out = forest_classes_from_arcs(f, colours)
            assert out.used() <= 2 * k + 1
            _assert_pair_property(f, colours, out)


def _assert_pair_property(f, arc_colours, out):
    seen = {}
    for v, p in f.arcs():
        key = frozenset((out.colours[v], out.colours[p]))
        assert len(key) == 2  # arcs never join one class to itself
        info = (out.colours[v], out.colours[p], arc_colours[(v, p)])
        assert seen.setdefault(key, info) == info


def _random_forest(rng, n):
    edges = []
    for v in range(1, n):
        if rng.random() < 0.8:
            edges.append((rng.randint(0, v - 1), v))
    g = Graph.from_edges(n, edges)
    return RootedForest.least_roots(g)


class TestNonrepForest:
    def test_single_vertex(self):
        f = RootedForest.least_roots(Graph.from_edges(1, []))
        c = Colouring(one_subdivision(f.forest).result, (0,))
        q = nonrep_forest(f, c)
        assert q.used() == 1

    def test_p3_rooted_at_centre(self):
        g = path_graph(3)
        f = RootedForest.from_roots(g, [1])
        sub = one_subdivision(g)
        # colour the 5-vertex subdivision path by the square-free word,
        # walking in path order 0, div(0,1), 1, div(1,2), 2
        order = [0, sub.division_map()[(0, 1)][0], 1, sub.division_map()[(1, 2)][0], 2]
        cols = [0] * 5
        for pos, v in enumerate(order):
            cols[v] = LETTER[thue_word(5)[pos]]
        c = Colouring(sub.result, tuple(cols))
        q = nonrep_forest(f, c)
        assert is_nonrepetitive(g, q)
        k = c.used()
        assert q.used() <= k * (k + 1) * (2 * k + 1) == 84
        audits = audit_forest_colouring(f, c, q)
        assert all(audits.values())

    def test_star(self):
        g = star_graph(3)
        f = RootedForest.from_roots(g, [0])
        sub = one_subdivision(g)
        c = some_nonrepetitive_colouring(sub.result)
        q = nonrep_forest(f, c)
        assert all(audit_forest_colouring(f, c, q).values())
        assert is_nonrepetitive(g, q)

    def test_repetitive_input_rejected(self):
        g = path_graph(3)
        f = RootedForest.least_roots(g)
        sub = one_subdivision(g)
        with pytest.raises(ValueError):
            nonrep_forest(f, Colouring(sub.result, (0, 0, 0, 0, 0)))


class TestAcyclicFromSubdivision:
    def test_triangle(self):
        g = complete_graph(3)
        sub = one_subdivision(g)
        c = some_nonrepetitive_colouring(sub.result)
        q = acyclic_from_subdivision(g, c)
        assert check_star_acyclic(g, q, "acyclic")[0]

    def test_edgeless(self):
        g = Graph.from_edges(4, [])
        c = Colouring(g, (0, 0, 0, 0))
        q = acyclic_from_subdivision(g, c)
        assert q.used() == 1

    def test_supplied_distinct_colouring_on_petersen(self):
        from sparsity import petersen_graph

        g = petersen_graph()
        sub = one_subdivision(g)
        c = Colouring(sub.result, tuple(range(sub.result.n)))
        q = acyclic_from_subdivision(g, c)
        assert check_star_acyclic(g, q, "acyclic")[0]


class TestNonrepGraph:
    def test_p4(self):
        g = path_graph(4)
        sub = one_subdivision(g)
        c = some_nonrepetitive_colouring(sub.result)
        p = acyclic_from_subdivision(g, c)
        q = nonrep_graph(g, p, c)
        assert is_nonrepetitive(g, q)

    def test_edgeless_single_colour(self):
        g = Graph.from_edges(3, [])
        c = Colouring(g, (0, 0, 0))
        p = Colouring(g, (0, 0, 0))
        q = nonrep_graph(g, p, c)
        assert q.used() == 1

    def test_c5_with_three_class_acyclic(self):
        g = cycle_graph(5)
        sub = one_subdivision(g)
        c = some_nonrepetitive_colouring(sub.result)
        p = Colouring(g, (0, 1, 0, 1, 2))
        assert check_star_acyclic(g, p, "acyclic")[0]
        q = nonrep_graph(g, p, c)
        assert is_nonrepetitive(g, q)
        k = c.used()
        assert q.used() <= 3 * (k * (k + 1) * (2 * k + 1)) ** 2

    def test_non_acyclic_p_rejected(self):
        g = cycle_graph(4)
        sub = one_subdivision(g)
        c = some_nonrepetitive_colouring(sub.result)
        with pytest.raises(ValueError):
            nonrep_graph(g, Colouring(g, (0, 1, 0, 1)), c)


class TestPiFromSubdivision:
    def test_triangle(self):
        g = complete_graph(3)
        sg = one_subdivision(g)
        c = some_nonrepetitive_colouring(sg.result)
        q = pi_from_subdivision(g, sg, c)
        assert is_nonrepetitive(g, q)

    def test_partial_subdivision(self):
        g = path_graph(4)
        sg = subdivide(g, {(0, 1): 1, (1, 2): 0, (2, 3): 1})
        c = some_nonrepetitive_colouring(sg.result)
        q = pi_from_subdivision(g, sg, c)
        assert is_nonrepetitive(g, q)

    def test_tree(self):
        g = star_graph(3)
        sg = one_subdivision(g)
        c = some_nonrepetitive_colouring(sg.result)
        q = pi_from_subdivision(g, sg, c)
        assert is_nonrepetitive(g, q)

    def test_repetitive_rejected(self):
        g = complete_graph(3)
        sg = one_subdivision(g)
        with pytest.raises(ValueError):
            pi_from_subdivision(g, sg, Colouring(sg.result, (0,) * 6))


class TestCompleteGraphColourings:
    def test_kn_prime_small(self):
        for n in (2, 3, 4, 5):
            built = colour_kn_prime(n)
            assert built.colours_used <= built.bound
            assert is_nonrepetitive(built.subdivision.result, built.colouring)

    def test_k2_prime_is_p3(self):
        built = colour_kn_prime(2)
        assert built.subdivision.result.n == 3
        assert built.colours_used <= 3

    def test_n27_count_only(self):
        assert kn_prime_colour_count(27) <= 9 + 3 + 3

    def test_count_matches_built(self):
        for n in range(2, 12):
            assert kn_prime_colour_count(n) == colour_kn_prime(n).colours_used

    def test_knd_4222(self):
        built = colour_knd(4, 2, 1, 2)
        assert built.subdivision.result.n == 16
        assert built.colours_used <= 17
        assert is_nonrepetitive(built.subdivision.result, built.colouring)

    def test_knd_single_vertex(self):
        built = colour_knd(1, 2, 1, 2)
        assert built.colours_used == 1

    def test_knd_parameter_validation(self):
        with pytest.raises(ValueError):
            colour_knd(5, 2, 1, 2)  # n > A * B**d
        with pytest.raises(ValueError):
            colour_knd(4, 1, 1, 2)  # d too small

    def test_theorem_instantiation_arithmetic(self):
        import math

        n, d = 64, 2
        b = math.ceil((n / 8) ** (1 / (d + 1)))
        a = 8 * b
        built = colour_knd(n, d, a, b)
        assert built.colours_used <= a + 8 * b <= 9 * math.ceil(n ** (1 / (d + 1)))

    def test_knd_audit_examples(self):
        rep = audit_knd_lower_bound(3, 2)  # the 9-cycle
        assert rep.passed and rep.pi == 4
        rep = audit_knd_lower_bound(2, 4)  # a path
        assert rep.passed and rep.pi == 3
        with pytest.raises(SizeCapExceeded):
            audit_knd_lower_bound(4, 2)


def test_find_nonrepetitive_colouring_none_when_too_few():
    assert find_nonrepetitive_colouring(cycle_graph(5), 3) is None
    assert find_nonrepetitive_colouring(cycle_graph(5), 4) is not None
