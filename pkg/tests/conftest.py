"""Shared test fixtures: graph censuses, poset enumeration, forests."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product

import networkx as nx
import pytest

from sparsity import Graph, Poset


@lru_cache(maxsize=None)
def atlas_graphs(max_n: int, connected_only: bool = False) -> tuple[Graph, ...]:
    """All non-isomorphic graphs with 1..max_n vertices (graph atlas)."""
    out = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n == 0 or n > max_n:
            continue
        if connected_only and not nx.is_connected(G):
            continue
        out.append(Graph.from_edges(n, [tuple(e) for e in G.edges()]))
    return tuple(out)


# ---------------------------------------------------------------------------
# Posets up to isomorphism, by extending one element at a time.

def _canonical_relation(n: int, rel: frozenset) -> int:
    down = [sum(1 for a, b in rel if b == x) for x in range(n)]
    up = [sum(1 for a, b in rel if a == x) for x in range(n)]
    groups: dict[tuple[int, int], list[int]] = {}
    for x in range(n):
        groups.setdefault((down[x], up[x]), []).append(x)
    blocks = []
    pos = 0
    for key in sorted(groups):
        members = groups[key]
        blocks.append((members, list(range(pos, pos + len(members)))))
        pos += len(members)

    def assignments(block):
        members, positions = block
        for perm in permutations(positions):
            yield list(zip(members, perm))

    best = None
    for combo in product(*[assignments(b) for b in blocks]):
        mapping = {m: p for pairs in combo for m, p in pairs}
        mask = 0
        for a, b in rel:
            mask |= 1 << (mapping[a] * n + mapping[b])
        if best is None or mask < best:
            best = mask
    return best


def _extensions(n: int, rel: frozenset) -> set[frozenset]:
    """All posets on n+1 elements obtained by inserting element n."""
    below = {x: {a for a, b in rel if b == x} for x in range(n)}
    above = {x: {b for a, b in rel if a == x} for x in range(n)}
    out = set()
    for assign in product((0, 1, 2), repeat=n):
        down = {x for x in range(n) if assign[x] == 1}
        up = {x for x in range(n) if assign[x] == 2}
        if not all(below[x] <= down for x in down):
            continue
        if not all(above[x] <= up for x in up):
            continue
        if not all((d, u) in rel for d in down for u in up):
            continue
        out.add(rel | {(d, n) for d in down} | {(n, u) for u in up})
    return out


@lru_cache(maxsize=None)
def all_posets(max_n: int) -> tuple[Poset, ...]:
    """All posets with 1..max_n elements, one representative per
    isomorphism class."""
    levels: list[list[frozenset]] = [[frozenset()]]
    result = []
    for n in range(1, max_n + 1):
        seen: dict[int, frozenset] = {}
        for rel in levels[n - 1]:
            for new in _extensions(n - 1, rel):
                key = _canonical_relation(n, new)
                if key not in seen:
                    seen[key] = new
        levels.append(list(seen.values()))
        result.extend(Poset(n, rel) for rel in levels[n])
    return tuple(result)


# ---------------------------------------------------------------------------
# Forests up to isomorphism, as disjoint unions of non-isomorphic trees.

def _tree_cert(g: Graph) -> str:
    """AHU canonical string of a tree, rooted at its centre(s)."""

    def encode(root: int, parent: int | None) -> str:
        subs = sorted(
            encode(w, root) for w in sorted(g.adj[root]) if w != parent
        )
        return "(" + "".join(subs) + ")"

    # centre via leaf stripping
    degrees = {v: g.degree(v) for v in range(g.n)}
    layer = [v for v in range(g.n) if degrees[v] <= 1]
    alive = g.n
    while alive > 2:
        nxt = []
        for v in layer:
            alive -= 1
            for w in g.adj[v]:
                degrees[w] -= 1
                if degrees[w] == 1:
                    nxt.append(w)
        layer = nxt
    return min(encode(c, None) for c in layer)


@lru_cache(maxsize=None)
def all_forests(max_n: int) -> tuple[Graph, ...]:
    """All non-isomorphic forests with 1..max_n vertices."""
    trees: dict[int, list[Graph]] = {1: [Graph.from_edges(1, [])]}
    for n in range(2, max_n + 1):
        trees[n] = [
            Graph.from_edges(n, [tuple(e) for e in T.edges()])
            for T in nx.nonisomorphic_trees(n)
        ]
    out = []
    for total in range(1, max_n + 1):
        seen: set[tuple] = set()
        for split in _partitions(total):
            for pick in _multichoose(split, trees):
                cert = tuple(sorted(_tree_cert(t) for t in pick))
                if cert in seen:
                    continue
                seen.add(cert)
                out.append(_disjoint_union(pick))
    return tuple(out)


def _partitions(total: int, largest: int | None = None):
    largest = largest or total
    if total == 0:
        yield ()
        return
    for head in range(min(total, largest), 0, -1):
        for rest in _partitions(total - head, head):
            yield (head, *rest)


def _multichoose(split: tuple[int, ...], trees: dict[int, list[Graph]]):
    """Pick one tree per part; parts of equal size use non-decreasing
    indices to avoid permuted duplicates."""
    if not split:
        yield ()
        return
    size = split[0]
    same = sum(1 for s in split if s == size)
    rest = split[same:]
    for idx in combinations_with_replacement(range(len(trees[size])), same):
        for tail in _multichoose(rest, trees):
            yield tuple(trees[size][i] for i in idx) + tail


def _disjoint_union(graphs) -> Graph:
    offset = 0
    edges = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


@pytest.fixture(scope="session")
def small_connected_graphs():
    return atlas_graphs(6, connected_only=True)
