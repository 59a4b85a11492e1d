"""Non-repetitive colourings: square-free words, repetition search,
exact minimum colour counts on tiny graphs, and the constructions that
transfer colourings between a graph, its subdivisions, its forests, and
complete-graph subdivisions, each with a certified colour budget.

A colouring is repetitive on a path v1..v2s when the second half repeats
the first half's colour sequence; non-repetitive means no such path.
Colour ids in every constructed colouring are canonicalised to 0..c-1 in
first-appearance order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import SearchBudgetExceeded, SizeCapExceeded
from .graphs import (
    Edge,
    Graph,
    SubdividedGraph,
    bfs_distances,
    complete_graph,
    connected_components,
    norm_edge,
    one_subdivision,
    subdivide,
)
from .reports import CheckResult

PI_CAP = 9
DEFAULT_PATH_BUDGET = 10**7


# ---------------------------------------------------------------------------
# Square-free words

_MORPHISM = {"a": "abc", "b": "ac", "c": "b"}


def thue_word(n: int) -> str:
    """First n symbols of the fixed point of a->abc, b->ac, c->b from "a".

    Square-free over {a, b, c}; every prefix is the word of its length.
    """
    if n < 0:
        raise ValueError("length must be non-negative")
    if n == 0:
        return ""
    word = "a"
    while len(word) < n:
        word = "".join(_MORPHISM[ch] for ch in word)
    return word[:n]


def find_square(symbols: Sequence) -> tuple[int, int] | None:
    """Brute-force search for a factor ww; returns (start, half-length)."""
    n = len(symbols)
    for s in range(1, n // 2 + 1):
        for i in range(n - 2 * s + 1):
            if list(symbols[i:i + s]) == list(symbols[i + s:i + 2 * s]):
                return (i, s)
    return None


# ---------------------------------------------------------------------------
# Colourings

@dataclass(frozen=True)
class Colouring:
    """Total vertex colouring with small non-negative integer ids."""

    graph: Graph
    colours: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.colours) != self.graph.n:
            raise ValueError("colouring must cover every vertex")
        for c in self.colours:
            if not isinstance(c, int) or c < 0:
                raise ValueError("colour ids are non-negative integers")

    def used(self) -> int:
        return len(set(self.colours))


def canonical_colours(values: Sequence[Hashable]) -> tuple[int, ...]:
    """Relabel arbitrary colour values to 0..c-1 in first-appearance order."""
    seen: dict[Hashable, int] = {}
    out = []
    for v in values:
        if v not in seen:
            seen[v] = len(seen)
        out.append(seen[v])
    return tuple(out)


def colouring_of(graph: Graph, values: Sequence[Hashable]) -> Colouring:
    return Colouring(graph, canonical_colours(values))


# ---------------------------------------------------------------------------
# Repetition search

def find_repetition(
    g: Graph,
    colouring: Colouring | Sequence[int],
    max_half: int | None = None,
    budget: int = DEFAULT_PATH_BUDGET,
) -> tuple[int, ...] | None:
    """First repetitively coloured path in lexicographic order, or None.

    DFS over simple paths of up to 2*max_half vertices; a colouring is
    non-repetitive iff this returns None at max_half = floor(n/2). The
    budget counts extended path prefixes and overruns raise
    SearchBudgetExceeded instead of silently passing.
    """
    colours = colouring.colours if isinstance(colouring, Colouring) else tuple(colouring)
    if isinstance(colouring, Colouring) and colouring.graph != g:
        raise ValueError("colouring belongs to a different graph")
    if len(colours) != g.n:
        raise ValueError("colouring must cover every vertex")
    if max_half is None:
        max_half = g.n // 2
    if max_half < 1 or g.n < 2:
        return None
    max_len = 2 * max_half
    adj_sorted = [sorted(g.adj[v]) for v in range(g.n)]
    in_path = [False] * g.n
    steps = 0

    for start in range(g.n):
        path = [start]
        cols = [colours[start]]
        in_path[start] = True
        pointers = [0]
        steps += 1
        if steps > budget:
            raise SearchBudgetExceeded(f"path budget {budget} exhausted")
        while path:
            v = path[-1]
            nbrs = adj_sorted[v]
            i = pointers[-1]
            pushed = False
            while i < len(nbrs):
                w = nbrs[i]
                i += 1
                if in_path[w]:
                    continue
                pointers[-1] = i
                steps += 1
                if steps > budget:
                    for u in path:
                        in_path[u] = False
                    raise SearchBudgetExceeded(f"path budget {budget} exhausted")
                path.append(w)
                cols.append(colours[w])
                in_path[w] = True
                length = len(path)
                if length % 2 == 0:
                    s = length // 2
                    if cols[:s] == cols[s:]:
                        return tuple(path)
                pointers.append(0 if length < max_len else g.n)
                pushed = True
                break
            if not pushed:
                in_path[v] = False
                path.pop()
                cols.pop()
                pointers.pop()
    return None


def is_nonrepetitive(g: Graph, colouring, budget: int = DEFAULT_PATH_BUDGET) -> bool:
    return find_repetition(g, colouring, budget=budget) is None


# ---------------------------------------------------------------------------
# Exact minimum and first-found colouring searches

def _search_vertex_order(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


def _repetition_through(
    adj_sorted: list[list[int]],
    colours: list[int | None],
    v: int,
    max_len: int,
) -> bool:
    """Is there a fully coloured repetitive path containing v?

    Every such path splits at v into two vertex-disjoint arms; both arm
    families are enumerated by DFS over the coloured subgraph, and each
    combined sequence is tested at its own (even) length.
    """
    arm1 = [v]
    in_arms = {v}
    seq: list = [colours[v]]  # reversed(arm1) + arm2[1:], maintained in place

    def check() -> bool:
        length = len(seq)
        if length % 2:
            return False
        s = length // 2
        return seq[:s] == seq[s:]

    def extend2(cur: int) -> bool:
        if check():
            return True
        if len(seq) >= max_len:
            return False
        for w in adj_sorted[cur]:
            if w in in_arms or colours[w] is None:
                continue
            in_arms.add(w)
            seq.append(colours[w])
            hit = extend2(w)
            seq.pop()
            in_arms.discard(w)
            if hit:
                return True
        return False

    def extend1(cur: int) -> bool:
        # arm1 fixed so far; scan all arm2 completions, then grow arm1
        if extend2(v):
            return True
        if len(arm1) >= max_len:
            return False
        for w in adj_sorted[cur]:
            if w in in_arms or colours[w] is None:
                continue
            arm1.append(w)
            in_arms.add(w)
            seq.insert(0, colours[w])
            hit = extend1(w)
            seq.pop(0)
            in_arms.discard(w)
            arm1.pop()
            if hit:
                return True
        return False

    return extend1(v)


def find_nonrepetitive_colouring(
    g: Graph, k: int, budget: int = DEFAULT_PATH_BUDGET
) -> Colouring | None:
    """First canonical k-colouring with no repetitively coloured path,
    by backtracking with incremental repetition checks; None if there is
    none. Raises SearchBudgetExceeded when the node budget runs out."""
    if g.n == 0:
        return Colouring(g, ())
    order = _search_vertex_order(g)
    adj_sorted = [sorted(g.adj[v]) for v in range(g.n)]
    colours: list[int | None] = [None] * g.n
    max_len = 2 * (g.n // 2)
    nodes = 0

    def assign(idx: int, used: int) -> bool:
        nonlocal nodes
        if idx == g.n:
            return True
        v = order[idx]
        top = min(used + 1, k)
        for c in range(top):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"colouring budget {budget} exhausted")
            colours[v] = c
            if not _repetition_through(adj_sorted, colours, v, max_len):
                if assign(idx + 1, max(used, c + 1)):
                    return True
            colours[v] = None
        return False

    if not assign(0, 0):
        return None
    final = Colouring(g, canonical_colours([colours[v] for v in range(g.n)]))
    if find_repetition(g, final) is not None:
        raise RuntimeError("search returned a repetitive colouring (bug)")
    return final


def pi_exact(g: Graph, cap: int = PI_CAP, budget: int = DEFAULT_PATH_BUDGET) -> tuple[int, Colouring]:
    """Minimum colours in a non-repetitive colouring, with a witness."""
    if g.n > cap:
        raise SizeCapExceeded(f"exact search capped at {cap} vertices (got {g.n})")
    if g.n == 0:
        return 0, Colouring(g, ())
    for k in range(1, g.n + 1):
        witness = find_nonrepetitive_colouring(g, k, budget=budget)
        if witness is not None:
            return k, witness
    raise AssertionError("distinct colours are always non-repetitive")  # pragma: no cover


def some_nonrepetitive_colouring(
    g: Graph, start_k: int = 3, per_k_budget: int = 2 * 10**5
) -> Colouring:
    """A brute-forced non-repetitive colouring, not necessarily optimal:
    backtracking with an escalating colour count, so it always succeeds
    (n distinct colours are non-repetitive)."""
    k = max(1, min(start_k, g.n if g.n else 1))
    while True:
        try:
            found = find_nonrepetitive_colouring(g, k, budget=per_k_budget)
        except SearchBudgetExceeded:
            found = None
        if found is not None:
            return found
        if k >= g.n:
            raise AssertionError("escalation must stop at n colours")  # pragma: no cover
        k += 1


# ---------------------------------------------------------------------------
# Proper / star / acyclic / strong-star checks

MODES = ("proper", "star", "acyclic", "strong_star")


def check_star_acyclic(
    g: Graph, colouring: Colouring | Sequence[int], mode: str
) -> tuple[bool, tuple | None]:
    """Check a colouring against one of the bichromatic-subgraph modes.

    proper: no monochromatic edge. star: proper with no bichromatic
    4-vertex path. acyclic: proper with no bichromatic cycle.
    strong_star: proper and each pair of colour classes induces a star
    plus isolated vertices. Returns a violating witness when False.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    cols = colouring.colours if isinstance(colouring, Colouring) else tuple(colouring)
    for u, v in g.edges():
        if cols[u] == cols[v]:
            return False, (u, v)
    if mode == "proper":
        return True, None
    if mode == "star":
        for b in range(g.n):
            for c_ in sorted(g.adj[b]):
                for a in sorted(g.adj[b]):
                    if a == c_:
                        continue
                    for d_ in sorted(g.adj[c_]):
                        if d_ in (a, b):
                            continue
                        if len({cols[a], cols[b], cols[c_], cols[d_]}) <= 2:
                            return False, (a, b, c_, d_)
        return True, None

    pairs: dict[tuple[int, int], list[Edge]] = {}
    for u, v in g.edges():
        key = (min(cols[u], cols[v]), max(cols[u], cols[v]))
        pairs.setdefault(key, []).append((u, v))

    if mode == "strong_star":
        for edges in pairs.values():
            if len(edges) < 2:
                continue
            for centre in edges[0]:
                if all(centre in e for e in edges):
                    break
            else:
                # no single cover vertex: two disjoint edges must exist
                return False, _disjoint_edge_pair(edges)
        return True, None

    # acyclic: every two-class induced subgraph must be a forest
    for edges in pairs.values():
        cycle = _find_cycle(edges)
        if cycle is not None:
            return False, cycle
    return True, None


def _find_cycle(edges: list[Edge]) -> tuple[int, ...] | None:
    """A cycle in the graph spanned by `edges`, as a vertex tuple."""
    verts = sorted({v for e in edges for v in e})
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    parent: dict[int, int | None] = {}
    for root in verts:
        if root in parent:
            continue
        parent[root] = None
        stack = [root]
        while stack:
            u = stack.pop()
            for w in sorted(adj[u]):
                if w not in parent:
                    parent[w] = u
                    stack.append(w)
                elif parent[u] != w and parent[w] != u:
                    # non-tree edge: close the cycle through the tree
                    ancestors = {u}
                    x = u
                    while parent[x] is not None:
                        x = parent[x]
                        ancestors.add(x)
                    down = [w]
                    while down[-1] not in ancestors:
                        down.append(parent[down[-1]])
                    up = [u]
                    while up[-1] != down[-1]:
                        up.append(parent[up[-1]])
                    return tuple(up + list(reversed(down[:-1])))
    return None


def _disjoint_edge_pair(edges: list[Edge]) -> tuple[Edge, Edge] | None:
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            if not set(e) & set(f):
                return e, f
    return None


# ---------------------------------------------------------------------------
# Subdivision colourings

def colour_subdivision(g: Graph, c: Colouring, sg: SubdividedGraph) -> Colouring:
    """Extend a non-repetitive colouring of g across a subdivision:
    one fresh colour for a (<=1)-subdivision, two for (<=2), three fresh
    colours via a square-free word otherwise."""
    if sg.base != g:
        raise ValueError("subdivision is not over the given graph")
    if c.graph != g:
        raise ValueError("colouring is not over the given graph")
    if find_repetition(g, c) is not None:
        raise ValueError("base colouring is repetitive")
    base = canonical_colours(c.colours)
    k = len(set(base))
    out: list[int | None] = [None] * sg.result.n
    for v in range(g.n):
        out[v] = base[v]
    tmax = sg.max_divisions()
    if tmax <= 1:
        for _, seq in sg.divisions:
            for x in seq:
                out[x] = k
    elif tmax == 2:
        # two rounds of single subdivisions: the vertex closer to the
        # larger endpoint is first-round, the other second-round
        for _, seq in sg.divisions:
            if len(seq) == 1:
                out[seq[0]] = k
            elif len(seq) == 2:
                out[seq[0]] = k + 1
                out[seq[1]] = k
    else:
        letters = {ch: k + i for i, ch in enumerate("abc")}
        word = thue_word(tmax)
        for _, seq in sg.divisions:
            for i, x in enumerate(seq):
                out[x] = letters[word[i]]
    return Colouring(sg.result, canonical_colours(out))


# ---------------------------------------------------------------------------
# Rooted forests

@dataclass(frozen=True)
class RootedForest:
    """An acyclic graph with one root per component and parent pointers
    oriented toward the roots."""

    forest: Graph
    roots: tuple[int, ...]
    parent: tuple[int | None, ...]

    @classmethod
    def from_roots(cls, g: Graph, roots: Iterable[int]) -> "RootedForest":
        comps = connected_components(g)
        if g.m != g.n - len(comps):
            raise ValueError("graph is not a forest")
        chosen = sorted(set(roots))
        by_comp: dict[int, list[int]] = {i: [] for i in range(len(comps))}
        comp_of = {v: i for i, comp in enumerate(comps) for v in comp}
        for r in chosen:
            by_comp[comp_of[r]].append(r)
        if any(len(v) != 1 for v in by_comp.values()):
            raise ValueError("need exactly one root per component")
        parent: list[int | None] = [None] * g.n
        for r in chosen:
            dist = bfs_distances(g, r)
            for v, d_ in dist.items():
                if v != r:
                    parent[v] = min(w for w in g.adj[v] if dist.get(w) == d_ - 1)
        return cls(g, tuple(chosen), tuple(parent))

    @classmethod
    def least_roots(cls, g: Graph) -> "RootedForest":
        return cls.from_roots(g, [min(comp) for comp in connected_components(g)])

    def arcs(self) -> list[tuple[int, int]]:
        """(child, parent) pairs, oriented toward the roots."""
        return [(v, p) for v, p in enumerate(self.parent) if p is not None]


def forest_classes_from_arcs(
    f: RootedForest, arc_colour: Mapping[tuple[int, int], int]
) -> Colouring:
    """Vertex classes such that between any two classes, all arcs share
    one direction and one arc colour, using at most 2k+1 classes.

    Construction: the class of a child is the class of its parent plus
    the arc colour, modulo 2k+1; the pairwise property is audited before
    returning (a failure would be a construction bug)."""
    arcs = f.arcs()
    if set(arc_colour) != set(arcs):
        raise ValueError("arc colours must cover exactly the forest arcs")
    k = 0
    for value in arc_colour.values():
        if not isinstance(value, int) or value < 1:
            raise ValueError("arc colours are integers in 1..k")
        k = max(k, value)
    modulus = 2 * k + 1
    cls: list[int | None] = [None] * f.forest.n
    for r in f.roots:
        cls[r] = 0
        for v, _ in sorted(bfs_distances(f.forest, r).items(), key=lambda t: (t[1], t[0])):
            if cls[v] is None:
                cls[v] = (cls[f.parent[v]] + arc_colour[(v, f.parent[v])]) % modulus

    seen: dict[tuple[int, int], tuple[int, int, int]] = {}
    for v, p in arcs:
        key = (min(cls[v], cls[p]), max(cls[v], cls[p]))
        info = (cls[v], cls[p], arc_colour[(v, p)])
        if seen.setdefault(key, info) != info:
            raise RuntimeError("class-pair property failed (construction bug)")
    if len(set(cls)) > modulus:
        raise RuntimeError("class budget exceeded (construction bug)")
    return Colouring(f.forest, canonical_colours(cls))


# ---------------------------------------------------------------------------
# Forest and graph colour transfer

def _subdivision_edge_colours(sg: SubdividedGraph, c: Colouring) -> dict[Edge, int]:
    return {e: c.colours[seq[0]] for e, seq in sg.divisions}


def audit_forest_colouring(
    f: RootedForest, c: Colouring, q: Colouring
) -> dict[str, bool]:
    """The four mechanical postconditions of the forest construction:
    (a) q-equal edge pairs carry equal division colours, (b) q-equal
    non-roots have equal parent-edge colours, (c) roots are q-distinct
    from non-roots, (d) q refines the subdivision's vertex colours."""
    sub = one_subdivision(f.forest)
    if c.graph != sub.result:
        raise ValueError("colouring is not over the 1-subdivision of the forest")
    ce = _subdivision_edge_colours(sub, c)
    qv = q.colours
    edges = f.forest.edges()
    roots = set(f.roots)

    a = True
    for i, (v, w) in enumerate(edges):
        for x, y in edges[i:]:
            matches = (qv[v] == qv[x] and qv[w] == qv[y]) or (
                qv[v] == qv[y] and qv[w] == qv[x]
            )
            if matches and ce[(v, w)] != ce[(x, y)]:
                a = False
    b = True
    nonroots = [v for v in range(f.forest.n) if v not in roots]
    for v in nonroots:
        for x in nonroots:
            if qv[v] == qv[x]:
                ev = norm_edge(v, f.parent[v])
                ex = norm_edge(x, f.parent[x])
                if ce[ev] != ce[ex]:
                    b = False
    c_ok = all(qv[r] != qv[v] for r in roots for v in nonroots)
    d = all(
        c.colours[v] == c.colours[w]
        for v in range(f.forest.n)
        for w in range(f.forest.n)
        if qv[v] == qv[w]
    )
    return {"a": a, "b": b, "c": c_ok, "d": d}


def nonrep_forest(f: RootedForest, c: Colouring) -> Colouring:
    """Pull a non-repetitive colouring of the 1-subdivision of a forest
    back to the forest itself, with at most k(k+1)(2k+1) colours.

    Each vertex gets the triple (own subdivision colour, class from the
    arc-colour construction, parent-edge colour or a root marker). The
    postconditions are audited and the output is verified non-repetitive.
    """
    sub = one_subdivision(f.forest)
    if c.graph != sub.result:
        raise ValueError("colouring is not over the 1-subdivision of the forest")
    if find_repetition(sub.result, c) is not None:
        raise ValueError("subdivision colouring is repetitive")
    k = c.used()
    ce = _subdivision_edge_colours(sub, c)
    distinct_edge_cols = sorted({ce[e] for e in ce})
    arc_index = {val: i + 1 for i, val in enumerate(distinct_edge_cols)}
    arc_colour = {
        (v, p): arc_index[ce[norm_edge(v, p)]] for v, p in f.arcs()
    }
    classes = forest_classes_from_arcs(f, arc_colour)
    triples = []
    for v in range(f.forest.n):
        if f.parent[v] is None:
            marker: tuple = ("root",)
        else:
            marker = ("edge", ce[norm_edge(v, f.parent[v])])
        triples.append((c.colours[v], classes.colours[v], marker))
    q = Colouring(f.forest, canonical_colours(triples))
    audits = audit_forest_colouring(f, c, q)
    if not all(audits.values()):
        raise RuntimeError(f"forest colouring postconditions failed (bug): {audits}")
    if q.used() > k * (k + 1) * (2 * k + 1):
        raise RuntimeError("forest colour budget exceeded (bug)")
    if find_repetition(f.forest, q) is not None:
        raise RuntimeError("forest colouring is repetitive (bug)")
    return q


def acyclic_from_subdivision(g: Graph, c: Colouring) -> Colouring:
    """Acyclic colouring of g from a non-repetitive colouring of its
    1-subdivision, with at most k * 2**(2k^2) colours.

    Signature of a vertex: its own colour plus the set of signed
    (edge colour, endpoint colour) pairs over its incident arcs, edges
    oriented from smaller to larger id."""
    sub = one_subdivision(g)
    if c.graph != sub.result:
        raise ValueError("colouring is not over the 1-subdivision of g")
    if find_repetition(sub.result, c) is not None:
        raise ValueError("subdivision colouring is repetitive")
    k = c.used()
    ce = _subdivision_edge_colours(sub, c)
    signatures = []
    for v in range(g.n):
        items: set[tuple] = {("v", c.colours[v])}
        for w in sorted(g.adj[v]):
            e = norm_edge(v, w)
            if v < w:
                items.add(("+", ce[e], c.colours[w]))
            else:
                items.add(("-", ce[e], c.colours[w]))
        signatures.append(frozenset(items))
    q = Colouring(g, canonical_colours(signatures))
    ok, witness = check_star_acyclic(g, q, "acyclic")
    if not ok:
        raise RuntimeError(f"acyclic construction failed (bug): {witness}")
    if q.used() > k * 2 ** (2 * k * k):
        raise RuntimeError("acyclic colour budget exceeded (bug)")
    return q


def nonrep_graph(g: Graph, p: Colouring, c: Colouring) -> Colouring:
    """Non-repetitive colouring of g from an acyclic colouring p of g and
    a non-repetitive colouring c of its 1-subdivision, with at most
    l * (k(k+1)(2k+1))**(l-1) colours.

    Runs the forest construction on every two-class forest of p and
    records, per vertex, its p-colour plus its forest colours."""
    if p.graph != g:
        raise ValueError("acyclic colouring is not over g")
    ok, witness = check_star_acyclic(g, p, "acyclic")
    if not ok:
        raise ValueError(f"colouring p is not acyclic: {witness}")
    sub = one_subdivision(g)
    if c.graph != sub.result:
        raise ValueError("colouring c is not over the 1-subdivision of g")
    if find_repetition(sub.result, c) is not None:
        raise ValueError("subdivision colouring is repetitive")

    ce = _subdivision_edge_colours(sub, c)
    values = sorted(set(p.colours))
    ell = len(values)
    k = c.used()
    forest_colours: dict[tuple[int, int], dict[int, int]] = {}
    for ai in range(ell):
        for bi in range(ai + 1, ell):
            i, j = values[ai], values[bi]
            verts = sorted(v for v in range(g.n) if p.colours[v] in (i, j))
            local = {v: t for t, v in enumerate(verts)}
            gij = g.induced(verts)
            fij = RootedForest.least_roots(gij)
            sij = one_subdivision(gij)
            vals: list[int | None] = [None] * sij.result.n
            for v in verts:
                vals[local[v]] = c.colours[v]
            for (a, b), seq in sij.divisions:
                ge = norm_edge(verts[a], verts[b])
                vals[seq[0]] = ce[ge]
            cij = Colouring(sij.result, canonical_colours(vals))
            qij = nonrep_forest(fij, cij)
            forest_colours[(i, j)] = {v: qij.colours[local[v]] for v in verts}

    labels = []
    for v in range(g.n):
        own = p.colours[v]
        parts = frozenset(
            (j, forest_colours[(min(own, j), max(own, j))][v])
            for j in values
            if j != own
        )
        labels.append((own, parts))
    q = Colouring(g, canonical_colours(labels))
    if find_repetition(g, q) is not None:
        raise RuntimeError("graph colouring construction is repetitive (bug)")
    budget = ell * (k * (k + 1) * (2 * k + 1)) ** max(ell - 1, 0)
    if q.used() > budget:
        raise RuntimeError("graph colour budget exceeded (bug)")
    return q


def pi_from_subdivision(g: Graph, sg: SubdividedGraph, c: Colouring) -> Colouring:
    """Non-repetitive colouring of g from one of any (<=1)-subdivision:
    pad to the full 1-subdivision with one fresh colour, derive an
    acyclic colouring, then run the two-class forest assembly."""
    if sg.base != g:
        raise ValueError("subdivision is not over the given graph")
    if sg.max_divisions() > 1:
        raise ValueError("need a (<=1)-subdivision")
    if c.graph != sg.result:
        raise ValueError("colouring is not over the subdivision")
    if find_repetition(sg.result, c) is not None:
        raise ValueError("subdivision colouring is repetitive")
    base = canonical_colours(c.colours)
    fresh = len(set(base))
    full = one_subdivision(g)
    partial_divs = sg.division_map()
    vals: list[int | None] = [None] * full.result.n
    for v in range(g.n):
        vals[v] = base[v]
    for e, seq in full.divisions:
        old = partial_divs[e]
        vals[seq[0]] = base[old[0]] if old else fresh
    c_full = Colouring(full.result, canonical_colours(vals))
    if find_repetition(full.result, c_full) is not None:
        raise RuntimeError("padding produced a repetitive colouring (bug)")
    p = acyclic_from_subdivision(g, c_full)
    return nonrep_graph(g, p, c_full)


# ---------------------------------------------------------------------------
# Complete-graph subdivisions

@dataclass(frozen=True)
class SubdivisionColouring:
    subdivision: SubdividedGraph
    colouring: Colouring
    colours_used: int
    bound: int


def _kn_prime_labels(n: int) -> list[tuple[int, int]]:
    side = 1
    while side**3 < n:
        side += 1
    labels = [(i, k) for i in range(1, side * side + 1) for k in range(1, side + 1)]
    return labels[:n]


def kn_prime_bound(n: int) -> int:
    side = 1
    while side**3 < n:
        side += 1
    return side * side + side + side * (side - 1) // 2


def colour_kn_prime(n: int) -> SubdivisionColouring:
    """Colouring of the 1-subdivision of the n-clique using at most
    N^2 + N + C(N, 2) colours for N = ceil(n^(1/3)).

    Originals carry their first label coordinate; a division vertex
    carries the second coordinate of its smaller-first-coordinate
    endpoint across groups, or the coordinate pair inside a group."""
    if n < 2:
        raise ValueError("needs n >= 2")
    labels = _kn_prime_labels(n)
    g = complete_graph(n)
    sub = one_subdivision(g)
    vals: list = [("A", labels[v][0]) for v in range(n)]
    vals.extend([None] * (sub.result.n - n))
    for (a, b), seq in sub.divisions:
        (ia, ka), (ib, kb) = labels[a], labels[b]
        if ia == ib:
            colour = ("C", min(ka, kb), max(ka, kb))
        else:
            colour = ("B", ka if ia < ib else kb)
        vals[seq[0]] = colour
    colouring = Colouring(sub.result, canonical_colours(vals))
    bound = kn_prime_bound(n)
    if colouring.used() > bound:
        raise RuntimeError("complete-graph colour budget exceeded (bug)")
    return SubdivisionColouring(sub, colouring, colouring.used(), bound)


def kn_prime_colour_count(n: int) -> int:
    """Distinct colours the construction would use, without building the
    graph; for count-only sweeps at large n."""
    if n < 2:
        raise ValueError("needs n >= 2")
    labels = _kn_prime_labels(n)
    colours = {("A", i) for i, _ in labels}
    for a in range(n):
        ia, ka = labels[a]
        for b in range(a + 1, n):
            ib, kb = labels[b]
            if ia == ib:
                colours.add(("C", min(ka, kb), max(ka, kb)))
            else:
                colours.add(("B", ka if ia < ib else kb))
    return len(colours)


def _knd_labels(n: int, d: int, a_size: int, b_size: int) -> list[tuple[int, ...]]:
    labels = []
    for v in range(n):
        head = v // b_size**d + 1
        rem = v % b_size**d
        digits = []
        for i in range(d):
            digits.append(rem // b_size ** (d - 1 - i) % b_size + 1)
        labels.append((head, *digits))
    return labels


def colour_knd(n: int, d: int, a_size: int, b_size: int) -> SubdivisionColouring:
    """Colouring of the d-subdivision of the n-clique with at most
    A + 8B colours, valid whenever n <= A * B**d (A >= 1, B >= 2, d >= 2).

    Originals are labelled by mixed-radix coordinates; each transition is
    rooted at its lexicographically smaller endpoint and its i-th division
    vertex records (coordinate match flag, i-th word symbol, root's i-th
    coordinate), where the word is 0 followed by a square-free word."""
    if a_size < 1 or b_size < 2 or d < 2:
        raise ValueError("needs A >= 1, B >= 2, d >= 2")
    if not 1 <= n <= a_size * b_size**d:
        raise ValueError("needs 1 <= n <= A * B**d")
    labels = _knd_labels(n, d, a_size, b_size)
    word = [0] + [{"a": 1, "b": 2, "c": 3}[ch] for ch in thue_word(d - 1)]
    g = complete_graph(n)
    sub = subdivide(g, {e: d for e in g.edges()})
    vals: list = [("A", labels[v][0]) for v in range(n)]
    vals.extend([None] * (sub.result.n - n))
    for (u, w), seq in sub.divisions:
        lu, lw = labels[u], labels[w]  # u < w, and labels sort like ids
        for i, x in enumerate(seq, start=1):
            vals[x] = ("D", 1 if lu[i] == lw[i] else 0, word[i - 1], lu[i])
    colouring = Colouring(sub.result, canonical_colours(vals))
    bound = a_size + 8 * b_size
    if colouring.used() > bound:
        raise RuntimeError("subdivision colour budget exceeded (bug)")
    return SubdivisionColouring(sub, colouring, colouring.used(), bound)


@dataclass(frozen=True)
class KndBoundReport:
    n: int
    d: int
    pi: int
    lower: float
    upper: int | None
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def audit_knd_lower_bound(n: int, d: int, cap: int = PI_CAP) -> KndBoundReport:
    """Sandwich the exact minimum for the d-subdivision of the n-clique
    between (n/2)**(1/(d+1)) and the explicit construction's count."""
    g = complete_graph(n)
    sub = subdivide(g, {e: d for e in g.edges()})
    if sub.result.n > cap:
        raise SizeCapExceeded(
            f"subdivision has {sub.result.n} vertices, above the exact cap {cap}"
        )
    pi, _ = pi_exact(sub.result, cap=cap)
    lower = (n / 2) ** (1 / (d + 1))
    checks = [CheckResult("pi_at_least_root", pi >= lower - 1e-12, pi, lower)]
    upper: int | None = None
    if d >= 2 and n >= 1:
        a_size = max(1, math.ceil(n / 2**d))
        built = colour_knd(n, d, a_size, 2)
        upper = built.colours_used
        checks.append(CheckResult("pi_at_most_construction", pi <= upper, pi, upper))
    return KndBoundReport(n, d, pi, lower, upper, tuple(checks))
