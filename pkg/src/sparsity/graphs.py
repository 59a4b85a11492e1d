"""Core graph machinery: simple graphs on dense 0-based vertex ids,
subdivisions with provenance, component contraction, radius certificates,
and the edge-list / graph6 text formats.

Everything here is immutable and hashable; operations are pure functions.
Edges are normalised tuples ``(u, v)`` with ``u < v`` throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import GraphFormatError, SizeCapExceeded

Edge = tuple[int, int]

ISOMORPHISM_CAP = 10


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertex set exactly 0..n-1.

    Invariants enforced at construction: no self-loops, symmetric
    adjacency, all neighbour ids in range.
    """

    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency must have exactly n entries")
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbour {v} of {u} out of range")
                if v == u:
                    raise ValueError(f"self-loop at vertex {u}")
                if u not in self.adj[v]:
                    raise ValueError(f"adjacency not symmetric on ({u}, {v})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(s) for s in adj))

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(s) for s in self.adj), default=0)

    def density(self) -> Fraction:
        """Edge/vertex ratio; undefined for the empty graph."""
        if self.n == 0:
            raise ValueError("density of the order-0 graph is undefined")
        return Fraction(self.m, self.n)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled to 0..k-1 in sorted vertex order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        keep = set(vs)
        es = [(index[u], index[v]) for u, v in self.edges() if u in keep and v in keep]
        return Graph.from_edges(len(vs), es)


# ---------------------------------------------------------------------------
# Small constructors used throughout tests and demos.

def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


# ---------------------------------------------------------------------------
# Traversal helpers.

def bfs_distances(g: Graph, source: int, within: frozenset[int] | None = None) -> dict[int, int]:
    """Distances from source; restricted to the induced subgraph on `within`."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in sorted(g.adj[u]):
            if within is not None and v not in within:
                continue
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen: set[int] = set()
    out = []
    for v in range(g.n):
        if v not in seen:
            comp = frozenset(bfs_distances(g, v))
            seen |= comp
            out.append(comp)
    return out


def is_connected_subset(g: Graph, part: frozenset[int]) -> bool:
    if not part:
        return False
    start = min(part)
    return len(bfs_distances(g, start, within=part)) == len(part)


def adjacency_masks(g: Graph) -> list[int]:
    """Neighbourhoods as bitmasks, for the exhaustive-search kernels."""
    return [sum(1 << v for v in g.adj[u]) for u in range(g.n)]


# ---------------------------------------------------------------------------
# Radius certificates.

@dataclass(frozen=True)
class RadiusCertificate:
    """Witness that `component` has radius `radius` from `centre` in the
    induced subgraph."""

    component: frozenset[int]
    centre: int
    radius: int


def radius_certificate(g: Graph, part: Iterable[int]) -> RadiusCertificate:
    """Centre minimising eccentricity inside the induced subgraph.

    The centre is the least vertex among minimisers, so the certificate is
    deterministic. Raises ValueError if the part is empty or disconnected.
    """
    vs = frozenset(part)
    if not vs:
        raise ValueError("empty part has no radius")
    best: tuple[int, int] | None = None
    for c in sorted(vs):
        dist = bfs_distances(g, c, within=vs)
        if len(dist) != len(vs):
            raise ValueError("part does not induce a connected subgraph")
        ecc = max(dist.values())
        if best is None or ecc < best[1]:
            best = (c, ecc)
    assert best is not None
    return RadiusCertificate(vs, best[0], best[1])


# ---------------------------------------------------------------------------
# Subdivision.

# provenance entries: ("original", v) or ("division", (u, v), index)
Provenance = tuple


@dataclass(frozen=True)
class SubdividedGraph:
    """A base graph, per-edge division-vertex sequences, the resulting
    graph, and total provenance for every result vertex.

    Original vertices keep their base ids; division vertices are numbered
    from ``base.n`` upward in sorted-edge order, then along the path from
    the smaller endpoint.
    """

    base: Graph
    divisions: tuple[tuple[Edge, tuple[int, ...]], ...]
    result: Graph
    provenance: tuple[Provenance, ...]

    def division_map(self) -> dict[Edge, tuple[int, ...]]:
        return dict(self.divisions)

    def max_divisions(self) -> int:
        return max((len(seq) for _, seq in self.divisions), default=0)

    def path_of(self, u: int, v: int) -> list[int]:
        """The result-graph path replacing base edge (u, v), from u to v."""
        e = norm_edge(u, v)
        seq = self.division_map()[e]
        inner = list(seq) if u < v else list(reversed(seq))
        return [u, *inner, v]


def subdivide(g: Graph, counts: Mapping[tuple[int, int], int]) -> SubdividedGraph:
    """Replace each edge by a path with the requested number of new
    internal vertices. `counts` must cover exactly the edges of g."""
    norm: dict[Edge, int] = {}
    for e, t in counts.items():
        norm[norm_edge(*e)] = t
    edges = g.edges()
    edge_set = set(edges)
    missing = [e for e in edges if e not in norm]
    if missing:
        raise ValueError(f"counts missing edges: {missing}")
    unknown = sorted(e for e in norm if e not in edge_set)
    if unknown:
        raise ValueError(f"counts mention non-edges: {unknown}")
    if any(t < 0 for t in norm.values()):
        raise ValueError("division counts must be non-negative")

    nxt = g.n
    prov: list[Provenance] = [("original", v) for v in range(g.n)]
    div_pairs: list[tuple[Edge, tuple[int, ...]]] = []
    new_edges: list[Edge] = []
    for u, v in edges:
        t = norm[(u, v)]
        ids = tuple(range(nxt, nxt + t))
        nxt += t
        prov.extend(("division", (u, v), i) for i in range(t))
        path = [u, *ids, v]
        new_edges.extend(zip(path, path[1:]))
        div_pairs.append(((u, v), ids))
    result = Graph.from_edges(nxt, new_edges)
    return SubdividedGraph(g, tuple(div_pairs), result, tuple(prov))


def one_subdivision(g: Graph) -> SubdividedGraph:
    return subdivide(g, {e: 1 for e in g.edges()})


# ---------------------------------------------------------------------------
# Contraction.

def contract_components(
    g: Graph, parts: Sequence[Iterable[int]]
) -> tuple[Graph, dict[int, int]]:
    """Contract each part (which must induce a connected subgraph) to a
    single vertex; vertices in no part become singletons.

    Returns the simple quotient graph and the projection map. Quotient ids
    follow the input part order, then uncovered vertices in ascending order.
    """
    sets = [frozenset(p) for p in parts]
    seen: set[int] = set()
    for s in sets:
        if not s:
            raise ValueError("empty part")
        if s & seen:
            raise ValueError("parts overlap")
        if not s <= set(range(g.n)):
            raise ValueError("part mentions unknown vertex")
        if not is_connected_subset(g, s):
            raise ValueError(f"part {sorted(s)} does not induce a connected subgraph")
        seen |= s
    blocks = list(sets) + [frozenset([v]) for v in range(g.n) if v not in seen]
    projection = {v: i for i, block in enumerate(blocks) for v in block}
    qedges = {
        norm_edge(projection[u], projection[v])
        for u, v in g.edges()
        if projection[u] != projection[v]
    }
    return Graph.from_edges(len(blocks), sorted(qedges)), projection


# ---------------------------------------------------------------------------
# Edge-list format.

def parse_edge_list(text: str) -> Graph:
    """Parse "u v" lines; '#' starts a comment, blank lines are skipped.

    The vertex count is 1 + the largest id mentioned; duplicate edges
    collapse; self-loops are rejected.
    """
    edges: list[tuple[int, int]] = []
    top = -1
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphFormatError(f"line {ln}: expected 'u v', got {line!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(f"line {ln}: non-integer vertex id in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {ln}: negative vertex id")
        if u == v:
            raise GraphFormatError(f"line {ln}: self-loop at {u}")
        top = max(top, u, v)
        edges.append((u, v))
    return Graph.from_edges(top + 1, edges)


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


# ---------------------------------------------------------------------------
# graph6 format (short form only, n <= 62).

def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):].strip()
    if not s:
        raise GraphFormatError("empty graph6 payload")
    if any(not (63 <= ord(ch) <= 126) for ch in s):
        raise GraphFormatError("graph6 bytes must be in the range 63..126")
    n = ord(s[0]) - 63
    if n == 63:
        raise GraphFormatError("long graph6 forms (n > 62) are not supported")
    body = s[1:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphFormatError(
            f"graph6 payload for n={n} needs {need} data bytes, got {len(body)}"
        )
    bits: list[int] = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits in graph6 payload")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph.from_edges(n, edges)


def format_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GraphFormatError("graph6 output supports n <= 62 only")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph(text: str) -> Graph:
    """Parse either edge-list or graph6 input, auto-detected.

    Lines of two integers mean edge-list; a single token of graph6 bytes
    means graph6. graph6 bytes are all >= '?' (63), so the formats cannot
    collide.
    """
    stripped = [
        ln.split("#", 1)[0].strip()
        for ln in text.splitlines()
        if ln.split("#", 1)[0].strip()
    ]
    if not stripped:
        return empty_graph(0)

    def looks_like_edge(line: str) -> bool:
        fields = line.split()
        return len(fields) == 2 and all(
            f.lstrip("-").isdigit() for f in fields
        )

    if all(looks_like_edge(ln) for ln in stripped):
        return parse_edge_list(text)
    if len(stripped) == 1 and " " not in stripped[0]:
        return parse_graph6(stripped[0])
    raise GraphFormatError("input is neither an edge list nor a graph6 payload")


# ---------------------------------------------------------------------------
# Exhaustive isomorphism for tiny graphs (oracle-grade only).

def find_isomorphism(g: Graph, h: Graph, cap: int = ISOMORPHISM_CAP) -> tuple[int, ...] | None:
    """Exhaustive search for an isomorphism g -> h; None if there is none.

    Capped because the search is factorial; it exists to certify tiny
    oracle results, not to compare real inputs.
    """
    if max(g.n, h.n) > cap:
        raise SizeCapExceeded(f"isomorphism search capped at {cap} vertices")
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return None

    mapping: list[int] = []
    used = [False] * h.n

    def extend(u: int) -> bool:
        if u == g.n:
            return True
        for w in range(h.n):
            if used[w] or g.degree(u) != h.degree(w):
                continue
            ok = True
            for prev in range(u):
                if g.has_edge(prev, u) != h.has_edge(mapping[prev], w):
                    ok = False
                    break
            if ok:
                mapping.append(w)
                used[w] = True
                if extend(u + 1):
                    return True
                used[w] = False
                mapping.pop()
        return False

    return tuple(mapping) if extend(0) else None
