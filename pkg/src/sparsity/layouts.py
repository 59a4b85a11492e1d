"""Queue and stack layouts, exact page numbers for tiny graphs, the
queue-preserving contraction, subdivision density audits, and the poset
jump-number link.

An ordered graph places vertices on a line; a page of edges is a queue
when no two of its edges are nested, and a stack when no two cross.
The stack-number definition is implemented as minimum stacks (the usual
meaning), not the queue wording it is sometimes misprinted with.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .errors import GraphFormatError, MalformedLayoutError, SizeCapExceeded
from .graphs import Edge, Graph, SubdividedGraph, bfs_distances, norm_edge, radius_certificate
from .reports import CheckResult

QUEUE_STACK_CAP = 8
JUMP_CAP = 9

QUEUE = "queue"
STACK = "stack"


@dataclass(frozen=True)
class Page:
    kind: str
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.kind not in (QUEUE, STACK):
            raise ValueError(f"page kind must be 'queue' or 'stack', got {self.kind!r}")


@dataclass(frozen=True)
class Layout:
    """A vertex order (position i holds order[i]) plus edge pages."""

    order: tuple[int, ...]
    pages: tuple[Page, ...]

    def positions(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def kind(self) -> str:
        kinds = {p.kind for p in self.pages}
        if len(kinds) == 1:
            return next(iter(kinds))
        return "mixed" if kinds else QUEUE


def _span(pos: Mapping[int, int], e: Edge) -> tuple[int, int]:
    a, b = pos[e[0]], pos[e[1]]
    return (a, b) if a < b else (b, a)


def _nested(s: tuple[int, int], t: tuple[int, int]) -> bool:
    return (s[0] < t[0] and t[1] < s[1]) or (t[0] < s[0] and s[1] < t[1])


def _crossing(s: tuple[int, int], t: tuple[int, int]) -> bool:
    return (s[0] < t[0] < s[1] < t[1]) or (t[0] < s[0] < t[1] < s[1])


def validate_layout(g: Graph, layout: Layout) -> tuple[bool, list[tuple[int, Edge, Edge]]]:
    """True plus an empty list if every page constraint holds; otherwise
    False plus the offending (page, edge, edge) triples.

    Raises MalformedLayoutError when the order is not a permutation of the
    vertices or the pages do not partition the edge set.
    """
    if sorted(layout.order) != list(range(g.n)):
        raise MalformedLayoutError("order is not a permutation of the vertices")
    edge_set = set(g.edges())
    assigned: list[Edge] = []
    for page in layout.pages:
        for e in page.edges:
            if e != norm_edge(*e) or e not in edge_set:
                raise MalformedLayoutError(f"page edge {e} is not an edge of the graph")
            assigned.append(e)
    if len(assigned) != len(edge_set) or set(assigned) != edge_set:
        raise MalformedLayoutError("pages do not partition the edge set")

    pos = layout.positions()
    violations: list[tuple[int, Edge, Edge]] = []
    for pidx, page in enumerate(layout.pages):
        bad = _nested if page.kind == QUEUE else _crossing
        edges = sorted(page.edges)
        for i, e in enumerate(edges):
            se = _span(pos, e)
            for f in edges[i + 1:]:
                if bad(se, _span(pos, f)):
                    violations.append((pidx, e, f))
    return (not violations, violations)


# ---------------------------------------------------------------------------
# Exact queue- and stack-number

def _conflict_pairs(pos, edges, kind) -> list[tuple[int, int]]:
    bad = _nested if kind == QUEUE else _crossing
    spans = [_span(pos, e) for e in edges]
    out = []
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if bad(spans[i], spans[j]):
                out.append((i, j))
    return out


def _colourable(nconf: list[set[int]], k: int, order: Sequence[int]) -> list[int] | None:
    """Assign pages 0..k-1 to edges avoiding conflicts; first-fit DFS."""
    colours: dict[int, int] = {}

    def go(idx: int) -> bool:
        if idx == len(order):
            return True
        e = order[idx]
        used = {colours[f] for f in nconf[e] if f in colours}
        for c in range(k):
            if c not in used:
                colours[e] = c
                if go(idx + 1):
                    return True
                del colours[e]
            if c not in used and c == len({v for v in colours.values()}):
                break  # fresh pages are interchangeable
        return False

    return [colours[i] for i in range(len(order))] if go(0) else None


def _greedy_clique(nconf: list[set[int]]) -> int:
    best = 0
    order = sorted(range(len(nconf)), key=lambda v: -len(nconf[v]))
    for start in order[:8]:
        clique = [start]
        for v in order:
            if v != start and all(v in nconf[u] for u in clique):
                clique.append(v)
        best = max(best, len(clique))
    return best


def _orderings(n: int, search: str) -> Iterable[tuple[int, ...]]:
    if n <= 1:
        yield tuple(range(n))
        return
    perms = permutations(range(n))
    if search == "reverse":
        perms = reversed(list(perms))
    for p in perms:
        if p[0] < p[-1]:  # reversal symmetry: reversing preserves both constraints
            yield p


def _page_number(
    g: Graph, kind: str, cap: int, search: str
) -> tuple[int, Layout]:
    if g.n > cap:
        raise SizeCapExceeded(f"exhaustive layout search capped at {cap} vertices (got {g.n})")
    edges = g.edges()
    if not edges:
        return 0, Layout(tuple(range(g.n)), ())
    for k in range(1, len(edges) + 1):
        for order in _orderings(g.n, search):
            pos = {v: i for i, v in enumerate(order)}
            conflicts = _conflict_pairs(pos, edges, kind)
            nconf: list[set[int]] = [set() for _ in edges]
            for i, j in conflicts:
                nconf[i].add(j)
                nconf[j].add(i)
            if _greedy_clique(nconf) > k:
                continue
            edge_order = sorted(range(len(edges)), key=lambda i: -len(nconf[i]))
            if search == "reverse":
                edge_order = list(reversed(edge_order))
            assignment = _colourable(nconf, k, edge_order)
            if assignment is not None:
                pages = []
                for c in range(max(assignment) + 1):
                    members = frozenset(edges[i] for i in range(len(edges)) if assignment[i] == c)
                    if members:
                        pages.append(Page(kind, members))
                return k, Layout(order, tuple(pages))
    raise AssertionError("one page per edge always suffices")  # pragma: no cover


def queue_number(g: Graph, cap: int = QUEUE_STACK_CAP, search: str = "forward") -> tuple[int, Layout]:
    """Minimum number of queue pages over all vertex orders, with witness.

    `search` selects one of two independent exhaustive search orders;
    both must agree on the minimum.
    """
    return _page_number(g, QUEUE, cap, search)


def stack_number(g: Graph, cap: int = QUEUE_STACK_CAP, search: str = "forward") -> tuple[int, Layout]:
    """Minimum number of stack pages (book thickness), with witness."""
    return _page_number(g, STACK, cap, search)


def first_fit_layout(g: Graph, order: Sequence[int], kind: str = QUEUE) -> Layout:
    """Greedy page assignment under a fixed vertex order; always valid,
    not necessarily minimal. Handy for layouts above the exhaustive cap."""
    pos = {v: i for i, v in enumerate(order)}
    bad = _nested if kind == QUEUE else _crossing
    pages: list[set[Edge]] = []
    for e in sorted(g.edges(), key=lambda e: _span(pos, e)):
        se = _span(pos, e)
        for page in pages:
            if all(not bad(se, _span(pos, f)) for f in page):
                page.add(e)
                break
        else:
            pages.append({e})
    return Layout(tuple(order), tuple(Page(kind, frozenset(p)) for p in pages))


# ---------------------------------------------------------------------------
# Queue-preserving contraction

def queue_contraction_page_bound(k: int, r: int) -> int:
    """2k * ((2k)^{r+1} - 1) / (2k - 1))^2: the page budget after
    contracting radius-r parts of a k-queue layout."""
    if k == 0:
        return 0
    geo = sum((2 * k) ** s for s in range(r + 1))
    return 2 * k * geo * geo


@dataclass(frozen=True)
class ContractedQueueLayout:
    graph: Graph
    layout: Layout
    colour_count: int
    bound: int
    projection: dict[int, int]


def contract_queue_layout(
    g: Graph, layout: Layout, parts: Sequence[Iterable[int]], r: int
) -> ContractedQueueLayout:
    """Contract disjoint connected radius-<=r parts of a queue layout and
    return a queue layout of the quotient on at most
    2k((2k)^{r+1}-1)/(2k-1))^2 pages.

    Implements the signed-queue-index colouring: fix a centre per part,
    record the signed page indices along the lexicographically least
    shortest centre path of each endpoint, and colour every surviving
    edge by the (path-signature, edge-index, path-signature) triple
    anchored at the smaller centre. Parallel edges keep the least colour.
    The quotient is ordered by centre positions.
    """
    ok, violations = validate_layout(g, layout)
    if not ok:
        raise ValueError(f"input layout invalid: {violations[:3]}")
    if any(p.kind != QUEUE for p in layout.pages):
        raise ValueError("contract_queue_layout needs an all-queue layout")
    if r < 0:
        raise ValueError("radius bound must be non-negative")

    cover: set[int] = set()
    certs = []
    for p in parts:
        s = frozenset(p)
        if s & cover:
            raise ValueError("parts overlap")
        cert = radius_certificate(g, s)  # raises if disconnected
        if cert.radius > r:
            raise ValueError(f"part {sorted(s)} has radius {cert.radius} > {r}")
        cover |= s
        certs.append(cert)
    certs.extend(
        radius_certificate(g, [v]) for v in range(g.n) if v not in cover
    )

    pos = layout.positions()
    k = len(layout.pages)
    page_of: dict[Edge, int] = {}
    for idx, page in enumerate(layout.pages, start=1):
        for e in page.edges:
            page_of[e] = idx

    def signed_index(a: int, b: int) -> int:
        q = page_of[norm_edge(a, b)]
        return q if pos[a] < pos[b] else -q

    # per-vertex signature along the least shortest path from the centre
    centre_of: dict[int, int] = {}
    signature: dict[int, tuple[int, ...]] = {}
    for cert in certs:
        block = cert.component
        centre = cert.centre
        dist_from_centre = bfs_distances(g, centre, within=block)
        for v in block:
            centre_of[v] = centre
            # lexicographically least shortest path centre -> v
            dist_from_v = bfs_distances(g, v, within=block)
            path = [centre]
            cur = centre
            while cur != v:
                nxt = min(
                    w
                    for w in g.adj[cur]
                    if w in block
                    and dist_from_centre.get(w) == dist_from_centre[cur] + 1
                    and dist_from_v.get(w) == dist_from_v[cur] - 1
                )
                path.append(nxt)
                cur = nxt
            signature[v] = tuple(signed_index(a, b) for a, b in zip(path, path[1:]))

    centres = sorted({centre_of[v] for v in range(g.n)}, key=lambda c: pos[c])
    new_id = {c: i for i, c in enumerate(centres)}
    projection = {v: new_id[centre_of[v]] for v in range(g.n)}

    colour_of: dict[Edge, tuple] = {}
    for u, v in g.edges():
        cu, cv = centre_of[u], centre_of[v]
        if cu == cv:
            continue
        if pos[cu] < pos[cv]:
            triple = (signature[u], signed_index(u, v), signature[v])
        else:
            triple = (signature[v], signed_index(v, u), signature[u])
        he = norm_edge(new_id[cu], new_id[cv])
        if he not in colour_of or triple < colour_of[he]:
            colour_of[he] = triple

    quotient = Graph.from_edges(len(centres), sorted(colour_of))
    colours = sorted(set(colour_of.values()))
    pages = tuple(
        Page(QUEUE, frozenset(e for e, c in colour_of.items() if c == col))
        for col in colours
    )
    out_layout = Layout(tuple(range(len(centres))), pages)
    ok, violations = validate_layout(quotient, out_layout)
    if not ok:
        raise RuntimeError(f"contraction produced an invalid layout (bug): {violations[:3]}")
    bound = queue_contraction_page_bound(k, r)
    if len(colours) > bound:
        raise RuntimeError("contraction exceeded its page budget (bug)")
    return ContractedQueueLayout(quotient, out_layout, len(colours), bound, projection)


# ---------------------------------------------------------------------------
# Density audits

@dataclass(frozen=True)
class LayoutAuditReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def audit_queue_density(g: Graph, layout: Layout) -> LayoutAuditReport:
    """A valid k-queue graph has average degree below 4k."""
    ok, violations = validate_layout(g, layout)
    if not ok:
        raise ValueError(f"layout invalid: {violations[:3]}")
    if any(p.kind != QUEUE for p in layout.pages):
        raise ValueError("queue density audit needs an all-queue layout")
    k = len(layout.pages)
    if g.n == 0 or g.m == 0:
        return LayoutAuditReport(
            (CheckResult("avg_degree_below_4k", True, 0, 4 * k, applicable=False),)
        )
    avg = Fraction(2 * g.m, g.n)
    return LayoutAuditReport((CheckResult("avg_degree_below_4k", avg < 4 * k, avg, 4 * k),))


def audit_subdivision_layout_bounds(
    sg: SubdividedGraph, layout: Layout, t: int, cap: int = QUEUE_STACK_CAP
) -> LayoutAuditReport:
    """Given a k-page layout of a (<=t)-subdivision, bound the base graph:
    queue pages bound its queue number, stack pages (k >= 3) bound its
    edge count."""
    ok, violations = validate_layout(sg.result, layout)
    if not ok:
        raise ValueError(f"layout invalid: {violations[:3]}")
    if sg.max_divisions() > t:
        raise ValueError(f"subdivision has {sg.max_divisions()} division vertices on an edge, above t={t}")
    kind = layout.kind()
    k = len(layout.pages)
    base = sg.base
    checks: list[CheckResult] = []
    if kind == QUEUE:
        if t == 0:
            # no division vertices: the layout itself lays out the base graph
            checks.append(CheckResult("queue_bound_degenerate_t0", True, k, k, applicable=False))
        else:
            qn, _ = queue_number(base, cap=cap)
            bound = Fraction((2 * k + 2) ** (2 * t), 2) - 1
            checks.append(CheckResult("base_queue_number_bound", qn <= bound, qn, bound))
            if t == 1:
                checks.append(
                    CheckResult("base_queue_number_bound_t1", qn <= 2 * k * (k + 1), qn, 2 * k * (k + 1))
                )
    elif kind == STACK:
        if k >= 3:
            bound = Fraction(4 * k * (5 * k - 5) ** (t + 1), 5 * k - 6) * base.n
            checks.append(CheckResult("base_size_bound", base.m <= bound, base.m, bound))
        else:
            checks.append(CheckResult("base_size_bound", True, base.m, None, applicable=False))
    else:
        raise ValueError("layout must be all-queue or all-stack")
    return LayoutAuditReport(tuple(checks))


# ---------------------------------------------------------------------------
# Posets: Hasse diagrams and jump number

@dataclass(frozen=True)
class Poset:
    """Strict partial order on 0..n-1, stored transitively closed."""

    n: int
    relation: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for a, b in self.relation:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError("relation mentions unknown element")
            if a == b:
                raise ValueError("strict order cannot be reflexive")
            if (b, a) in self.relation:
                raise ValueError("relation is not antisymmetric")
        rel = self.relation
        for a, b in rel:
            for c, d in rel:
                if b == c and (a, d) not in rel:
                    raise ValueError("relation is not transitively closed")

    @classmethod
    def from_relation(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Transitively close the given strict pairs."""
        rel = set(pairs)
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        return cls(n, frozenset(rel))

    def below(self, x: int) -> set[int]:
        return {a for a, b in self.relation if b == x}


def hasse_diagram(p: Poset) -> Graph:
    """Undirected cover graph: x covers y when x > y with nothing between."""
    edges = []
    for a, b in p.relation:  # a < b
        if not any((a, z) in p.relation and (z, b) in p.relation for z in range(p.n)):
            edges.append(norm_edge(a, b))
    return Graph.from_edges(p.n, edges)


def jump_number(p: Poset, cap: int = JUMP_CAP) -> int:
    """Minimum over linear extensions of the number of consecutive
    incomparable pairs."""
    if p.n > cap:
        raise SizeCapExceeded(f"jump number search capped at {cap} elements (got {p.n})")
    if p.n == 0:
        return 0
    comparable = set(p.relation) | {(b, a) for a, b in p.relation}
    best = [p.n]

    def rec(placed_mask: int, last: int, jumps: int) -> None:
        if jumps >= best[0]:
            return
        if placed_mask == (1 << p.n) - 1:
            best[0] = jumps
            return
        for x in range(p.n):
            if placed_mask & (1 << x):
                continue
            if any(
                not placed_mask & (1 << a) for a, b in p.relation if b == x
            ):
                continue  # not yet minimal among the rest
            jump = 0 if last < 0 or (last, x) in comparable else 1
            rec(placed_mask | (1 << x), x, jumps + jump)

    rec(0, -1, 0)
    return best[0]


# ---------------------------------------------------------------------------
# Layout file format

def parse_layout(text: str) -> Layout:
    """Line 1: "order: v0 v1 ...", then one
    "page <i> <queue|stack>: u1 v1, u2 v2, ..." line per page."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("order:"):
        raise GraphFormatError("layout file must start with an 'order:' line")
    order = tuple(int(tok) for tok in lines[0].split(":", 1)[1].split())
    pages = []
    for ln in lines[1:]:
        if not ln.startswith("page"):
            raise GraphFormatError(f"expected a 'page' line, got {ln!r}")
        head, _, body = ln.partition(":")
        fields = head.split()
        if len(fields) != 3 or fields[2] not in (QUEUE, STACK):
            raise GraphFormatError(f"bad page header {head!r}")
        edges = set()
        body = body.strip()
        if body:
            for chunk in body.split(","):
                uv = chunk.split()
                if len(uv) != 2:
                    raise GraphFormatError(f"bad edge {chunk!r} in layout page")
                edges.add(norm_edge(int(uv[0]), int(uv[1])))
        pages.append(Page(fields[2], frozenset(edges)))
    return Layout(order, tuple(pages))


def format_layout(layout: Layout) -> str:
    out = ["order: " + " ".join(str(v) for v in layout.order)]
    for i, page in enumerate(layout.pages):
        body = ", ".join(f"{u} {v}" for u, v in sorted(page.edges))
        out.append(f"page {i} {page.kind}: {body}")
    return "\n".join(out) + "\n"
