"""Drawings of graphs and their crossing audits.

A drawing is either straight-line (per-vertex planar coordinates) or
explicit (a declared set of crossing edge pairs). Straight-line crossing
tests use exact rational orientation predicates whenever every coordinate
is an int or Fraction; drawings with float coordinates fall back to a
fixed epsilon of 1e-9 on the raw cross product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateGeometryError, GraphFormatError
from .graphs import Edge, Graph, norm_edge

FLOAT_EPS = 1e-9

Coord = tuple  # (x, y) with int/Fraction (exact) or float entries


@dataclass(frozen=True)
class Drawing:
    """A graph plus geometry: exactly one of `coords` / `crossings` is set."""

    graph: Graph
    coords: tuple[Coord, ...] | None = None
    crossings: frozenset[frozenset[Edge]] | None = None

    def __post_init__(self) -> None:
        if (self.coords is None) == (self.crossings is None):
            raise ValueError("exactly one of coords/crossings must be given")
        if self.coords is not None:
            _validate_straight_line(self.graph, self.coords)
        else:
            _validate_explicit(self.graph, self.crossings)

    @classmethod
    def straight_line(cls, graph: Graph, coords: Sequence[tuple]) -> "Drawing":
        return cls(graph, coords=tuple((x, y) for x, y in coords))

    @classmethod
    def explicit(cls, graph: Graph, pairs: Iterable[tuple[Edge, Edge]]) -> "Drawing":
        fs = frozenset(
            frozenset((norm_edge(*e), norm_edge(*f))) for e, f in pairs
        )
        return cls(graph, crossings=fs)

    @property
    def exact(self) -> bool:
        assert self.coords is not None
        return all(
            not isinstance(c, float) for xy in self.coords for c in xy
        )


def _validate_explicit(g: Graph, crossings: frozenset[frozenset[Edge]]) -> None:
    edge_set = set(g.edges())
    for pair in crossings:
        if len(pair) != 2:
            raise ValueError(f"crossing pair {sorted(pair)} must have two edges")
        e, f = sorted(pair)
        if e not in edge_set or f not in edge_set:
            raise ValueError(f"crossing pair mentions non-edge: {e}, {f}")
        if set(e) & set(f):
            raise ValueError(f"edges {e} and {f} share an endpoint, cannot cross")


def _sign(value, exact: bool) -> int:
    if exact:
        return (value > 0) - (value < 0)
    if abs(value) <= FLOAT_EPS:
        return 0
    return 1 if value > 0 else -1


def _orient(a: Coord, b: Coord, c: Coord, exact: bool) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return _sign(d, exact)


def _strictly_between(a: Coord, b: Coord, p: Coord) -> bool:
    # assumes a, b, p collinear
    lo_x, hi_x = min(a[0], b[0]), max(a[0], b[0])
    lo_y, hi_y = min(a[1], b[1]), max(a[1], b[1])
    if a[0] != b[0]:
        return lo_x < p[0] < hi_x
    return lo_y < p[1] < hi_y


def _validate_straight_line(g: Graph, coords: tuple[Coord, ...]) -> None:
    if len(coords) != g.n:
        raise ValueError("need one coordinate pair per vertex")
    exact = all(not isinstance(c, float) for xy in coords for c in xy)
    if len(set(coords)) != g.n:
        raise DegenerateGeometryError("two vertices share coordinates")
    for u, v in g.edges():
        for w in range(g.n):
            if w in (u, v):
                continue
            if _orient(coords[u], coords[v], coords[w], exact) == 0 and _strictly_between(
                coords[u], coords[v], coords[w]
            ):
                raise DegenerateGeometryError(
                    f"vertex {w} lies in the open interior of edge ({u}, {v})"
                )


def _segments_cross(p1, p2, p3, p4, exact: bool) -> bool:
    """Proper interior crossing of segments with four distinct endpoints."""
    o1 = _orient(p1, p2, p3, exact)
    o2 = _orient(p1, p2, p4, exact)
    o3 = _orient(p3, p4, p1, exact)
    o4 = _orient(p3, p4, p2, exact)
    if o1 == o2 == 0:
        # collinear segments: overlap of positive length is unresolvable
        pts = sorted([p1, p2]), sorted([p3, p4])
        lo = max(pts[0][0], pts[1][0])
        hi = min(pts[0][1], pts[1][1])
        if lo < hi:
            raise DegenerateGeometryError("collinear overlapping edges")
        return False
    if 0 in (o1, o2, o3, o4):
        # an endpoint on the other segment's line but outside its interior
        # (interior incidences were rejected when the drawing was built)
        return False
    return o1 != o2 and o3 != o4


def count_crossings(d: Drawing) -> int:
    """Number of unordered pairs of disjoint edges that cross.

    Pairs sharing an endpoint are never counted. Explicit drawings simply
    report the size of their declared crossing set.
    """
    if d.crossings is not None:
        return len(d.crossings)
    return sum(per_edge_crossings(d).values()) // 2


def per_edge_crossings(d: Drawing) -> dict[Edge, int]:
    """Crossing count per edge (each crossing contributes to both edges)."""
    edges = d.graph.edges()
    counts = {e: 0 for e in edges}
    if d.crossings is not None:
        for pair in d.crossings:
            for e in pair:
                counts[e] += 1
        return counts
    coords = d.coords
    assert coords is not None
    exact = d.exact
    for i, (u1, v1) in enumerate(edges):
        for u2, v2 in edges[i + 1:]:
            if {u1, v1} & {u2, v2}:
                continue
            if _segments_cross(coords[u1], coords[v1], coords[u2], coords[v2], exact):
                counts[(u1, v1)] += 1
                counts[(u2, v2)] += 1
    return counts


@dataclass(frozen=True)
class CrossingLemmaReport:
    applicable: bool
    passed: bool
    crossings: int
    bound: Fraction
    order: int
    size: int


def audit_crossing_lemma(d: Drawing) -> CrossingLemmaReport:
    """Check that the drawing's crossing count respects the cubic
    lower bound m**3 / (64 n**2), which applies whenever m >= 4n.

    Any valid drawing must satisfy it, since the bound holds for the
    minimum over drawings; a failure indicates a counting bug.
    """
    n, m = d.graph.n, d.graph.m
    bound = Fraction(m**3, 64 * n**2) if n else Fraction(0)
    if m < 4 * n or n == 0:
        return CrossingLemmaReport(False, True, count_crossings(d), bound, n, m)
    cr = count_crossings(d)
    return CrossingLemmaReport(True, cr >= bound, cr, bound, n, m)


PER_EDGE_DENSITY_FACTOR = 4.108


@dataclass(frozen=True)
class PerEdgeCrossingReport:
    max_per_edge: int
    per_edge_ok: bool
    density_ok: bool | None
    edge_bound: float
    passed: bool
    failure: str | None


def audit_crossings_per_edge(d: Drawing, k: int) -> PerEdgeCrossingReport:
    """Check (i) every edge has at most k crossings, and if so
    (ii) m <= 4.108 * sqrt(k) * n.

    (ii) is a theorem for drawings satisfying (i), so its failure while
    (i) holds signals a crossing-count bug rather than a bad input.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    counts = per_edge_crossings(d)
    worst = max(counts.values(), default=0)
    n, m = d.graph.n, d.graph.m
    bound = PER_EDGE_DENSITY_FACTOR * (k**0.5) * n
    if worst > k:
        return PerEdgeCrossingReport(worst, False, None, bound, False, "per-edge count")
    density_ok = m <= bound
    failure = None if density_ok else "edge density (internal bug)"
    return PerEdgeCrossingReport(worst, True, density_ok, bound, density_ok, failure)


# ---------------------------------------------------------------------------
# Convex positions and the drawing file format.

def convex_positions(n: int) -> list[tuple[int, int]]:
    """n points in convex position with integer coordinates and no three
    collinear (points on a parabola)."""
    return [(i, i * i) for i in range(n)]


def convex_drawing(g: Graph) -> Drawing:
    return Drawing.straight_line(g, convex_positions(g.n))


def _parse_number(token: str):
    if "." in token or "e" in token.lower():
        return float(token)
    if "/" in token:
        return Fraction(token)
    return int(token)


def parse_drawing(text: str, graph: Graph | None = None) -> Drawing:
    """Drawing file: header line "coords" then "v x y" lines, or header
    "crossings" then "u1 v1 u2 v2" lines.

    Without an explicit graph, coords mode takes the edge set to be
    undeclared (not supported) -- callers pass the graph they parsed.
    """
    lines = [
        ln.split("#", 1)[0].strip()
        for ln in text.splitlines()
        if ln.split("#", 1)[0].strip()
    ]
    if not lines:
        raise GraphFormatError("empty drawing file")
    header, body = lines[0].lower(), lines[1:]
    if graph is None:
        raise GraphFormatError("drawing files need an accompanying graph")
    if header == "coords":
        coords: dict[int, tuple] = {}
        for ln in body:
            fields = ln.split()
            if len(fields) != 3:
                raise GraphFormatError(f"coords line needs 'v x y': {ln!r}")
            v = int(fields[0])
            coords[v] = (_parse_number(fields[1]), _parse_number(fields[2]))
        if sorted(coords) != list(range(graph.n)):
            raise GraphFormatError("coords must cover vertices 0..n-1 exactly")
        return Drawing.straight_line(graph, [coords[v] for v in range(graph.n)])
    if header == "crossings":
        pairs = []
        for ln in body:
            fields = ln.split()
            if len(fields) != 4:
                raise GraphFormatError(f"crossings line needs 'u1 v1 u2 v2': {ln!r}")
            a, b, c, d_ = (int(f) for f in fields)
            pairs.append(((a, b), (c, d_)))
        return Drawing.explicit(graph, pairs)
    raise GraphFormatError(f"unknown drawing header {header!r}")
