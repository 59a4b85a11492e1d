"""Exact shallow-minor and shallow-topological-minor densities.

The two density functionals are computed by exhaustive search over
witness structures on small graphs (hard caps, never approximated):

* depth-d minor witnesses: families of disjoint connected vertex sets of
  radius at most d, contracted to single vertices;
* depth-d topological witnesses: a branch-vertex set plus a packing of
  internally vertex-disjoint host paths of length at most 2d+1, one per
  minor edge.

Every maximiser is returned with a certificate that `verify_witness`
re-checks independently of the search code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import SizeCapExceeded
from .graphs import Edge, Graph, RadiusCertificate, adjacency_masks
from .reports import CheckResult

GRAD_CAP = 12
HADWIGER_CAP = 10


@dataclass(frozen=True)
class ShallowMinorWitness:
    depth: int
    parts: tuple[RadiusCertificate, ...]
    kept_edges: tuple[Edge, ...]
    minor: Graph


@dataclass(frozen=True)
class TopMinorWitness:
    depth: int
    branch: tuple[int, ...]  # minor vertex i is host vertex branch[i]
    paths: tuple[tuple[Edge, tuple[int, ...]], ...]  # minor edge -> host path
    minor: Graph


@dataclass(frozen=True)
class DensityReport:
    value: Fraction
    witness: ShallowMinorWitness | TopMinorWitness


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


@lru_cache(maxsize=None)
def _mask_table(g: Graph) -> dict[int, tuple[int, int]]:
    """radius and least central vertex for every connected vertex mask."""
    masks = adjacency_masks(g)
    table: dict[int, tuple[int, int]] = {}
    for mask in range(1, 1 << g.n):
        bits = _bits(mask)
        best: tuple[int, int] | None = None
        connected = True
        for c in bits:
            seen = 1 << c
            frontier = seen
            ecc = 0
            while True:
                nxt = 0
                f = frontier
                while f:
                    b = f & -f
                    f ^= b
                    nxt |= masks[b.bit_length() - 1]
                nxt &= mask & ~seen
                if not nxt:
                    break
                seen |= nxt
                frontier = nxt
                ecc += 1
            if seen != mask:
                connected = False
                break
            if best is None or ecc < best[0]:
                best = (ecc, c)
        if connected and best is not None:
            table[mask] = best
    return table


def _neighbourhood(masks: list[int], mask: int) -> int:
    nbr = 0
    for v in _bits(mask):
        nbr |= masks[v]
    return nbr


# ---------------------------------------------------------------------------
# grad

def grad(g: Graph, d: int, cap: int = GRAD_CAP) -> DensityReport:
    """Maximum density over depth-d shallow minors, with a witness.

    Exhaustive: enumerates every family of disjoint connected parts of
    radius <= d and the quotient each induces. Deterministic witness
    (lexicographically least maximiser).
    """
    return _grad_cached(g, d, cap)


@lru_cache(maxsize=None)
def _grad_cached(g: Graph, d: int, cap: int) -> DensityReport:
    if d < 0:
        raise ValueError("depth must be non-negative")
    if g.n == 0:
        raise ValueError("density functionals need at least one vertex")
    if g.n > cap:
        raise SizeCapExceeded(f"grad is exhaustive; capped at {cap} vertices (got {g.n})")

    masks = adjacency_masks(g)
    table = _mask_table(g)
    cand: list[list[tuple[int, int, int, int]]] = [[] for _ in range(g.n)]
    for mask, (radius, centre) in table.items():
        if radius <= d:
            low = (mask & -mask).bit_length() - 1
            cand[low].append((mask, centre, radius, _neighbourhood(masks, mask)))

    best: list = [None]  # [(density, key, parts_snapshot)]
    parts: list[tuple[int, int, int, int]] = []
    cross = [0]

    def snapshot_key() -> tuple:
        return tuple(tuple(_bits(p[0])) for p in parts)

    def consider() -> None:
        dens = Fraction(cross[0], len(parts))
        cur = best[0]
        if cur is None or dens > cur[0] or (dens == cur[0] and snapshot_key() < cur[1]):
            best[0] = (dens, snapshot_key(), list(parts))

    def rec(undecided: int) -> None:
        if not undecided:
            return
        v = (undecided & -undecided).bit_length() - 1
        rec(undecided & ~(1 << v))
        for entry in cand[v]:
            mask, centre, radius, nbr = entry
            if mask & ~undecided:
                continue
            added = sum(1 for p in parts if p[0] & nbr)
            parts.append(entry)
            cross[0] += added
            consider()
            rec(undecided & ~mask)
            cross[0] -= added
            parts.pop()

    rec((1 << g.n) - 1)
    dens, _, chosen = best[0]
    certs = tuple(
        RadiusCertificate(frozenset(_bits(mask)), centre, radius)
        for mask, centre, radius, _ in chosen
    )
    kept = []
    for i in range(len(chosen)):
        for j in range(i + 1, len(chosen)):
            if chosen[i][3] & chosen[j][0]:
                kept.append((i, j))
    minor = Graph.from_edges(len(chosen), kept)
    return DensityReport(dens, ShallowMinorWitness(d, certs, tuple(kept), minor))


# ---------------------------------------------------------------------------
# top_grad

def top_grad(
    g: Graph, d: int, cap: int = GRAD_CAP, allow_shared_interiors: bool = False
) -> DensityReport:
    """Maximum density over depth-d shallow topological minors.

    Default search packs internally vertex-disjoint paths (subdivision
    embedded as a subgraph). `allow_shared_interiors` relaxes to
    edge-disjoint paths whose interiors may meet, which only widens the
    search; witnesses found that way need not satisfy the strict
    TopMinorWitness invariants.
    """
    return _top_grad_cached(g, d, cap, allow_shared_interiors)


def _candidate_paths(
    u: int, w: int, free: int, max_len: int, masks: list[int]
) -> list[tuple[int, int, tuple[int, ...]]]:
    """Simple u-w paths with interiors in `free`, at most max_len edges.

    Returns (interior_mask, edge_mask_key, path) in lexicographic path
    order. edge_mask_key identifies edges for the edge-disjoint variant.
    """
    out: list[tuple[int, int, tuple[int, ...]]] = []

    def edge_bit(a: int, b: int) -> int:
        lo, hi = (a, b) if a < b else (b, a)
        return 1 << (lo * 64 + hi)

    path = [u]

    def go(cur: int, interior: int, edges_key: int, length: int) -> None:
        nbrs = masks[cur]
        if (nbrs >> w) & 1 and length + 1 <= max_len:
            out.append((interior, edges_key | edge_bit(cur, w), tuple(path) + (w,)))
        if length + 1 >= max_len:
            return
        avail = nbrs & free & ~interior
        for nxt in _bits(avail):
            path.append(nxt)
            go(nxt, interior | (1 << nxt), edges_key | edge_bit(cur, nxt), length + 1)
            path.pop()

    go(u, 0, 0, 0)
    return out


@lru_cache(maxsize=None)
def _top_grad_cached(g: Graph, d: int, cap: int, loose: bool) -> DensityReport:
    if d < 0:
        raise ValueError("depth must be non-negative")
    if g.n == 0:
        raise ValueError("density functionals need at least one vertex")
    if g.n > cap:
        raise SizeCapExceeded(f"top_grad is exhaustive; capped at {cap} vertices (got {g.n})")

    masks = adjacency_masks(g)
    max_len = 2 * d + 1
    full = (1 << g.n) - 1
    best: tuple[Fraction, tuple, tuple[int, ...], list] | None = None

    for bmask in range(1, full + 1):
        branch = _bits(bmask)
        b = len(branch)
        if best is not None and Fraction(b - 1, 2) < best[0]:
            continue
        free = full & ~bmask
        pair_list: list[tuple[int, int]] = []
        cand: list[list[tuple[int, int, tuple[int, ...]]]] = []
        for i in range(b):
            for j in range(i + 1, b):
                plist = _candidate_paths(branch[i], branch[j], free, max_len, masks)
                if plist:
                    pair_list.append((i, j))
                    cand.append(plist)

        memo: dict[tuple[int, int], int] = {}

        def pack(idx: int, used: int) -> int:
            if idx == len(cand):
                return 0
            key = (idx, used)
            hit = memo.get(key)
            if hit is not None:
                return hit
            res = pack(idx + 1, used)
            for interior, ekey, _ in cand[idx]:
                blocker = ekey if loose else interior
                if blocker & used:
                    continue
                res = max(res, 1 + pack(idx + 1, used | blocker))
            memo[key] = res
            return res

        count = pack(0, 0)
        dens = Fraction(count, b)
        if best is not None and (dens < best[0]):
            continue
        # deterministic reconstruction: use the first path that preserves
        # the optimum at each pair, preferring paths over skipping
        chosen: list = []
        used = 0
        remaining = count
        for idx in range(len(cand)):
            target = remaining
            picked = None
            if target > 0:
                for interior, ekey, pth in cand[idx]:
                    blocker = ekey if loose else interior
                    if blocker & used:
                        continue
                    if 1 + pack(idx + 1, used | blocker) == target:
                        picked = (blocker, pth)
                        break
            if picked is not None:
                used |= picked[0]
                chosen.append((pair_list[idx], picked[1]))
                remaining -= 1
        key = (tuple(branch), tuple(chosen))
        if best is None or dens > best[0] or (dens == best[0] and key < best[1]):
            best = (dens, key, tuple(branch), chosen)

    dens, _, branch, chosen = best
    paths = tuple(((i, j), pth) for (i, j), pth in chosen)
    minor = Graph.from_edges(len(branch), [e for e, _ in paths])
    return DensityReport(dens, TopMinorWitness(d, branch, paths, minor))


# ---------------------------------------------------------------------------
# Hadwiger number

def hadwiger(g: Graph, cap: int = HADWIGER_CAP) -> int:
    """Largest t such that the complete graph K_t is a minor of g.

    Exhaustive search over families of disjoint connected, pairwise
    adjacent vertex sets.
    """
    return _hadwiger_cached(g, cap)


@lru_cache(maxsize=None)
def _hadwiger_cached(g: Graph, cap: int) -> int:
    if g.n > cap:
        raise SizeCapExceeded(f"hadwiger is exhaustive; capped at {cap} vertices (got {g.n})")
    if g.n == 0:
        return 0
    masks = adjacency_masks(g)
    table = _mask_table(g)
    cand: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for mask in table:
        low = (mask & -mask).bit_length() - 1
        cand[low].append((mask, _neighbourhood(masks, mask)))
    for lst in cand:
        lst.sort(key=lambda e: e[0].bit_count())

    best = [1]
    parts: list[int] = []

    def rec(undecided: int) -> None:
        if len(parts) > best[0]:
            best[0] = len(parts)
        if len(parts) + undecided.bit_count() <= best[0]:
            return
        if not undecided:
            return
        v = (undecided & -undecided).bit_length() - 1
        for mask, nbr in cand[v]:
            if mask & ~undecided:
                continue
            if all(nbr & p for p in parts):
                parts.append(mask)
                rec(undecided & ~mask)
                parts.pop()
        rec(undecided & ~(1 << v))

    rec((1 << g.n) - 1)
    return best[0]


# ---------------------------------------------------------------------------
# Witness verification (independent of the searches above)

def verify_witness(
    g: Graph, w: ShallowMinorWitness | TopMinorWitness
) -> tuple[bool, str]:
    """Re-check every witness invariant against g from scratch."""
    if isinstance(w, ShallowMinorWitness):
        return _verify_shallow(g, w)
    if isinstance(w, TopMinorWitness):
        return _verify_top(g, w)
    return False, "unknown witness type"


def _verify_shallow(g: Graph, w: ShallowMinorWitness) -> tuple[bool, str]:
    from .graphs import bfs_distances

    seen: set[int] = set()
    for cert in w.parts:
        part = cert.component
        if not part:
            return False, "empty part"
        if not part <= set(range(g.n)):
            return False, "part mentions unknown vertex"
        if part & seen:
            return False, "parts overlap"
        seen |= part
        if cert.centre not in part:
            return False, "centre outside its part"
        dist = bfs_distances(g, cert.centre, within=part)
        if len(dist) != len(part):
            return False, "part not connected"
        if max(dist.values()) > cert.radius:
            return False, "declared radius too small"
        if cert.radius > w.depth:
            return False, "part radius exceeds witness depth"
    k = len(w.parts)
    quotient = set()
    for i in range(k):
        for j in range(i + 1, k):
            if any(
                v in g.adj[u]
                for u in w.parts[i].component
                for v in w.parts[j].component
            ):
                quotient.add((i, j))
    kept = set(w.kept_edges)
    if len(kept) != len(w.kept_edges):
        return False, "duplicate kept edges"
    if not kept <= quotient:
        return False, "kept edge not present in the quotient"
    if w.minor.n != k:
        return False, "minor order differs from part count"
    if set(w.minor.edges()) != kept:
        return False, "minor edge set differs from kept edges"
    return True, ""


def _verify_top(g: Graph, w: TopMinorWitness) -> tuple[bool, str]:
    branch = w.branch
    if len(set(branch)) != len(branch):
        return False, "branch map not injective"
    if not set(branch) <= set(range(g.n)):
        return False, "branch vertex outside host"
    if w.minor.n != len(branch):
        return False, "minor order differs from branch size"
    edge_keys = [e for e, _ in w.paths]
    if len(set(edge_keys)) != len(edge_keys):
        return False, "two paths for one minor edge"
    if set(w.minor.edges()) != set(edge_keys):
        return False, "minor edge set differs from path keys"
    branch_set = set(branch)
    used_interior: set[int] = set()
    used_edges: set[Edge] = set()
    for (i, j), path in w.paths:
        if not (0 <= i < len(branch) and 0 <= j < len(branch) and i != j):
            return False, "bad minor edge endpoints"
        if path[0] != branch[i] or path[-1] != branch[j]:
            return False, "path endpoints disagree with branch map"
        if len(path) - 1 > 2 * w.depth + 1:
            return False, "path longer than 2*depth+1"
        if len(set(path)) != len(path):
            return False, "path revisits a vertex"
        for a, b in zip(path, path[1:]):
            if b not in g.adj[a]:
                return False, f"path step ({a}, {b}) is not a host edge"
            e = (a, b) if a < b else (b, a)
            if e in used_edges:
                return False, "paths share an edge"
            used_edges.add(e)
        interior = set(path[1:-1])
        if interior & branch_set:
            return False, "path interior meets a branch vertex"
        if interior & used_interior:
            return False, "paths share an interior vertex"
        used_interior |= interior
    return True, ""


# ---------------------------------------------------------------------------
# Inequality audits

def dvorak_upper_bound(top_value: Fraction, d: int) -> Fraction:
    """4 * (4 * top_grad)**((d+1)**2), the polynomial gap bound."""
    return 4 * (4 * top_value) ** ((d + 1) ** 2)


@dataclass(frozen=True)
class GradAuditReport:
    depth: int
    grad_value: Fraction
    top_value: Fraction
    top_deep_value: Fraction
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def audit_grad_inequalities(g: Graph, d: int, cap: int = GRAD_CAP) -> GradAuditReport:
    """Evaluate the exact functionals and check the inequalities tying
    them together; any failure is an implementation bug, not a property
    of the input.

    Checks: the sandwich top <= grad <= 4(4 top)^((d+1)^2); the dense-
    top-minor implication (top_d > 2 forces short-subdivision density
    above 1 + 1/(2d+1) at depth 0); and the max-degree bounds
    grad_d < max_deg**(d+1) (graphs with at least one edge) and
    top_inf <= max_deg / 2, with depth n standing in for infinity.
    """
    gr = grad(g, d, cap=cap).value
    tg = top_grad(g, d, cap=cap).value
    tg0 = top_grad(g, 0, cap=cap).value
    tg_deep = top_grad(g, g.n, cap=cap).value
    delta = g.max_degree()

    checks = [
        CheckResult("top_le_grad", tg <= gr, tg, gr),
        CheckResult(
            "grad_le_poly_of_top", gr <= dvorak_upper_bound(tg, d), gr, dvorak_upper_bound(tg, d)
        ),
    ]
    threshold = 1 + Fraction(1, 2 * d + 1)
    if tg > 2:
        checks.append(CheckResult("dense_top_forces_dense_subgraph", tg0 > threshold, tg0, threshold))
    else:
        checks.append(
            CheckResult("dense_top_forces_dense_subgraph", True, tg0, threshold, applicable=False)
        )
    if g.m > 0:
        bound = Fraction(delta) ** (d + 1)
        checks.append(CheckResult("grad_below_degree_power", gr < bound, gr, bound))
    else:
        checks.append(CheckResult("grad_below_degree_power", True, gr, 0, applicable=False))
    checks.append(
        CheckResult("top_at_most_half_degree", tg_deep <= Fraction(delta, 2), tg_deep, Fraction(delta, 2))
    )
    return GradAuditReport(d, gr, tg, tg_deep, tuple(checks))
