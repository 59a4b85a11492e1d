"""Seeded Erdos-Renyi sampling and statistical audits of sparse-regime
behaviour: degree tails, density of small subgraphs, small shallow
topological density, and short cycle counts.

Sampling is counter-based and reproducible: a Philox stream keyed
(seed, 0) draws one binomial neighbour count per vertex row, and a
stream keyed (seed, 1 + row) picks that row's neighbours, so rows are
independent and regeneration from (n, p, seed) is byte-identical.

The audited statements are asymptotic; what these audits provide is
calibrated Monte-Carlo evidence at a fixed n (trial counts, per-trial
thresholds, and seeds are all recorded in the report), never a proof.
The two audit families mirror the two conditions of the dense-part
characterisation: few vertices of large degree, and any subgraph with a
dense shallow topological minor must span a constant fraction of the
host's vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SizeCapExceeded
from .graphs import Graph, connected_components
from .minors import GRAD_CAP, top_grad

CYCLE_LENGTH_CAP = 8
DENSITY_EXACT_CAP = 60


@dataclass(frozen=True)
class GnpSample:
    n: int
    p: float
    seed: int
    graph: Graph


@dataclass(frozen=True)
class AuditReport:
    """Outcome of one audit: parameters, observed statistic against the
    reference bound, per-trial rows, and the seed that regenerates it."""

    name: str
    params: tuple[tuple[str, object], ...]
    observed: object
    bound: object
    passed: bool
    trials: int
    seed: int
    rows: tuple[tuple, ...] = ()
    witness: object = None
    mode: str = ""


def _philox(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, stream]))


def _sample_distinct(rng: np.random.Generator, m: int, k: int) -> list[int]:
    """k distinct ints from range(m); rejection with complement trick."""
    if k >= m:
        return list(range(m))
    if k > m // 2:
        comp = set(_sample_distinct(rng, m, m - k))
        return [x for x in range(m) if x not in comp]
    chosen: set[int] = set()
    while len(chosen) < k:
        draws = rng.integers(0, m, size=k - len(chosen))
        chosen.update(int(x) for x in draws)
    return sorted(chosen)


def gnp_edges(n: int, p: float, seed: int) -> list[tuple[int, int]]:
    """Edge list of one G(n, p) draw; each vertex pair appears
    independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    edges: list[tuple[int, int]] = []
    if n >= 2 and p > 0.0:
        row_sizes = np.arange(n - 1, 0, -1)
        counts = _philox(seed, 0).binomial(row_sizes, p)
        for u in np.nonzero(counts)[0]:
            u = int(u)
            picks = _sample_distinct(_philox(seed, 1 + u), n - 1 - u, int(counts[u]))
            edges.extend((u, u + 1 + c) for c in picks)
    return edges


def sample_gnp(n: int, p: float, seed: int) -> GnpSample:
    """Deterministic seeded G(n, p) sample."""
    return GnpSample(n, p, seed, Graph.from_edges(n, gnp_edges(n, p, seed)))


def _degrees(n: int, edges: list[tuple[int, int]]) -> np.ndarray:
    deg = np.zeros(n, dtype=np.int64)
    if edges:
        arr = np.asarray(edges)
        np.add.at(deg, arr[:, 0], 1)
        np.add.at(deg, arr[:, 1], 1)
    return deg


# ---------------------------------------------------------------------------
# Degree tail

def degree_tail_bound(d: float, alpha: float) -> float:
    """4e * alpha**(-4 alpha d): admissible fraction of vertices of degree
    above 8 alpha d."""
    return 4 * math.e * alpha ** (-4 * alpha * d)


def audit_degree_tail(
    d: float, alpha: float, n: int, trials: int, seed: int
) -> AuditReport:
    """Fraction of vertices with degree above 8*alpha*d per trial; the
    audit passes when the fraction stays within the reference bound in at
    least 99% of trials."""
    if alpha <= 1:
        raise ValueError("alpha must exceed 1")
    threshold = 8 * alpha * d
    c_alpha = degree_tail_bound(d, alpha)
    rows = []
    ok = 0
    for t in range(trials):
        trial_seed = seed + t
        deg = _degrees(n, gnp_edges(n, d / n if n else 0.0, trial_seed))
        frac = float(np.count_nonzero(deg > threshold)) / n if n else 0.0
        good = frac <= c_alpha
        ok += good
        rows.append((trial_seed, frac, good))
    passed = trials == 0 or ok >= math.ceil(0.99 * trials)
    worst = max((r[1] for r in rows), default=0.0)
    return AuditReport(
        "degree-tail",
        (("d", d), ("alpha", alpha), ("n", n), ("threshold", threshold)),
        worst,
        c_alpha,
        passed,
        trials,
        seed,
        tuple(rows),
    )


# ---------------------------------------------------------------------------
# Density of small subgraphs

def _connected_subset_max_density(
    g: Graph, max_size: int
) -> tuple[Fraction, tuple[int, ...]]:
    """Densest subgraph on at most max_size vertices.

    A maximiser can be taken connected (the density of a disjoint union
    is at most the density of its densest part), so only connected
    subsets are enumerated.
    """
    best = (Fraction(0), ())
    if max_size < 1 or g.n == 0:
        return best
    masks = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]

    def grow(mask: int, edges: int, size: int, candidates: int, banned: int) -> None:
        nonlocal best
        dens = Fraction(edges, size)
        if dens > best[0]:
            bits = []
            m = mask
            while m:
                b = m & -m
                bits.append(b.bit_length() - 1)
                m ^= b
            best = (dens, tuple(bits))
        if size == max_size:
            return
        cand = candidates & ~banned
        local_banned = banned
        while cand:
            b = cand & -cand
            cand ^= b
            w = b.bit_length() - 1
            new_edges = edges + (masks[w] & mask).bit_count()
            grow(
                mask | b,
                new_edges,
                size + 1,
                (candidates | masks[w]) & ~(mask | b),
                local_banned,
            )
            local_banned |= b
    for v in range(g.n):
        banned = (1 << v) - 1  # subsets are rooted at their least vertex
        grow(1 << v, 0, 1, masks[v] & ~banned, banned)
    return best


def _connected_subsets_of_size(g: Graph, comp: frozenset[int], size: int) -> list[tuple[int, ...]]:
    """All connected subsets of exactly `size` vertices inside one
    component."""
    masks = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    out: list[tuple[int, ...]] = []

    def grow(mask: int, count: int, candidates: int, banned: int) -> None:
        if count == size:
            out.append(tuple(v for v in range(g.n) if mask >> v & 1))
            return
        cand = candidates & ~banned
        local_banned = banned
        while cand:
            b = cand & -cand
            cand ^= b
            w = b.bit_length() - 1
            grow(mask | b, count + 1, (candidates | masks[w]) & ~(mask | b), local_banned)
            local_banned |= b

    for v in sorted(comp):
        banned = (1 << v) - 1
        grow(1 << v, 1, masks[v] & ~banned, banned)
    return out


def small_subgraph_threshold(d: float, epsilon: float, n: int) -> int:
    """floor((4d)**-(1 + 1/epsilon) * n): the largest subgraph order the
    density statement constrains (the proof-side exponent)."""
    return math.floor((4 * d) ** -(1 + 1 / epsilon) * n)


def audit_small_subgraph_density(
    d: float,
    epsilon: float,
    n: int,
    seed: int,
    graph: Graph | None = None,
    exact_cap: int = DENSITY_EXACT_CAP,
    samples: int = 2000,
) -> AuditReport:
    """Every subgraph on at most (4d)**-(1+1/eps) * n vertices should have
    density at most 1 + eps. Exact connected-subset scan for n <= cap,
    randomised greedy local search above it."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    g = graph if graph is not None else sample_gnp(n, d / n if n else 0.0, seed).graph
    if g.n != n:
        raise ValueError("graph order differs from n")
    t = small_subgraph_threshold(d, epsilon, n)
    bound = Fraction(1) + Fraction(epsilon).limit_denominator(10**9)
    params = (("d", d), ("epsilon", epsilon), ("n", n), ("threshold", t))
    if t < 1:
        return AuditReport(
            "small-subgraph-density", params, Fraction(0), bound, True, 1, seed, mode="vacuous"
        )
    if n <= exact_cap:
        dens, witness = _connected_subset_max_density(g, t)
        return AuditReport(
            "small-subgraph-density",
            params,
            dens,
            bound,
            dens <= bound,
            1,
            seed,
            witness=witness,
            mode="exact",
        )
    rng = _philox(seed, 10**6)
    best = (Fraction(0), ())
    for _ in range(samples):
        v = int(rng.integers(0, n))
        mask = {v}
        edges = 0
        dens_here = Fraction(0)
        wit = (v,)
        while len(mask) < t:
            boundary = sorted({w for u in mask for w in g.adj[u]} - mask)
            if not boundary:
                break
            gains = [(sum(1 for x in g.adj[w] if x in mask), w) for w in boundary]
            gain, w = max(gains)
            mask.add(w)
            edges += gain
            cand = Fraction(edges, len(mask))
            if cand > dens_here:
                dens_here, wit = cand, tuple(sorted(mask))
        if dens_here > best[0]:
            best = (dens_here, wit)
    return AuditReport(
        "small-subgraph-density",
        params,
        best[0],
        bound,
        best[0] <= bound,
        samples,
        seed,
        witness=best[1],
        mode="sampled",
    )


def audit_shallow_top_density(
    d: float,
    r: int,
    n: int,
    seed: int,
    graph: Graph | None = None,
    exact_cap: int = GRAD_CAP,
) -> AuditReport:
    """Every subgraph on at most (4d)**-(1+1/(2r+1)) * n vertices should
    have depth-r topological density at most 2. Exact for n within the
    density cap; otherwise reduced to the epsilon = 1/(2r+1) density
    audit (a dense shallow topological minor forces a dense subgraph)."""
    if r < 0:
        raise ValueError("depth must be non-negative")
    g = graph if graph is not None else sample_gnp(n, d / n if n else 0.0, seed).graph
    if g.n != n:
        raise ValueError("graph order differs from n")
    t = math.floor((4 * d) ** -(1 + 1 / (2 * r + 1)) * n)
    params = (("d", d), ("r", r), ("n", n), ("threshold", t))
    if n <= exact_cap:
        # top density is subgraph-monotone and splits over components, so
        # only maximal connected subsets up to the threshold matter
        worst = Fraction(0)
        witness: tuple = ()
        if t >= 1:
            for comp in connected_components(g):
                if len(comp) <= t:
                    subsets = [tuple(sorted(comp))]
                else:
                    subsets = _connected_subsets_of_size(g, comp, t)
                for verts in subsets:
                    value = top_grad(g.induced(verts), r).value
                    if value > worst:
                        worst, witness = value, verts
        return AuditReport(
            "shallow-top-density",
            params,
            worst,
            Fraction(2),
            worst <= 2,
            1,
            seed,
            witness=witness,
            mode="exact",
        )
    inner = audit_small_subgraph_density(
        d, 1 / (2 * r + 1), n, seed, graph=g
    )
    return AuditReport(
        "shallow-top-density",
        params,
        inner.observed,
        inner.bound,
        inner.passed,
        inner.trials,
        seed,
        witness=inner.witness,
        mode=f"reduced-to-density({inner.mode})",
    )


# ---------------------------------------------------------------------------
# Short cycles

def count_short_cycles(g: Graph, t_max: int, cap: int = CYCLE_LENGTH_CAP) -> dict[int, int]:
    """Exact number of cycles of each length 3..t_max.

    Each cycle is enumerated from its least vertex, in both directions,
    then halved.
    """
    if t_max > cap:
        raise SizeCapExceeded(f"cycle lengths capped at {cap} (got {t_max})")
    counts = {t: 0 for t in range(3, t_max + 1)}
    if t_max < 3:
        return counts
    adj_sorted = [sorted(g.adj[v]) for v in range(g.n)]
    in_path = [False] * g.n

    def walk(root: int, v: int, length: int) -> None:
        for w in adj_sorted[v]:
            if w == root and length >= 3:
                counts[length] += 1
            if w > root and not in_path[w] and length < t_max:
                in_path[w] = True
                walk(root, w, length + 1)
                in_path[w] = False

    for root in range(g.n):
        in_path[root] = True
        walk(root, root, 1)
        in_path[root] = False
    return {t: c // 2 for t, c in counts.items()}


def format_audit_csv(report: AuditReport) -> str:
    """Per-trial rows of an audit as CSV text."""
    lines = ["trial_seed,observed,pass"]
    for row in report.rows:
        seed = row[0]
        rest = row[1:]
        if len(rest) == 2 and isinstance(rest[1], bool):
            lines.append(f"{seed},{rest[0]},{int(rest[1])}")
        else:
            lines.append(f"{seed},\"{rest[0] if rest else ''}\",1")
    if not report.rows:
        lines.append(f"{report.seed},{report.observed},{int(report.passed)}")
    return "\n".join(lines) + "\n"


def expected_cycle_bound(c: float, t: int) -> float:
    """(e^2 c / 2)**t: reference bound on the mean number of t-cycles."""
    return (math.e**2 * c / 2) ** t


def audit_short_cycles(
    c: float, n: int, trials: int, seed: int, t_max: int = 6
) -> AuditReport:
    """Mean cycle counts over seeded trials against (e^2 c/2)**t per
    length t."""
    totals = {t: 0 for t in range(3, t_max + 1)}
    rows = []
    for t in range(trials):
        trial_seed = seed + t
        g = Graph.from_edges(n, gnp_edges(n, c / n if n else 0.0, trial_seed))
        counts = count_short_cycles(g, t_max)
        rows.append((trial_seed, tuple(sorted(counts.items()))))
        for length, cnt in counts.items():
            totals[length] += cnt
    means = {t: totals[t] / trials if trials else 0.0 for t in totals}
    bounds = {t: expected_cycle_bound(c, t) for t in totals}
    passed = all(means[t] <= bounds[t] for t in totals)
    return AuditReport(
        "short-cycles",
        (("c", c), ("n", n), ("t_max", t_max)),
        tuple(sorted(means.items())),
        tuple(sorted(bounds.items())),
        passed,
        trials,
        seed,
        tuple(rows),
    )
