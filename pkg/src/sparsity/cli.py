"""Command-line front end: every library operation as a subcommand.

Reports are JSON on stdout with a stable schema: subcommand, inputs,
result payload, a checks array carrying both sides of every inequality,
the seed when randomised, and the library version. Exit codes: 0 all
checks passed, 1 some check failed, 2 usage or input errors. `gnp` and
`convert` emit raw text instead of JSON. Keys are sorted and separators
fixed, so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .drawings import audit_crossing_lemma, audit_crossings_per_edge, count_crossings, parse_drawing
from .errors import (
    DegenerateGeometryError,
    GraphFormatError,
    MalformedLayoutError,
    SearchBudgetExceeded,
    SizeCapExceeded,
)
from .graphs import (
    Graph,
    format_edge_list,
    format_graph6,
    norm_edge,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    subdivide,
)
from .layouts import (
    Layout,
    Poset,
    audit_queue_density,
    contract_queue_layout,
    hasse_diagram,
    jump_number,
    parse_layout,
    queue_number,
    stack_number,
    validate_layout,
)
from .minors import (
    GRAD_CAP,
    HADWIGER_CAP,
    ShallowMinorWitness,
    TopMinorWitness,
    audit_grad_inequalities,
    grad,
    hadwiger,
    top_grad,
    verify_witness,
)
from .nonrep import (
    PI_CAP,
    Colouring,
    acyclic_from_subdivision,
    check_star_acyclic,
    colour_kn_prime,
    colour_knd,
    colour_subdivision,
    find_repetition,
    find_square,
    kn_prime_bound,
    kn_prime_colour_count,
    one_subdivision,
    pi_exact,
    thue_word,
)
from .randgraphs import (
    audit_degree_tail,
    audit_short_cycles,
    audit_shallow_top_density,
    audit_small_subgraph_density,
    format_audit_csv,
    gnp_edges,
)
from .reports import CheckResult, check_payload


def _rational(x) -> dict:
    f = Fraction(x)
    return {"num": f.numerator, "den": f.denominator, "float": float(f)}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(args) -> Graph:
    text = _read_text(args.input)
    fmt = getattr(args, "format", "auto")
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    return parse_graph(text)


def _graph_payload(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def _layout_payload(layout: Layout) -> dict:
    return {
        "order": list(layout.order),
        "pages": [
            {"kind": p.kind, "edges": [list(e) for e in sorted(p.edges)]}
            for p in layout.pages
        ],
    }


def _colouring_payload(c: Colouring) -> list[int]:
    return list(c.colours)


def _witness_payload(w) -> dict:
    if isinstance(w, ShallowMinorWitness):
        return {
            "kind": "shallow-minor",
            "depth": w.depth,
            "parts": [
                {
                    "vertices": sorted(cert.component),
                    "centre": cert.centre,
                    "radius": cert.radius,
                }
                for cert in w.parts
            ],
            "kept_edges": [list(e) for e in w.kept_edges],
            "minor": _graph_payload(w.minor),
        }
    assert isinstance(w, TopMinorWitness)
    return {
        "kind": "topological-minor",
        "depth": w.depth,
        "branch": list(w.branch),
        "paths": [{"edge": list(e), "path": list(p)} for e, p in w.paths],
        "minor": _graph_payload(w.minor),
    }


def _emit(subcommand: str, inputs: dict, result: dict, checks: list[CheckResult], seed=None) -> int:
    report = {
        "subcommand": subcommand,
        "inputs": inputs,
        "result": result,
        "checks": [check_payload(c) for c in checks],
        "seed": seed,
        "version": __version__,
    }
    sys.stdout.write(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n")
    return 0 if all(c.passed for c in checks) else 1


# ---------------------------------------------------------------------------
# Subcommand handlers

def _cmd_grad(args) -> int:
    g = _load_graph(args)
    report = grad(g, args.depth, cap=args.cap)
    ok, reason = verify_witness(g, report.witness)
    checks = [CheckResult("witness_verifies", ok, reason or "ok", "ok")]
    result = {
        "value_num": report.value.numerator,
        "value_den": report.value.denominator,
        "value_float": float(report.value),
        "witness": _witness_payload(report.witness),
    }
    return _emit("grad", {"depth": args.depth, "input": args.input}, result, checks)


def _cmd_topgrad(args) -> int:
    g = _load_graph(args)
    report = top_grad(g, args.depth, cap=args.cap)
    ok, reason = verify_witness(g, report.witness)
    checks = [CheckResult("witness_verifies", ok, reason or "ok", "ok")]
    result = {
        "value_num": report.value.numerator,
        "value_den": report.value.denominator,
        "value_float": float(report.value),
        "witness": _witness_payload(report.witness),
    }
    return _emit("topgrad", {"depth": args.depth, "input": args.input}, result, checks)


def _cmd_audit_grads(args) -> int:
    g = _load_graph(args)
    report = audit_grad_inequalities(g, args.depth, cap=args.cap)
    result = {
        "grad": _rational(report.grad_value),
        "top_grad": _rational(report.top_value),
        "top_grad_deep": _rational(report.top_deep_value),
        "depth": report.depth,
    }
    return _emit(
        "audit-grads", {"depth": args.depth, "input": args.input}, result, list(report.checks)
    )


def _cmd_hadwiger(args) -> int:
    g = _load_graph(args)
    h = hadwiger(g, cap=args.cap)
    checks = []
    if g.n >= 1:
        deep = grad(g, g.n, cap=max(GRAD_CAP, args.cap)).value
        lhs = Fraction(h - 1, 2)
        checks.append(CheckResult("half_hadwiger_le_grad", lhs <= deep, lhs, deep))
        result = {"hadwiger": h, "grad_deep": _rational(deep)}
    else:
        result = {"hadwiger": h}
    return _emit("hadwiger", {"input": args.input}, result, checks)


def _cmd_layout_check(args) -> int:
    g = _load_graph(args)
    layout = parse_layout(_read_text(args.layout))
    ok, violations = validate_layout(g, layout)
    checks = [CheckResult("layout_valid", ok, len(violations), 0)]
    result = {
        "valid": ok,
        "violations": [
            {"page": p, "edges": [list(e), list(f)]} for p, e, f in violations
        ],
    }
    return _emit("layout-check", {"input": args.input, "layout": args.layout}, result, checks)


def _cmd_queue_number(args) -> int:
    return _page_number_cmd(args, "queue-number", queue_number)


def _cmd_stack_number(args) -> int:
    return _page_number_cmd(args, "stack-number", stack_number)


def _page_number_cmd(args, name, fn) -> int:
    g = _load_graph(args)
    k, layout = fn(g, cap=args.cap, search=args.search)
    ok, violations = validate_layout(g, layout)
    checks = [CheckResult("witness_layout_valid", ok, len(violations), 0)]
    result = {"number": k, "layout": _layout_payload(layout)}
    return _emit(name, {"input": args.input, "search": args.search}, result, checks)


def _parse_parts(text: str) -> list[list[int]]:
    parts = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            parts.append([int(tok) for tok in ln.split()])
    return parts


def _cmd_contract_queue(args) -> int:
    g = _load_graph(args)
    layout = parse_layout(_read_text(args.layout))
    parts = _parse_parts(_read_text(args.parts))
    out = contract_queue_layout(g, layout, parts, args.radius)
    ok, violations = validate_layout(out.graph, out.layout)
    density = audit_queue_density(out.graph, out.layout)
    checks = [
        CheckResult("output_layout_valid", ok, len(violations), 0),
        CheckResult("colours_within_budget", out.colour_count <= out.bound, out.colour_count, out.bound),
        *density.checks,
    ]
    result = {
        "graph": _graph_payload(out.graph),
        "layout": _layout_payload(out.layout),
        "colours": out.colour_count,
        "bound": out.bound,
        "projection": [out.projection[v] for v in range(g.n)],
    }
    inputs = {"input": args.input, "layout": args.layout, "parts": args.parts, "radius": args.radius}
    return _emit("contract-queue", inputs, result, checks)


def _parse_poset(text: str) -> Poset:
    pairs = []
    top = -1
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        a, b = (int(tok) for tok in ln.split())
        pairs.append((a, b))
        top = max(top, a, b)
    return Poset.from_relation(top + 1, pairs)


def _cmd_jump_number(args) -> int:
    poset = _parse_poset(_read_text(args.input))
    jn = jump_number(poset)
    h = hasse_diagram(poset)
    checks = []
    result = {"jump_number": jn, "hasse": _graph_payload(h)}
    if h.n <= 8:
        qn, _ = queue_number(h)
        checks.append(CheckResult("hasse_queue_number_le_jump_plus_one", qn <= jn + 1, qn, jn + 1))
        result["hasse_queue_number"] = qn
    return _emit("jump-number", {"input": args.input}, result, checks)


def _cmd_thue(args) -> int:
    word = thue_word(args.length)
    square = find_square(word)
    checks = [CheckResult("square_free", square is None, str(square), "None")]
    return _emit("thue", {"length": args.length}, {"word": word, "length": len(word)}, checks)


def _colouring_for(g: Graph, text: str) -> Colouring:
    values: dict[int, int] = {}
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        v, c = (int(tok) for tok in ln.split())
        values[v] = c
    if sorted(values) != list(range(g.n)):
        raise GraphFormatError("colouring must cover vertices 0..n-1 exactly")
    return Colouring(g, tuple(values[v] for v in range(g.n)))


def _cmd_nonrep_check(args) -> int:
    g = _load_graph(args)
    col = _colouring_for(g, _read_text(args.colouring))
    rep = find_repetition(g, col, max_half=args.max_half)
    checks = [CheckResult("nonrepetitive", rep is None, str(rep), "None")]
    result = {"repetition": list(rep) if rep else None}
    inputs = {"input": args.input, "colouring": args.colouring, "max_half": args.max_half}
    return _emit("nonrep-check", inputs, result, checks)


def _cmd_pi_exact(args) -> int:
    g = _load_graph(args)
    pi, witness = pi_exact(g, cap=args.cap)
    rep = find_repetition(g, witness)
    checks = [CheckResult("witness_nonrepetitive", rep is None, str(rep), "None")]
    result = {"pi": pi, "colouring": _colouring_payload(witness)}
    return _emit("pi-exact", {"input": args.input}, result, checks)


def _parse_counts(text: str) -> dict:
    counts = {}
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        u, v, t = (int(tok) for tok in ln.split())
        counts[norm_edge(u, v)] = t
    return counts


def _cmd_colour_subdivision(args) -> int:
    g = _load_graph(args)
    counts = _parse_counts(_read_text(args.counts))
    base_col = _colouring_for(g, _read_text(args.colouring))
    sg = subdivide(g, counts)
    out = colour_subdivision(g, base_col, sg)
    rep = find_repetition(sg.result, out)
    checks = [CheckResult("output_nonrepetitive", rep is None, str(rep), "None")]
    result = {
        "colouring": _colouring_payload(out),
        "colours_used": out.used(),
        "bound": base_col.used() + 3,
        "result_graph": _graph_payload(sg.result),
    }
    inputs = {"input": args.input, "counts": args.counts, "colouring": args.colouring}
    return _emit("colour-subdivision", inputs, result, checks)


def _cmd_colour_knprime(args) -> int:
    n = args.n
    checks = []
    if n <= 60:
        built = colour_kn_prime(n)
        used = built.colours_used
        result = {
            "colours_used": used,
            "bound": built.bound,
            "colouring": _colouring_payload(built.colouring),
        }
        if built.subdivision.result.n <= 25:
            rep = find_repetition(built.subdivision.result, built.colouring)
            checks.append(CheckResult("nonrepetitive", rep is None, str(rep), "None"))
    else:
        used = kn_prime_colour_count(n)
        result = {"colours_used": used, "bound": kn_prime_bound(n), "count_only": True}
    checks.append(CheckResult("within_bound", used <= result["bound"], used, result["bound"]))
    return _emit("colour-knprime", {"n": n}, result, checks)


def _cmd_colour_knd(args) -> int:
    built = colour_knd(args.n, args.d, args.A, args.B)
    checks = [
        CheckResult("within_bound", built.colours_used <= built.bound, built.colours_used, built.bound)
    ]
    result = {
        "colours_used": built.colours_used,
        "bound": built.bound,
        "colouring": _colouring_payload(built.colouring),
    }
    if built.subdivision.result.n <= 25:
        rep = find_repetition(built.subdivision.result, built.colouring)
        checks.insert(0, CheckResult("nonrepetitive", rep is None, str(rep), "None"))
    inputs = {"n": args.n, "d": args.d, "A": args.A, "B": args.B}
    return _emit("colour-knd", inputs, result, checks)


def _cmd_acyclic_from_subdivision(args) -> int:
    g = _load_graph(args)
    sub = one_subdivision(g)
    col = _colouring_for(sub.result, _read_text(args.colouring))
    out = acyclic_from_subdivision(g, col)
    ok, witness = check_star_acyclic(g, out, "acyclic")
    checks = [CheckResult("acyclic", ok, str(witness), "None")]
    result = {"colouring": _colouring_payload(out), "colours_used": out.used()}
    inputs = {"input": args.input, "colouring": args.colouring}
    return _emit("acyclic-from-subdivision", inputs, result, checks)


def _cmd_gnp(args) -> int:
    edges = gnp_edges(args.n, args.p, args.seed)
    sys.stdout.write("".join(f"{u} {v}\n" for u, v in edges))
    return 0


def _cmd_audit_random(args) -> int:
    seed = args.seed
    if args.lemma == "degree-tail":
        rep = audit_degree_tail(args.d, args.alpha, args.n, args.trials, seed)
    elif args.lemma == "density":
        rep = audit_small_subgraph_density(args.d, args.epsilon, args.n, seed)
    elif args.lemma == "top-density":
        rep = audit_shallow_top_density(args.d, args.r, args.n, seed)
    else:
        rep = audit_short_cycles(args.c, args.n, args.trials, seed, t_max=args.tmax)
    if args.csv:
        sys.stdout.write(format_audit_csv(rep))
        return 0 if rep.passed else 1
    checks = [CheckResult("audit_passed", rep.passed, str(rep.observed), str(rep.bound))]
    result = {
        "name": rep.name,
        "params": {k: v for k, v in rep.params},
        "observed": json.loads(json.dumps(rep.observed, default=str)),
        "bound": json.loads(json.dumps(rep.bound, default=str)),
        "passed": rep.passed,
        "trials": rep.trials,
        "mode": rep.mode,
    }
    return _emit("audit-random", {"lemma": args.lemma}, result, checks, seed=seed)


def _cmd_convert(args) -> int:
    g = _load_graph(args)
    if args.to == "graph6":
        sys.stdout.write(format_graph6(g) + "\n")
    else:
        sys.stdout.write(format_edge_list(g))
    return 0


def _cmd_drawing_audit(args) -> int:
    g = _load_graph(args)
    drawing = parse_drawing(_read_text(args.drawing), g)
    lemma = audit_crossing_lemma(drawing)
    per_edge = audit_crossings_per_edge(drawing, args.k)
    checks = [
        CheckResult(
            "crossing_lemma",
            lemma.passed,
            lemma.crossings,
            lemma.bound,
            applicable=lemma.applicable,
        ),
        CheckResult("per_edge_crossings", per_edge.per_edge_ok, per_edge.max_per_edge, args.k),
        CheckResult(
            "per_edge_density",
            per_edge.density_ok if per_edge.density_ok is not None else True,
            drawing.graph.m,
            per_edge.edge_bound,
            applicable=per_edge.density_ok is not None,
        ),
    ]
    result = {
        "crossings": count_crossings(drawing),
        "max_per_edge": per_edge.max_per_edge,
        "crossing_lemma_applicable": lemma.applicable,
    }
    inputs = {"input": args.input, "drawing": args.drawing, "k": args.k}
    return _emit("drawing-audit", inputs, result, checks)


# ---------------------------------------------------------------------------
# Parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsity",
        description="Shallow-minor densities, layouts, non-repetitive colourings, random audits.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    def graph_opts(p, cap=GRAD_CAP):
        p.add_argument("--input", default="-", help="graph file or - for stdin")
        p.add_argument("--format", choices=["auto", "edgelist", "graph6"], default="auto")
        p.add_argument("--cap", type=int, default=cap, help="raise the brute-force cap")

    p = add("grad", _cmd_grad, help="exact shallow-minor density")
    graph_opts(p)
    p.add_argument("--depth", type=int, required=True)

    p = add("topgrad", _cmd_topgrad, help="exact shallow topological density")
    graph_opts(p)
    p.add_argument("--depth", type=int, required=True)

    p = add("audit-grads", _cmd_audit_grads, help="density inequality audit")
    graph_opts(p)
    p.add_argument("--depth", type=int, required=True)

    p = add("hadwiger", _cmd_hadwiger, help="largest complete minor")
    graph_opts(p, cap=HADWIGER_CAP)

    p = add("layout-check", _cmd_layout_check, help="validate a queue/stack layout")
    graph_opts(p)
    p.add_argument("--layout", required=True)

    for name, fn in (("queue-number", _cmd_queue_number), ("stack-number", _cmd_stack_number)):
        p = add(name, fn, help=f"exact {name.replace('-', ' ')}")
        graph_opts(p, cap=8)
        p.add_argument("--search", choices=["forward", "reverse"], default="forward")

    p = add("contract-queue", _cmd_contract_queue, help="queue-preserving contraction")
    graph_opts(p)
    p.add_argument("--layout", required=True)
    p.add_argument("--parts", required=True, help="file with one part per line")
    p.add_argument("--radius", type=int, required=True)

    p = add("jump-number", _cmd_jump_number, help="poset jump number")
    p.add_argument("--input", default="-", help="poset relation file: lines 'a b' meaning a < b")

    p = add("thue", _cmd_thue, help="square-free word")
    p.add_argument("--length", type=int, required=True)

    p = add("nonrep-check", _cmd_nonrep_check, help="find a repetitively coloured path")
    graph_opts(p)
    p.add_argument("--colouring", required=True, help="file with 'v colour' lines")
    p.add_argument("--max-half", type=int, default=None)

    p = add("pi-exact", _cmd_pi_exact, help="exact non-repetitive chromatic number")
    graph_opts(p, cap=PI_CAP)

    p = add("colour-subdivision", _cmd_colour_subdivision, help="extend a colouring across a subdivision")
    graph_opts(p)
    p.add_argument("--counts", required=True, help="file with 'u v t' division counts")
    p.add_argument("--colouring", required=True)

    p = add("colour-knprime", _cmd_colour_knprime, help="colour the 1-subdivision of a clique")
    p.add_argument("--n", type=int, required=True)

    p = add("colour-knd", _cmd_colour_knd, help="colour the d-subdivision of a clique")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--B", type=int, required=True)

    p = add("acyclic-from-subdivision", _cmd_acyclic_from_subdivision, help="acyclic colouring from a subdivision colouring")
    graph_opts(p)
    p.add_argument("--colouring", required=True, help="colouring of the canonical 1-subdivision")

    p = add("gnp", _cmd_gnp, help="sample a seeded random graph (edge list out)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = add("audit-random", _cmd_audit_random, help="statistical audits of G(n, p)")
    p.add_argument("--lemma", choices=["degree-tail", "density", "top-density", "cycles"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--d", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--tmax", type=int, default=6)
    p.add_argument("--csv", action="store_true", help="per-trial rows as CSV")

    p = add("convert", _cmd_convert, help="convert between graph formats")
    graph_opts(p)
    p.add_argument("--to", choices=["graph6", "edgelist"], required=True)

    p = add("drawing-audit", _cmd_drawing_audit, help="crossing count and crossing audits")
    graph_opts(p)
    p.add_argument("--drawing", required=True)
    p.add_argument("--k", type=int, default=1, help="per-edge crossing budget")

    return parser


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (
        GraphFormatError,
        MalformedLayoutError,
        DegenerateGeometryError,
        SizeCapExceeded,
        SearchBudgetExceeded,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
