"""Command-line front door: instance generation, reduction, solving,
verification suites, elimination runs, and report re-checking.

Exit codes: 0 all checks pass, 1 a verification check failed (a proven
inequality was violated, which should never happen), 2 invalid input,
3 a resource guardrail refused the work.

Reports are JSON on stdout (or ``--out``); a human summary goes to stderr.
All randomness flows from the single ``--seed`` flag, whose default is fixed
rather than time-derived, and JSON output is byte-identical across runs for
identical (command, inputs, seed); wall-clock timings are embedded only when
``--timings`` is given.  ``--jobs`` parallelizes verification suites across
corpus instances.  ``FILLIN_LAB_LIMIT_OVERRIDE=1`` lifts the instance size
guardrails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import generate, matrix, transfer
from .chordal import check_hole, check_peo, elimination_fill, verify_fillin
from .errors import CounterexampleError, GraphInputError, ResourceLimitError
from .graph import Graph, load_dimacs, save_dimacs
from .reduction import (
    PRIMITIVE_MAX_N,
    brooks_coloring,
    decision_equivalence_check,
    produced_fillins,
    reduce_colored,
    reduce_primitive,
    save_instance,
    verify_sandwich,
)
from .report import RunReport, check, instance_descriptor
from .solvers import (
    exact_fillin_ordering_oracle,
    exact_vertex_cover,
    greedy_minfill_heuristic,
    greedy_ordering,
    is_vertex_cover,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_LIMIT = 3

DEFAULT_SEED = 20240613


def _limits_overridden() -> bool:
    return os.environ.get("FILLIN_LAB_LIMIT_OVERRIDE", "") not in ("", "0")


def _emit(report: RunReport, args) -> None:
    payload = report.dumps() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    for line in report.summary_lines():
        print(line, file=sys.stderr)


# -- subcommands -----------------------------------------------------------------


def cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.model == "gnp":
        g = generate.gnp(args.n, args.p, rng)
    elif args.model == "regular":
        g = generate.random_regular(args.n, args.d, rng)
    elif args.model == "cycle":
        g = generate.cycle(args.n)
    else:
        g = generate.grid(args.rows, args.cols)
    if args.out:
        save_dimacs(g, args.out, comments=[f"model={args.model} seed={args.seed}"])
        print(f"wrote {g.n} vertices, {g.m} edges to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(f"p edge {g.n} {g.m}\n")
        for u, v in g.iter_edges():
            sys.stdout.write(f"e {u + 1} {v + 1}\n")
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = load_dimacs(args.input)
    t0 = time.perf_counter()
    if args.mode == "primitive":
        max_n = 10**9 if _limits_overridden() else PRIMITIVE_MAX_N
        inst = reduce_primitive(g, max_n=max_n)
    else:
        coloring = brooks_coloring(g, args.d)
        max_cells = 10**12 if _limits_overridden() else 10**6
        inst = reduce_colored(g, args.b, coloring, max_cells=max_cells)
    sidecar = save_instance(inst, args.graph_out)
    report = RunReport(
        command="reduce",
        instance=instance_descriptor(g, args.input),
        params={"mode": args.mode, "b": args.b, "d": args.d},
        outputs={
            "gadget_vertices": inst.graph.n,
            "gadget_edges": inst.graph.m,
            "block_deficit": inst.block_deficit,
            "graph_file": str(args.graph_out),
            "sidecar_file": sidecar,
            "q": inst.q,
        },
    )
    if args.timings:
        report.timings = {"seconds": time.perf_counter() - t0}
    _emit(report, args)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = load_dimacs(args.input)
    report = RunReport(
        command=f"solve-{args.problem}",
        instance=instance_descriptor(g, args.input),
        params={"budget": args.budget, "strategy": args.strategy},
    )
    if g.n <= 1000:
        report.instance["edges"] = [list(e) for e in g.iter_edges()]
    t0 = time.perf_counter()
    code = EXIT_OK
    if args.problem == "vc":
        res = exact_vertex_cover(g, node_budget=args.budget)
        report.outputs = {"size": res.size, "status": res.status, "nodes": res.nodes}
        report.certificates["cover"] = sorted(res.vertices)
        report.add(check("cover_is_valid", int(is_vertex_cover(g, res.vertices)), 1, "=="))
        if not res.optimal:
            code = EXIT_LIMIT
    elif args.problem == "fillin":
        fill = exact_fillin_ordering_oracle(g)
        report.outputs = {"size": len(fill), "status": "optimal"}
        report.certificates["fillin"] = sorted(map(list, fill))
        report.add(check("fillin_is_valid", int(bool(verify_fillin(g, fill))), 1, "=="))
    else:  # fillin-heuristic
        fill = greedy_minfill_heuristic(g, args.strategy)
        report.outputs = {"size": len(fill), "status": "heuristic"}
        report.certificates["fillin"] = sorted(map(list, fill))
        report.add(check("fillin_is_valid", int(bool(verify_fillin(g, fill))), 1, "=="))
    if args.timings:
        report.timings = {"seconds": time.perf_counter() - t0}
    _emit(report, args)
    if code == EXIT_OK and not report.passed:
        code = EXIT_CHECK_FAILED
    return code


def cmd_eliminate(args) -> int:
    use_mm = args.format == "mm" or (args.format == "auto" and args.input.endswith(".mtx"))
    if use_mm:
        pattern = matrix.load_matrix_market(args.input)
        g = matrix.graph_from_pattern(pattern)
    else:
        g = load_dimacs(args.input)
        pattern = matrix.pattern_from_graph(g)
    if args.ordering:
        order = [int(x) for x in args.ordering.split(",")]
    elif args.strategy == "natural":
        order = list(range(g.n))
    else:
        order = greedy_ordering(g, args.strategy).tolist()
    fill, total = matrix.symbolic_factor(pattern, order)
    graph_fill = elimination_fill(g, order)
    report = RunReport(
        command="eliminate",
        instance=instance_descriptor(g, args.input),
        params={"ordering_source": args.ordering or args.strategy},
        outputs={
            "fill_size": len(fill),
            "total_nonzeros": total,
            "ordering": [int(v) for v in order],
        },
    )
    report.add(check("matrix_graph_fill_agree", int(fill == graph_fill), 1, "=="))
    report.add(check("nonzero_accounting", total, 2 * (g.m + len(fill)) + g.n, "=="))
    _emit(report, args)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


# -- verification suites (task functions are top-level so --jobs can pickle them) --


def _run_tasks(func, payloads, jobs: int) -> list:
    if jobs <= 1:
        results = [func(p) for p in payloads]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(func, payloads))
    out = []
    for r in results:
        out.extend(r)
    return out


def _sandwich_task(payload):
    t, n, edges, seed = payload
    g = Graph.build(n, edges)
    sub = verify_sandwich(g, rng=np.random.default_rng(seed), random_orderings=1)
    note = f"tau={sub.outputs.get('tau')} phi={sub.outputs.get('phi_gadget')}"
    return [(f"sandwich[{t}:n={n}]", sub.passed, note)]

def _theorem4_task(payload):
    t, n, edges, c, seed = payload
    g = Graph.build(n, edges)
    inst = reduce_primitive(g)
    fills = produced_fillins(inst, rng=np.random.default_rng(seed), random_orderings=1)
    out = []
    for name, fill in sorted(fills.items()):
        sub = decision_equivalence_check(g, c, fill, inst)
        out.append(
            (f"theorem4[{t}:n={n},c={c},{name}]", sub.passed, f"tau={sub.outputs.get('tau')}")
        )
    return out


def _transfer_task(payload):
    t, n, edges, eps_str, d = payload
    g = Graph.build(n, edges)
    eps = Fraction(eps_str)
    out = []
    if g.m == 0:
        return out
    fill_cfg = transfer.TransferConfig(epsilon=eps, d=d, mode="fillin")
    comp_cfg = transfer.TransferConfig(epsilon=eps, d=d, mode="completion")
    cover, audit = transfer.vc_via_fillin(g, transfer.exact_backed_fillin, fill_cfg)
    out.append(
        (
            f"transfer-fillin[{t}:n={g.n}]",
            audit.passed and len(cover) == audit.tau,
            f"ratio={audit.ratio}",
        )
    )
    cover, audit = transfer.vc_via_completion(g, transfer.exact_backed_completion, comp_cfg)
    out.append(
        (
            f"transfer-completion[{t}:n={g.n}]",
            audit.passed and len(cover) == audit.tau,
            f"ratio={audit.ratio}",
        )
    )
    cover, audit = transfer.vc_via_fillin(
        g, transfer.heuristic_backed_fillin("min-fill"), fill_cfg
    )
    out.append((f"transfer-heuristic[{t}:n={g.n}]", audit.passed, f"gate={audit.gate}"))
    return out


def _matrix_task(payload):
    t, n, edges, order = payload
    pattern = matrix.pattern_from_graph(Graph.build(n, edges))
    ok = matrix.fill_equivalence_check(pattern, list(order))
    return [(f"matrix[{t}:n={n}]", ok, "")]


def _random_edges(rng, n: int):
    p = float(rng.uniform(0.15, 0.85))
    return generate.gnp(n, p, rng).edge_list()


def _build_payloads(args):
    rng = np.random.default_rng(args.seed)
    payloads = []
    if args.suite == "sandwich":
        for t in range(args.trials):
            n = 2 + int(rng.integers(0, max(1, args.nmax - 1)))
            payloads.append((t, n, _random_edges(rng, n), int(rng.integers(2**32))))
        return _sandwich_task, payloads
    if args.suite in ("theorem4", "decision"):
        for t in range(args.trials):
            n = 2 + int(rng.integers(0, max(1, args.nmax - 1)))
            edges = _random_edges(rng, n)
            c = int(rng.integers(0, n + 1))
            payloads.append((t, n, edges, c, int(rng.integers(2**32))))
        return _theorem4_task, payloads
    if args.suite == "transfer":
        eps = str(Fraction(args.eps))
        for t in range(args.trials):
            n = 6 + 2 * int(rng.integers(0, 4))
            g = generate.random_subcubic(n, rng)
            payloads.append((t, g.n, g.edge_list(), eps, args.d))
        return _transfer_task, payloads
    # matrix
    for t in range(args.trials):
        n = 2 + int(rng.integers(0, max(1, args.nmax - 1)))
        edges = _random_edges(rng, n)
        order = tuple(int(v) for v in rng.permutation(n))
        payloads.append((t, n, edges, order))
    return _matrix_task, payloads


def cmd_verify(args) -> int:
    report = RunReport(
        command=f"verify-{args.suite}",
        params={
            "seed": args.seed,
            "trials": args.trials,
            "nmax": args.nmax,
            "eps": str(args.eps),
            "d": args.d,
        },
    )
    t0 = time.perf_counter()
    func, payloads = _build_payloads(args)
    for name, ok, note in _run_tasks(func, payloads, args.jobs):
        report.add(check(name, int(ok), 1, "==", note=note))
    if args.timings:
        report.timings = {"seconds": time.perf_counter() - t0}
    _emit(report, args)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


# -- offline report re-check ---------------------------------------------------------


def _parse_num(x):
    if isinstance(x, str) and "/" in x:
        return Fraction(x)
    if isinstance(x, bool):
        return int(x)
    return x


def cmd_report(args) -> int:
    with open(args.input) as fh:
        data = json.load(fh)
    problems = []
    ops = {
        "<": lambda a, b: a < b,
        "<=": lambda a, b: a <= b,
        "==": lambda a, b: a == b,
        ">=": lambda a, b: a >= b,
        ">": lambda a, b: a > b,
    }
    for rec in data.get("checks", []):
        actual = ops[rec["op"]](_parse_num(rec["lhs"]), _parse_num(rec["rhs"]))
        if actual != rec["pass"]:
            problems.append(
                f"check {rec['name']}: recorded pass={rec['pass']} but relation is {actual}"
            )
        if not rec["pass"]:
            problems.append(f"check {rec['name']} failed in the original run")
    edges = (data.get("instance") or {}).get("edges")
    certs = data.get("certificates", {})
    if edges is not None and certs:
        g = Graph.build(data["instance"]["n"], [tuple(e) for e in edges])
        if "cover" in certs and not is_vertex_cover(g, certs["cover"]):
            problems.append("embedded cover certificate does not cover the instance")
        if "fillin" in certs and not verify_fillin(g, [tuple(e) for e in certs["fillin"]]):
            problems.append("embedded fill-in certificate is not a valid fill-in")
        if "peo" in certs and not check_peo(g, certs["peo"]):
            problems.append("embedded PEO certificate fails the definition")
        if "hole" in certs and not check_hole(g, certs["hole"]):
            problems.append("embedded hole certificate fails the definition")
    if problems:
        for p in problems:
            print(f"RECHECK FAIL: {p}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print(
        f"report {args.input}: recheck OK ({len(data.get('checks', []))} checks)",
        file=sys.stderr,
    )
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fillinlab",
        description="Minimum fill-in laboratory: gadget reductions, exact oracles, audits.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--timings", action="store_true", help="embed wall-clock timings")
        p.add_argument("--jobs", type=int, default=1, help="parallel corpus workers")

    p = sub.add_parser("gen", help="generate a graph file")
    p.add_argument("model", choices=["gnp", "regular", "cycle", "grid"])
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="build a gadget instance from a graph file")
    p.add_argument("input")
    p.add_argument("--mode", choices=["primitive", "colored"], required=True)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--d", type=int, default=3)
    p.add_argument(
        "--graph-out", required=True, help="gadget DIMACS path (sidecar appends .json)"
    )
    common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="run a solver on a graph file")
    p.add_argument("input")
    p.add_argument("problem", choices=["vc", "fillin", "fillin-heuristic"])
    p.add_argument("--budget", type=int, default=5_000_000, help="node budget (vc)")
    p.add_argument("--strategy", choices=["min-degree", "min-fill"], default="min-fill")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run a verification suite over a corpus")
    p.add_argument("suite", choices=sorted(_SUITES))
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--eps", default="1/2")
    p.add_argument("--d", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eliminate", help="fill of an ordering on a matrix or graph")
    p.add_argument("input", help="DIMACS graph or Matrix Market .mtx file")
    p.add_argument("--format", choices=["auto", "dimacs", "mm"], default="auto")
    p.add_argument("--ordering", help="comma-separated 0-based pivot order")
    p.add_argument(
        "--strategy", choices=["natural", "min-degree", "min-fill"], default="natural"
    )
    common(p)
    p.set_defaults(func=cmd_eliminate)

    p = sub.add_parser("report", help="re-check a previously emitted JSON report")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_report)

    return ap


_SUITES = ("decision", "matrix", "sandwich", "theorem4", "transfer")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ResourceLimitError as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except CounterexampleError as exc:
        print(
            f"HARD FAILURE (implementation bug or falsified guarantee): {exc}",
            file=sys.stderr,
        )
        return EXIT_CHECK_FAILED
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
