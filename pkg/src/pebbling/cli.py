"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 budget exceeded, 3 bad input.
Budgets default to ``PEBBLING_STATE_BUDGET``, ``PEBBLING_NODE_BUDGET`` and
``PEBBLING_ENUMERATION_BUDGET`` when those are set in the environment.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone

from . import __version__
from .bounds import RootBound, lower_bound_for_root, pebbling_interval, solve_root
from .cert import bundle_from_interval, read_certificate, strategy_to_json, verify_bundle, write_bundle, write_certificate
from .errors import BadInput, PebblingError
from .graph import diameter, girth, load_graph
from .lp import verify_certificate
from .oracle import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_STATE_BUDGET,
    PebbleDistribution,
    bfs_solvable,
    check_flow,
    cross_check,
    export_milp,
    milp_solvable,
    replay_moves,
)
from .strategy import DEFAULT_MAX_SIZE, build_corpus
from .symmetry import automorphisms, orbits


def _fmt(x) -> str:
    return f"{float(x):.3f}"


def _graph(args):
    return load_graph(args.graph)


def cmd_info(args) -> int:
    gid, g = _graph(args)
    degrees = sorted({g.degree(v) for v in g.vertices})
    print(f"graph {gid}: n={g.n} m={g.m} degrees={degrees}")
    print(f"diameter {diameter(g)}")
    try:
        print(f"girth {girth(g)}")
    except BadInput:
        print("girth none (acyclic)")
    print(f"automorphisms {len(automorphisms(g))}")
    return 0


def cmd_orbits(args) -> int:
    gid, g = _graph(args)
    group = automorphisms(g)
    part = orbits(g, group)
    print(f"graph {gid}: |Aut| = {len(group)}, {len(part.orbits)} orbits")
    print(f"{'rep':>4}  {'size':>4}  members")
    for orbit in part.orbits:
        print(f"{orbit[0]:>4}  {len(orbit):>4}  {' '.join(map(str, orbit))}")
    print(f"sizes {sorted(part.sizes)}")
    return 0


def cmd_strategies(args) -> int:
    gid, g = _graph(args)
    start = time.perf_counter()
    corpus = build_corpus(g, args.root, min(args.max_size, g.n))
    print(f"graph {gid} root {args.root}: {len(corpus)} distinct strategies "
          f"(max size {args.max_size}, {time.perf_counter() - start:.1f}s)")
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write("[\n")
            for i, s in enumerate(corpus):
                fh.write(("," if i else "") + json.dumps(strategy_to_json(s)) + "\n")
            fh.write("]\n")
        print(f"wrote {args.dump}")
    return 0


def _print_root(rb: RootBound) -> None:
    proven = "optimal" if rb.proven_optimal else "-"
    print(f"{rb.root:>4}  {len(rb.orbit):>5}  {_fmt(rb.real_bound):>9}  {rb.int_bound:>5}  "
          f"{rb.corpus_size:>9}  {proven:>7}  {rb.seconds:7.1f}s", flush=True)


_TABLE_HEAD = f"{'root':>4}  {'orbit':>5}  {'LP bound':>9}  {'floor':>5}  {'corpus':>9}  {'dual':>7}  {'time':>8}"


def cmd_upper(args) -> int:
    gid, g = _graph(args)
    part = orbits(g)
    rb = solve_root(g, args.root, args.max_size, graph_id=gid, orbit=part.orbit_of(args.root))
    print(_TABLE_HEAD)
    _print_root(rb)
    print(f"pi({gid}, {args.root}) <= {rb.int_bound}  (LP bound {rb.real_bound} = {_fmt(rb.real_bound)})")
    if args.cert:
        write_certificate(rb.certificate, args.cert)
        print(f"wrote {args.cert}")
    return 0


def cmd_lower(args) -> int:
    gid, g = _graph(args)
    budgets = dict(max_states=args.max_states, max_nodes=args.max_nodes)
    witnesses = lower_bound_for_root(g, args.root, **budgets)
    for w in witnesses:
        print(f"{w.provenance:<28} total {w.total:>3}  {w.distribution.to_string()}")
    best = max(witnesses, key=lambda w: w.total)
    print(f"best witness: {best.total} pebbles, unsolvable by bfs and milp: {best.distribution.to_string()}")
    print(f"pi({gid}, {args.root}) >= {best.implied_lower_bound}")
    return 0


def cmd_solvable(args) -> int:
    gid, g = _graph(args)
    c = PebbleDistribution.from_string(g.n, args.dist)
    verdicts = {}
    if args.oracle in ("bfs", "both"):
        v = bfs_solvable(g, c, args.root, max_states=args.max_states)
        verdicts["bfs"] = v.solvable
        line = f"bfs: {'solvable' if v.solvable else 'unsolvable'} ({v.explored} states)"
        if v.solvable:
            final = replay_moves(g, c, v.moves)
            line += f", {len(v.moves)} moves replayed, target holds {final[args.root]}"
        print(line)
    if args.oracle in ("milp", "both"):
        v = milp_solvable(g, c, args.root, max_nodes=args.max_nodes)
        verdicts["milp"] = v.solvable
        line = f"milp: {'solvable' if v.solvable else 'unsolvable'} ({v.explored} nodes)"
        if v.solvable:
            problems = check_flow(g, c, args.root, v.flow)
            line += ", flow checks" + (" ok" if not problems else f" FAILED: {problems}")
            if problems:
                print(line)
                return 1
        print(line)
    if len(set(verdicts.values())) > 1:
        print("oracles disagree", file=sys.stderr)
        return 1
    print("solvable" if next(iter(verdicts.values())) else "unsolvable")
    return 0


def cmd_export(args) -> int:
    gid, g = _graph(args)
    text = export_milp(g, PebbleDistribution.from_string(g.n, args.dist), args.root)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    gid, g = _graph(args)
    cert = read_certificate(args.cert, g)
    verdict = verify_certificate(cert, g)
    if verdict:
        print(f"certificate ok: pi({gid}, {cert.root}) <= {cert.claimed_int_bound}")
        return 0
    for f in verdict.failures:
        print(f"{f.kind}: {f.where}: {f.message}")
    return 1


def cmd_crosscheck(args) -> int:
    gid, g = _graph(args)
    cases = cross_check(g, args.count, args.max_total, args.seed,
                        max_states=args.max_states, max_nodes=args.max_nodes)
    bad = [c for c in cases if not c.agree]
    unknown = sum(c.bfs is None or c.milp is None for c in cases)
    solvable = sum(bool(c.bfs) for c in cases)
    print(f"graph {gid}: {len(cases)} cases (seed {args.seed}), {solvable} solvable, "
          f"{unknown} unknown, {len(bad)} disagreements")
    for c in bad:
        print(f"  case {c.index}: root {c.root} {c.distribution.to_string()} bfs={c.bfs} milp={c.milp}")
    return 1 if bad else 0


def cmd_run_all(args) -> int:
    gid, g = _graph(args)
    started = time.perf_counter()
    group = automorphisms(g)
    print(f"graph {gid}: n={g.n} m={g.m} |Aut|={len(group)} max_size={args.max_size}")
    print(_TABLE_HEAD, flush=True)
    interval = pebbling_interval(g, args.max_size, graph_id=gid, jobs=args.jobs,
                                 progress=None if args.jobs > 1 else _print_root)
    if args.jobs > 1:
        for rb in interval.roots:
            _print_root(rb)
    for w in sorted(interval.witnesses, key=lambda w: -w.total)[:1]:
        print(f"best witness @ {w.root} ({w.provenance}): {w.total} pebbles  {w.distribution.to_string()}")
    for r, pi in sorted(interval.exact.items()):
        print(f"exact pi({gid}, {r}) = {pi}")
    print(f"interval: [{interval.lower}, {interval.upper}]")
    if args.out:
        bundle = bundle_from_interval(
            interval, g, group_order=len(group),
            parameters={"max_size": args.max_size, "seed": args.seed,
                        "state_budget": DEFAULT_STATE_BUDGET, "node_budget": DEFAULT_NODE_BUDGET},
            run_info={
                "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                "seconds_total": round(time.perf_counter() - started, 2),
                "per_root": [{"root": rb.root, "seconds": round(rb.seconds, 2),
                              "lp_optimum_float": rb.lp_optimum, "iterations": rb.iterations}
                             for rb in interval.roots],
                "jobs": args.jobs,
            },
        )
        write_bundle(bundle, args.out)
        print(f"wrote {args.out}")
    return 0


def cmd_verify_bundle(args) -> int:
    verdict = verify_bundle(args.path)
    if verdict:
        print(f"bundle ok: {args.path}")
        return 0
    for f in verdict.failures:
        print(f"{f.kind}: {f.where}: {f.message}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pebbling", description="Certified bounds on graph pebbling numbers")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, func, help, root=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("--graph", required=True, help="b1, b2, petersen, or a graph file")
        if root:
            p.add_argument("--root", type=int, required=True)
        p.set_defaults(func=func)
        return p

    def budgets(p):
        p.add_argument("--max-states", type=int, default=DEFAULT_STATE_BUDGET)
        p.add_argument("--max-nodes", type=int, default=DEFAULT_NODE_BUDGET)

    graph_cmd("info", cmd_info, "basic graph invariants")
    graph_cmd("orbits", cmd_orbits, "automorphism group order and vertex orbits")

    p = graph_cmd("strategies", cmd_strategies, "count (and dump) basic strategies", root=True)
    p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)
    p.add_argument("--dump", help="write strategies as JSON")

    p = graph_cmd("upper", cmd_upper, "certified LP upper bound for one root", root=True)
    p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)
    p.add_argument("--cert", help="write the certificate JSON here")

    p = graph_cmd("lower", cmd_lower, "greedy unsolvable witnesses for one root", root=True)
    budgets(p)

    p = graph_cmd("solvable", cmd_solvable, "decide solvability of a distribution", root=True)
    p.add_argument("--dist", required=True, help='e.g. "10:15,1:1"')
    p.add_argument("--oracle", choices=["bfs", "milp", "both"], default="both")
    budgets(p)

    p = graph_cmd("export-milp", cmd_export, "write the flow MILP in LP file format", root=True)
    p.add_argument("--dist", required=True)
    p.add_argument("--out")

    p = graph_cmd("verify", cmd_verify, "check a certificate file")
    p.add_argument("--cert", required=True)

    p = graph_cmd("crosscheck", cmd_crosscheck, "compare the two oracles on random distributions")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--max-total", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    budgets(p)

    p = graph_cmd("run-all", cmd_run_all, "bounds for every orbit and the final interval")
    p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)
    p.add_argument("--out", help="write the report bundle here")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify-bundle", help="re-verify a report bundle")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify_bundle)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PebblingError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
