"""JSON report bundles and their independent re-verification.

Verification uses only exact rational arithmetic, the automorphism search and
the forward-search oracle. It never runs the simplex or the MILP, so a bug in
either producer cannot hide behind the same bug in the checker.

Everything under ``run_info`` (timestamp, timings, float LP values) is
informational and excluded from bundle comparison.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .bounds import PebblingInterval
from .errors import BadInput, BudgetExceeded, SchemaError, Verdict
from .graph import Graph, from_edge_list
from .lp import CoveringCertificate, verify_certificate
from .oracle import PebbleDistribution, bfs_solvable, pebbling_number
from .strategy import Strategy, canonical_weights
from .symmetry import automorphisms, orbits

SCHEMA_VERSION = 1


@dataclass
class WitnessRecord:
    root: int
    counts: tuple[int, ...]
    total: int
    bfs_verdict: bool
    milp_verdict: bool
    provenance: str = ""


@dataclass
class RootRecord:
    certificate: CoveringCertificate
    orbit: tuple[int, ...]
    corpus_size: int
    dual_bound: Fraction | None


@dataclass
class ReportBundle:
    graph_id: str
    n: int
    edges: list[tuple[int, int]]
    group_order: int
    orbits: list[tuple[int, ...]]
    roots: list[RootRecord]
    witnesses: list[WitnessRecord]
    lower: int
    upper: int
    exact: dict[int, int] = field(default_factory=dict)
    parameters: dict[str, Any] = field(default_factory=dict)
    version: str = __version__
    run_info: dict[str, Any] = field(default_factory=dict)

    @property
    def certificates(self) -> list[CoveringCertificate]:
        return [rr.certificate for rr in self.roots]


def bundle_from_interval(
    interval: PebblingInterval,
    g: Graph,
    *,
    group_order: int,
    parameters: dict[str, Any] | None = None,
    run_info: dict[str, Any] | None = None,
) -> ReportBundle:
    return ReportBundle(
        graph_id=interval.graph_id,
        n=g.n,
        edges=list(g.edges),
        group_order=group_order,
        orbits=list(interval.orbits.orbits),
        roots=[RootRecord(rb.certificate, rb.orbit, rb.corpus_size, rb.dual_bound) for rb in interval.roots],
        witnesses=[
            WitnessRecord(w.root, w.distribution.counts, w.total, w.bfs_verdict, w.milp_verdict, w.provenance)
            for w in interval.witnesses
        ],
        lower=interval.lower,
        upper=interval.upper,
        exact=dict(interval.exact),
        parameters=dict(parameters or {}),
        run_info=dict(run_info or {}),
    )


# --------------------------------------------------------------------------
# encoding


def _rat(x: Fraction) -> dict[str, int]:
    return {"num": x.numerator, "den": x.denominator}


def certificate_to_json(cert: CoveringCertificate) -> dict[str, Any]:
    """Certificate file layout; strategies are stored as tree edges only."""
    return {
        "graph_id": cert.graph_id,
        "root": cert.root,
        "entries": [
            {
                "tree_edges": [list(e) for e in s.tree_edges],
                "multiplier_num": a.numerator,
                "multiplier_den": a.denominator,
            }
            for s, a in cert.entries
        ],
        "claimed_real_bound": _rat(cert.claimed_real_bound),
        "claimed_int_bound": cert.claimed_int_bound,
    }


def strategy_to_json(s: Strategy) -> dict[str, Any]:
    return {
        "root": s.root,
        "tree_edges": [list(e) for e in s.tree_edges],
        "weights": list(s.weights),
        "weight_total": s.weight_total,
    }


def bundle_to_json(b: ReportBundle) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "pebbling", "version": b.version},
        "graph": {"id": b.graph_id, "n": b.n, "edges": [list(e) for e in b.edges]},
        "parameters": b.parameters,
        "symmetry": {"group_order": b.group_order, "orbits": [list(o) for o in b.orbits]},
        "roots": [
            {
                "orbit": list(rr.orbit),
                "corpus_size": rr.corpus_size,
                "dual_bound": None if rr.dual_bound is None else _rat(rr.dual_bound),
                "certificate": certificate_to_json(rr.certificate),
            }
            for rr in b.roots
        ],
        "witnesses": [
            {
                "root": w.root,
                "counts": list(w.counts),
                "total": w.total,
                "bfs_verdict": w.bfs_verdict,
                "milp_verdict": w.milp_verdict,
                "provenance": w.provenance,
            }
            for w in b.witnesses
        ],
        "exact": {str(r): pi for r, pi in sorted(b.exact.items())},
        "interval": {"lower": b.lower, "upper": b.upper},
        "run_info": b.run_info,
    }


def write_bundle(b: ReportBundle, path: str | Path) -> None:
    Path(path).write_text(json.dumps(bundle_to_json(b), indent=1) + "\n")


# --------------------------------------------------------------------------
# decoding


def _need(obj: Any, key: str, kind, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise SchemaError(f"{where}.{key}: expected an integer, got {val!r}")
    if kind is not int and not isinstance(val, kind):
        raise SchemaError(f"{where}.{key}: expected {kind}, got {type(val).__name__}")
    return val


def _int_list(val: Any, where: str) -> list[int]:
    if not isinstance(val, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in val):
        raise SchemaError(f"{where}: expected a list of integers")
    return val


def _read_rat(obj: Any, where: str) -> Fraction:
    if isinstance(obj, float):
        raise SchemaError(f"{where}: float {obj!r} where an exact rational is required")
    num = _need(obj, "num", int, where)
    den = _need(obj, "den", int, where)
    if den <= 0:
        raise SchemaError(f"{where}: denominator must be positive")
    return Fraction(num, den)


def _read_edges(val: Any, where: str) -> tuple[tuple[int, int], ...]:
    if not isinstance(val, list):
        raise SchemaError(f"{where}: expected a list of edges")
    pairs = []
    for e in val:
        pair = _int_list(e, where)
        if len(pair) != 2:
            raise SchemaError(f"{where}: edge {pair} is not a pair")
        pairs.append((pair[0], pair[1]))
    return tuple(pairs)


def _rebuild_strategy(g: Graph, root: int, edges: tuple[tuple[int, int], ...]) -> Strategy:
    try:
        # keep the edge list as written so reading and writing round-trip
        return dataclasses.replace(canonical_weights(g, root, edges), tree_edges=edges)
    except BadInput:
        # keep the broken tree so verification reports it instead of the reader
        return Strategy(root=root, tree_edges=edges, depth=0, weights=(0,) * g.n, weight_total=0)


def certificate_from_json(obj: Any, g: Graph, where: str = "certificate") -> CoveringCertificate:
    root = _need(obj, "root", int, where)
    entries = []
    for i, e in enumerate(_need(obj, "entries", list, where)):
        at = f"{where}.entries[{i}]"
        edges = _read_edges(_need(e, "tree_edges", list, at), f"{at}.tree_edges")
        num = _need(e, "multiplier_num", int, at)
        den = _need(e, "multiplier_den", int, at)
        if den <= 0:
            raise SchemaError(f"{at}: denominator must be positive")
        entries.append((_rebuild_strategy(g, root, edges), Fraction(num, den)))
    return CoveringCertificate(
        root=root,
        entries=tuple(entries),
        claimed_real_bound=_read_rat(_need(obj, "claimed_real_bound", (dict, float), where), f"{where}.claimed_real_bound"),
        claimed_int_bound=_need(obj, "claimed_int_bound", int, where),
        graph_id=obj.get("graph_id", ""),
    )


def read_certificate(path: str | Path, g: Graph) -> CoveringCertificate:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not JSON ({exc})") from exc
    return certificate_from_json(data, g)


def write_certificate(cert: CoveringCertificate, path: str | Path) -> None:
    Path(path).write_text(json.dumps(certificate_to_json(cert), indent=1) + "\n")


def bundle_from_json(data: Any) -> ReportBundle:
    version = _need(data, "schema_version", int, "bundle")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version}; this reader knows {SCHEMA_VERSION}")
    graph = _need(data, "graph", dict, "bundle")
    sym = _need(data, "symmetry", dict, "bundle")
    n = _need(graph, "n", int, "graph")
    edges = list(_read_edges(_need(graph, "edges", list, "graph"), "graph.edges"))
    try:
        g = from_edge_list(n, edges)
    except BadInput as exc:
        raise SchemaError(f"graph: {exc}") from exc
    roots = []
    for i, rr in enumerate(_need(data, "roots", list, "bundle")):
        where = f"roots[{i}]"
        dual = rr.get("dual_bound") if isinstance(rr, dict) else None
        roots.append(
            RootRecord(
                certificate=certificate_from_json(_need(rr, "certificate", dict, where), g, f"{where}.certificate"),
                orbit=tuple(_int_list(_need(rr, "orbit", list, where), f"{where}.orbit")),
                corpus_size=_need(rr, "corpus_size", int, where),
                dual_bound=None if dual is None else _read_rat(dual, f"{where}.dual_bound"),
            )
        )
    witnesses = []
    for i, w in enumerate(_need(data, "witnesses", list, "bundle")):
        where = f"witnesses[{i}]"
        witnesses.append(
            WitnessRecord(
                root=_need(w, "root", int, where),
                counts=tuple(_int_list(_need(w, "counts", list, where), f"{where}.counts")),
                total=_need(w, "total", int, where),
                bfs_verdict=_need(w, "bfs_verdict", bool, where),
                milp_verdict=_need(w, "milp_verdict", bool, where),
                provenance=w.get("provenance", ""),
            )
        )
    exact = {}
    for k, v in _need(data, "exact", dict, "bundle").items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise SchemaError(f"exact[{k}]: expected an integer")
        exact[int(k)] = v
    interval = _need(data, "interval", dict, "bundle")
    return ReportBundle(
        graph_id=_need(graph, "id", str, "graph"),
        n=n,
        edges=edges,
        group_order=_need(sym, "group_order", int, "symmetry"),
        orbits=[tuple(_int_list(o, "symmetry.orbits")) for o in _need(sym, "orbits", list, "symmetry")],
        roots=roots,
        witnesses=witnesses,
        lower=_need(interval, "lower", int, "interval"),
        upper=_need(interval, "upper", int, "interval"),
        exact=exact,
        parameters=data.get("parameters", {}),
        version=_need(data, "tool", dict, "bundle").get("version", ""),
        run_info=data.get("run_info", {}),
    )


def read_bundle(path: str | Path) -> ReportBundle:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not JSON ({exc})") from exc
    return bundle_from_json(data)


def comparable(data: dict[str, Any]) -> dict[str, Any]:
    """Bundle JSON without the informational ``run_info`` block."""
    return {k: v for k, v in data.items() if k != "run_info"}


# --------------------------------------------------------------------------
# verification


def verify_bundle(source: str | Path | ReportBundle, *, max_states: int | None = None) -> Verdict:
    """Recheck a bundle from its own contents; returns every failure found."""
    verdict = Verdict()
    if isinstance(source, ReportBundle):
        b = source
    else:
        try:
            b = read_bundle(source)
        except (SchemaError, OSError) as exc:
            verdict.fail("schema", str(source), str(exc))
            return verdict
    g = from_edge_list(b.n, b.edges)

    group = automorphisms(g)
    part = orbits(g, group)
    if len(group) != b.group_order:
        verdict.fail("orbits", "symmetry.group_order", f"claimed {b.group_order}, recomputed {len(group)}")
    if sorted(map(tuple, b.orbits)) != sorted(part.orbits):
        verdict.fail("orbits", "symmetry.orbits", "stored orbits differ from the recomputed ones")

    hit = [0] * len(part.orbits)
    for i, rr in enumerate(b.roots):
        cert = rr.certificate
        where = f"roots[{i}]"
        if not 0 <= cert.root < g.n:
            verdict.fail("root", where, f"root {cert.root} outside graph")
            continue
        hit[part.index_of(cert.root)] += 1
        if tuple(rr.orbit) != part.orbit_of(cert.root):
            verdict.fail("orbits", where, f"orbit {rr.orbit} is not the orbit of {cert.root}")
        verdict.extend(verify_certificate(cert, g), prefix=f"{where}/")
    for k, count in enumerate(hit):
        if count != 1:
            verdict.fail("orbit-coverage", f"orbit {part.orbits[k]}", f"{count} certificates, expected exactly 1")

    budget = {} if max_states is None else {"max_states": max_states}
    for i, w in enumerate(b.witnesses):
        where = f"witnesses[{i}]"
        if len(w.counts) != g.n or not 0 <= w.root < g.n:
            verdict.fail("witness", where, "shape does not match the graph")
            continue
        if any(k < 0 for k in w.counts) or sum(w.counts) != w.total:
            verdict.fail("witness", where, f"total {w.total} != sum of counts {sum(w.counts)}")
        if w.counts[w.root] != 0:
            verdict.fail("witness", where, "pebble on the target")
        if w.bfs_verdict or w.milp_verdict:
            verdict.fail("witness", where, "recorded verdicts are not both 'unsolvable'")
        try:
            if bfs_solvable(g, PebbleDistribution(tuple(max(k, 0) for k in w.counts)), w.root, **budget).solvable:
                verdict.fail("witness", where, "distribution is solvable")
        except BudgetExceeded as exc:
            verdict.fail("budget", where, str(exc))

    for r, pi in sorted(b.exact.items()):
        try:
            recomputed, _ = pebbling_number(g, r)
        except BudgetExceeded as exc:
            verdict.fail("budget", f"exact[{r}]", str(exc))
            continue
        if recomputed != pi:
            verdict.fail("exact", f"exact[{r}]", f"claimed {pi}, recomputed {recomputed}")

    if b.roots:
        upper = max(rr.certificate.claimed_int_bound for rr in b.roots)
        if b.upper != upper:
            verdict.fail("interval", "interval.upper", f"claimed {b.upper}, certificates give {upper}")
    else:
        verdict.fail("interval", "interval.upper", "no certificates")
    lower = max([w.total + 1 for w in b.witnesses] + list(b.exact.values()), default=1)
    if b.lower != lower:
        verdict.fail("interval", "interval.lower", f"claimed {b.lower}, witnesses give {lower}")
    if b.lower > b.upper:
        verdict.fail("interval", "interval", f"lower {b.lower} exceeds upper {b.upper}")
    return verdict
