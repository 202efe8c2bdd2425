"""Per-orbit upper bounds and greedy unsolvable witnesses, combined into an interval."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadInput, OracleDisagreement
from .graph import Graph, distances
from .lp import CoveringCertificate, build_covering_lp, certify, exact_dual_bound, solve_lp, verify_certificate
from .oracle import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_STATE_BUDGET,
    PebbleDistribution,
    bfs_solvable,
    forward_search,
    milp_solvable,
    pebbling_number,
)
from .strategy import DEFAULT_MAX_SIZE, build_corpus
from .symmetry import OrbitPartition, orbits

EXHAUSTIVE_MAX_VERTICES = 10
SCAN_ORDERS = ("ascending", "far-first")


@dataclass
class UnsolvabilityWitness:
    root: int
    distribution: PebbleDistribution
    bfs_verdict: bool
    milp_verdict: bool
    provenance: str = ""

    def __post_init__(self):
        if self.distribution[self.root] != 0:
            raise BadInput("a witness must hold no pebble on its target")

    @property
    def total(self) -> int:
        return self.distribution.total

    @property
    def implied_lower_bound(self) -> int:
        return self.distribution.total + 1


@dataclass
class RootBound:
    root: int
    orbit: tuple[int, ...]
    certificate: CoveringCertificate
    lp_optimum: float
    corpus_size: int
    iterations: int
    dual_bound: Fraction | None
    seconds: float

    @property
    def int_bound(self) -> int:
        return self.certificate.claimed_int_bound

    @property
    def real_bound(self) -> Fraction:
        return self.certificate.claimed_real_bound

    @property
    def proven_optimal(self) -> bool:
        # 1 + dual == certified bound means no cheaper cover exists in this corpus
        return self.dual_bound is not None and self.dual_bound + 1 == self.real_bound


@dataclass
class PebblingInterval:
    graph_id: str
    orbits: OrbitPartition
    roots: list[RootBound]
    witnesses: list[UnsolvabilityWitness]
    max_size: int
    exact: dict[int, int] = field(default_factory=dict)

    @property
    def upper(self) -> int:
        return max(rb.int_bound for rb in self.roots)

    @property
    def lower(self) -> int:
        lows = [w.implied_lower_bound for w in self.witnesses] + list(self.exact.values())
        return max(lows, default=1)

    @property
    def certificates(self) -> list[CoveringCertificate]:
        return [rb.certificate for rb in self.roots]


def cone_seeds(g: Graph, r: int) -> list[PebbleDistribution]:
    """``2^e - 1`` pebbles on each vertex at distance ``e = ecc(r)`` from ``r``."""
    table = distances(g, r)
    e = table.eccentricity
    if e == 0:
        return []
    zero = PebbleDistribution.zeros(g.n)
    return [zero.add(v, (1 << e) - 1) for v in table.at_distance(e)]


def greedy_grow(
    g: Graph,
    r: int,
    seed: PebbleDistribution,
    *,
    max_states: int = DEFAULT_STATE_BUDGET,
    max_nodes: int = DEFAULT_NODE_BUDGET,
    cache: set | None = None,
    provenance: str = "",
    order: str = "ascending",
) -> UnsolvabilityWitness:
    """Add single pebbles while the result stays unsolvable.

    ``order`` is ``"ascending"`` (vertex labels) or ``"far-first"`` (distance
    from ``r`` descending, then label). Passes repeat until one adds
    nothing, so the result is maximal. Each trial uses the exhaustive
    depth-first search with a cache of states proven dead; the fixpoint is
    then re-decided by breadth-first search and by the MILP.
    """
    if seed[r] != 0:
        raise BadInput("seed must hold no pebble on the target")
    cache = set() if cache is None else cache
    if forward_search(g, seed, r, breadth_first=False, max_states=max_states, known_unsolvable=cache).solvable:
        raise BadInput("seed distribution is already solvable")
    scan = scan_order(g, r, order)
    current = seed
    grew = True
    while grew:
        grew = False
        for v in scan:
            trial = current.add(v)
            verdict = forward_search(g, trial, r, breadth_first=False, max_states=max_states, known_unsolvable=cache)
            if not verdict.solvable:
                current = trial
                grew = True
    bfs = bfs_solvable(g, current, r, max_states=max_states)
    milp = milp_solvable(g, current, r, max_nodes=max_nodes)
    if bfs.solvable or milp.solvable:
        raise OracleDisagreement(
            f"greedy fixpoint {current.to_string()} judged solvable (bfs={bfs.solvable}, milp={milp.solvable})"
        )
    return UnsolvabilityWitness(r, current, bfs_verdict=False, milp_verdict=False, provenance=provenance)


def scan_order(g: Graph, r: int, order: str) -> list[int]:
    if order == "ascending":
        vs = list(range(g.n))
    elif order == "far-first":
        d = distances(g, r).dist
        vs = sorted(range(g.n), key=lambda v: (-d[v], v))
    else:
        raise BadInput(f"unknown scan order {order!r}")
    return [v for v in vs if v != r]


def confirm_witness(
    g: Graph,
    r: int,
    c: PebbleDistribution,
    *,
    provenance: str = "",
    max_states: int = DEFAULT_STATE_BUDGET,
    max_nodes: int = DEFAULT_NODE_BUDGET,
) -> UnsolvabilityWitness:
    """Check a given distribution with both oracles; raise if either finds it solvable."""
    bfs = bfs_solvable(g, c, r, max_states=max_states)
    milp = milp_solvable(g, c, r, max_nodes=max_nodes)
    if bfs.solvable != milp.solvable:
        raise OracleDisagreement(f"{c.to_string()} @ {r}: bfs={bfs.solvable}, milp={milp.solvable}")
    if bfs.solvable:
        raise BadInput(f"{c.to_string()} is {r}-solvable, not a witness")
    return UnsolvabilityWitness(r, c, bfs_verdict=False, milp_verdict=False, provenance=provenance)


def lower_bound_for_root(g: Graph, r: int, **budgets) -> list[UnsolvabilityWitness]:
    """One greedy witness per cone seed and scan order."""
    cache: set = set()
    out = []
    for seed in cone_seeds(g, r):
        (v, k), = seed.support().items()
        for order in SCAN_ORDERS:
            out.append(
                greedy_grow(g, r, seed, cache=cache, provenance=f"cone {k}@{v}, {order}", order=order, **budgets)
            )
    return out


def solve_root(g: Graph, r: int, max_size: int = DEFAULT_MAX_SIZE, *, graph_id: str = "", orbit=()) -> RootBound:
    start = time.perf_counter()
    corpus = build_corpus(g, r, min(max_size, g.n))
    lp = build_covering_lp(corpus)
    solution = solve_lp(lp)
    cert = certify(lp, solution, graph_id=graph_id)
    check = verify_certificate(cert, g)
    if not check:
        raise OracleDisagreement(f"certificate for root {r} failed its own check: {check.kinds()}")
    return RootBound(
        root=r,
        orbit=tuple(orbit) or (r,),
        certificate=cert,
        lp_optimum=solution.optimum,
        corpus_size=len(corpus),
        iterations=solution.iterations,
        dual_bound=exact_dual_bound(lp, solution.basis),
        seconds=time.perf_counter() - start,
    )


def upper_bound_for_root(g: Graph, r: int, max_size: int = DEFAULT_MAX_SIZE, *, graph_id: str = "") -> CoveringCertificate:
    return solve_root(g, r, max_size, graph_id=graph_id).certificate


def _solve_root_job(args):
    g, r, max_size, graph_id, orbit = args
    return solve_root(g, r, max_size, graph_id=graph_id, orbit=orbit)


def pebbling_interval(
    g: Graph,
    max_size: int = DEFAULT_MAX_SIZE,
    *,
    graph_id: str = "",
    exhaustive: bool | None = None,
    jobs: int = 1,
    representatives: list[int] | None = None,
    progress=None,
) -> PebblingInterval:
    """Upper bounds over one representative per orbit, lower bounds from witnesses.

    On graphs with at most ``EXHAUSTIVE_MAX_VERTICES`` vertices (or when
    ``exhaustive`` is set) the exact ``pi(g, r)`` is also computed per
    representative and a largest unsolvable distribution is kept as witness.
    """
    part = orbits(g)
    reps = list(representatives) if representatives is not None else list(part.representatives)
    for r in reps:
        part.index_of(r)
    if exhaustive is None:
        exhaustive = g.n <= EXHAUSTIVE_MAX_VERTICES
    job_args = [(g, r, max_size, graph_id, part.orbit_of(r)) for r in reps]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            roots = list(pool.map(_solve_root_job, job_args))
    else:
        roots = []
        for a in job_args:
            roots.append(_solve_root_job(a))
            if progress:
                progress(roots[-1])

    witnesses: list[UnsolvabilityWitness] = []
    exact: dict[int, int] = {}
    for r in reps:
        witnesses.extend(lower_bound_for_root(g, r))
        if exhaustive:
            pi, bad = pebbling_number(g, r)
            exact[r] = pi
            if bad is not None:
                witnesses.append(confirm_witness(g, r, bad, provenance="exhaustive"))
    roots.sort(key=lambda rb: reps.index(rb.root))
    return PebblingInterval(
        graph_id=graph_id,
        orbits=part,
        roots=roots,
        witnesses=witnesses,
        max_size=max_size,
        exact=exact,
    )
