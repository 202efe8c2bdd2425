"""Deciding r-solvability of a pebble distribution, two independent ways.

``bfs_solvable`` searches the configuration space forward from the start
distribution. ``milp_solvable`` decides feasibility of an integer flow model
over directed edges whose used arcs must admit a topological order; by the
No-Cycle Lemma that model is feasible exactly when the distribution is
solvable. The two share nothing but the graph.
"""

from __future__ import annotations

import math
import os
import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import (
    BadInput,
    BudgetExceeded,
    EnumerationBudgetExceeded,
    NodeBudgetExceeded,
    OracleDisagreement,
    StateBudgetExceeded,
)
from .graph import Graph, distances

DEFAULT_STATE_BUDGET = int(os.environ.get("PEBBLING_STATE_BUDGET", 10**8))
DEFAULT_NODE_BUDGET = int(os.environ.get("PEBBLING_NODE_BUDGET", 10**7))
DEFAULT_ENUMERATION_BUDGET = int(os.environ.get("PEBBLING_ENUMERATION_BUDGET", 10**7))

Move = tuple[int, int]


@dataclass(frozen=True)
class PebbleDistribution:
    counts: tuple[int, ...]

    def __post_init__(self):
        if any(int(c) != c or c < 0 for c in self.counts):
            raise BadInput(f"pebble counts must be non-negative integers: {self.counts}")

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def n(self) -> int:
        return len(self.counts)

    def __getitem__(self, v: int) -> int:
        return self.counts[v]

    def add(self, v: int, k: int = 1) -> PebbleDistribution:
        c = list(self.counts)
        c[v] += k
        return PebbleDistribution(tuple(c))

    def support(self) -> dict[int, int]:
        return {v: c for v, c in enumerate(self.counts) if c}

    def to_string(self) -> str:
        return ",".join(f"{v}:{c}" for v, c in self.support().items())

    @classmethod
    def zeros(cls, n: int) -> PebbleDistribution:
        return cls((0,) * n)

    @classmethod
    def from_dict(cls, n: int, counts: dict[int, int]) -> PebbleDistribution:
        c = [0] * n
        for v, k in counts.items():
            if not 0 <= v < n:
                raise BadInput(f"vertex {v} outside 0..{n - 1}")
            c[v] += k
        return cls(tuple(c))

    @classmethod
    def from_string(cls, n: int, text: str) -> PebbleDistribution:
        """Parse ``"v:k,v:k,..."``; repeated vertices accumulate."""
        counts: dict[int, int] = {}
        for item in filter(None, (p.strip() for p in text.split(","))):
            try:
                v, k = item.split(":")
                counts[int(v)] = counts.get(int(v), 0) + int(k)
            except ValueError as exc:
                raise BadInput(f"bad distribution item {item!r}; expected vertex:count") from exc
        return cls.from_dict(n, counts)


@dataclass
class FlowWitness:
    arcs: list[Move]
    x: list[int]
    y: list[int]
    tau: list[int]


@dataclass
class SolvabilityVerdict:
    solvable: bool
    method: str
    moves: list[Move] | None = None
    flow: FlowWitness | None = None
    explored: int = 0


def _check_root(g: Graph, c: PebbleDistribution, r: int) -> None:
    if c.n != g.n:
        raise BadInput(f"distribution has {c.n} entries for a graph on {g.n} vertices")
    if not 0 <= r < g.n:
        raise BadInput(f"target {r} outside graph")


def replay_moves(g: Graph, c: PebbleDistribution, moves: Iterable[Move]) -> PebbleDistribution:
    """Apply pebbling moves, raising ``ValueError`` on any illegal one."""
    counts = list(c.counts)
    for i, (u, v) in enumerate(moves):
        if not g.has_edge(u, v):
            raise ValueError(f"move {i}: ({u}, {v}) is not an edge")
        if counts[u] < 2:
            raise ValueError(f"move {i}: vertex {u} holds {counts[u]} < 2 pebbles")
        counts[u] -= 2
        counts[v] += 1
    return PebbleDistribution(tuple(counts))


class _Potential:
    """Integer-scaled ``sum_v C(v) 2^-d(v, r)``; below 1 means unsolvable.

    A move ``u -> v`` removes ``2 * 2^-d(u)`` and adds ``2^-d(v) <= 2^(1-d(u))``,
    so the potential never increases along a move sequence.
    """

    def __init__(self, g: Graph, r: int):
        dist = distances(g, r).dist
        top = max(dist)
        self.scale = [1 << (top - d) for d in dist]
        self.threshold = 1 << top

    def __call__(self, counts: Sequence[int]) -> int:
        return sum(s * k for s, k in zip(self.scale, counts))


def forward_search(
    g: Graph,
    c: PebbleDistribution,
    r: int,
    *,
    breadth_first: bool = True,
    max_states: int = DEFAULT_STATE_BUDGET,
    prune: bool = True,
    known_unsolvable: set[tuple[int, ...]] | None = None,
) -> SolvabilityVerdict:
    """Exhaustive search of configurations reachable from ``c``.

    Depth-first mode tries moves toward the target first and is much faster
    at finding solutions. ``known_unsolvable`` is a cache shared across calls
    on the same graph and target: states already proven dead are skipped, and
    every state visited by an unsolvable search is added to it.
    """
    _check_root(g, c, r)
    start = tuple(c.counts)
    method = "bfs" if breadth_first else "dfs"
    if start[r] >= 1:
        return SolvabilityVerdict(True, method, moves=[], explored=1)
    potential = _Potential(g, r)
    dist = distances(g, r).dist
    arcs = [(u, v) for u in range(g.n) for v in sorted(g.adjacency[u], key=lambda v: (dist[v], v))]
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], Move] | None] = {start: None}
    frontier = deque([start])
    dead = known_unsolvable if known_unsolvable is not None else set()

    def path_to(state: tuple[int, ...]) -> list[Move]:
        moves = []
        while parent[state] is not None:
            state, mv = parent[state]
            moves.append(mv)
        return moves[::-1]

    if prune and potential(start) < potential.threshold:
        dead.add(start)
        return SolvabilityVerdict(False, method, explored=1)
    if start in dead:
        return SolvabilityVerdict(False, method, explored=1)

    while frontier:
        state = frontier.popleft() if breadth_first else frontier.pop()
        children = []
        for u, v in arcs:
            if state[u] < 2:
                continue
            nxt = list(state)
            nxt[u] -= 2
            nxt[v] += 1
            nxt = tuple(nxt)
            if nxt in parent or nxt in dead:
                continue
            parent[nxt] = (state, (u, v))
            if nxt[r] >= 1:
                return SolvabilityVerdict(True, method, moves=path_to(nxt), explored=len(parent))
            if len(parent) > max_states:
                raise StateBudgetExceeded(f"forward search visited more than {max_states} states")
            if prune and potential(nxt) < potential.threshold:
                continue
            children.append(nxt)
        if breadth_first:
            frontier.extend(children)
        else:
            # the closest-to-target move is popped first
            frontier.extend(reversed(children))
    if known_unsolvable is not None:
        known_unsolvable.update(parent)
    return SolvabilityVerdict(False, method, explored=len(parent))


def bfs_solvable(
    g: Graph,
    c: PebbleDistribution,
    r: int,
    *,
    max_states: int = DEFAULT_STATE_BUDGET,
    prune: bool = True,
) -> SolvabilityVerdict:
    return forward_search(g, c, r, breadth_first=True, max_states=max_states, prune=prune)


# --------------------------------------------------------------------------
# Flow MILP


@dataclass
class MoveFlowModel:
    """Variables, in order: ``x`` per arc, ``y`` per arc, ``tau`` per vertex.

    Arc ``2i`` is edge ``i`` oriented ``u -> v`` (``u < v``); arc ``2i + 1``
    is the reverse.
    """

    graph: Graph
    counts: tuple[int, ...]
    root: int
    arcs: list[Move] = field(init=False)
    big_m: int = field(init=False)

    def __post_init__(self):
        self.arcs = [a for u, v in self.graph.edges for a in ((u, v), (v, u))]
        self.big_m = max(1, sum(self.counts))

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    @property
    def num_vars(self) -> int:
        return 2 * self.num_arcs + self.graph.n

    def x(self, j: int) -> int:
        return j

    def y(self, j: int) -> int:
        return self.num_arcs + j

    def tau(self, v: int) -> int:
        return 2 * self.num_arcs + v

    def in_arcs(self, v: int) -> list[int]:
        return [j for j, (_, b) in enumerate(self.arcs) if b == v]

    def out_arcs(self, v: int) -> list[int]:
        return [j for j, (a, _) in enumerate(self.arcs) if a == v]

    def demand(self, v: int) -> int:
        return 1 if v == self.root else 0

    def inequalities(self, link: Sequence[int] | None = None) -> tuple[np.ndarray, np.ndarray]:
        """``A z <= b`` for conservation, linking and acyclicity.

        ``link`` overrides the big-M coefficient per arc (a valid node-local
        upper bound on that arc's flow).
        """
        n, na = self.graph.n, self.num_arcs
        A = np.zeros((n + 2 * na, self.num_vars))
        b = np.zeros(n + 2 * na)
        for v in range(n):
            for j in self.in_arcs(v):
                A[v, self.y(j)] -= 1
            for j in self.out_arcs(v):
                A[v, self.y(j)] += 2
            b[v] = self.counts[v] - self.demand(v)
        for j, (u, v) in enumerate(self.arcs):
            row = n + 2 * j
            A[row, self.y(j)] = 1
            A[row, self.x(j)] = -(self.big_m if link is None else link[j])
            A[row + 1, self.tau(u)] = 1
            A[row + 1, self.tau(v)] = -1
            A[row + 1, self.x(j)] = n
            b[row + 1] = n - 1
        return A, b

    def to_lp_text(self) -> str:
        """CPLEX LP file text for the model exactly as stated (objective 0)."""
        n = self.graph.n
        xs = [f"x_{u}_{v}" for u, v in self.arcs]
        ys = [f"y_{u}_{v}" for u, v in self.arcs]
        taus = [f"tau_{v}" for v in range(n)]

        def linear(terms: list[tuple[int, str]]) -> str:
            parts = []
            for coef, name in terms:
                sign = "-" if coef < 0 else "+"
                mag = abs(coef)
                parts.append(f"{sign} {name}" if mag == 1 else f"{sign} {mag} {name}")
            text = " ".join(parts)
            return text[2:] if text.startswith("+ ") else text

        lines = [
            f"\\ pebbling solvability: target {self.root}, {sum(self.counts)} pebbles",
            f"\\ counts {','.join(map(str, self.counts))}",
            "Minimize",
            f" obj: 0 {xs[0]}" if xs else " obj: 0 tau_0",
            "Subject To",
        ]
        for v in range(n):
            terms = [(1, ys[j]) for j in self.in_arcs(v)] + [(-2, ys[j]) for j in self.out_arcs(v)]
            rhs = self.demand(v) - self.counts[v]
            if terms:
                lines.append(f" cons_{v}: {linear(terms)} >= {rhs}")
            else:
                lines.append(f" cons_{v}: 0 {taus[v]} >= {rhs}")
        for j in range(self.num_arcs):
            lines.append(f" link_{self.arcs[j][0]}_{self.arcs[j][1]}: {linear([(1, ys[j]), (-self.big_m, xs[j])])} <= 0")
        for j, (u, v) in enumerate(self.arcs):
            lines.append(
                f" acyc_{u}_{v}: {linear([(1, taus[u]), (-1, taus[v]), (n, xs[j])])} <= {n - 1}"
            )
        lines.append("Bounds")
        for name in ys:
            lines.append(f" {name} >= 0")
        for name in taus:
            lines.append(f" 0 <= {name} <= {n - 1}")
        lines.append("Binaries")
        lines.extend(f" {name}" for name in xs)
        lines.append("Generals")
        lines.extend(f" {name}" for name in ys)
        lines.append("End")
        return "\n".join(lines) + "\n"


def export_milp(g: Graph, c: PebbleDistribution, r: int) -> str:
    _check_root(g, c, r)
    return MoveFlowModel(g, tuple(c.counts), r).to_lp_text()


def _topological_positions(n: int, arcs: Sequence[Move]) -> list[int] | None:
    """Kahn's algorithm; ``None`` if the arcs contain a directed cycle."""
    indeg = [0] * n
    out: list[list[int]] = [[] for _ in range(n)]
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    queue = deque(sorted(v for v in range(n) if indeg[v] == 0))
    pos = [0] * n
    k = 0
    while queue:
        u = queue.popleft()
        pos[u] = k
        k += 1
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return pos if k == n else None


def check_flow(g: Graph, c: PebbleDistribution, r: int, w: FlowWitness) -> list[str]:
    """Exact integer check of a flow witness; returns the violations found."""
    model = MoveFlowModel(g, tuple(c.counts), r)
    problems = []
    if w.arcs != model.arcs:
        return ["arc list does not match the graph"]
    n = g.n
    for v in range(n):
        net = c[v] + sum(w.y[j] for j in model.in_arcs(v)) - 2 * sum(w.y[j] for j in model.out_arcs(v))
        if net < model.demand(v):
            problems.append(f"conservation fails at {v}: {net} < {model.demand(v)}")
    for j, (u, v) in enumerate(model.arcs):
        if w.x[j] not in (0, 1) or w.y[j] < 0:
            problems.append(f"arc {u}->{v}: x={w.x[j]}, y={w.y[j]} out of domain")
        if w.y[j] > model.big_m * w.x[j]:
            problems.append(f"arc {u}->{v}: flow {w.y[j]} on an unused arc")
        if w.tau[u] - w.tau[v] + n * w.x[j] > n - 1:
            problems.append(f"arc {u}->{v}: order constraint violated")
    if any(not 0 <= t <= n - 1 for t in w.tau):
        problems.append("order variable outside [0, n-1]")
    used = [a for a, x in zip(model.arcs, w.x) if x == 1]
    if _topological_positions(n, used) is None:
        problems.append("used arcs contain a directed cycle")
    return problems


def flow_to_moves(g: Graph, c: PebbleDistribution, w: FlowWitness) -> list[Move]:
    """Schedule an acyclic flow as a move sequence (vertices in topological order)."""
    used = [(a, y) for a, y in zip(w.arcs, w.y) if y > 0]
    pos = _topological_positions(g.n, [a for a, _ in used])
    if pos is None:
        raise ValueError("flow support is cyclic")
    moves: list[Move] = []
    for (u, v), y in sorted(used, key=lambda t: (pos[t[0][0]], t[0])):
        moves.extend([(u, v)] * y)
    return moves


class _BranchAndBound:
    def __init__(self, g: Graph, c: PebbleDistribution, r: int, max_nodes: int):
        self.g = g
        self.c = tuple(c.counts)
        self.r = r
        self.max_nodes = max_nodes
        self.model = MoveFlowModel(g, self.c, r)
        m = self.model
        self.na = m.num_arcs
        self.ins = [m.in_arcs(v) for v in range(g.n)]
        self.outs = [m.out_arcs(v) for v in range(g.n)]
        self.dist_to_root = distances(g, r).dist
        self.sources = [v for v in range(g.n) if self.c[v] > 0]
        self.A, self.b = m.inequalities()
        self.nodes = 0

    def _reach_caps(self, y_ub: list[int]) -> list[int]:
        """Cap on ``C(v) + inflow(v)`` from the potential over still-allowed arcs.

        Execute an acyclic flow in topological order: just before ``v`` fires
        it holds ``C(v) + inflow(v)`` pebbles, and ``sum_u C(u) 2^-d(u, v)``
        (distances along arcs with positive upper bound) never increases.
        """
        n = self.g.n
        arcs = self.model.arcs
        scale = 1 << n
        caps = []
        for v in range(n):
            d = {v: 0}
            queue = deque([v])
            while queue:
                w = queue.popleft()
                for j in self.ins[w]:
                    if y_ub[j] > 0:
                        u = arcs[j][0]
                        if u not in d:
                            d[u] = d[w] + 1
                            queue.append(u)
            phi = sum(self.c[u] << (n - d[u]) for u in self.sources if u in d)
            caps.append(phi // scale)
        return caps

    def _propagate(self, x_lb, x_ub, y_lb, y_ub) -> bool:
        n, na = self.g.n, self.na
        changed = True
        while changed:
            changed = False
            for j in range(na):
                if x_ub[j] == 0 and y_ub[j] > 0:
                    y_ub[j] = 0
                    changed = True
                if y_lb[j] >= 1 and x_lb[j] == 0:
                    x_lb[j] = 1
                    changed = True
                if x_lb[j] == 1 and x_ub[j ^ 1] == 1:
                    # both orientations used would be a 2-cycle
                    x_ub[j ^ 1] = 0
                    changed = True
                if x_lb[j] > x_ub[j] or y_lb[j] > y_ub[j]:
                    return False
            caps = self._reach_caps(y_ub)
            if caps[self.r] < 1:
                return False
            for v in range(n):
                cap = caps[v] - self.c[v]
                if sum(y_lb[j] for j in self.ins[v]) > cap:
                    return False
                for j in self.ins[v]:
                    if y_ub[j] > cap:
                        y_ub[j] = cap
                        changed = True
            for v in range(n):
                need = self.model.demand(v)
                in_ub = sum(y_ub[j] for j in self.ins[v])
                in_max = min(in_ub, caps[v] - self.c[v])
                out_lb = sum(y_lb[j] for j in self.outs[v])
                room = self.c[v] + in_max - need
                if room < 2 * out_lb:
                    return False
                for j in self.outs[v]:
                    bound = (room - 2 * (out_lb - y_lb[j])) // 2
                    if bound < y_ub[j]:
                        y_ub[j] = bound
                        changed = True
                    if y_ub[j] < y_lb[j]:
                        return False
                in_need = 2 * out_lb + need - self.c[v]
                for j in self.ins[v]:
                    bound = in_need - (in_ub - y_ub[j])
                    if bound > y_lb[j]:
                        y_lb[j] = bound
                        changed = True
                    if y_ub[j] < y_lb[j]:
                        return False
        return True

    def _relax(self, x_lb, x_ub, y_lb, y_ub):
        n, na = self.g.n, self.na
        A = self.A.copy()
        for j in range(na):
            A[n + 2 * j, j] = -max(y_ub[j], 0)
        bounds = (
            list(zip(x_lb, x_ub))
            + list(zip(y_lb, y_ub))
            + [(0, n - 1)] * n
        )
        res = linprog(np.zeros(self.model.num_vars), A_ub=A, b_ub=self.b, bounds=bounds, method="highs")
        return res.x if res.status == 0 else None

    def _integral_solution(self, z) -> FlowWitness | None:
        na = self.na
        y = [int(round(v)) for v in z[na:2 * na]]
        if any(abs(z[na + j] - y[j]) > 1e-6 for j in range(na)):
            return None
        # integral flows on an acyclic support complete to a feasible point
        x = [1 if yj > 0 else 0 for yj in y]
        pos = _topological_positions(self.g.n, [a for a, xj in zip(self.model.arcs, x) if xj])
        if pos is None:
            return None
        w = FlowWitness(arcs=list(self.model.arcs), x=x, y=y, tau=pos)
        if check_flow(self.g, PebbleDistribution(self.c), self.r, w):
            return None
        return w

    def _branch_variable(self, z) -> tuple[int, float] | None:
        na = self.na
        frac = []
        for k in range(2 * na):
            f = z[k] - math.floor(z[k])
            if 1e-6 < f < 1 - 1e-6:
                frac.append(k)
        if not frac:
            return None
        ys = [k for k in frac if k >= na]
        if ys:
            k = min(
                ys,
                key=lambda k: (
                    self.dist_to_root[self.model.arcs[k - na][1]],
                    abs(z[k] - math.floor(z[k]) - 0.5),
                    k,
                ),
            )
        else:
            k = min(frac, key=lambda k: (abs(z[k] - math.floor(z[k]) - 0.5), k))
        return k, z[k]

    def solve(self) -> SolvabilityVerdict:
        na = self.na
        big = self.model.big_m
        x_lb, x_ub = [0] * na, [1] * na
        y_lb, y_ub = [0] * na, [big] * na
        for j in self.outs[self.r]:
            # flow leaving the target can always be deleted together with
            # everything downstream of it
            x_ub[j] = 0
            y_ub[j] = 0
        stack = [(x_lb, x_ub, y_lb, y_ub)]
        while stack:
            x_lb, x_ub, y_lb, y_ub = (list(a) for a in stack.pop())
            self.nodes += 1
            if self.nodes > self.max_nodes:
                raise NodeBudgetExceeded(f"branch-and-bound exceeded {self.max_nodes} nodes")
            if not self._propagate(x_lb, x_ub, y_lb, y_ub):
                continue
            z = self._relax(x_lb, x_ub, y_lb, y_ub)
            if z is None:
                continue
            witness = self._integral_solution(z)
            if witness is not None:
                return SolvabilityVerdict(True, "milp", flow=witness, explored=self.nodes)
            pick = self._branch_variable(z)
            if pick is None:
                continue
            k, value = pick
            lo = math.floor(value)
            down = [list(x_lb), list(x_ub), list(y_lb), list(y_ub)]
            up = [list(x_lb), list(x_ub), list(y_lb), list(y_ub)]
            if k < na:
                down[1][k] = lo
                up[0][k] = lo + 1
            else:
                down[3][k - na] = lo
                up[2][k - na] = lo + 1
            stack.append(tuple(down))
            stack.append(tuple(up))
        return SolvabilityVerdict(False, "milp", explored=self.nodes)


def milp_solvable(
    g: Graph,
    c: PebbleDistribution,
    r: int,
    *,
    max_nodes: int = DEFAULT_NODE_BUDGET,
) -> SolvabilityVerdict:
    """Depth-first branch-and-bound on the flow model.

    Each node tightens bounds (linking, no 2-cycles, conservation, and a
    potential cap on what can reach each vertex), then solves the LP
    relaxation with HiGHS for pruning. Branching takes a fractional flow on
    the arc nearest the target first, then fractional arc indicators.
    """
    _check_root(g, c, r)
    if c[r] >= 1:
        model = MoveFlowModel(g, tuple(c.counts), r)
        pos = list(range(g.n))
        w = FlowWitness(arcs=list(model.arcs), x=[0] * model.num_arcs, y=[0] * model.num_arcs, tau=pos)
        return SolvabilityVerdict(True, "milp", flow=w, explored=0)
    if c.total == 0:
        return SolvabilityVerdict(False, "milp", explored=0)
    return _BranchAndBound(g, c, r, max_nodes).solve()


# --------------------------------------------------------------------------
# Exhaustive pebbling number


class _MemoSolver:
    """Depth-first solvability with a memo shared across start states."""

    def __init__(self, g: Graph, r: int):
        self.g = g
        self.r = r
        self.potential = _Potential(g, r)
        dist = distances(g, r).dist
        self.arcs = [(u, v) for u in range(g.n) for v in sorted(g.adjacency[u], key=lambda v: (dist[v], v))]
        self.memo: dict[tuple[int, ...], bool] = {}

    def __call__(self, state: tuple[int, ...]) -> bool:
        if state[self.r] >= 1:
            return True
        if self.potential(state) < self.potential.threshold:
            return False
        hit = self.memo.get(state)
        if hit is not None:
            return hit
        result = False
        for u, v in self.arcs:
            if state[u] >= 2:
                nxt = list(state)
                nxt[u] -= 2
                nxt[v] += 1
                if self(tuple(nxt)):
                    result = True
                    break
        self.memo[state] = result
        return result


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    # stars and bars, lexicographic
    for bars in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def find_unsolvable(
    g: Graph,
    r: int,
    t: int,
    *,
    max_distributions: int = DEFAULT_ENUMERATION_BUDGET,
    solver: _MemoSolver | None = None,
) -> PebbleDistribution | None:
    """First size-``t`` distribution with ``C(r) = 0`` that is r-unsolvable, if any."""
    if not 0 <= r < g.n:
        raise BadInput(f"target {r} outside graph")
    others = [v for v in range(g.n) if v != r]
    if not others:
        return None
    if math.comb(t + len(others) - 1, len(others) - 1) > max_distributions:
        raise EnumerationBudgetExceeded(
            f"{math.comb(t + len(others) - 1, len(others) - 1)} distributions exceed the budget"
        )
    solve = solver or _MemoSolver(g, r)
    for comp in _compositions(t, len(others)):
        counts = [0] * g.n
        for v, k in zip(others, comp):
            counts[v] = k
        if not solve(tuple(counts)):
            return PebbleDistribution(tuple(counts))
    return None


def exact_pebbling_number(g: Graph, r: int, t: int, *, max_distributions: int = DEFAULT_ENUMERATION_BUDGET) -> bool:
    """True iff every size-``t`` distribution is r-solvable."""
    return find_unsolvable(g, r, t, max_distributions=max_distributions) is None


def pebbling_number(g: Graph, r: int, *, max_distributions: int = DEFAULT_ENUMERATION_BUDGET) -> tuple[int, PebbleDistribution | None]:
    """Exact ``pi(g, r)`` and a largest unsolvable distribution (``None`` when pi = 1)."""
    solver = _MemoSolver(g, r)
    last: PebbleDistribution | None = None
    t = 1
    while True:
        bad = find_unsolvable(g, r, t, max_distributions=max_distributions, solver=solver)
        if bad is None:
            return t, last
        last = bad
        t += 1


# --------------------------------------------------------------------------
# Cross-check harness


@dataclass(frozen=True)
class CrossCheckCase:
    index: int
    root: int
    distribution: PebbleDistribution
    bfs: bool | None
    milp: bool | None

    @property
    def agree(self) -> bool:
        return self.bfs is None or self.milp is None or self.bfs == self.milp


def random_instances(g: Graph, count: int, max_total: int, seed: int = 0) -> list[tuple[int, PebbleDistribution]]:
    """Seeded (root, distribution) pairs with 1..max_total pebbles off the root."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        r = rng.randrange(g.n)
        others = [v for v in range(g.n) if v != r]
        counts = [0] * g.n
        for _ in range(rng.randint(1, max_total)):
            counts[rng.choice(others)] += 1
        out.append((r, PebbleDistribution(tuple(counts))))
    return out


def cross_check(
    g: Graph,
    count: int = 500,
    max_total: int = 12,
    seed: int = 0,
    *,
    max_states: int = DEFAULT_STATE_BUDGET,
    max_nodes: int = DEFAULT_NODE_BUDGET,
) -> list[CrossCheckCase]:
    """Run both oracles on seeded random instances; a ``None`` verdict means budget hit."""
    cases = []
    for i, (r, c) in enumerate(random_instances(g, count, max_total, seed)):
        try:
            b = bfs_solvable(g, c, r, max_states=max_states)
            if b.solvable and replay_moves(g, c, b.moves)[r] < 1:
                raise OracleDisagreement(f"case {i}: move witness does not reach the target")
            bfs = b.solvable
        except BudgetExceeded:
            bfs = None
        try:
            m = milp_solvable(g, c, r, max_nodes=max_nodes)
            if m.solvable and check_flow(g, c, r, m.flow):
                raise OracleDisagreement(f"case {i}: flow witness fails its exact check")
            milp = m.solvable
        except BudgetExceeded:
            milp = None
        cases.append(CrossCheckCase(i, r, c, bfs, milp))
    return cases
