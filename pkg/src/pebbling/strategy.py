"""Basic pebbling strategies: rooted subtrees with canonical power-of-two weights.

A basic strategy is determined by its weight vector, and the weight vector is
determined by the vertex set of the tree together with each vertex's depth.
Conversely a (vertex set, depth) pair is realised by some rooted subtree
exactly when every non-root vertex at depth ``h`` has a neighbour in the set
at depth ``h - 1``. The enumerator therefore grows depth layers directly:
layer ``h`` is any non-empty set of unused neighbours of layer ``h - 1``.
Each layer sequence is produced once, so no duplicate signatures are ever
generated and no dedup table has to be held during the search.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BadInput, NotATree, NotSubgraph, Verdict
from .graph import Graph, distances

ABSENT = 255
DEFAULT_MAX_SIZE = 16


@dataclass(frozen=True)
class Strategy:
    root: int
    tree_edges: tuple[tuple[int, int], ...]
    depth: int
    weights: tuple[int, ...]
    weight_total: int

    @property
    def vertices(self) -> list[int]:
        return sorted({self.root} | {c for _, c in self.tree_edges})

    def signature(self) -> tuple[int, ...]:
        return self.weights


def _orient(g: Graph, root: int, tree_edges: Iterable[Sequence[int]]) -> list[tuple[int, int, int]]:
    """Return (parent, child, depth_of_child) triples in BFS order from ``root``."""
    pairs = [(int(a), int(b)) for a, b in tree_edges]
    if not pairs:
        raise NotATree("a strategy tree needs at least one edge")
    nbrs: dict[int, list[int]] = {}
    for a, b in pairs:
        if not (0 <= a < g.n and 0 <= b < g.n) or not g.has_edge(a, b):
            raise NotSubgraph(f"({a}, {b}) is not an edge of the graph")
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    if len({(min(a, b), max(a, b)) for a, b in pairs}) != len(pairs):
        raise NotATree("repeated tree edge")
    if root not in nbrs:
        raise NotATree(f"root {root} is not in the tree")
    if len(nbrs) != len(pairs) + 1:
        raise NotATree(f"{len(pairs)} edges on {len(nbrs)} vertices cannot form a tree")
    depth = {root: 0}
    out = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in sorted(nbrs[u]):
            if v not in depth:
                depth[v] = depth[u] + 1
                out.append((u, v, depth[v]))
                queue.append(v)
    if len(depth) != len(nbrs):
        raise NotATree("tree edges are not connected")
    return out


def canonical_weights(g: Graph, root: int, tree_edges: Iterable[Sequence[int]]) -> Strategy:
    """Build the basic strategy with weight ``2**(D - depth(v))`` on each non-root tree vertex.

    ``tree_edges`` may list each edge in either orientation; edges are
    re-oriented away from ``root``.
    """
    oriented = _orient(g, root, tree_edges)
    D = max(d for _, _, d in oriented)
    weights = [0] * g.n
    for _, child, d in oriented:
        weights[child] = 1 << (D - d)
    return Strategy(
        root=root,
        tree_edges=tuple((p, c) for p, c, _ in oriented),
        depth=D,
        weights=tuple(weights),
        weight_total=sum(weights),
    )


def validate_strategy(s: Strategy, g: Graph) -> Verdict:
    verdict = Verdict()
    where = f"strategy@{s.root}"
    if not 0 <= s.root < g.n:
        verdict.fail("root", where, f"root {s.root} outside graph")
        return verdict
    if len(s.weights) != g.n:
        verdict.fail("shape", where, f"{len(s.weights)} weights for {g.n} vertices")
        return verdict
    try:
        oriented = _orient(g, s.root, s.tree_edges)
    except (NotATree, NotSubgraph) as exc:
        verdict.fail("tree", where, str(exc))
        return verdict
    declared = {tuple(e) for e in s.tree_edges}
    if any((p, c) not in declared for p, c, _ in oriented):
        verdict.fail("tree", where, "tree edges are not oriented away from the root")

    in_tree = {s.root} | {c for _, c, _ in oriented}
    depth_of = {c: d for _, c, d in oriented}
    D = max(depth_of.values())
    w = s.weights
    if any(not isinstance(x, (int, np.integer)) or x < 0 for x in w):
        verdict.fail("negative", where, "weights must be non-negative integers")
    if w[s.root] != 0:
        verdict.fail("root-weight", where, f"w({s.root}) = {w[s.root]} but must be 0")
    for v in range(g.n):
        if v not in in_tree and w[v] != 0:
            verdict.fail("off-tree", where, f"w({v}) = {w[v]} but {v} is not in the tree")
    for p, c, _ in oriented:
        if p != s.root and w[p] < 2 * w[c]:
            verdict.fail("parent-child", where, f"w({p}) = {w[p]} < 2 * w({c}) = {2 * w[c]}")
    for v, d in depth_of.items():
        if w[v] != 1 << (D - d):
            verdict.fail("non-canonical", where, f"w({v}) = {w[v]}, expected 2^{D - d}")
    if s.depth != D:
        verdict.fail("depth", where, f"declared depth {s.depth}, tree depth {D}")
    if s.weight_total != sum(w):
        verdict.fail("total", where, f"weight_total {s.weight_total} != sum of weights {sum(w)}")
    return verdict


def _weights_from_depths(depths: np.ndarray) -> np.ndarray:
    present = depths != ABSENT
    h = np.where(present, depths, 0).astype(np.int64)
    D = h.max(axis=1, keepdims=True)
    dtype = np.int32 if depths.shape[1] <= 31 else np.int64
    return np.where(present & (h > 0), np.left_shift(1, D - h), 0).astype(dtype)


class StrategyCorpus:
    """Deduplicated strategies for one root, sorted by weight signature.

    Stored compactly as a depth matrix (one row per strategy, ``255`` off the
    tree) since corpora reach millions of rows; ``Strategy`` objects are
    built on access.
    """

    def __init__(self, g: Graph, root: int, depths: np.ndarray):
        self.graph = g
        self.root = root
        weights = _weights_from_depths(depths)
        order = np.lexsort(weights.T[::-1])
        weights = weights[order]
        depths = depths[order]
        if len(weights) > 1:
            keep = np.r_[True, np.any(weights[1:] != weights[:-1], axis=1)]
            weights = weights[keep]
            depths = depths[keep]
        self.depths = np.ascontiguousarray(depths)
        self.weights = np.ascontiguousarray(weights)
        self.weight_totals = self.weights.sum(axis=1, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.depths)

    def __getitem__(self, i: int) -> Strategy:
        row = self.depths[i]
        adj = self.graph.adjacency
        edges = []
        for v in sorted(range(self.graph.n), key=lambda v: (row[v], v)):
            h = row[v]
            if h == ABSENT or h == 0:
                continue
            parent = min(u for u in adj[v] if row[u] == h - 1)
            edges.append((parent, v))
        w = tuple(int(x) for x in self.weights[i])
        return Strategy(
            root=self.root,
            tree_edges=tuple(edges),
            depth=int(row[row != ABSENT].max()),
            weights=w,
            weight_total=int(self.weight_totals[i]),
        )

    def __iter__(self) -> Iterator[Strategy]:
        for i in range(len(self)):
            yield self[i]

    @property
    def strategies(self) -> StrategyCorpus:
        return self

    def signatures(self) -> set[tuple[int, ...]]:
        return {tuple(int(x) for x in row) for row in self.weights}

    def index_of(self, weights: Sequence[int]) -> int:
        """Row index of the strategy with this exact signature, or -1."""
        target = np.asarray(weights, dtype=np.int64)
        hits = np.flatnonzero(np.all(self.weights == target, axis=1))
        return int(hits[0]) if len(hits) else -1

    def merged(self, extra: Iterable[Strategy]) -> StrategyCorpus:
        rows = [_depth_row(self.graph, s) for s in extra]
        if not rows:
            return self
        return StrategyCorpus(self.graph, self.root, np.vstack([self.depths, np.array(rows, dtype=np.uint8)]))

    @classmethod
    def from_strategies(cls, g: Graph, root: int, strategies: Iterable[Strategy]) -> StrategyCorpus:
        rows = [_depth_row(g, s) for s in strategies]
        if not rows:
            raise BadInput("empty strategy list")
        return cls(g, root, np.array(rows, dtype=np.uint8))


def _depth_row(g: Graph, s: Strategy) -> list[int]:
    row = [ABSENT] * g.n
    row[s.root] = 0
    for _, c, d in _orient(g, s.root, s.tree_edges):
        row[c] = d
    return row


def enumerate_subtrees(g: Graph, r: int, max_size: int = DEFAULT_MAX_SIZE) -> StrategyCorpus:
    """Every basic strategy of a rooted subtree with 2..max_size vertices."""
    if not 0 <= r < g.n:
        raise BadInput(f"root {r} outside graph")
    if not 2 <= max_size <= g.n:
        raise BadInput(f"max_size must lie in [2, {g.n}], got {max_size}")
    nbr = g.neighbour_masks()
    n = g.n
    bits = [[v for v in range(n) if m >> v & 1] for m in range(1 << min(n, 12))] if n <= 12 else None
    depth = bytearray([ABSENT] * n)
    depth[r] = 0
    out = bytearray()

    def members(mask: int) -> list[int]:
        if bits is not None:
            return bits[mask]
        vs = []
        while mask:
            low = mask & -mask
            vs.append(low.bit_length() - 1)
            mask ^= low
        return vs

    def grow(used: int, last: int, level: int, size: int) -> None:
        frontier = 0
        for u in members(last):
            frontier |= nbr[u]
        frontier &= ~used
        room = max_size - size
        sub = frontier
        while sub:
            k = sub.bit_count()
            if k <= room:
                layer = members(sub)
                for v in layer:
                    depth[v] = level
                out.extend(depth)
                if k < room:
                    grow(used | sub, sub, level + 1, size + k)
                for v in layer:
                    depth[v] = ABSENT
            sub = (sub - 1) & frontier

    grow(1 << r, 1 << r, 1, 1)
    rows = np.frombuffer(bytes(out), dtype=np.uint8).reshape(-1, n)
    return StrategyCorpus(g, r, rows)


def shortest_path_strategies(g: Graph, r: int) -> list[Strategy]:
    """One path strategy for every shortest path from ``r`` to every other vertex."""
    dist = distances(g, r).dist
    out: list[Strategy] = []

    def extend(path: list[int]) -> None:
        if len(path) > 1:
            out.append(canonical_weights(g, r, list(zip(path, path[1:]))))
        tip = path[-1]
        for w in g.adjacency[tip]:
            if dist[w] == len(path):
                path.append(w)
                extend(path)
                path.pop()

    extend([r])
    return out


def build_corpus(g: Graph, r: int, max_size: int = DEFAULT_MAX_SIZE) -> StrategyCorpus:
    """Subtree enumeration plus all shortest-path strategies, deduplicated."""
    return enumerate_subtrees(g, r, max_size).merged(shortest_path_strategies(g, r))
