"""Simple undirected graphs on vertices 0..n-1 and the fixed study graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .errors import Acyclic, BadInput, Disconnected, MalformedEdge

# Blanusa snarks on {0..17}; these lists are the source of truth.
BLANUSA_1_EDGES = (
    (0, 1), (0, 5), (0, 16), (1, 2), (1, 17), (2, 3), (2, 14),
    (3, 4), (3, 8), (4, 5), (4, 17), (5, 6), (6, 7), (6, 11),
    (7, 8), (7, 17), (8, 9), (9, 10), (9, 13), (10, 11),
    (10, 15), (11, 12), (12, 13), (12, 16), (13, 14),
    (14, 15), (15, 16),
)
BLANUSA_2_EDGES = (
    (0, 1), (0, 2), (0, 14), (1, 5), (1, 11), (2, 3), (2, 6),
    (3, 4), (3, 9), (4, 5), (4, 7), (5, 6), (6, 8), (7, 8),
    (7, 17), (8, 9), (9, 15), (10, 11), (10, 14), (10, 16),
    (11, 12), (12, 13), (12, 17), (13, 14), (13, 15),
    (15, 16), (16, 17),
)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbour_masks(self) -> list[int]:
        return [sum(1 << u for u in nbrs) for nbrs in self.adjacency]

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DistanceTable:
    root: int
    dist: tuple[int, ...]

    def at_distance(self, d: int) -> list[int]:
        return [v for v, dv in enumerate(self.dist) if dv == d]

    @property
    def eccentricity(self) -> int:
        return max(self.dist)


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate an edge list and build a Graph.

    Loops, repeated edges (in either orientation) and endpoints outside
    0..n-1 raise MalformedEdge.
    """
    if n < 1:
        raise BadInput(f"vertex count must be positive, got {n}")
    seen: set[tuple[int, int]] = set()
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for e in edges:
        if len(e) != 2:
            raise MalformedEdge(f"edge {tuple(e)!r} is not a pair")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedEdge(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise MalformedEdge(f"loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise MalformedEdge(f"duplicate edge {key}")
        seen.add(key)
        nbrs[u].append(v)
        nbrs[v].append(u)
    return Graph(
        n=n,
        edges=tuple(sorted(seen)),
        adjacency=tuple(tuple(sorted(a)) for a in nbrs),
    )


def build_blanusa(which: int) -> Graph:
    if which == 1:
        return from_edge_list(18, BLANUSA_1_EDGES)
    if which == 2:
        return from_edge_list(18, BLANUSA_2_EDGES)
    raise BadInput(f"Blanusa snark index must be 1 or 2, got {which}")


def build_petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise BadInput("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return from_edge_list(n, list(combinations(range(n), 2)))


def cube_graph(d: int) -> Graph:
    n = 1 << d
    return from_edge_list(n, [(v, v ^ (1 << i)) for v in range(n) for i in range(d) if v < v ^ (1 << i)])


def star_graph(leaves: int) -> Graph:
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def read_graph_file(path: str | Path) -> Graph:
    """Parse the plain-text format: a line ``n m`` followed by ``m`` lines ``u v``."""
    tokens = Path(path).read_text().split()
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise BadInput(f"{path}: non-integer token") from exc
    if len(nums) < 2:
        raise BadInput(f"{path}: missing header line 'n m'")
    n, m = nums[0], nums[1]
    body = nums[2:]
    if len(body) != 2 * m:
        raise BadInput(f"{path}: header promises {m} edges, found {len(body) / 2:g}")
    return from_edge_list(n, [(body[2 * i], body[2 * i + 1]) for i in range(m)])


NAMED_GRAPHS = {
    "b1": lambda: build_blanusa(1),
    "b2": lambda: build_blanusa(2),
    "petersen": build_petersen,
}


def load_graph(selector: str) -> tuple[str, Graph]:
    """Resolve ``b1``/``b2``/``petersen`` or a path to a graph file."""
    key = selector.lower()
    if key in NAMED_GRAPHS:
        return key, NAMED_GRAPHS[key]()
    path = Path(selector)
    if not path.exists():
        raise BadInput(f"unknown graph {selector!r} (not a named graph, no such file)")
    return path.stem, read_graph_file(path)


def distances(g: Graph, r: int) -> DistanceTable:
    if not 0 <= r < g.n:
        raise BadInput(f"vertex {r} not in graph on {g.n} vertices")
    dist = [-1] * g.n
    dist[r] = 0
    queue = deque([r])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    if min(dist) < 0:
        missing = [v for v, d in enumerate(dist) if d < 0]
        raise Disconnected(f"vertices {missing} unreachable from {r}")
    return DistanceTable(root=r, dist=tuple(dist))


def all_distances(g: Graph) -> list[tuple[int, ...]]:
    return [distances(g, v).dist for v in range(g.n)]


def is_connected(g: Graph) -> bool:
    try:
        distances(g, 0)
    except Disconnected:
        return False
    return True


def diameter(g: Graph) -> int:
    return max(max(row) for row in all_distances(g))


def girth(g: Graph) -> int:
    """Shortest cycle length via a breadth-first search from every vertex."""
    best = None
    for r in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[r] = 0
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif v != parent[u]:
                    length = dist[u] + dist[v] + 1
                    if best is None or length < best:
                        best = length
    if best is None:
        raise Acyclic("graph has no cycle; girth undefined")
    return best
