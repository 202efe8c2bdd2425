"""Automorphism group by backtracking, and the induced vertex orbits."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import BadInput
from .graph import Graph, all_distances, is_connected

MAX_VERTICES = 32


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.image[v]

    def __len__(self) -> int:
        return len(self.image)

    def compose(self, other: Permutation) -> Permutation:
        """``(self ∘ other)(v) = self(other(v))``."""
        return Permutation(tuple(self.image[other.image[v]] for v in range(len(self))))

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for v, w in enumerate(self.image):
            inv[w] = v
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    def is_automorphism(self, g: Graph) -> bool:
        if sorted(self.image) != list(range(g.n)):
            return False
        return all(g.has_edge(self.image[u], self.image[v]) for u, v in g.edges)


@dataclass(frozen=True)
class OrbitPartition:
    orbits: tuple[tuple[int, ...], ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(orbit[0] for orbit in self.orbits)

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def orbit_of(self, v: int) -> tuple[int, ...]:
        for orbit in self.orbits:
            if v in orbit:
                return orbit
        raise BadInput(f"vertex {v} is in no orbit")

    def index_of(self, v: int) -> int:
        for i, orbit in enumerate(self.orbits):
            if v in orbit:
                return i
        raise BadInput(f"vertex {v} is in no orbit")


def _search_order(g: Graph) -> list[int]:
    # BFS order per component keeps every newly placed vertex adjacent to
    # an already-placed one whenever possible, which prunes early.
    order: list[int] = []
    seen = [False] * g.n
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
    return order


def automorphisms(g: Graph) -> list[Permutation]:
    """Every automorphism of ``g``, sorted by image, identity first."""
    if g.n > MAX_VERTICES:
        raise BadInput(f"automorphism backtracking limited to {MAX_VERTICES} vertices")
    n = g.n
    if is_connected(g):
        dist = all_distances(g)
    else:
        # -1 marks "unreachable"; distances are still preserved by automorphisms.
        dist = [[-1] * n for _ in range(n)]
        for r in range(n):
            dist[r][r] = 0
            queue = deque([r])
            while queue:
                u = queue.popleft()
                for v in g.adjacency[u]:
                    if dist[r][v] < 0:
                        dist[r][v] = dist[r][u] + 1
                        queue.append(v)
    invariant = [(g.degree(v), tuple(sorted(dist[v]))) for v in range(n)]
    order = _search_order(g)

    image = [-1] * n
    used = [False] * n
    found: list[Permutation] = []

    def extend(k: int) -> None:
        if k == n:
            found.append(Permutation(tuple(image)))
            return
        v = order[k]
        for w in range(n):
            if used[w] or invariant[w] != invariant[v]:
                continue
            if any(dist[w][image[u]] != dist[v][u] for u in order[:k]):
                continue
            image[v] = w
            used[w] = True
            extend(k + 1)
            used[w] = False
            image[v] = -1

    extend(0)
    found.sort(key=lambda p: p.image)
    return found


def orbits(g: Graph, group: list[Permutation] | None = None) -> OrbitPartition:
    if group is None:
        group = automorphisms(g)
    assigned = [False] * g.n
    out = []
    for v in range(g.n):
        if assigned[v]:
            continue
        orbit = sorted({p(v) for p in group} | {v})
        for w in orbit:
            assigned[w] = True
        out.append(tuple(orbit))
    return OrbitPartition(orbits=tuple(out))
