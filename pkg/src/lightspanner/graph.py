"""Weighted undirected graphs and deterministic shortest-path scans.

Graphs are immutable once constructed and every routine here is a pure
function, so shared graphs are safe to query concurrently.

Determinism contract: shortest-path ties are resolved lexicographically.
Each vertex is labelled with a key (distance, origin, bottleneck) where
origin is the source it was reached from (relevant for multi-source
scans) and bottleneck is the heaviest edge on the path. Among equal keys
the smaller predecessor id wins. Repeated runs therefore return
identical tables, paths, and parent forests.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DisconnectedGraphError

INF = math.inf

Edge = tuple[int, int, float]


class DisjointSets:
    """Union-find over dense integer ids (path compression + union by size)."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


def edges_connect(n: int, edges: Iterable[tuple]) -> bool:
    dsu = DisjointSets(n)
    for e in edges:
        dsu.union(e[0], e[1])
    return dsu.components == 1


class WeightedGraph:
    """Connected undirected graph, strictly positive weights, dense ids 0..n-1.

    At most one edge per vertex pair and no self loops. ``labels`` optionally
    remembers original external ids for formats that are not 0-based.
    """

    __slots__ = ("n", "edges", "adj", "labels", "_pair_weight")

    def __init__(self, n: int, edges: Iterable[Edge], labels: Sequence[int] | None = None):
        if n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={n}")
        canon: list[Edge] = []
        seen: set[tuple[int, int]] = set()
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self loop at vertex {u}")
            if not (w > 0 and math.isfinite(w)):
                raise ValueError(f"edge ({u}, {v}) needs a positive finite weight, got {w}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            canon.append((key[0], key[1], float(w)))
        canon.sort()
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(canon)
        if n > 1 and not edges_connect(n, canon):
            raise DisconnectedGraphError(f"graph on {n} vertices is not connected")
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, w in canon:
            adj[u].append((v, w))
            adj[v].append((u, w))
        for row in adj:
            row.sort()
        self.adj = adj
        self.labels = tuple(labels) if labels is not None else None
        self._pair_weight = {(u, v): w for u, v, w in canon}

    @property
    def m(self) -> int:
        return len(self.edges)

    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._pair_weight

    def weight_of(self, u: int, v: int) -> float:
        key = (u, v) if u < v else (v, u)
        try:
            return self._pair_weight[key]
        except KeyError:
            raise ValueError(f"no edge ({u}, {v})") from None

    def scaled(self, factor: float) -> "WeightedGraph":
        if not (factor > 0):
            raise ValueError(f"scale factor must be positive, got {factor}")
        return WeightedGraph(self.n, [(u, v, w * factor) for u, v, w in self.edges], self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


def adjacency_from_edges(n: int, edges: Iterable[tuple[int, int]], weight_of) -> list[list[tuple[int, float]]]:
    """Adjacency lists for an edge subset; used to search inside subgraphs.

    Unlike the WeightedGraph constructor this does not require connectivity,
    so verification code can probe deliberately broken spanners.
    """
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for u, v in edges:
        w = weight_of(u, v)
        adj[u].append((v, w))
        adj[v].append((u, w))
    for row in adj:
        row.sort()
    return adj


def scan(n, adj, sources, radius=None):
    """Core multi-source Dijkstra with lexicographic (dist, origin, bottleneck) keys.

    Returns (dist, parent, bottleneck, origin, settled, order) as plain
    lists; ``order`` holds the settled vertices in settlement sequence, so
    truncated scans can be post-processed in time proportional to the ball
    size rather than n. When ``radius`` is given, every vertex with distance
    <= radius is settled and the scan stops there; entries beyond the radius
    are not trustworthy.
    """
    dist = [INF] * n
    parent = [-1] * n
    bottleneck = [0.0] * n
    origin = [-1] * n
    settled = [False] * n
    order: list[int] = []
    heap: list[tuple[float, int, float, int]] = []
    for s in sorted(set(sources)):
        dist[s] = 0.0
        origin[s] = s
        heap.append((0.0, s, 0.0, s))
    heapq.heapify(heap)
    push, pop = heapq.heappush, heapq.heappop
    while heap:
        d, o, b, u = pop(heap)
        if settled[u] or d != dist[u] or o != origin[u] or b != bottleneck[u]:
            continue
        if radius is not None and d > radius:
            break
        settled[u] = True
        order.append(u)
        for v, w in adj[u]:
            if settled[v]:
                continue
            nd = d + w
            nb = b if b >= w else w
            if (nd, o, nb) < (dist[v], origin[v], bottleneck[v]):
                dist[v] = nd
                origin[v] = o
                bottleneck[v] = nb
                parent[v] = u
                push(heap, (nd, o, nb, v))
            elif (nd, o, nb) == (dist[v], origin[v], bottleneck[v]) and u < parent[v]:
                parent[v] = u
    return dist, parent, bottleneck, origin, settled, order


def walk_parents(parent: Sequence[int], v: int) -> list[int]:
    """Vertices from the scan root to v, following parent pointers."""
    chain = [v]
    while parent[v] != -1:
        v = parent[v]
        chain.append(v)
    chain.reverse()
    return chain


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]
    length: float
    bottleneck: float


@dataclass(frozen=True)
class DistanceTable:
    """Distances, parent forest, per-vertex bottleneck, and nearest origin.

    ``source`` is None for multi-source scans; ``origin[v]`` then names the
    nearest source (ties to the smallest source id). The bottleneck entry is
    the minimum, over tied shortest paths, of the heaviest edge on the path.
    """

    source: int | None
    dist: tuple[float, ...]
    parent: tuple[int, ...]
    bottleneck: tuple[float, ...]
    origin: tuple[int, ...]

    def path_to(self, v: int) -> Path:
        if self.dist[v] == INF:
            raise ValueError(f"vertex {v} not reached")
        return Path(tuple(walk_parents(self.parent, v)), self.dist[v], self.bottleneck[v])


def _check_vertex(g: WeightedGraph, v: int) -> None:
    if not (0 <= v < g.n):
        raise ValueError(f"vertex id {v} outside 0..{g.n - 1}")


def dijkstra(g: WeightedGraph, source: int) -> DistanceTable:
    """Single-source shortest paths with deterministic min-bottleneck ties."""
    _check_vertex(g, source)
    dist, parent, bott, origin, _, _ = scan(g.n, g.adj, (source,))
    return DistanceTable(source, tuple(dist), tuple(parent), tuple(bott), tuple(origin))


def multi_source_dijkstra(g: WeightedGraph, sources: Iterable[int]) -> DistanceTable:
    """Shortest paths from a set of sources; dist[v] = min over the set.

    The parent forest identifies each vertex's nearest source, ties broken by
    the smallest source id and then the smallest predecessor id.
    """
    srcs = sorted(set(sources))
    if not srcs:
        raise ValueError("sources must be nonempty")
    for s in srcs:
        _check_vertex(g, s)
    dist, parent, bott, origin, _, _ = scan(g.n, g.adj, srcs)
    return DistanceTable(None, tuple(dist), tuple(parent), tuple(bott), tuple(origin))


def shortest_path(g: WeightedGraph, u: int, v: int) -> Path:
    """One deterministic shortest u-v path (min bottleneck among ties)."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        return Path((u,), 0.0, 0.0)
    return dijkstra(g, u).path_to(v)
