"""Spanning tree primitives: MST, shallow-light trees, and rooted forests.

The shallow-light tree (slt) balances a shortest-path tree against the
MST: for a parameter eps > 0 it returns a spanning tree whose root
distances are at most (1 + eps) times the true graph distances while its
total weight stays within (1 + 2/eps) of the MST weight.

Construction: walk an Euler tour of the MST, relaxing tentative
distances along every tour edge. On first arrival at a vertex whose
tentative distance exceeds (1 + eps) times its true distance, splice in
its shortest path from the root by relaxing along that path. Tour
distance accumulated between consecutive splices pays for the spliced
path weights, which is where the 2/eps term comes from (the Euler tour
costs twice the MST).

Everything here is deterministic: MST ties break on (weight, min id,
max id), tour children are visited in ascending id order, and the
shortest-path tree comes from the deterministic scan in ``graph``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DisconnectedGraphError
from .graph import Edge, WeightedGraph, scan, walk_parents

INF = math.inf


def _kruskal(n: int, edges: Iterable[Edge]) -> list[Edge]:
    from .graph import DisjointSets

    picked: list[Edge] = []
    dsu = DisjointSets(n)
    for u, v, w in sorted(edges, key=lambda e: (e[2], e[0], e[1])):
        if dsu.union(u, v):
            picked.append((u, v, w))
            if len(picked) == n - 1:
                break
    if len(picked) != n - 1:
        raise DisconnectedGraphError("cannot span a disconnected graph")
    picked.sort()
    return picked


@dataclass(frozen=True)
class SpanningTree:
    """n-1 edges spanning the host graph; root is None for an MST."""

    n: int
    root: int | None
    edges: tuple[Edge, ...]
    total_weight: float


def mst(g: WeightedGraph) -> SpanningTree:
    """Minimum spanning tree, deterministic under weight ties."""
    picked = _kruskal(g.n, g.edges)
    return SpanningTree(g.n, None, tuple(picked), sum(w for _, _, w in picked))


def _tree_adjacency(n: int, edges: Iterable[Edge]) -> list[list[tuple[int, float]]]:
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for u, v, w in edges:
        adj[u].append((v, w))
        adj[v].append((u, w))
    for row in adj:
        row.sort()
    return adj


def _last_parents(
    n: int,
    tree_adj: Sequence[Sequence[tuple[int, float]]],
    root: int,
    alpha: float,
    goal_dist: Sequence[float],
    goal_parent: Sequence[int],
    edge_weight,
) -> list[int]:
    """Parent array of the shallow-light tree over an explicit MST + SPT.

    Tentative distances only ever decrease, so the budget check fires at
    most once per vertex and checking on first arrival is equivalent to
    checking on every tour visit.
    """
    d = [INF] * n
    d[root] = 0.0
    parent = [-1] * n

    def arrive(u: int) -> None:
        if d[u] > alpha * goal_dist[u]:
            # splice: relax along the shortest root-u path, leaving
            # d[x] <= goal_dist[x] for every vertex x on it
            chain = walk_parents(goal_parent, u)
            for a, b in zip(chain, chain[1:]):
                nd = d[a] + edge_weight(a, b)
                if nd < d[b]:
                    d[b] = nd
                    parent[b] = a

    arrive(root)
    stack: list[tuple[int, int, float, Iterable]] = [(root, -1, 0.0, iter(tree_adj[root]))]
    while stack:
        u, tree_parent, w_up, children = stack[-1]
        advanced = False
        for v, w in children:
            if v == tree_parent:
                continue
            nd = d[u] + w
            if nd < d[v]:
                d[v] = nd
                parent[v] = u
            arrive(v)
            stack.append((v, u, w, iter(tree_adj[v])))
            advanced = True
            break
        if not advanced:
            stack.pop()
            if tree_parent != -1:
                nd = d[u] + w_up
                if nd < d[tree_parent]:
                    d[tree_parent] = nd
                    parent[tree_parent] = u
    return parent


def slt(g: WeightedGraph, root: int, eps: float) -> SpanningTree:
    """Shallow-light spanning tree rooted at ``root``.

    Guarantees d_T(root, x) <= (1 + eps) * d_G(root, x) for every x and
    w(T) <= (1 + 2/eps) * w(MST).
    """
    if not (0 <= root < g.n):
        raise ValueError(f"root {root} outside 0..{g.n - 1}")
    if not (eps > 0):
        raise ValueError(f"slt needs eps > 0, got {eps}")
    dist, parent_spt, _, _, _, _ = scan(g.n, g.adj, (root,))
    tree_edges = _kruskal(g.n, g.edges)
    parents = _last_parents(
        g.n, _tree_adjacency(g.n, tree_edges), root, 1.0 + eps, dist, parent_spt, g.weight_of
    )
    edges = []
    for v in range(g.n):
        if v == root:
            continue
        p = parents[v]
        a, b = (p, v) if p < v else (v, p)
        edges.append((a, b, g.weight_of(a, b)))
    edges.sort()
    return SpanningTree(g.n, root, tuple(edges), sum(w for _, _, w in edges))


@dataclass(frozen=True)
class SltForest:
    """Shallow-light forest rooted at a vertex set.

    ``approx_pivot[u]`` is the root whose component contains u; the forest
    path from u to it has length at most (1 + eps) times d_G(u, roots).
    """

    n: int
    roots: frozenset[int]
    edges: tuple[Edge, ...]
    approx_pivot: tuple[int, ...]
    total_weight: float


def slt_forest(g: WeightedGraph, roots: Iterable[int], eps: float) -> SltForest:
    """Shallow-light tree over a virtual root joined to ``roots`` by zero edges.

    The virtual vertex and its zero-weight edges exist only inside this
    routine; the returned forest contains real edges of g alone.
    """
    root_list = sorted(set(roots))
    if not root_list:
        raise ValueError("roots must be nonempty")
    for r in root_list:
        if not (0 <= r < g.n):
            raise ValueError(f"root {r} outside 0..{g.n - 1}")
    if not (eps > 0):
        raise ValueError(f"slt_forest needs eps > 0, got {eps}")

    virtual = g.n
    n_aug = g.n + 1
    aug_adj: list[list[tuple[int, float]]] = [list(row) for row in g.adj]
    aug_adj.append([])
    for r in root_list:
        aug_adj[r].append((virtual, 0.0))  # virtual id is largest, order kept
        aug_adj[virtual].append((r, 0.0))

    aug_edges = list(g.edges) + [(r, virtual, 0.0) for r in root_list]
    tree_edges = _kruskal(n_aug, aug_edges)
    dist, parent_spt, _, _, _, _ = scan(n_aug, aug_adj, (virtual,))

    def aug_weight(a: int, b: int) -> float:
        return 0.0 if virtual in (a, b) else g.weight_of(a, b)

    parents = _last_parents(
        n_aug, _tree_adjacency(n_aug, tree_edges), virtual, 1.0 + eps, dist, parent_spt, aug_weight
    )

    pivot = [-1] * g.n
    for u in range(g.n):
        chain = [u]
        x = u
        while pivot[x] == -1 and parents[x] != virtual:
            x = parents[x]
            chain.append(x)
        found = x if parents[x] == virtual else pivot[x]
        for y in chain:
            pivot[y] = found

    edges = []
    for v in range(g.n):
        p = parents[v]
        if p == virtual:
            continue
        a, b = (p, v) if p < v else (v, p)
        edges.append((a, b, g.weight_of(a, b)))
    edges.sort()
    return SltForest(
        g.n,
        frozenset(root_list),
        tuple(edges),
        tuple(pivot),
        sum(w for _, _, w in edges),
    )
