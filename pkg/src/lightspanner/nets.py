"""Nested delta-nets, the H_0 connector subgraph, and representatives.

A delta-net N of a graph satisfies covering (every vertex is within
delta of N) and packing (net members are pairwise further than delta
apart). The hierarchy stacks nets at doubling scales delta = 2^i for
i = 0 .. ceil(log2 n), each net seeded by the one above it so the levels
are nested, with level -1 holding every vertex. It expects a graph
normalized so the MST weighs n (see spanner.normalize), which caps the
diameter at n and therefore caps the number of levels.

Together with the nets we build H_0: for each vertex v whose highest net
level is i, H_0 contains a shortest path from v to the nearest member of
each of the next t = ceil(log2(1/eps)) levels above i. Chaining those
hops climbs from any vertex v to a level-i net member rep(v, i) over a
path of length at most (1 + 2*eps) * 2^i that lies entirely inside H_0.
That bound is what makes eps < 1/10 worth enforcing; the geometric tail
needs 2^-t <= eps and a bit of slack.

Structures are frozen after construction and safe to share across
threads; building is single-threaded and deterministic.
"""
from __future__ import annotations

import heapq
import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import INF, WeightedGraph, scan
from .trees import mst

EPS_SAFE_LIMIT = 0.1


def check_eps(eps: float, unsafe_eps: bool = False) -> None:
    """Reject eps outside (0, 1/10) unless the caller opts out explicitly."""
    if unsafe_eps:
        if not (0 < eps < 1):
            raise ValueError(f"eps must be in (0, 1) even with unsafe_eps, got {eps}")
        return
    if not (0 < eps < EPS_SAFE_LIMIT):
        raise ValueError(
            f"eps must be in (0, {EPS_SAFE_LIMIT}); got {eps}. "
            "Pass unsafe_eps=True (CLI: --unsafe-eps) to override; the published "
            "guarantee thresholds are void above the limit."
        )


@dataclass(frozen=True)
class DeltaNet:
    delta: float
    members: tuple[int, ...]  # ascending vertex ids

    def __contains__(self, v: int) -> bool:
        i = bisect_left(self.members, v)
        return i < len(self.members) and self.members[i] == v


def _incremental_add(adj, dist, center) -> None:
    """Fold a new net member into the distance-to-net array."""
    if dist[center] <= 0.0:
        return
    dist[center] = 0.0
    heap = [(0.0, center)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))


def greedy_delta_net(
    g: WeightedGraph,
    delta: float,
    seed_set: Iterable[int] = (),
    *,
    verify_seed: bool = True,
) -> DeltaNet:
    """Greedy net: scan ids ascending, add any vertex further than delta from the net.

    ``seed_set`` members are kept and must already satisfy packing at scale
    delta (callers stacking nets pass the next-coarser net, which packs at
    twice the scale; they may skip the check with ``verify_seed=False``).
    """
    if not (delta >= 0):
        raise ValueError(f"delta must be nonnegative, got {delta}")
    seeds = sorted(set(seed_set))
    for s in seeds:
        if not (0 <= s < g.n):
            raise ValueError(f"seed vertex {s} outside 0..{g.n - 1}")
    if verify_seed and len(seeds) > 1:
        for s in seeds:
            d, _, _, _, settled, _ = scan(g.n, g.adj, (s,), radius=delta)
            for other in seeds:
                if other != s and settled[other] and d[other] <= delta:
                    raise ValueError(
                        f"seed set violates packing at delta={delta}: "
                        f"d({s}, {other}) = {d[other]}"
                    )

    if seeds:
        dist, _, _, _, _, _ = scan(g.n, g.adj, seeds)
    else:
        dist = [INF] * g.n
    members = list(seeds)
    # one ascending pass suffices: adding a member only shrinks distances,
    # so vertices behind the scan pointer stay covered
    for v in range(g.n):
        if dist[v] > delta:
            members.append(v)
            _incremental_add(g.adj, dist, v)
    members.sort()
    return DeltaNet(float(delta), tuple(members))


def max_level(n: int) -> int:
    """ceil(log2 n) computed exactly on the integer."""
    return max(1, (n - 1).bit_length())


@dataclass(frozen=True)
class NetHierarchy:
    """Nested nets, nearest-member tables, H_0 edges, and representatives.

    levels[i] for i in -1 .. i_max; rep_table[i][v] is the level-i
    representative of v (a member of levels[i]); nearest[j][v] and
    nearest_dist[j][v] describe v's closest member of level j >= 0.
    """

    graph: WeightedGraph
    eps: float
    n_w: float
    i_max: int
    levels: dict[int, DeltaNet]
    net_level: tuple[int, ...]
    nearest: tuple[tuple[int, ...], ...]
    nearest_dist: tuple[tuple[float, ...], ...]
    rep_table: tuple[tuple[int, ...], ...]
    h0_edges: frozenset[tuple[int, int]]

    def rep(self, v: int, i: int) -> int:
        if i < 0:
            return v
        return self.rep_table[i][v]

    def h0_weight(self) -> float:
        wt = self.graph.weight_of
        return sum(wt(u, v) for u, v in self.h0_edges)

    @property
    def climb_window(self) -> int:
        return math.ceil(math.log2(1.0 / self.eps))

    def to_json_dict(self) -> dict:
        return {
            "schema": "net_hierarchy/v1",
            "eps": self.eps,
            "n": self.graph.n,
            "n_w": self.n_w,
            "i_max": self.i_max,
            "levels": {str(i): list(net.members) for i, net in self.levels.items()},
            "deltas": {str(i): net.delta for i, net in self.levels.items()},
            "rep": [list(row) for row in self.rep_table],
            "h0_edges": sorted([u, v, self.graph.weight_of(u, v)] for u, v in self.h0_edges),
            "h0_weight": self.h0_weight(),
        }


def h0_weight(h: NetHierarchy) -> float:
    return h.h0_weight()


def _require_normalized(g: WeightedGraph) -> float:
    w = mst(g).total_weight
    if abs(w - g.n) > 1e-6 * g.n:
        raise ValueError(
            f"hierarchy expects a normalized graph with MST weight n={g.n}, "
            f"got {w}; run spanner.normalize first"
        )
    return w


def build_net_hierarchy(g: WeightedGraph, eps: float, *, unsafe_eps: bool = False) -> NetHierarchy:
    check_eps(eps, unsafe_eps)
    n_w = _require_normalized(g)
    n = g.n
    i_max = max_level(n)
    t = math.ceil(math.log2(1.0 / eps))

    levels: dict[int, DeltaNet] = {}
    # the top net is a single vertex: 2^i_max is at least the diameter,
    # so any one vertex covers everything
    levels[i_max] = DeltaNet(float(2**i_max), (0,))
    for i in range(i_max - 1, -1, -1):
        levels[i] = greedy_delta_net(g, float(2**i), levels[i + 1].members, verify_seed=False)
    levels[-1] = DeltaNet(0.0, tuple(range(n)))

    net_level = [-1] * n
    for i in range(i_max + 1):
        for v in levels[i].members:
            net_level[v] = max(net_level[v], i)

    nearest: list[Sequence[int]] = []
    nearest_dist: list[Sequence[float]] = []
    forests: list[Sequence[int]] = []
    for j in range(i_max + 1):
        dist, parent, _, origin, _, _ = scan(n, g.adj, levels[j].members)
        nearest.append(origin)
        nearest_dist.append(dist)
        forests.append(parent)

    # H_0: each vertex at net level i connects to its nearest member of
    # levels i+1 .. i+t. Walks share suffixes, so we stop as soon as we
    # reach a vertex whose connection at this level is already recorded.
    h0: set[tuple[int, int]] = set()
    for j in range(i_max + 1):
        parent = forests[j]
        done = bytearray(n)
        for r in levels[j].members:
            done[r] = 1
        for v in range(n):
            if not (j - t <= net_level[v] <= j - 1):
                continue
            x = v
            while not done[x]:
                done[x] = 1
                p = parent[x]
                h0.add((x, p) if x < p else (p, x))
                x = p

    rep_rows: list[tuple[int, ...]] = []
    for i in range(i_max + 1):
        a, b = i % t, i // t
        row = []
        for v in range(n):
            x = nearest[a][v]
            for step in range(1, b + 1):
                x = nearest[a + step * t][x]
            row.append(x)
        rep_rows.append(tuple(row))

    return NetHierarchy(
        graph=g,
        eps=eps,
        n_w=n_w,
        i_max=i_max,
        levels=levels,
        net_level=tuple(net_level),
        nearest=tuple(tuple(row) for row in nearest),
        nearest_dist=tuple(tuple(row) for row in nearest_dist),
        rep_table=tuple(rep_rows),
        h0_edges=frozenset(h0),
    )
