"""Spanner construction: normalization, level sampling, bunches, assembly.

The hierarchical build runs three phases over a normalized copy of the
host graph (weights scaled so the MST weighs exactly n):

  1. a nested net hierarchy plus its H_0 connector paths (nets module),
  2. random vertex levels A_0 = V >= A_1 >= ... >= A_k, where each level
     keeps vertices with probability n^(-1/k); every vertex u below the
     top connects to each member v of its bunch (the level-mates closer
     than half the distance to u's next-level pivot, shrunk by (1-eps)/2)
     through a shortest path to a net representative of v chosen at a
     scale proportional to eps * d(u, v),
  3. one shallow-light forest per sampled level, rooted at that level.

The union is returned as a Spanner whose edges reference the host graph.
Each edge carries the tag of the phase that added it first: H0, P2_REP,
P2_DIRECT, P2_TOP, or SLT.

The W_max variant (build_wmax_spanner) skips phases 2 and 3 entirely: it
takes one sqrt(n)-scale net and glues a shallow-light tree rooted at
every net member, which is enough when the heaviest edge is at least
sqrt(n) after normalization.

Construction mutates nothing it did not create; returned objects are
frozen and safe to verify from multiple threads.
"""
from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import SamplingError, SpannerError
from .graph import INF, WeightedGraph, adjacency_from_edges, scan, walk_parents
from .nets import NetHierarchy, build_net_hierarchy, check_eps, greedy_delta_net
from .trees import mst, slt, slt_forest

PHASE_H0 = "H0"
PHASE_P2_REP = "P2_REP"
PHASE_P2_DIRECT = "P2_DIRECT"
PHASE_P2_TOP = "P2_TOP"
PHASE_SLT = "SLT"
PHASES = (PHASE_H0, PHASE_P2_REP, PHASE_P2_DIRECT, PHASE_P2_TOP, PHASE_SLT)

SAMPLING_RETRIES = 32


def normalize(g: WeightedGraph) -> tuple[WeightedGraph, float]:
    """Scale weights so the MST weighs exactly n; returns (graph, scale)."""
    w = mst(g).total_weight
    scale = g.n / w
    return g.scaled(scale), scale


def scale_index(d: float, eps: float) -> int:
    """The unique j with eps*d/8 <= 2**j < eps*d/4; negative means 'connect directly'.

    The window spans an exact factor of two, so one power of two always
    fits. frexp keeps the boundary cases exact: d = 4/eps lands on
    j = -1, anything above lands on j = 0.
    """
    if not (d > 0):
        raise ValueError(f"scale_index needs a positive distance, got {d}")
    lo = eps * d / 8.0
    m, e = math.frexp(lo)  # lo = m * 2**e, m in [0.5, 1)
    return e - 1 if m == 0.5 else e


@dataclass(frozen=True)
class LevelSampling:
    """Nested random levels A_0 .. A_k with pivot tables.

    pivot[i][v] is v's nearest member of A_i (ties to the smallest id) and
    pivot_dist[i][v] the corresponding distance; level_of[v] is the highest
    level containing v. ``seed`` is as requested; ``effective_seed`` is the
    one that produced nonempty levels (resampling bumps it by one each try).
    """

    k: int
    levels: tuple[frozenset[int], ...]
    level_of: tuple[int, ...]
    pivot: tuple[tuple[int, ...], ...]
    pivot_dist: tuple[tuple[float, ...], ...]
    seed: int
    effective_seed: int

    def members(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(self.levels[i]))


def _sample_levels_once(n: int, k: int, p: float, rng: random.Random) -> list[list[int]]:
    """One promotion pass, no nonemptiness guarantee. Kept separate so its
    distribution stays plain binomial (the public wrapper conditions on
    nonempty levels, which would bias statistical tests run against it)."""
    levels = [list(range(n))]
    for _ in range(k):
        levels.append([v for v in levels[-1] if rng.random() < p])
    return levels


def sample_levels(g: WeightedGraph, k: int, seed: int, *, max_retries: int = SAMPLING_RETRIES) -> LevelSampling:
    if k < 1 or k != int(k):
        raise ValueError(f"k must be an integer >= 1, got {k}")
    n = g.n
    if k > math.log2(max(n, 2)):
        warnings.warn(f"k={k} exceeds log2(n)={math.log2(n):.2f}; extra levels add no benefit")
    p = n ** (-1.0 / k)
    levels: list[list[int]] | None = None
    effective = seed
    for attempt in range(max_retries):
        effective = seed + attempt
        candidate = _sample_levels_once(n, k, p, random.Random(effective))
        if all(candidate[i] for i in range(1, k + 1)):
            levels = candidate
            break
    if levels is None:
        raise SamplingError(
            f"levels stayed empty after {max_retries} retries (n={n}, k={k}, seed={seed})"
        )

    level_of = [0] * n
    for i in range(1, k + 1):
        for v in levels[i]:
            level_of[v] = i

    pivots: list[tuple[int, ...]] = []
    pivot_dists: list[tuple[float, ...]] = []
    for i in range(k + 1):
        dist, _, _, origin, _, _ = scan(n, g.adj, levels[i])
        pivots.append(tuple(origin))
        pivot_dists.append(tuple(dist))

    return LevelSampling(
        k=k,
        levels=tuple(frozenset(lv) for lv in levels),
        level_of=tuple(level_of),
        pivot=tuple(pivots),
        pivot_dist=tuple(pivot_dists),
        seed=seed,
        effective_seed=effective,
    )


@dataclass(frozen=True)
class Bunch:
    """Level-mates of ``center`` strictly closer than delta times the distance
    to its next-level pivot. Contains the center itself (distance zero); top
    level centers get the whole top level regardless of delta."""

    center: int
    delta: float
    members: tuple[int, ...]


def bunch_of(sampling: LevelSampling, g: WeightedGraph, u: int, delta: float) -> Bunch:
    if not (0 < delta <= 1):
        raise ValueError(f"delta must be in (0, 1], got {delta}")
    if not (0 <= u < g.n):
        raise ValueError(f"vertex id {u} outside 0..{g.n - 1}")
    i = sampling.level_of[u]
    if i == sampling.k:
        return Bunch(u, delta, sampling.members(sampling.k))
    radius = delta * sampling.pivot_dist[i + 1][u]
    dist, _, _, _, _, order = scan(g.n, g.adj, (u,), radius=radius)
    level = sampling.levels[i]
    members = sorted(v for v in order if dist[v] < radius and v in level)
    return Bunch(u, delta, tuple(members))


@dataclass(frozen=True)
class RepPathRecord:
    """One phase-2 connection: center u reached target (= rep of member at
    the recorded scale, or the member itself when scale < 0)."""

    center: int
    center_level: int
    member: int
    scale: int
    target: int
    dist_member: float
    dist_target: float
    path: tuple[int, ...]


@dataclass(frozen=True)
class BuildInternals:
    """Construction state retained for lemma-level verification."""

    normalized: WeightedGraph
    scale: float
    hierarchy: NetHierarchy
    sampling: LevelSampling
    records: tuple[RepPathRecord, ...]
    forest_pivots: dict[int, tuple[int, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class SpannerParams:
    eps: float
    k: int | None
    seed: int | None
    kind: str  # "hierarchical" or "wmax"


@dataclass(frozen=True)
class Spanner:
    host: WeightedGraph
    edges: frozenset[tuple[int, int]]
    phase_tag: dict[tuple[int, int], str]
    params: SpannerParams
    scale: float
    internals: "BuildInternals | WmaxInternals | None" = None

    @property
    def size(self) -> int:
        return len(self.edges)

    def weight(self) -> float:
        wt = self.host.weight_of
        return sum(wt(u, v) for u, v in self.edges)

    def adjacency(self) -> list[list[tuple[int, float]]]:
        return adjacency_from_edges(self.host.n, self.edges, self.host.weight_of)

    def per_phase(self) -> dict[str, tuple[int, float]]:
        out = {tag: [0, 0.0] for tag in PHASES}
        wt = self.host.weight_of
        for (u, v), tag in self.phase_tag.items():
            out[tag][0] += 1
            out[tag][1] += wt(u, v)
        return {tag: (c, w) for tag, (c, w) in out.items()}

    def to_json_dict(self) -> dict:
        wt = self.host.weight_of
        return {
            "schema": "spanner/v1",
            "kind": self.params.kind,
            "eps": self.params.eps,
            "k": self.params.k,
            "seed": self.params.seed,
            "scale": self.scale,
            "n": self.host.n,
            "size": self.size,
            "weight": self.weight(),
            "per_phase": {tag: {"count": c, "weight": w} for tag, (c, w) in sorted(self.per_phase().items())},
            "edges": [[u, v, wt(u, v), self.phase_tag[(u, v)]] for u, v in sorted(self.edges)],
        }


def spanner_from_json_dict(payload: dict, host: WeightedGraph) -> Spanner:
    if payload.get("schema") != "spanner/v1":
        raise SpannerError(f"unrecognized spanner schema {payload.get('schema')!r}")
    if payload["n"] != host.n:
        raise SpannerError(f"spanner built on n={payload['n']} but host graph has n={host.n}")
    edges = set()
    tags = {}
    for u, v, w, tag in payload["edges"]:
        if not host.has_edge(u, v):
            raise SpannerError(f"spanner edge ({u}, {v}) is not a host edge")
        hw = host.weight_of(u, v)
        if abs(hw - w) > 1e-9 * max(abs(hw), abs(w)):
            raise SpannerError(f"edge ({u}, {v}) weight {w} does not match host weight {hw}")
        if tag not in PHASES:
            raise SpannerError(f"unknown phase tag {tag!r} on edge ({u}, {v})")
        edges.add((u, v))
        tags[(u, v)] = tag
    params = SpannerParams(eps=payload["eps"], k=payload["k"], seed=payload["seed"], kind=payload["kind"])
    return Spanner(host=host, edges=frozenset(edges), phase_tag=tags, params=params, scale=payload["scale"])


def _add_path(path: Sequence[int], tag: str, tags: dict[tuple[int, int], str]) -> None:
    for a, b in zip(path, path[1:]):
        key = (a, b) if a < b else (b, a)
        if key not in tags:
            tags[key] = tag


class _ChainWalker:
    """Adds parent-chain edges for many targets of one scan in O(ball) total.

    Chains from different targets share suffixes toward the scan root, so
    each vertex's edge to its parent only needs to be walked once; later
    targets stop at the first vertex an earlier target already covered.
    Tagging matches walking each full chain with first-wins semantics.
    """

    def __init__(self, parent: Sequence[int], root: int, tags: dict[tuple[int, int], str]):
        self.parent = parent
        self.tags = tags
        self.covered = {root}

    def add(self, target: int, tag: str) -> None:
        parent = self.parent
        tags = self.tags
        covered = self.covered
        x = target
        while x not in covered:
            covered.add(x)
            p = parent[x]
            key = (p, x) if p < x else (x, p)
            if key not in tags:
                tags[key] = tag
            x = p


def phase2_paths(
    g: WeightedGraph,
    hierarchy: NetHierarchy,
    sampling: LevelSampling,
    eps: float,
    *,
    keep_records: bool = True,
) -> tuple[dict[tuple[int, int], str], tuple[RepPathRecord, ...]]:
    """Bunch connections for every vertex; returns (edge tags, records).

    For u below the top level the scan radius (1 + eps/2) * (1-eps)/2 *
    pivot_dist is enough to settle every representative target: the
    detour to a representative of v costs at most a (1 + eps/2) factor
    over d(u, v). Top-level vertices connect to representatives of every
    other top vertex with the same scale rule.
    """
    n = g.n
    k = sampling.k
    delta = 0.5 * (1.0 - eps)
    tags: dict[tuple[int, int], str] = {}
    records: list[RepPathRecord] = []

    for u in range(n):
        i = sampling.level_of[u]
        if i == k:
            continue
        pd = sampling.pivot_dist[i + 1][u]
        radius = delta * pd
        if radius <= 0:
            raise SpannerError(f"vertex {u} has zero pivot distance at level {i + 1}")
        reach = (1.0 + 0.5 * eps) * radius
        dist, parent, _, _, settled, order = scan(n, g.adj, (u,), radius=reach)
        level = sampling.levels[i]
        walker = _ChainWalker(parent, u, tags)
        for v in sorted(x for x in order if x != u and dist[x] < radius and x in level):
            d_uv = dist[v]
            j = scale_index(d_uv, eps)
            if j < 0:
                target, tag = v, PHASE_P2_DIRECT
            else:
                if j > hierarchy.i_max:
                    raise SpannerError(
                        f"scale index {j} above hierarchy top {hierarchy.i_max} for d={d_uv}"
                    )
                target, tag = hierarchy.rep(v, j), PHASE_P2_REP
            if not settled[target]:
                raise SpannerError(
                    f"representative {target} of ({u}, {v}) escaped the scan radius"
                )
            walker.add(target, tag)
            if keep_records:
                records.append(
                    RepPathRecord(
                        u, i, v, j, target, d_uv, dist[target], tuple(walk_parents(parent, target))
                    )
                )

    top = sorted(sampling.levels[k])
    for u in top:
        dist, parent, _, _, _, _ = scan(n, g.adj, (u,))
        walker = _ChainWalker(parent, u, tags)
        for v in top:
            if v == u:
                continue
            d_uv = dist[v]
            j = scale_index(d_uv, eps)
            target = v if j < 0 else hierarchy.rep(v, j)
            walker.add(target, PHASE_P2_TOP)
            if keep_records:
                records.append(
                    RepPathRecord(
                        u, k, v, j, target, d_uv, dist[target], tuple(walk_parents(parent, target))
                    )
                )

    return tags, tuple(records)


def _assert_spans(n: int, edges: Iterable[tuple[int, int]]) -> None:
    from .graph import edges_connect

    if not edges_connect(n, [(u, v) for u, v in edges]):
        raise SpannerError("constructed spanner does not span the graph; this is a bug")


def build_spanner(
    g: WeightedGraph,
    eps: float,
    k: int,
    seed: int,
    *,
    unsafe_eps: bool = False,
    keep_internals: bool = True,
) -> Spanner:
    """Hierarchical near-additive spanner of the host graph g."""
    check_eps(eps, unsafe_eps)
    gn, scale = normalize(g)
    hierarchy = build_net_hierarchy(gn, eps, unsafe_eps=unsafe_eps)
    sampling = sample_levels(gn, k, seed)

    tags: dict[tuple[int, int], str] = {}
    for u, v in sorted(hierarchy.h0_edges):
        tags[(u, v)] = PHASE_H0

    p2_tags, records = phase2_paths(gn, hierarchy, sampling, eps, keep_records=keep_internals)
    for key, tag in p2_tags.items():
        tags.setdefault(key, tag)

    forest_pivots: dict[int, tuple[int, ...]] = {}
    for i in range(1, k + 1):
        forest = slt_forest(gn, sampling.levels[i], eps)
        forest_pivots[i] = forest.approx_pivot
        for u, v, _ in forest.edges:
            tags.setdefault((u, v), PHASE_SLT)

    _assert_spans(g.n, tags.keys())
    internals = None
    if keep_internals:
        internals = BuildInternals(
            normalized=gn,
            scale=scale,
            hierarchy=hierarchy,
            sampling=sampling,
            records=records,
            forest_pivots=forest_pivots,
        )
    return Spanner(
        host=g,
        edges=frozenset(tags.keys()),
        phase_tag=tags,
        params=SpannerParams(eps=eps, k=k, seed=seed, kind="hierarchical"),
        scale=scale,
        internals=internals,
    )


@dataclass(frozen=True)
class WmaxInternals:
    normalized: WeightedGraph
    scale: float
    net_members: tuple[int, ...]
    net_delta: float


def build_wmax_spanner(g: WeightedGraph, eps: float, *, keep_internals: bool = True) -> Spanner:
    """Heavy-edge variant: one sqrt(n)-net, one shallow-light tree per member.

    Requires the normalized maximum edge weight to be at least sqrt(n);
    in that regime the additive error 2 * (1 + eps) * W_max absorbs the
    hop to the nearest net member.
    """
    if not (eps > 0):
        raise ValueError(f"eps must be positive, got {eps}")
    gn, scale = normalize(g)
    w_max = max(w for _, _, w in gn.edges)
    threshold = math.sqrt(g.n)
    if w_max < threshold:
        raise ValueError(
            f"wmax construction needs max normalized edge weight >= sqrt(n) = {threshold:.6g}, "
            f"got {w_max:.6g}; use the hierarchical construction instead"
        )
    net = greedy_delta_net(gn, threshold)
    tags: dict[tuple[int, int], str] = {}
    for r in net.members:
        tree = slt(gn, r, eps)
        for u, v, _ in tree.edges:
            tags.setdefault((u, v), PHASE_SLT)
    _assert_spans(g.n, tags.keys())
    internals = None
    if keep_internals:
        internals = WmaxInternals(gn, scale, net.members, net.delta)
    return Spanner(
        host=g,
        edges=frozenset(tags.keys()),
        phase_tag=tags,
        params=SpannerParams(eps=eps, k=None, seed=None, kind="wmax"),
        scale=scale,
        internals=internals,
    )
