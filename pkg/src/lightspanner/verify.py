"""Certification of spanner guarantees: stretch, lightness, nets, trees, lemmas.

Everything here is read-only over a graph and a finished spanner. The checks
come in three tiers:

  * verify_stretch / verify_lightness certify the headline guarantees on the
    host graph (multiplicative stretch plus an additive term proportional to
    the min-bottleneck shortest-path weight between the pair),
  * verify_net / verify_slt certify the building blocks in isolation,
  * verify_lemma_suite replays the construction-level facts (representative
    distances, bunch distances, containment of rep-sharing centers, ball
    containment of intersecting connection paths) against retained internals.

Distance comparisons allow 1e-9 relative slack on the bound side; the
subgraph lower bound d_H >= d_G is exact (a spanner path is a graph path, so
its float sum appears verbatim among the graph's candidate sums). Reports are
plain frozen dataclasses with a to_json_dict() for serialization and are
deterministic given (graph, spanner, mode, seed).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import SpannerError
from .graph import INF, WeightedGraph, adjacency_from_edges, scan
from .nets import DeltaNet
from .spanner import BuildInternals, Spanner
from .trees import SpanningTree, mst

REL_TOL = 1e-9
WITNESS_CAP = 100


def _within(value: float, bound: float) -> bool:
    """value <= bound, allowing REL_TOL relative slack on the bound."""
    return value <= bound * (1.0 + REL_TOL)


def delta_parameter(eps: float, k: int) -> float:
    """Net-scale parameter feeding the additive stretch constant."""
    return 7.0 + 14.0 * k / eps


def additive_stretch_constant(eps: float, k: int) -> float:
    """Coefficient of the per-pair bottleneck weight in the stretch bound."""
    return 24.0 * (3.0 * delta_parameter(eps, k)) ** k


def _check_host(g: WeightedGraph, sp: Spanner) -> None:
    if sp.host != g:
        raise SpannerError("spanner was built on a different graph than the one supplied")
    if set(sp.phase_tag.keys()) != set(sp.edges):
        raise SpannerError("phase tags do not partition the spanner edge set")


# ---------------------------------------------------------------------------
# stretch


@dataclass(frozen=True)
class StretchReport:
    """All-pairs (or sampled-source) stretch certification.

    worst_additive_slack is max over pairs of (d_H - alpha*d_G) / W, clamped
    to 0 when the multiplicative part alone covers the pair; the spanner
    passes iff that slack never exceeds bound_used.
    """

    pairs_checked: int
    worst_mult_stretch: float
    worst_additive_slack: float
    bound_used: float
    alpha: float
    violations: tuple[tuple[int, int, float, float, float], ...]  # (x, y, d_G, d_H, W)
    violation_count: int
    mode: str
    kind: str

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def to_json_dict(self) -> dict:
        return {
            "schema": "stretch_report/v1",
            "mode": self.mode,
            "kind": self.kind,
            "pairs_checked": self.pairs_checked,
            "worst_mult_stretch": self.worst_mult_stretch,
            "worst_additive_slack": self.worst_additive_slack,
            "bound_used": self.bound_used,
            "alpha": self.alpha,
            "violation_count": self.violation_count,
            "violations": [list(v) for v in self.violations],
            "passed": self.passed,
        }


def verify_stretch(
    g: WeightedGraph,
    sp: Spanner,
    *,
    mode: str = "all_pairs",
    sample_size: int = 64,
    seed: int = 0,
) -> StretchReport:
    """Certify d_H <= alpha*d_G + bound*W for every checked pair.

    Hierarchical spanners use alpha = 1+2*eps and the explicit constant
    from additive_stretch_constant with per-pair bottleneck W(x, y); the
    heavy-edge variant uses alpha = 1+eps and W = max edge weight. Sampled
    mode runs full single-source checks from a seeded vertex sample.
    """
    _check_host(g, sp)
    n = g.n
    eps = sp.params.eps
    kind = sp.params.kind
    if kind == "hierarchical":
        alpha = 1.0 + 2.0 * eps
        bound_const = additive_stretch_constant(eps, sp.params.k)
        w_fixed = None
    elif kind == "wmax":
        alpha = 1.0 + eps
        bound_const = 2.0 * (1.0 + eps)
        w_fixed = max(w for _, _, w in g.edges)
    else:
        raise SpannerError(f"unknown spanner kind {kind!r}")

    if mode == "all_pairs":
        sources: Sequence[int] = range(n)
    elif mode == "sampled":
        sources = sorted(random.Random(seed).sample(range(n), min(sample_size, n)))
    else:
        raise ValueError(f"mode must be 'all_pairs' or 'sampled', got {mode!r}")

    h_adj = sp.adjacency()
    pairs = 0
    worst_mult = 1.0
    worst_slack = 0.0
    violations: list[tuple[int, int, float, float, float]] = []
    violation_count = 0

    for x in sources:
        dist_g, _, btl_g, _, _, _ = scan(n, g.adj, (x,))
        dist_h, _, _, _, _, _ = scan(n, h_adj, (x,))
        targets = range(x + 1, n) if mode == "all_pairs" else range(n)
        for y in targets:
            if y == x:
                continue
            dg = dist_g[y]
            dh = dist_h[y]
            if dh < dg:
                raise SpannerError(
                    f"spanner claims a shorter path than the graph for ({x}, {y}): "
                    f"{dh} < {dg}; the spanner is not a subgraph"
                )
            w = w_fixed if w_fixed is not None else btl_g[y]
            pairs += 1
            mult = dh / dg
            if mult > worst_mult:
                worst_mult = mult
            slack = (dh - alpha * dg) / w
            if slack > worst_slack:
                worst_slack = slack
            if not _within(dh, alpha * dg + bound_const * w):
                violation_count += 1
                if len(violations) < WITNESS_CAP:
                    violations.append((x, y, dg, dh, w))

    return StretchReport(
        pairs_checked=pairs,
        worst_mult_stretch=worst_mult,
        worst_additive_slack=worst_slack,
        bound_used=bound_const,
        alpha=alpha,
        violations=tuple(violations),
        violation_count=violation_count,
        mode=mode,
        kind=kind,
    )


# ---------------------------------------------------------------------------
# lightness


@dataclass(frozen=True)
class LightnessReport:
    spanner_weight: float
    mst_weight: float
    lightness: float
    per_phase: dict[str, tuple[int, float]]  # tag -> (edge count, weight)
    size: int

    @property
    def passed(self) -> bool:
        return self.lightness >= 1.0 - REL_TOL

    def to_json_dict(self) -> dict:
        return {
            "schema": "lightness_report/v1",
            "spanner_weight": self.spanner_weight,
            "mst_weight": self.mst_weight,
            "lightness": self.lightness,
            "size": self.size,
            "per_phase": {
                tag: {"count": c, "weight": w} for tag, (c, w) in sorted(self.per_phase.items())
            },
            "passed": self.passed,
        }


def verify_lightness(g: WeightedGraph, sp: Spanner) -> LightnessReport:
    """Exact per-phase weight accounting; lightness = w(H) / w(MST)."""
    _check_host(g, sp)
    mst_weight = mst(g).total_weight
    wt = g.weight_of
    buckets: dict[str, list[float]] = {}
    counts: dict[str, int] = {}
    for u, v in sorted(sp.edges):
        tag = sp.phase_tag[(u, v)]
        buckets.setdefault(tag, []).append(wt(u, v))
        counts[tag] = counts.get(tag, 0) + 1
    per_phase = {tag: (counts[tag], math.fsum(ws)) for tag, ws in buckets.items()}
    total = math.fsum(w for _, ws in sorted(buckets.items()) for w in ws)
    return LightnessReport(
        spanner_weight=total,
        mst_weight=mst_weight,
        lightness=total / mst_weight,
        per_phase=per_phase,
        size=len(sp.edges),
    )


# ---------------------------------------------------------------------------
# nets


@dataclass(frozen=True)
class NetReport:
    delta: float
    size: int
    covering_violations: tuple[tuple[int, float], ...]  # (vertex, dist to net)
    packing_violations: tuple[tuple[int, int, float], ...]  # (member, member, dist)
    mst_bound_ok: bool

    @property
    def passed(self) -> bool:
        return not self.covering_violations and not self.packing_violations and self.mst_bound_ok

    def to_json_dict(self) -> dict:
        return {
            "schema": "net_report/v1",
            "delta": self.delta,
            "size": self.size,
            "covering_violations": [list(v) for v in self.covering_violations],
            "packing_violations": [list(v) for v in self.packing_violations],
            "mst_bound_ok": self.mst_bound_ok,
            "passed": self.passed,
        }


def verify_net(g: WeightedGraph, net: DeltaNet, *, mst_weight: float | None = None) -> NetReport:
    """Covering (every vertex within delta of the net) and packing (members
    pairwise further than delta apart), plus the net-size side condition
    size * delta <= 2 * w(MST) for nets with at least two members.

    Packing uses one multi-source scan: a closest pair of members realizes
    its distance across some edge whose endpoints are claimed by different
    members, so scanning boundary edges finds every candidate pair; each
    candidate is then confirmed with an exact truncated scan. Covering gets
    REL_TOL slack (nets built by decree, like a hierarchy's top singleton,
    sit within rounding of the covering radius); packing is exact, matching
    the strict inequality the greedy construction maintains.
    """
    n = g.n
    delta = net.delta
    members = net.members
    if not members:
        raise ValueError("net has no members")
    if mst_weight is None:
        mst_weight = mst(g).total_weight

    dist, _, _, origin, _, _ = scan(n, g.adj, members)
    covering = [(v, dist[v]) for v in range(n) if not _within(dist[v], delta)]

    packing: list[tuple[int, int, float]] = []
    if delta > 0 and len(members) >= 2:
        suspects: set[int] = set()
        for u, v, w in g.edges:
            if origin[u] != origin[v] and dist[u] + w + dist[v] <= delta * (1.0 + REL_TOL):
                suspects.add(origin[u])
                suspects.add(origin[v])
        member_set = set(members)
        seen: set[tuple[int, int]] = set()
        for a in sorted(suspects):
            d_a, _, _, _, settled, _ = scan(n, g.adj, (a,), radius=delta * (1.0 + REL_TOL))
            for b in members:
                if b == a or not settled[b] or d_a[b] > delta:
                    continue
                key = (a, b) if a < b else (b, a)
                if key not in seen:
                    seen.add(key)
                    packing.append((key[0], key[1], d_a[b]))
        assert suspects <= member_set
        packing.sort()

    mst_ok = len(members) < 2 or _within(len(members) * delta, 2.0 * mst_weight)
    return NetReport(
        delta=delta,
        size=len(members),
        covering_violations=tuple(covering[:WITNESS_CAP]),
        packing_violations=tuple(packing[:WITNESS_CAP]),
        mst_bound_ok=mst_ok,
    )


# ---------------------------------------------------------------------------
# shallow-light trees


@dataclass(frozen=True)
class SltReport:
    root: int
    alpha: float
    gamma: float
    worst_root_stretch: float
    tree_weight: float
    mst_weight: float
    weight_ratio: float
    violations: tuple[tuple[int, float, float], ...]  # (vertex, d_T, d_G)

    @property
    def passed(self) -> bool:
        return not self.violations and _within(self.weight_ratio, self.gamma)

    def to_json_dict(self) -> dict:
        return {
            "schema": "slt_report/v1",
            "root": self.root,
            "alpha": self.alpha,
            "gamma": self.gamma,
            "worst_root_stretch": self.worst_root_stretch,
            "tree_weight": self.tree_weight,
            "mst_weight": self.mst_weight,
            "weight_ratio": self.weight_ratio,
            "violations": [list(v) for v in self.violations],
            "passed": self.passed,
        }


def verify_slt(g: WeightedGraph, tree: SpanningTree, root: int, eps: float) -> SltReport:
    """Both shallow-light conditions: root distances within 1+eps of the
    graph's, total weight within 1+2/eps of the MST's."""
    if tree.n != g.n:
        raise SpannerError(f"tree has {tree.n} vertices but graph has {g.n}")
    for u, v, w in tree.edges:
        if not g.has_edge(u, v) or g.weight_of(u, v) != w:
            raise SpannerError(f"tree edge ({u}, {v}, {w}) is not a graph edge")
    alpha = 1.0 + eps
    gamma = 1.0 + 2.0 / eps
    dist_g, _, _, _, _, _ = scan(g.n, g.adj, (root,))
    tree_adj = adjacency_from_edges(g.n, [(u, v) for u, v, _ in tree.edges], g.weight_of)
    dist_t, _, _, _, _, _ = scan(g.n, tree_adj, (root,))
    worst = 1.0
    violations = []
    for v in range(g.n):
        if v == root:
            continue
        ratio = dist_t[v] / dist_g[v]
        if ratio > worst:
            worst = ratio
        if not _within(dist_t[v], alpha * dist_g[v]):
            violations.append((v, dist_t[v], dist_g[v]))
    mst_weight = mst(g).total_weight
    return SltReport(
        root=root,
        alpha=alpha,
        gamma=gamma,
        worst_root_stretch=worst,
        tree_weight=tree.total_weight,
        mst_weight=mst_weight,
        weight_ratio=tree.total_weight / mst_weight,
        violations=tuple(violations[:WITNESS_CAP]),
    )


# ---------------------------------------------------------------------------
# construction-level lemma suite


@dataclass(frozen=True)
class LemmaResult:
    name: str
    checked: int
    witnesses: tuple[tuple, ...]

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "witnesses": [list(w) for w in self.witnesses],
            "passed": self.passed,
        }


@dataclass(frozen=True)
class LemmaSuiteReport:
    results: tuple[LemmaResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, name: str) -> LemmaResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {
            "schema": "lemma_suite/v1",
            "results": [r.to_json_dict() for r in self.results],
            "passed": self.passed,
        }


class _RowCache:
    """Lazily computed full single-source distance rows over one adjacency."""

    def __init__(self, n: int, adj):
        self.n = n
        self.adj = adj
        self._rows: dict[int, list[float]] = {}

    def row(self, u: int) -> list[float]:
        cached = self._rows.get(u)
        if cached is None:
            cached, _, _, _, _, _ = scan(self.n, self.adj, (u,))
            self._rows[u] = cached
        return cached


def _check_representative(gn: WeightedGraph, internals: BuildInternals) -> LemmaResult:
    """d_{H0}(v, rep(v, i)) <= (1 + 2*eps) * 2**i for every vertex and level,
    measured inside the phase-1 subgraph only."""
    h = internals.hierarchy
    n = gn.n
    h0_adj = adjacency_from_edges(n, sorted(h.h0_edges), gn.weight_of)
    factor = 1.0 + 2.0 * h.eps
    checked = 0
    witnesses = []
    for v in range(n):
        dist, _, _, _, _, _ = scan(n, h0_adj, (v,))
        for i in range(h.i_max + 1):
            x = h.rep(v, i)
            checked += 1
            if not _within(dist[x], factor * 2.0**i):
                witnesses.append((v, i, x, dist[x], factor * 2.0**i))
    return LemmaResult("representative", checked, tuple(witnesses[:WITNESS_CAP]))


def _check_distance_in_bunch(
    gn: WeightedGraph,
    sp: Spanner,
    internals: BuildInternals,
    g_rows: _RowCache,
) -> LemmaResult:
    """d_H(u, v) <= (1 + eps) * d(u, v) for every v in u's shrunken bunch."""
    sampling = internals.sampling
    eps = internals.hierarchy.eps
    n = gn.n
    h_adj = adjacency_from_edges(n, sorted(sp.edges), gn.weight_of)
    delta = 0.5 * (1.0 - eps)
    checked = 0
    witnesses = []
    for u in range(n):
        i = sampling.level_of[u]
        if i == sampling.k:
            members = [v for v in sampling.members(sampling.k) if v != u]
            dist_g = g_rows.row(u)
        else:
            radius = delta * sampling.pivot_dist[i + 1][u]
            dist_g, _, _, _, _, order = scan(n, gn.adj, (u,), radius=radius)
            level = sampling.levels[i]
            members = sorted(v for v in order if v != u and dist_g[v] < radius and v in level)
        if not members:
            continue
        reach = (1.0 + eps) * max(dist_g[v] for v in members) * (1.0 + REL_TOL)
        dist_h, _, _, _, settled_h, _ = scan(n, h_adj, (u,), radius=reach)
        for v in members:
            checked += 1
            dh = dist_h[v] if settled_h[v] else INF
            if not _within(dh, (1.0 + eps) * dist_g[v]):
                witnesses.append((u, v, dist_g[v], dh))
    return LemmaResult("distance_in_bunch", checked, tuple(witnesses[:WITNESS_CAP]))


def _check_half_bunch_containment(internals: BuildInternals, g_rows: _RowCache) -> LemmaResult:
    """Centers sharing a representative all sit inside the unshrunken bunch of
    the member farthest from that representative."""
    sampling = internals.sampling
    k = sampling.k
    groups: dict[tuple[int, int, int], list] = {}
    for r in internals.records:
        groups.setdefault((r.center_level, r.scale, r.target), []).append(r)
    checked = 0
    witnesses = []
    for (level, scale, target), recs in sorted(groups.items()):
        centers = sorted({(r.center, r.dist_target) for r in recs})
        if level == k:
            # top-level bunches are the whole level; containment is definitional
            checked += len(centers)
            continue
        star = max(centers, key=lambda cd: (cd[1], -cd[0]))[0]
        pd = sampling.pivot_dist[level + 1][star]
        row = g_rows.row(star)
        for u, _ in centers:
            checked += 1
            d = row[u]
            if not (d < pd * (1.0 + REL_TOL)):
                witnesses.append((level, scale, target, star, u, d, pd))
    return LemmaResult("half_bunch_containment", checked, tuple(witnesses[:WITNESS_CAP]))


def _check_paths_intersect(internals: BuildInternals, g_rows: _RowCache) -> LemmaResult:
    """If two same-level connection paths share a vertex, one of the two
    centers has all four endpoints within its pivot radius.

    Representatives need not belong to the sampled level, so the check reads
    the bunch as a ball: every endpoint strictly closer to the center than
    its next-level pivot. Top-level pairs are skipped (no next pivot, so the
    radius is unbounded and the claim is vacuous).
    """
    sampling = internals.sampling
    k = sampling.k
    checked = 0
    witnesses = []
    for level in range(k):
        recs = [r for r in internals.records if r.center_level == level]
        on_vertex: dict[int, list[int]] = {}
        for idx, r in enumerate(recs):
            for w in r.path:
                on_vertex.setdefault(w, []).append(idx)
        pairs: set[tuple[int, int]] = set()
        for idxs in on_vertex.values():
            for a_pos in range(len(idxs)):
                for b_pos in range(a_pos + 1, len(idxs)):
                    a, b = idxs[a_pos], idxs[b_pos]
                    if recs[a].center != recs[b].center or recs[a].target != recs[b].target:
                        pairs.add((a, b) if a < b else (b, a))

        def contains_all(center_rec, other_rec) -> bool:
            pd = sampling.pivot_dist[level + 1][center_rec.center]
            row = g_rows.row(center_rec.center)
            points = (center_rec.target, other_rec.center, other_rec.target)
            return all(row[p] < pd * (1.0 + REL_TOL) for p in points)

        for a, b in sorted(pairs):
            ra, rb = recs[a], recs[b]
            checked += 1
            first, second = (ra, rb) if ra.dist_target >= rb.dist_target else (rb, ra)
            if not (contains_all(first, second) or contains_all(second, first)):
                witnesses.append(
                    (level, ra.center, ra.target, rb.center, rb.target)
                )
    return LemmaResult("paths_intersect", checked, tuple(witnesses[:WITNESS_CAP]))


def verify_lemma_suite(
    g: WeightedGraph, sp: Spanner, internals: BuildInternals | None = None
) -> LemmaSuiteReport:
    """Replay the construction-level facts against retained internals.

    Requires a hierarchical spanner built with keep_internals=True (the
    records and tables are not serialized, so this runs in-process only).
    """
    _check_host(g, sp)
    if internals is None:
        internals = sp.internals  # type: ignore[assignment]
    if not isinstance(internals, BuildInternals):
        raise SpannerError(
            "lemma suite needs hierarchical construction internals; "
            "rebuild with keep_internals=True"
        )
    gn = internals.normalized
    g_rows = _RowCache(gn.n, gn.adj)
    results = (
        _check_representative(gn, internals),
        _check_distance_in_bunch(gn, sp, internals, g_rows),
        _check_half_bunch_containment(internals, g_rows),
        _check_paths_intersect(internals, g_rows),
    )
    return LemmaSuiteReport(results=results)
