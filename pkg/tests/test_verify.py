import dataclasses
import math

import pytest

from lightspanner.errors import SpannerError
from lightspanner.generate import generate_graph
from lightspanner.graph import WeightedGraph
from lightspanner.nets import DeltaNet, greedy_delta_net
from lightspanner.spanner import (
    PHASE_H0,
    Spanner,
    SpannerParams,
    build_spanner,
    build_wmax_spanner,
)
from lightspanner.trees import SpanningTree, mst, slt
from lightspanner.verify import (
    additive_stretch_constant,
    delta_parameter,
    verify_lemma_suite,
    verify_lightness,
    verify_net,
    verify_slt,
    verify_stretch,
)


def _identity_spanner(g, eps=0.05, k=2):
    edges = frozenset((u, v) for u, v, _ in g.edges)
    return Spanner(
        host=g,
        edges=edges,
        phase_tag={e: PHASE_H0 for e in edges},
        params=SpannerParams(eps=eps, k=k, seed=0, kind="hierarchical"),
        scale=1.0,
    )


# ---------------------------------------------------------------- constants


def test_published_constants():
    assert delta_parameter(0.05, 2) == 7 + 14 * 2 / 0.05
    d = delta_parameter(0.1, 1)
    assert additive_stretch_constant(0.1, 1) == 24 * (3 * d)
    d2 = delta_parameter(0.1, 3)
    assert additive_stretch_constant(0.1, 3) == 24 * (3 * d2) ** 3


# ---------------------------------------------------------------- stretch


def test_identity_spanner_has_no_stretch():
    g = generate_graph("erdos_renyi", 40, seed=1, p=0.2)
    report = verify_stretch(g, _identity_spanner(g))
    assert report.passed
    assert report.worst_mult_stretch == 1.0
    assert report.worst_additive_slack == 0.0
    assert report.pairs_checked == 40 * 39 // 2
    assert report.alpha == 1.0 + 2 * 0.05


def test_mst_of_cycle_stretches_but_passes():
    # dropping one unit edge of C_10 forces a detour of length 9 for its
    # endpoints; the additive budget absorbs it with room to spare
    n = 10
    cyc = [(i, i + 1, 1.0) for i in range(n - 1)] + [(0, n - 1, 1.0)]
    g = WeightedGraph(n, cyc)
    edges = frozenset((u, v) for u, v, _ in g.edges if (u, v) != (0, n - 1))
    sp = Spanner(
        host=g,
        edges=edges,
        phase_tag={e: PHASE_H0 for e in edges},
        params=SpannerParams(eps=0.05, k=1, seed=0, kind="hierarchical"),
        scale=1.0,
    )
    report = verify_stretch(g, sp)
    assert report.worst_mult_stretch == pytest.approx(9.0)
    assert report.worst_additive_slack > 0
    assert report.passed


def test_disconnected_candidate_fails_stretch():
    g = generate_graph("path", 30, seed=0)
    sp = build_spanner(g, eps=0.05, k=1, seed=0)
    dropped = sorted(sp.edges)[10]
    edges = frozenset(e for e in sp.edges if e != dropped)
    broken = dataclasses.replace(
        sp, edges=edges, phase_tag={e: sp.phase_tag[e] for e in edges}
    )
    report = verify_stretch(g, broken)
    assert not report.passed
    assert report.violation_count > 0
    x, y, dg, dh, w = report.violations[0]
    assert dh == math.inf and dg < math.inf


def test_sampled_mode_is_deterministic(medium_geometric):
    g = medium_geometric
    sp = build_spanner(g, eps=0.05, k=2, seed=1)
    a = verify_stretch(g, sp, mode="sampled", sample_size=32, seed=5)
    b = verify_stretch(g, sp, mode="sampled", sample_size=32, seed=5)
    assert a == b
    assert a.pairs_checked == 32 * (g.n - 1)
    assert a.mode == "sampled"


def test_sample_size_capped_at_n():
    g = generate_graph("path", 12, seed=0)
    sp = build_spanner(g, eps=0.05, k=1, seed=0)
    report = verify_stretch(g, sp, mode="sampled", sample_size=500)
    assert report.pairs_checked == 12 * 11


def test_stretch_mode_validation(medium_geometric):
    sp = build_spanner(medium_geometric, eps=0.05, k=2, seed=1)
    with pytest.raises(ValueError, match="mode"):
        verify_stretch(medium_geometric, sp, mode="exhaustive")


def test_host_mismatch_rejected(medium_geometric):
    sp = build_spanner(medium_geometric, eps=0.05, k=2, seed=1)
    other = generate_graph("path", medium_geometric.n, seed=0)
    with pytest.raises(SpannerError, match="different graph"):
        verify_stretch(other, sp)


def test_tag_edge_mismatch_rejected(medium_geometric):
    sp = build_spanner(medium_geometric, eps=0.05, k=2, seed=1)
    tags = dict(sp.phase_tag)
    tags.pop(sorted(sp.edges)[0])
    broken = dataclasses.replace(sp, phase_tag=tags)
    with pytest.raises(SpannerError):
        verify_stretch(medium_geometric, broken)


def test_stretch_report_serializes(medium_geometric):
    sp = build_spanner(medium_geometric, eps=0.05, k=2, seed=1)
    d = verify_stretch(medium_geometric, sp, mode="sampled", sample_size=16).to_json_dict()
    assert d["schema"] == "stretch_report/v1"
    assert d["passed"] is True
    assert d["pairs_checked"] == 16 * (medium_geometric.n - 1)


def test_wmax_stretch_bound():
    edges = [(0, i, 1.0) for i in range(1, 15)] + [(0, 15, 600.0)]
    g = WeightedGraph(16, edges)
    sp = build_wmax_spanner(g, eps=0.5)
    report = verify_stretch(g, sp)
    assert report.passed
    assert report.alpha == 1.5
    assert report.bound_used == 2.0 * 1.5
    assert report.kind == "wmax"


# ---------------------------------------------------------------- lightness


def test_complete_graph_lightness():
    n = 10
    g = WeightedGraph(n, [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)])
    report = verify_lightness(g, _identity_spanner(g))
    assert report.mst_weight == n - 1
    assert report.spanner_weight == n * (n - 1) / 2
    assert report.lightness == pytest.approx(5.0)
    assert report.passed


def test_tree_spanner_lightness_is_one():
    g = generate_graph("path", 25, seed=2, weight_range=(1.0, 4.0))
    report = verify_lightness(g, _identity_spanner(g))
    assert report.lightness == pytest.approx(1.0)


def test_per_phase_buckets_sum_to_totals(medium_geometric):
    sp = build_spanner(medium_geometric, eps=0.05, k=2, seed=1)
    report = verify_lightness(medium_geometric, sp)
    assert sum(c for c, _ in report.per_phase.values()) == report.size == sp.size
    assert sum(w for _, w in report.per_phase.values()) == pytest.approx(report.spanner_weight)
    assert report.to_json_dict()["schema"] == "lightness_report/v1"


# ---------------------------------------------------------------- nets


def test_verify_net_accepts_greedy_output(medium_geometric):
    net = greedy_delta_net(medium_geometric, 0.2)
    report = verify_net(medium_geometric, net)
    assert report.passed
    assert report.size == len(net.members)
    assert report.to_json_dict()["schema"] == "net_report/v1"


def test_verify_net_covering_witnesses():
    g = generate_graph("path", 10, seed=0, weight_range=(1.0, 1.0))
    report = verify_net(g, DeltaNet(2.0, (0,)))
    assert not report.passed
    bad = {v for v, _ in report.covering_violations}
    assert bad == {3, 4, 5, 6, 7, 8, 9}
    for v, d in report.covering_violations:
        assert d == float(v)


def test_verify_net_packing_witnesses():
    g = generate_graph("path", 10, seed=0, weight_range=(1.0, 1.0))
    report = verify_net(g, DeltaNet(2.0, tuple(range(10))))
    assert not report.packing_violations == ()
    assert all(d <= 2.0 for _, _, d in report.packing_violations)
    assert (0, 1, 1.0) in report.packing_violations


def test_verify_net_packing_is_exact_at_delta():
    g = generate_graph("path", 4, seed=0, weight_range=(1.0, 1.0))
    # members exactly delta apart violate packing (strict > required) ...
    report = verify_net(g, DeltaNet(2.0, (0, 2)))
    assert report.packing_violations == ((0, 2, 2.0),)
    # ... while anything strictly beyond passes
    report = verify_net(g, DeltaNet(2.0, (0, 3)))
    assert report.packing_violations == ()


def test_verify_net_mst_side_condition():
    g = generate_graph("path", 5, seed=0, weight_range=(1.0, 1.0))
    report = verify_net(g, DeltaNet(10.0, (0, 4)), mst_weight=4.0)
    assert not report.mst_bound_ok  # 2 members * delta 10 > 2 * 4
    report = verify_net(g, DeltaNet(1.5, (0, 2, 4)), mst_weight=4.0)
    assert report.mst_bound_ok  # 4.5 <= 8


def test_verify_net_brute_cross_validation():
    from . import oracles

    g = generate_graph("erdos_renyi", 12, seed=3, p=0.4)
    rows = oracles.all_pairs_via_bf(g)
    for delta in (0.5, 1.0, 2.0):
        for members in [(0,), (0, 5), tuple(range(0, 12, 3))]:
            report = verify_net(g, DeltaNet(delta, members))
            cov = {v for v in range(12) if min(rows[v][c] for c in members) > delta}
            assert {v for v, _ in report.covering_violations} == cov
            pack = {
                (a, b)
                for a in members
                for b in members
                if a < b and rows[a][b] <= delta
            }
            assert {(a, b) for a, b, _ in report.packing_violations} == pack


# ---------------------------------------------------------------- slt


def test_verify_slt_flags_deep_tree():
    n = 10
    cyc = [(i, i + 1, 1.0) for i in range(n - 1)] + [(0, n - 1, 1.0)]
    g = WeightedGraph(n, cyc)
    spine = tuple((i, i + 1, 1.0) for i in range(n - 1))
    deep = SpanningTree(n, 0, spine, float(n - 1))
    report = verify_slt(g, deep, 0, eps=0.1)
    assert not report.passed
    assert report.worst_root_stretch == pytest.approx(9.0)
    assert report.violations  # vertex 9 at least
    assert report.weight_ratio == pytest.approx(1.0)


def test_verify_slt_rejects_foreign_edges():
    g = generate_graph("path", 6, seed=0)
    fake = SpanningTree(6, 0, ((0, 5, 1.0),) + g.edges[:4], 5.0)
    with pytest.raises(SpannerError, match="not a graph edge"):
        verify_slt(g, fake, 0, eps=0.5)


def test_verify_slt_rejects_wrong_weight():
    g = generate_graph("path", 6, seed=0)
    u, v, w = g.edges[0]
    fake = SpanningTree(6, 0, ((u, v, w * 2),) + g.edges[1:], 0.0)
    with pytest.raises(SpannerError, match="not a graph edge"):
        verify_slt(g, fake, 0, eps=0.5)


def test_verify_slt_weight_ratio_gate(medium_geometric):
    # a legitimate SLT passes at its own eps but a near-zero eps makes alpha
    # unreachable for any tree that is not the exact SPT
    tree = slt(medium_geometric, 0, 0.3)
    assert verify_slt(medium_geometric, tree, 0, 0.3).passed
    report = verify_slt(medium_geometric, tree, 0, 1e-12)
    assert report.gamma > 1e11


# ---------------------------------------------------------------- lemma suite


@pytest.fixture(scope="module")
def geo_sp(medium_geometric):
    return build_spanner(medium_geometric, eps=0.05, k=2, seed=1)


@pytest.fixture(scope="module")
def path_sp():
    g = generate_graph("path", 300, seed=3)
    return build_spanner(g, eps=0.09, k=2, seed=3)


LEMMAS = ("representative", "distance_in_bunch", "half_bunch_containment", "paths_intersect")


def test_lemma_suite_passes_on_geometric(geo_sp, medium_geometric):
    report = verify_lemma_suite(medium_geometric, geo_sp)
    assert report.passed
    assert tuple(r.name for r in report.results) == LEMMAS
    for r in report.results:
        assert r.checked > 0
        assert r.witnesses == ()
    assert report.to_json_dict()["schema"] == "lemma_suite/v1"


def test_lemma_suite_passes_with_rep_routing(path_sp):
    report = verify_lemma_suite(path_sp.host, path_sp)
    assert report.passed
    assert any(rec.scale >= 0 for rec in path_sp.internals.records)


def test_lemma_result_accessor(geo_sp, medium_geometric):
    report = verify_lemma_suite(medium_geometric, geo_sp)
    assert report.result("representative").passed
    with pytest.raises(KeyError):
        report.result("no_such_claim")


def test_lemma_suite_catches_severed_bunch_path(path_sp):
    # drop every edge of one recorded connection path: the bunch distance
    # guarantee for that (center, member) pair must now fail
    rec = max(path_sp.internals.records, key=lambda r: len(r.path))
    assert len(rec.path) >= 3
    severed = set()
    for a, b in zip(rec.path, rec.path[1:]):
        severed.add((a, b) if a < b else (b, a))
    edges = frozenset(e for e in path_sp.edges if e not in severed)
    broken = dataclasses.replace(
        path_sp, edges=edges, phase_tag={e: path_sp.phase_tag[e] for e in edges}
    )
    report = verify_lemma_suite(path_sp.host, broken)
    bunch = report.result("distance_in_bunch")
    assert not bunch.passed
    assert any(u == rec.center for u, *_ in bunch.witnesses)
    # internals-only facts are untouched by edge deletion
    assert report.result("representative").passed
    assert report.result("half_bunch_containment").passed


def test_lemma_suite_needs_internals(medium_geometric):
    sp = build_spanner(medium_geometric, eps=0.05, k=2, seed=1, keep_internals=False)
    with pytest.raises(SpannerError, match="internals"):
        verify_lemma_suite(medium_geometric, sp)


def test_lemma_suite_rejects_wmax():
    edges = [(0, i, 1.0) for i in range(1, 15)] + [(0, 15, 600.0)]
    g = WeightedGraph(16, edges)
    sp = build_wmax_spanner(g, eps=0.5)
    with pytest.raises(SpannerError, match="internals"):
        verify_lemma_suite(g, sp)
