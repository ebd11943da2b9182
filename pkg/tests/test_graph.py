import math

import pytest
from hypothesis import given, strategies as st

from lightspanner.errors import DisconnectedGraphError
from lightspanner.graph import (
    INF,
    WeightedGraph,
    adjacency_from_edges,
    dijkstra,
    multi_source_dijkstra,
    scan,
    shortest_path,
)

from .conftest import connected_graphs
from . import oracles


def test_constructor_rejects_self_loop():
    with pytest.raises(ValueError, match="self loop"):
        WeightedGraph(3, [(0, 1, 1.0), (2, 2, 1.0)])


def test_constructor_rejects_duplicates():
    with pytest.raises(ValueError, match="duplicate"):
        WeightedGraph(3, [(0, 1, 1.0), (1, 0, 2.0), (1, 2, 1.0)])


def test_constructor_rejects_bad_weight():
    with pytest.raises(ValueError, match="positive"):
        WeightedGraph(2, [(0, 1, 0.0)])
    with pytest.raises(ValueError, match="positive"):
        WeightedGraph(2, [(0, 1, -1.0)])
    with pytest.raises(ValueError, match="finite"):
        WeightedGraph(2, [(0, 1, float("nan"))])
    with pytest.raises(ValueError, match="finite"):
        WeightedGraph(2, [(0, 1, float("inf"))])


def test_constructor_rejects_out_of_range_ids():
    with pytest.raises(ValueError, match="outside"):
        WeightedGraph(2, [(0, 2, 1.0)])


def test_constructor_rejects_disconnected():
    with pytest.raises(DisconnectedGraphError):
        WeightedGraph(4, [(0, 1, 1.0), (2, 3, 1.0)])


def test_single_vertex_graph():
    g = WeightedGraph(1, [])
    assert g.n == 1 and g.m == 0
    assert dijkstra(g, 0).dist == (0.0,)


def test_edges_canonicalized_and_sorted():
    g = WeightedGraph(3, [(2, 1, 0.5), (1, 0, 0.25)])
    assert g.edges == ((0, 1, 0.25), (1, 2, 0.5))
    assert g.weight_of(2, 1) == 0.5
    assert g.has_edge(0, 1) and not g.has_edge(0, 2)


def test_scaled_multiplies_every_weight():
    g = WeightedGraph(3, [(0, 1, 1.0), (1, 2, 2.0)])
    h = g.scaled(2.5)
    assert h.edges == ((0, 1, 2.5), (1, 2, 5.0))


@given(connected_graphs(), st.integers(0, 10_000))
def test_dijkstra_matches_bellman_ford(g, pick):
    source = pick % g.n
    assert list(dijkstra(g, source).dist) == oracles.bellman_ford(g, source)


@given(connected_graphs(max_n=8, max_extra=6), st.integers(0, 10_000))
def test_bottleneck_matches_path_enumeration(g, pick):
    s = pick % g.n
    t = (pick // g.n) % g.n
    if s == t:
        return
    table = dijkstra(g, s)
    d, heavy = oracles.min_bottleneck_of_shortest(g, s, t)
    assert table.dist[t] == d
    assert table.bottleneck[t] == heavy


@given(connected_graphs())
def test_path_to_is_consistent(g):
    table = dijkstra(g, 0)
    for v in range(g.n):
        p = table.path_to(v)
        assert p.vertices[0] == 0 and p.vertices[-1] == v
        assert len(set(p.vertices)) == len(p.vertices)
        total = 0.0
        heaviest = 0.0
        for a, b in zip(p.vertices, p.vertices[1:]):
            w = g.weight_of(a, b)
            total += w
            heaviest = max(heaviest, w)
        assert total == p.length == table.dist[v]
        assert heaviest == p.bottleneck


def test_parent_tiebreak_prefers_smaller_predecessor():
    # two equal-length routes 0-1-3 and 0-2-3; the tree must route 3 via 1
    g = WeightedGraph(4, [(0, 1, 1.0), (0, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)])
    table = dijkstra(g, 0)
    assert table.parent[3] == 1
    assert shortest_path(g, 0, 3).vertices == (0, 1, 3)


def test_deterministic_across_runs():
    g = WeightedGraph(5, [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 1.0), (2, 3, 0.25), (3, 4, 1.0), (2, 4, 1.25)])
    a = dijkstra(g, 0)
    b = dijkstra(g, 0)
    assert a == b


@given(connected_graphs(), st.data())
def test_multi_source_origin_is_nearest_source(g, data):
    k = data.draw(st.integers(1, g.n))
    sources = sorted(data.draw(st.sets(st.integers(0, g.n - 1), min_size=k, max_size=k)))
    table = multi_source_dijkstra(g, sources)
    rows = {s: oracles.bellman_ford(g, s) for s in sources}
    for v in range(g.n):
        best = min(rows[s][v] for s in sources)
        assert table.dist[v] == best
        # the claimed origin must realize the minimum; ties pick the smallest id
        tied = [s for s in sources if rows[s][v] == best]
        assert table.origin[v] == min(tied)


def test_multi_source_rejects_empty():
    g = WeightedGraph(2, [(0, 1, 1.0)])
    with pytest.raises(ValueError):
        multi_source_dijkstra(g, [])


def test_shortest_path_same_vertex():
    g = WeightedGraph(2, [(0, 1, 1.0)])
    p = shortest_path(g, 1, 1)
    assert p.vertices == (1,) and p.length == 0.0 and p.bottleneck == 0.0


def test_scan_radius_settles_exactly_the_ball():
    g = WeightedGraph(5, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)])
    dist, _, _, _, settled, order = scan(g.n, g.adj, (0,), radius=2.0)
    assert [v for v in range(5) if settled[v]] == [0, 1, 2]
    assert order == [0, 1, 2]
    assert dist[2] == 2.0


def test_adjacency_from_edges_allows_disconnected():
    g = WeightedGraph(3, [(0, 1, 1.0), (1, 2, 1.0)])
    adj = adjacency_from_edges(3, [(0, 1)], g.weight_of)
    dist, _, _, _, _, _ = scan(3, adj, (0,))
    assert dist[1] == 1.0 and dist[2] == INF


@given(connected_graphs())
def test_total_weight_is_edge_sum(g):
    assert g.total_weight() == math.fsum(w for _, _, w in g.edges)
