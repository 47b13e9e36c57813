from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from cuhl.customize_hier import (
    compare_customizations,
    customize_edges,
    customize_hybrid,
    customize_top_down,
    customize_upward_dijkstra,
    relax_triangles,
)
from cuhl.graph import INF, Graph, Metric
from cuhl.hierarchy import build_cch
from cuhl.labeling import build_canonical_hcuhl
from cuhl.query import hl_query

import refimpl
from refimpl import A, B, C, D


def _setup(g, m, order):
    h = build_cch(g, order)
    labels = build_canonical_hcuhl(h)
    return h, labels, customize_edges(h, m)


def test_edges_without_shortcuts_are_weights():
    g, order = refimpl.p3()
    m = Metric.for_graph(g, {(0, 1): 4, (1, 2): 9})
    ed = customize_edges(build_cch(g, order), m)
    assert ed.dist == {(0, 1): 4, (1, 2): 9}


def test_four_cycle_edge_distances():
    g, m, order = refimpl.four_cycle()
    h, labels, ed = _setup(g, m, order)
    assert ed[(B, C)] == 11 and ed[(C, B)] == 11
    assert ed[(A, C)] == 10


def test_four_cycle_upward_dijkstra():
    g, m, order = refimpl.four_cycle()
    h, labels, ed = _setup(g, m, order)
    c = customize_upward_dijkstra(h, labels, ed)
    assert c.dist[A] == (0, 1, 10, 2)
    assert c.dist[B] == (0, 11, 1)
    assert c.dist[D] == (0,)
    assert hl_query(c, A, C).distance == 3


def test_four_cycle_top_down_matches():
    g, m, order = refimpl.four_cycle()
    h, labels, ed = _setup(g, m, order)
    td = customize_top_down(h, labels, ed)
    up = customize_upward_dijkstra(h, labels, ed)
    assert td.dist == up.dist
    assert compare_customizations(h, labels, m).ok


def test_threads_same_result():
    rng = random.Random(4)
    g = refimpl.random_connected(30, rng, 0.1)
    m = refimpl.random_weights(g, rng)
    h, labels, ed = _setup(g, m, refimpl.random_order(30, rng))
    assert customize_upward_dijkstra(h, labels, ed, workers=4) == customize_upward_dijkstra(h, labels, ed)


@st.composite
def instances(draw, max_n=24):
    n = draw(st.integers(1, max_n))
    rng = random.Random(draw(st.integers(0, 10**6)))
    g = refimpl.random_connected(n, rng, extra=draw(st.sampled_from([0.0, 0.1, 0.3])))
    if draw(st.booleans()) and n > 2:
        g = Graph.from_edges(n, [e for e in g.edges if rng.random() < 0.8])
    lo = draw(st.sampled_from([0, 1]))
    m = refimpl.random_weights(g, rng, lo, draw(st.sampled_from([1, 5, 100])))
    return g, m, refimpl.random_order(n, rng), rng.randint(0, n)


@settings(max_examples=120, deadline=None)
@given(instances())
def test_engines_exact_and_upper_bounded(inst):
    g, m, order, cutoff = inst
    h, labels, ed = _setup(g, m, order)
    dist = refimpl.nx_all_pairs(g, m)
    for custom in (
        customize_upward_dijkstra(h, labels, ed),
        customize_top_down(h, labels, ed),
        customize_hybrid(h, labels, ed, cutoff),
    ):
        for v, u, d in custom.entries():
            assert d >= dist[v][u]
        for s in range(g.n):
            for t in range(g.n):
                assert hl_query(custom, s, t).distance == dist[s][t]
    assert compare_customizations(h, labels, m).ok


@settings(max_examples=60, deadline=None)
@given(instances())
def test_triangle_pass_fixpoint(inst):
    g, m, order, _ = inst
    h, _, ed = _setup(g, m, order)
    again = relax_triangles(h, ed.copy())
    assert again.dist == ed.dist
    assert all(d < INF for d in ed.dist.values()) or not g.is_connected() or g.n == 1
