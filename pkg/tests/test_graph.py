from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuhl.formats import format_graph, parse_graph
from cuhl.graph import (
    INF,
    Graph,
    Metric,
    Order,
    ParseError,
    gen_clique_apex,
    gen_grid,
    gen_random,
    gen_random_metric,
    gen_star_clique,
    gen_weights_exponential,
    sat_add,
    star_clique_ids,
)
from cuhl.oracles import verify_metric_cover

import refimpl


def test_parse_p3():
    g = parse_graph("3 2\n1 2\n2 3")
    assert g.n == 3 and g.edges == ((0, 1), (1, 2))
    assert g.adj == ((1,), (0, 2), (1,))


def test_parse_triangle():
    g = parse_graph("3 3\n1 2\n2 3\n1 3")
    assert g.m == 3 and all(g.degree(v) == 2 for v in range(3))


def test_parse_self_loop_names_line():
    with pytest.raises(ParseError) as err:
        parse_graph("2 1\n1 1")
    assert err.value.line == 2 and "self-loop" in str(err.value)


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 2\n1 2\n2 x", 3),
        ("3 1\n1 4", 2),
        ("3 1\n1 2 3", 2),
        ("3 2\n1 2", 2),
        ("3 1\n1 2\n2 3", 3),
    ],
)
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as err:
        parse_graph(text)
    assert err.value.line == line


def test_duplicate_edges_collapse():
    assert Graph.from_edges(2, [(0, 1), (1, 0)]).m == 1


def test_grid_examples():
    one = gen_grid(1, 1)
    assert (one.n, one.m) == (1, 0)
    g = gen_grid(3, 3)
    assert (g.n, g.m) == (9, 12)
    sq = gen_grid(2, 2)
    assert nx.is_isomorphic(refimpl.to_nx(sq), nx.cycle_graph(4))
    with pytest.raises(ValueError):
        gen_grid(0, 3)


@pytest.mark.parametrize("p", range(1, 33))
def test_grid_closed_forms(p):
    g = gen_grid(p, p)
    assert g.n == p * p and g.m == 2 * p * p - 2 * p


def test_star_clique_k2_counts():
    g, m, labels = gen_star_clique(2)
    assert (g.n, g.m) == (7, 11)
    s, centers, leaves = star_clique_ids(2)
    sizes = labels.sizes()
    assert sizes[s] == 1
    assert [sizes[c] for c in centers] == [3, 2]
    assert all(sizes[x] == 2 for row in leaves for x in row)


def _collapse_apex_detours(path, apex, center_of):
    out = list(path)
    i = 0
    while i + 2 < len(out):
        a, x, b = out[i : i + 3]
        if x in center_of and {a, b} == {apex, center_of[x]}:
            del out[i + 1]
        else:
            i += 1
    return tuple(out)


@pytest.mark.parametrize("k", range(1, 7))
def test_star_clique_shortest_paths(k):
    """Shortest paths are unique up to the apex-center tie (3 direct, 2 + 1 via a leaf)."""
    g, m, labels = gen_star_clique(k)
    apex, centers, leaves = star_clique_ids(k)
    center_of = {x: centers[i] for i, row in enumerate(leaves) for x in row}
    G = refimpl.to_nx(g, m)
    for s in range(g.n):
        for t in range(s + 1, g.n):
            paths = list(nx.all_shortest_paths(G, s, t, weight="weight"))
            if s == apex and t in centers:
                assert len(paths) == k + 1
            assert len({_collapse_apex_detours(p, apex, center_of) for p in paths}) == 1, (s, t)
    assert verify_metric_cover(g, m, labels).ok


def test_exponential_weights_examples():
    g, order = refimpl.p3()
    m = gen_weights_exponential(g, order)
    assert m(0, 1) == 27 and m(1, 2) == 27
    k, korder = refimpl.k3()
    mk = gen_weights_exponential(k, korder)
    assert (mk(0, 1), mk(0, 2), mk(1, 2)) == (9, 27, 27)


def test_exponential_weights_guard():
    g = refimpl.random_connected(40, __import__("random").Random(1))
    with pytest.raises(ValueError, match="rank-exponential weights overflow"):
        gen_weights_exponential(g, Order.identity(40))


def test_exponential_weights_fit_64_bits():
    g = gen_grid(3, 13)  # n = 39
    m = gen_weights_exponential(g, Order.identity(39))
    assert sum(m(u, v) for u, v in g.edges) < INF


def test_sat_add():
    assert sat_add(1, 2) == 3
    assert sat_add(INF, 5) == INF
    assert sat_add(INF - 1, 1) == INF


def test_order_validation():
    with pytest.raises(ValueError):
        Order.from_sequence([0, 0, 1])
    o = Order.from_ranks([2, 1, 3])
    assert o.vertices == (1, 0, 2) and o.rank == (2, 1, 3)


def test_metric_validation():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(ValueError):
        Metric.for_graph(g, {})
    with pytest.raises(ValueError):
        Metric.for_graph(g, {(0, 1): -1})


def test_random_generators_deterministic():
    a, b = gen_random(30, 50, 7), gen_random(30, 50, 7)
    assert a == b and a.is_connected() and a.m == 50
    assert gen_random_metric(a, 1, 9, 3) == gen_random_metric(b, 1, 9, 3)


def test_clique_apex_labels_cover():
    g, m, labels = gen_clique_apex(6)
    assert g.n == 7 and verify_metric_cover(g, m, labels).ok


def test_components():
    g = Graph.from_edges(5, [(0, 3), (1, 4)])
    assert g.components() == [[0, 3], [1, 4], [2]]
    assert not g.is_connected()


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_roundtrip(g):
    again = parse_graph(format_graph(g))
    assert again == g
    assert format_graph(again) == format_graph(g)
