from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuhl.graph import Graph, Order
from cuhl.hierarchy import build_cch, dump_cch, lower_triangles

import refimpl
from refimpl import A, B, C, D


def test_p3_no_shortcuts():
    g, order = refimpl.p3()
    h = build_cch(g, order)
    assert h.shortcuts == frozenset()
    assert lower_triangles(h, 0, 1) == []


def test_four_cycle_shortcut_and_triangles():
    g, _, order = refimpl.four_cycle()
    h = build_cch(g, order)
    assert h.shortcuts == {(B, C)}
    assert lower_triangles(h, B, C) == [A]
    assert lower_triangles(h, C, D) == [B]
    with pytest.raises(ValueError):
        lower_triangles(h, A, D)


def test_k3_any_order():
    g, _ = refimpl.k3()
    for seq in ([0, 1, 2], [2, 0, 1], [1, 2, 0]):
        assert build_cch(g, Order.from_sequence(seq)).shortcuts == frozenset()


def test_dump():
    g, _, order = refimpl.four_cycle()
    text = dump_cch(build_cch(g, order))
    assert text.splitlines()[-1] == "m_plus = 1"


@st.composite
def instances(draw, max_n=16):
    n = draw(st.integers(1, max_n))
    rng = random.Random(draw(st.integers(0, 10**6)))
    g = refimpl.random_connected(n, rng, extra=draw(st.sampled_from([0.0, 0.1, 0.25])))
    if draw(st.booleans()) and n > 2:
        # drop tree edges too so disconnected inputs appear
        g = Graph.from_edges(n, [e for e in g.edges if rng.random() < 0.7])
    return g, refimpl.random_order(n, rng)


@settings(max_examples=120, deadline=None)
@given(instances())
def test_path_definition_equivalence(inst):
    g, order = inst
    h = build_cch(g, order)
    edges = set(g.edges) | set(h.shortcuts)
    assert edges == refimpl.cch_edges_by_definition(g, order)


@settings(max_examples=80, deadline=None)
@given(instances())
def test_idempotent_and_edge_count(inst):
    g, order = inst
    h = build_cch(g, order)
    sup = Graph.from_edges(g.n, set(g.edges) | set(h.shortcuts))
    assert build_cch(sup, order).shortcuts == frozenset()
    assert sum(len(u) for u in h.up) == g.m + len(h.shortcuts)
    rank = order.rank
    for v in range(g.n):
        assert all(rank[u] > rank[v] for u in h.up[v])
        assert all(rank[u] < rank[v] for u in h.down[v])
    assert [lo for lo, _ in h.upward_edges()] == sorted(
        (lo for lo, _ in h.upward_edges()), key=lambda x: rank[x]
    )


@settings(max_examples=60, deadline=None)
@given(instances())
def test_lower_triangles_by_definition(inst):
    g, order = inst
    h = build_cch(g, order)
    rank = order.rank
    for v, u in h.upward_edges():
        expect = sorted(
            w for w in range(g.n)
            if rank[w] < rank[v] and h.has_edge(w, v) and h.has_edge(w, u)
        )
        assert sorted(lower_triangles(h, v, u)) == expect
