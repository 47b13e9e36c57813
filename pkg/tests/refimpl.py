"""Independent reference implementations used as test oracles.

Everything here is written from the definitions, with networkx and itertools,
and shares no code paths with the package beyond the data classes.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import networkx as nx

from cuhl.graph import INF, Graph, Metric, Order

A, B, C, D = range(4)


def to_nx(g: Graph, m: Metric | None = None) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    for u, v in g.edges:
        G.add_edge(u, v, weight=m(u, v) if m is not None else 1)
    return G


def nx_all_pairs(g: Graph, m: Metric) -> list[list[int]]:
    G = to_nx(g, m)
    out = [[INF] * g.n for _ in range(g.n)]
    for s, dists in nx.all_pairs_dijkstra_path_length(G, weight="weight"):
        for t, d in dists.items():
            out[s][t] = d
    return out


def four_cycle():
    """a-b, b-d, d-c, c-a with l(a,b)=1, l(a,c)=10, l(b,d)=1, l(c,d)=1; identity order."""
    g = Graph.from_edges(4, [(A, B), (B, D), (D, C), (C, A)])
    m = Metric.for_graph(g, {(A, B): 1, (A, C): 10, (B, D): 1, (C, D): 1})
    return g, m, Order.identity(4)


def p3():
    """Path a-b-c with b ranked top, a=1, c=2."""
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    return g, Order.from_ranks([1, 3, 2])


def k3():
    return Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)]), Order.identity(3)


def random_connected(n: int, rng: random.Random, extra: float = 0.3) -> Graph:
    """Random tree plus each further pair with probability ``extra``."""
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < extra:
            edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def random_order(n: int, rng: random.Random) -> Order:
    seq = list(range(n))
    rng.shuffle(seq)
    return Order.from_sequence(seq)


def random_weights(g: Graph, rng: random.Random, lo: int = 1, hi: int = 100) -> Metric:
    return Metric.for_graph(g, {e: rng.randint(lo, hi) for e in g.edges})


def canonical_by_definition(g: Graph, order: Order) -> list[set[int]]:
    """u in L(v) iff some v-u path has u as its maximum-rank vertex."""
    G = to_nx(g)
    rank = order.rank
    labels = []
    for v in range(g.n):
        hubs = set()
        for u in range(g.n):
            if rank[u] < rank[v]:
                continue
            allowed = [x for x in range(g.n) if rank[x] <= rank[u]]
            if nx.has_path(G.subgraph(allowed), v, u):
                hubs.add(u)
        labels.append(hubs)
    return labels


def cch_edges_by_definition(g: Graph, order: Order) -> set[tuple[int, int]]:
    """{v,w} with some v-w path whose interior ranks below both endpoints."""
    G = to_nx(g)
    rank = order.rank
    out = set()
    for v, w in itertools.combinations(range(g.n), 2):
        low = min(rank[v], rank[w])
        allowed = [v, w] + [x for x in range(g.n) if rank[x] < low]
        if nx.has_path(G.subgraph(allowed), v, w):
            out.add((v, w))
    return out


def hhl_by_definition(g: Graph, m: Metric, order: Order) -> list[set[int]]:
    """u in L(v) iff no vertex ranked above u lies on any shortest v-u path."""
    dist = nx_all_pairs(g, m)
    rank = order.rank
    out = []
    for v in range(g.n):
        hubs = set()
        for u in range(g.n):
            if dist[v][u] >= INF or rank[u] < rank[v]:
                continue
            if not any(
                rank[x] > rank[u] and dist[v][x] + dist[x][u] == dist[v][u]
                for x in range(g.n)
            ):
                hubs.add(u)
        out.append(hubs)
    return out


def bellman_ford_hops(g: Graph, m: Metric, s: int, k: int) -> list[int]:
    """Shortest s-x distance over walks with at most k edges."""
    dist = [INF] * g.n
    dist[s] = 0
    for _ in range(k):
        nxt = dist[:]
        for u, v in g.edges:
            w = m(u, v)
            if dist[u] < INF:
                nxt[v] = min(nxt[v], dist[u] + w)
            if dist[v] < INF:
                nxt[u] = min(nxt[u], dist[v] + w)
        dist = nxt
    return dist


def b_alpha_by_enumeration(g: Graph, alpha: Fraction) -> int:
    G = to_nx(g)
    for size in range(g.n + 1):
        for sep in itertools.combinations(range(g.n), size):
            rest = G.subgraph(set(range(g.n)) - set(sep))
            largest = max((len(c) for c in nx.connected_components(rest)), default=0)
            if largest <= alpha * g.n:
                return size
    raise AssertionError("unreachable")


def optimal_avg_by_enumeration(g: Graph) -> Fraction:
    best = None
    for perm in itertools.permutations(range(g.n)):
        total = sum(len(h) for h in canonical_by_definition(g, Order.from_sequence(perm)))
        best = total if best is None else min(best, total)
    return Fraction(best, g.n)


def hop_diameter_by_paths(g: Graph, m: Metric) -> int:
    """Max edge count over all shortest paths (not just fewest-hop ones)."""
    G = to_nx(g, m)
    best = 0
    for s in range(g.n):
        for t in range(g.n):
            if s != t and nx.has_path(G, s, t):
                for path in nx.all_shortest_paths(G, s, t, weight="weight"):
                    best = max(best, len(path) - 1)
    return best


def nd_bound(n: int) -> float:
    return 1 + 1.5 * math.log(n, 1.5)
