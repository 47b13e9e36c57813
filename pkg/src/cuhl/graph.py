"""Undirected graphs, integer metrics, vertex orders and generators.

Vertices are ``0..n-1`` internally; every text format uses 1-based ids.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

# Reserved "no path" value. Arithmetic on valid inputs never reaches it.
INF = 2**64 - 1

# 3**39 is the largest power whose simple-path sums still fit below 2**64.
MAX_EXP_VERTICES = 39


def sat_add(*terms: int) -> int:
    """Sum that saturates at :data:`INF`."""
    total = 0
    for t in terms:
        if t >= INF:
            return INF
        total += t
    return total if total < INF else INF


class ParseError(ValueError):
    """Malformed input text; ``line`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with sorted adjacency lists."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            seen.add(_norm(u, v))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in seen:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return cls(n, tuple(sorted(seen)), tuple(tuple(sorted(a)) for a in nbrs))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self._edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [s], [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


@dataclass(frozen=True)
class Metric:
    """Non-negative integer length per undirected edge, keyed by ``(min, max)``."""

    weights: Mapping[tuple[int, int], int]

    @classmethod
    def for_graph(cls, g: Graph, weights: Mapping[tuple[int, int], int]) -> Metric:
        table = {}
        for (u, v), w in weights.items():
            key = _norm(u, v)
            if not g.has_edge(*key):
                raise ValueError(f"weight given for non-edge {key}")
            if key in table and table[key] != w:
                raise ValueError(f"conflicting weights for edge {key}")
            if not isinstance(w, int) or w < 0:
                raise ValueError(f"weight of {key} must be a non-negative integer")
            if w >= INF:
                raise ValueError(f"weight of {key} collides with the infinity sentinel")
            table[key] = w
        missing = [e for e in g.edges if e not in table]
        if missing:
            raise ValueError(f"edge {missing[0]} has no weight")
        return cls(table)

    @classmethod
    def uniform(cls, g: Graph, w: int = 1) -> Metric:
        return cls.for_graph(g, {e: w for e in g.edges})

    def __call__(self, u: int, v: int) -> int:
        return self.weights[_norm(u, v)]


@dataclass(frozen=True)
class Order:
    """Vertex order. ``rank[v]`` is in ``1..n``; ``vertices[r - 1]`` has rank r."""

    rank: tuple[int, ...]
    vertices: tuple[int, ...]

    def __post_init__(self):
        n = len(self.rank)
        if len(self.vertices) != n or sorted(self.vertices) != list(range(n)):
            raise ValueError("order is not a permutation of the vertices")
        for r, v in enumerate(self.vertices, start=1):
            if self.rank[v] != r:
                raise ValueError("rank and inverse disagree")

    @classmethod
    def from_sequence(cls, low_to_high: Iterable[int]) -> Order:
        """Build from vertices listed by ascending rank."""
        seq = tuple(low_to_high)
        n = len(seq)
        rank = [0] * n
        for r, v in enumerate(seq, start=1):
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
            rank[v] = r
        return cls(tuple(rank), seq)

    @classmethod
    def from_ranks(cls, rank: Iterable[int]) -> Order:
        rank = tuple(rank)
        inv = [-1] * len(rank)
        for v, r in enumerate(rank):
            if not 1 <= r <= len(rank) or inv[r - 1] != -1:
                raise ValueError("ranks must be a permutation of 1..n")
            inv[r - 1] = v
        return cls(rank, tuple(inv))

    @classmethod
    def identity(cls, n: int) -> Order:
        return cls.from_sequence(range(n))

    @property
    def n(self) -> int:
        return len(self.rank)


# ---------------------------------------------------------------- generators


def gen_path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def gen_complete(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def gen_grid(p: int, q: int) -> Graph:
    """``p`` rows by ``q`` columns, row-major ids, 4-neighbour adjacency."""
    if p < 1 or q < 1:
        raise ValueError("grid dimensions must be positive")
    edges = []
    for r in range(p):
        for c in range(q):
            v = r * q + c
            if c + 1 < q:
                edges.append((v, v + 1))
            if r + 1 < p:
                edges.append((v, v + q))
    return Graph.from_edges(p * q, edges)


def gen_random(n: int, m: int, seed: int) -> Graph:
    """Connected random graph: random spanning tree plus uniform extra edges.

    ``m`` is clamped to ``[n - 1, n (n - 1) / 2]``.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)
    m = max(n - 1, min(m, n * (n - 1) // 2))
    perm = list(range(n))
    rng.shuffle(perm)
    edges = set()
    for i in range(1, n):
        edges.add(_norm(perm[i], perm[rng.randrange(i)]))
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add(_norm(u, v))
    return Graph.from_edges(n, edges)


def gen_random_metric(g: Graph, lo: int, hi: int, seed: int) -> Metric:
    rng = random.Random(seed)
    return Metric.for_graph(g, {e: rng.randint(lo, hi) for e in g.edges})


def gen_weights_exponential(g: Graph, order: Order) -> Metric:
    """Weight ``3 ** max(rank(u), rank(v))`` on every edge."""
    if g.n > MAX_EXP_VERTICES:
        raise ValueError(
            f"rank-exponential weights overflow: n={g.n} > {MAX_EXP_VERTICES}"
        )
    rank = order.rank
    return Metric.for_graph(g, {(u, v): 3 ** max(rank[u], rank[v]) for u, v in g.edges})


def star_clique_ids(k: int) -> tuple[int, list[int], list[list[int]]]:
    """Vertex ids of the star-clique family: ``(apex, centers, leaves per star)``."""
    centers = list(range(1, k + 1))
    leaves = [[1 + k + i * k + j for j in range(k)] for i in range(k)]
    return 0, centers, leaves


def gen_star_clique(k: int):
    """Star-clique family with its explicit constant-size hierarchical labels.

    ``k`` stars with ``k`` leaves each (length 1), centers joined in a clique
    (length 5), and an apex ``s`` adjacent to every leaf (2) and center (3).
    Returns ``(graph, metric, labels)``; the labels are a hub labeling for this
    metric only, not a customizable one.
    """
    from .labeling import LabelSet

    if k < 1:
        raise ValueError("k must be at least 1")
    s, centers, leaves = star_clique_ids(k)
    n = 1 + k + k * k
    w: dict[tuple[int, int], int] = {}
    for i, c in enumerate(centers):
        w[(s, c)] = 3
        for x in leaves[i]:
            w[(c, x)] = 1
            w[(s, x)] = 2
        for c2 in centers[i + 1 :]:
            w[(c, c2)] = 5
    g = Graph.from_edges(n, w)
    hubs: list[list[int]] = [[] for _ in range(n)]
    hubs[s] = [s]
    for i, c in enumerate(centers):
        hubs[c] = [s] + centers[i:]
        for x in leaves[i]:
            hubs[x] = [s, c]
    return g, Metric.for_graph(g, w), LabelSet.from_lists(hubs)


def gen_clique_apex(n: int):
    """Complete graph on ``n`` vertices (length 2) plus an apex at length 1.

    The apex is vertex ``n``. Returns ``(graph, metric, labels)`` with the
    labels ``{v, apex}`` / ``{apex}``, valid for this metric only.
    """
    from .labeling import LabelSet

    if n < 1:
        raise ValueError("n must be at least 1")
    apex = n
    w = {(u, v): 2 for u in range(n) for v in range(u + 1, n)}
    w.update({(v, apex): 1 for v in range(n)})
    g = Graph.from_edges(n + 1, w)
    hubs = [[v, apex] for v in range(n)] + [[apex]]
    return g, Metric.for_graph(g, w), LabelSet.from_lists(hubs)
