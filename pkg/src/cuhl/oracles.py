"""Metric-dependent baselines: Dijkstra, weighted CH, canonical HHL, gap experiment."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .graph import INF, Graph, Metric, Order, gen_star_clique
from .labeling import CoverReport, LabelSet, label_stats
from .ordering import min_degree_order

GAP_K_LIMIT = 24


def dijkstra(g: Graph, m: Metric, s: int) -> list[int]:
    dist = [INF] * g.n
    dist[s] = 0
    heap = [(0, s)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y in g.adj[x]:
            nd = d + m(x, y)
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def all_pairs(g: Graph, m: Metric) -> list[list[int]]:
    return [dijkstra(g, m, s) for s in range(g.n)]


def _require_positive(g: Graph, m: Metric) -> None:
    for u, v in g.edges:
        if m(u, v) <= 0:
            raise ValueError(f"edge {(u, v)} has non-positive weight {m(u, v)}")


@dataclass(frozen=True)
class CHGraph:
    graph: Graph
    order: Order
    weights: dict[tuple[int, int], int]  # every CH edge, original or shortcut
    shortcuts: frozenset[tuple[int, int]]
    up: tuple[tuple[int, ...], ...]
    down: tuple[tuple[int, ...], ...]


def _witness_distances(nbrs: list[dict[int, int]], src: int, skip: int, limit: int) -> dict[int, int]:
    dist = {src: 0}
    heap = [(0, src)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x] or d > limit:
            continue
        for y, w in nbrs[x].items():
            if y == skip:
                continue
            nd = d + w
            if nd <= limit and (y not in dist or nd < dist[y]):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def build_weighted_ch(g: Graph, m: Metric, order: Order) -> CHGraph:
    """Contract by ascending rank with exact witness searches.

    A shortcut ``{v, w}`` is added when contracting ``x`` only if every path
    avoiding ``x`` among the remaining vertices is strictly longer; an equal
    witness suppresses it.
    """
    _require_positive(g, m)
    nbrs: list[dict[int, int]] = [{} for _ in range(g.n)]
    for u, v in g.edges:
        nbrs[u][v] = nbrs[v][u] = m(u, v)
    weights = {e: m(*e) for e in g.edges}
    shortcuts = set()
    for x in order.vertices:
        around = sorted(nbrs[x])
        added = []
        for i, v in enumerate(around):
            targets = {w: nbrs[x][v] + nbrs[x][w] for w in around[i + 1 :]}
            if not targets:
                continue
            reach = _witness_distances(nbrs, v, x, max(targets.values()))
            for w, via in targets.items():
                if reach.get(w, INF) > via:
                    added.append((v, w, via))
        for v in around:
            del nbrs[v][x]
        for v, w, via in added:
            nbrs[v][w] = nbrs[w][v] = via
            key = (min(v, w), max(v, w))
            weights[key] = via
            if not g.has_edge(v, w):
                shortcuts.add(key)
    rank = order.rank
    up: list[list[int]] = [[] for _ in range(g.n)]
    down: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in weights:
        lo, hi = (u, v) if rank[u] < rank[v] else (v, u)
        up[lo].append(hi)
        down[hi].append(lo)
    return CHGraph(
        g, order, weights, frozenset(shortcuts),
        tuple(tuple(sorted(a)) for a in up), tuple(tuple(sorted(a)) for a in down),
    )


@dataclass(frozen=True)
class SearchSpaces:
    sets: tuple[frozenset[int], ...]
    s_avg: Fraction
    s_max: int


def ch_search_spaces(ch: CHGraph) -> SearchSpaces:
    ss: list[frozenset[int]] = [frozenset()] * ch.graph.n
    for v in reversed(ch.order.vertices):
        acc = {v}
        for w in ch.up[v]:
            acc |= ss[w]
        ss[v] = frozenset(acc)
    sizes = [len(s) for s in ss]
    avg = Fraction(sum(sizes), len(sizes)) if sizes else Fraction(0)
    return SearchSpaces(tuple(ss), avg, max(sizes, default=0))


def canonical_hhl(g: Graph, m: Metric, order: Order) -> LabelSet:
    """``u`` is a hub of ``v`` iff no shortest v-u path visits a rank above ``u``.

    Per source, the maximum rank over all shortest paths to each vertex is
    propagated along the shortest-path DAG in distance order.
    """
    _require_positive(g, m)
    rank = order.rank
    hubs: list[list[int]] = [[] for _ in range(g.n)]
    for v in range(g.n):
        dist = dijkstra(g, m, v)
        reached = sorted((d, x) for x, d in enumerate(dist) if d < INF)
        top = {v: rank[v]}
        for d, y in reached:
            if y == v:
                continue
            best = rank[y]
            for p in g.adj[y]:
                if dist[p] < INF and dist[p] + m(p, y) == d:
                    best = max(best, top[p])
            top[y] = best
        hubs[v] = sorted(u for u, r in top.items() if r == rank[u])
    return LabelSet(tuple(tuple(h) for h in hubs), None, order)


def verify_metric_cover(g: Graph, m: Metric, labels: LabelSet, dist: list[list[int]] | None = None) -> CoverReport:
    """Every reachable pair ``s != t`` shares a hub on one of its shortest paths.

    ``s == t`` is answered as 0 without labels, so labels need not hold their
    own vertex here.
    """
    if dist is None:
        dist = all_pairs(g, m)
    sets = labels.hub_sets
    for s in range(g.n):
        for t in range(s + 1, g.n):
            target = dist[s][t]
            if target >= INF:
                continue
            if not any(dist[s][h] + dist[h][t] == target for h in sets[s] & sets[t]):
                return CoverReport(False, (s, t))
    return CoverReport(True)


@dataclass(frozen=True)
class GapRow:
    k: int
    n: int
    l_avg: Fraction
    s_avg: Fraction
    cover_ok: bool

    @property
    def ratio(self) -> float:
        return float(self.s_avg) / math.sqrt(self.n)


def gap_experiment(k_values: Iterable[int], order_fn: Callable[[Graph], Order] | None = None) -> list[GapRow]:
    """Explicit constant-size labels versus CH search spaces on the star-clique family."""
    order_fn = order_fn or min_degree_order
    rows = []
    for k in k_values:
        if not 1 <= k <= GAP_K_LIMIT:
            raise ValueError(f"k must lie in 1..{GAP_K_LIMIT}, got {k}")
        g, m, labels = gen_star_clique(k)
        l_avg = label_stats(labels)[0]
        cover = verify_metric_cover(g, m, labels)
        ss = ch_search_spaces(build_weighted_ch(g, m, order_fn(g)))
        rows.append(GapRow(k, g.n, l_avg, ss.s_avg, cover.ok))
    return rows


def gap_table(rows: list[GapRow]) -> str:
    lines = ["k\tn\tl_avg\ts_avg\tratio"]
    for r in rows:
        lines.append(f"{r.k}\t{r.n}\t{float(r.l_avg):.4f}\t{float(r.s_avg):.4f}\t{r.ratio:.4f}")
    return "\n".join(lines) + "\n"
