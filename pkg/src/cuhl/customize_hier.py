"""Metric customization for hierarchical labels built on a chordal supergraph."""

from __future__ import annotations

import heapq
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .graph import INF, Metric, sat_add
from .hierarchy import ChordalSupergraph, lower_triangles
from .labeling import LabelSet, build_inverse_labels
from .query import hl_query


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass
class EdgeDistances:
    """Customized length of every supergraph edge (original or shortcut)."""

    dist: dict[tuple[int, int], int]

    def __getitem__(self, edge: tuple[int, int]) -> int:
        return self.dist[_key(*edge)]

    def __setitem__(self, edge: tuple[int, int], value: int) -> None:
        self.dist[_key(*edge)] = value

    def copy(self) -> EdgeDistances:
        return EdgeDistances(dict(self.dist))


@dataclass(frozen=True)
class CustomizedLabels:
    """Labels plus a distance entry per hub, aligned with ``labels.hubs``."""

    labels: LabelSet
    dist: tuple[tuple[int, ...], ...]

    @classmethod
    def from_dicts(cls, labels: LabelSet, tables) -> CustomizedLabels:
        return cls(labels, tuple(tuple(tables[v][u] for u in h) for v, h in enumerate(labels.hubs)))

    @property
    def n(self) -> int:
        return self.labels.n

    def entry(self, v: int, u: int) -> int:
        h = self.labels.hubs[v]
        i = bisect_left(h, u)
        if i == len(h) or h[i] != u:
            raise KeyError(f"{u} is not a hub of {v}")
        return self.dist[v][i]

    def entries(self):
        for v, h in enumerate(self.labels.hubs):
            for u, d in zip(h, self.dist[v]):
                yield v, u, d


def relax_triangles(h: ChordalSupergraph, ed: EdgeDistances) -> EdgeDistances:
    """Lower-triangle pass in place: ``d(v,u) <- min(d(v,u), d(w,v) + d(w,u))``.

    Edges are swept by the rank of their lower endpoint, so both edges of a
    lower triangle are final before the edge they bound.
    """
    for v, u in h.upward_edges():
        best = ed[v, u]
        for w in lower_triangles(h, v, u):
            cand = sat_add(ed[w, v], ed[w, u])
            if cand < best:
                best = cand
        ed[v, u] = best
    return ed


def customize_edges(h: ChordalSupergraph, m: Metric) -> EdgeDistances:
    ed = EdgeDistances({})
    for v, u in h.upward_edges():
        ed[v, u] = m(v, u) if h.graph.has_edge(v, u) else INF
    return relax_triangles(h, ed)


def _upward_dijkstra(h: ChordalSupergraph, ed: EdgeDistances, v: int) -> dict[int, int]:
    dist = {v: 0}
    heap = [(0, v)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y in h.up[x]:
            nd = sat_add(d, ed[x, y])
            if y not in dist or nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def customize_upward_dijkstra(h: ChordalSupergraph, labels: LabelSet, ed: EdgeDistances, workers: int = 1) -> CustomizedLabels:
    """One Dijkstra per vertex that only follows edges to higher ranks."""
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            tables = list(pool.map(lambda v: _upward_dijkstra(h, ed, v), range(h.n)))
    else:
        tables = [_upward_dijkstra(h, ed, v) for v in range(h.n)]
    return CustomizedLabels.from_dicts(labels, tables)


def customize_hybrid(h: ChordalSupergraph, labels: LabelSet, ed: EdgeDistances, cutoff: int) -> CustomizedLabels:
    """Upward Dijkstra for ranks above ``cutoff``, top-down propagation below."""
    rank = h.order.rank
    tables: list[dict[int, int]] = [{} for _ in range(h.n)]
    for v in range(h.n):
        if rank[v] > cutoff:
            tables[v] = _upward_dijkstra(h, ed, v)
        else:
            t = dict.fromkeys(labels.hubs[v], INF)
            for w in h.up[v]:
                t[w] = ed[v, w]
            t[v] = 0
            tables[v] = t
    inv = build_inverse_labels(labels)
    for u in reversed(h.order.vertices):
        # Higher vertices first, so every d_w[u] read below is already final.
        for v in sorted(inv[u], key=rank.__getitem__, reverse=True):
            if rank[v] > cutoff or v == u:
                continue
            tv = tables[v]
            best = tv[u]
            for w in h.up[v]:
                tw = tables[w]
                if u in tw:
                    cand = sat_add(tv[w], tw[u])
                    if cand < best:
                        best = cand
            tv[u] = best
    return CustomizedLabels.from_dicts(labels, tables)


def customize_top_down(h: ChordalSupergraph, labels: LabelSet, ed: EdgeDistances) -> CustomizedLabels:
    return customize_hybrid(h, labels, ed, cutoff=h.n)


@dataclass(frozen=True)
class ComparisonReport:
    ok: bool
    mismatch: tuple[int, int, int, int] | None = None  # s, t, upward, top-down


def compare_customizations(h: ChordalSupergraph, labels: LabelSet, m: Metric) -> ComparisonReport:
    """Run both hierarchical engines and compare every query answer."""
    ed = customize_edges(h, m)
    a = customize_upward_dijkstra(h, labels, ed)
    b = customize_top_down(h, labels, ed)
    for s in range(h.n):
        for t in range(h.n):
            da, db = hl_query(a, s, t).distance, hl_query(b, s, t).distance
            if da != db:
                return ComparisonReport(False, (s, t, da, db))
    return ComparisonReport(True)
