"""Metric-independent contraction hierarchy (chordal supergraph) for an order."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, Order


@dataclass(frozen=True)
class ChordalSupergraph:
    """``g`` plus fill-in shortcuts; ``up``/``down`` lists are sorted by id."""

    graph: Graph
    order: Order
    shortcuts: frozenset[tuple[int, int]]
    up: tuple[tuple[int, ...], ...]
    down: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.graph.n

    def has_edge(self, u: int, v: int) -> bool:
        if self.order.rank[u] > self.order.rank[v]:
            u, v = v, u
        return v in self.up[u]

    def upward_edges(self):
        """Every supergraph edge as ``(lower, higher)``, by rank of the lower end."""
        for v in self.order.vertices:
            for u in self.up[v]:
                yield v, u


def build_cch(g: Graph, order: Order) -> ChordalSupergraph:
    """Elimination game by ascending rank.

    Eliminating ``v`` makes its higher-ranked neighbours a clique. Only the
    lowest of them needs the others added explicitly: the rest follows when
    that vertex is eliminated in turn.
    """
    if order.n != g.n:
        raise ValueError("order size does not match the graph")
    rank = order.rank
    upper = [{u for u in g.adj[v] if rank[u] > rank[v]} for v in range(g.n)]
    for v in order.vertices:
        if not upper[v]:
            continue
        parent = min(upper[v], key=rank.__getitem__)
        upper[parent] |= upper[v] - {parent}
    down: list[list[int]] = [[] for _ in range(g.n)]
    shortcuts = set()
    for v in range(g.n):
        for u in upper[v]:
            down[u].append(v)
            if not g.has_edge(u, v):
                shortcuts.add((min(u, v), max(u, v)))
    return ChordalSupergraph(
        graph=g,
        order=order,
        shortcuts=frozenset(shortcuts),
        up=tuple(tuple(sorted(s)) for s in upper),
        down=tuple(tuple(sorted(d)) for d in down),
    )


def _intersect(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            out.append(a[i])
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return out


def lower_triangles(h: ChordalSupergraph, v: int, u: int) -> list[int]:
    """All ``w`` below both ends of the supergraph edge ``{v, u}``."""
    if not h.has_edge(v, u):
        raise ValueError(f"{{{v}, {u}}} is not an edge of the supergraph")
    return _intersect(h.down[v], h.down[u])


def dump_cch(h: ChordalSupergraph) -> str:
    lines = []
    for v in range(h.n):
        up = ", ".join(str(u + 1) for u in h.up[v])
        down = ", ".join(str(u + 1) for u in h.down[v])
        lines.append(f"{v + 1} : up = [{up}] down = [{down}]")
    lines.append(f"m_plus = {len(h.shortcuts)}")
    return "\n".join(lines) + "\n"
