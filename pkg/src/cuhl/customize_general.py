"""Queue-driven customization for arbitrary (non-hierarchical) customizable labels."""

from __future__ import annotations

import heapq
from collections import Counter, deque
from dataclasses import dataclass
from typing import Callable

from .customize_hier import CustomizedLabels
from .graph import INF, Graph, Metric
from .labeling import InverseLabels, LabelSet

DequeueHook = Callable[[int, int, int, int], None]


class UpdateQueue:
    """FIFO of label entries ``(x, y)``; a pair is never queued twice at once."""

    def __init__(self):
        self._items: deque[tuple[int, int]] = deque()
        self._queued: set[tuple[int, int]] = set()
        self.dequeues: Counter[tuple[int, int]] = Counter()

    def push(self, pair: tuple[int, int]) -> bool:
        if pair in self._queued:
            return False
        self._queued.add(pair)
        self._items.append(pair)
        return True

    def pop(self) -> tuple[tuple[int, int], int]:
        """Next pair and how many times it has now been dequeued."""
        pair = self._items.popleft()
        self._queued.discard(pair)
        self.dequeues[pair] += 1
        return pair, self.dequeues[pair]

    def __len__(self) -> int:
        return len(self._items)


@dataclass(frozen=True)
class QueueStats:
    dequeues: int
    max_per_pair: int
    per_pair: dict[tuple[int, int], int]


def run_queue_customization(
    g: Graph,
    labels: LabelSet,
    inv: InverseLabels,
    m: Metric,
    on_dequeue: DequeueHook | None = None,
) -> tuple[CustomizedLabels, QueueStats]:
    """Propagate label-entry decreases until no entry changes.

    ``on_dequeue(x, y, k, d)`` is called when ``(x, y)`` leaves the queue for
    the k-th time carrying value ``d``.
    """
    adj = g.adj
    d: list[dict[int, int]] = []
    for v, hubs in enumerate(labels.hubs):
        table = dict.fromkeys(hubs, INF)
        for u in hubs:
            if u == v:
                table[u] = 0
            elif g.has_edge(u, v):
                table[u] = m(u, v)
        d.append(table)
    inv_sets = [frozenset(z) for z in inv.members]

    q = UpdateQueue()
    for x in range(g.n):
        for y in adj[x]:
            if y in d[x]:
                q.push((x, y))

    def relax(v: int, u: int, cand: int) -> None:
        if cand < d[v][u]:
            d[v][u] = cand
            if v != u:
                q.push((v, u))

    while len(q):
        (x, y), k = q.pop()
        val = d[x][y]
        if on_dequeue is not None:
            on_dequeue(x, y, k, val)
        if val >= INF:
            continue
        # (a) x is the next vertex after v on a path ending at hub y
        for v in adj[x]:
            if y in d[v]:
                relax(v, y, m(v, x) + val)
        # (b) y is the next vertex after v on a path ending at hub x
        for v in adj[y]:
            if x in d[v]:
                relax(v, x, m(v, y) + val)
        # (c1) y is a shared hub; x follows v on the path towards u
        inv_y = inv_sets[y]
        for v in adj[x]:
            base = m(v, x) + val
            dv = d[v]
            for u in inv_y.intersection(dv):
                duy = d[u][y]
                if duy < INF:
                    relax(v, u, base + duy)
        # (c2) y is a shared hub; x is the far endpoint, w follows v
        if len(inv.members[x]) < len(inv.members[y]):
            for v in inv.members[x]:
                for w in adj[v]:
                    if w in inv_y:
                        dwy = d[w][y]
                        if dwy < INF:
                            relax(v, x, val + dwy + m(v, w))
        else:
            for w in inv.members[y]:
                dwy = d[w][y]
                if dwy >= INF:
                    continue
                for v in adj[w]:
                    if x in d[v]:
                        relax(v, x, val + dwy + m(v, w))

    stats = QueueStats(
        dequeues=sum(q.dequeues.values()),
        max_per_pair=max(q.dequeues.values(), default=0),
        per_pair=dict(q.dequeues),
    )
    return CustomizedLabels.from_dicts(labels, d), stats


def customize_queue(g: Graph, labels: LabelSet, inv: InverseLabels, m: Metric) -> CustomizedLabels:
    return run_queue_customization(g, labels, inv, m)[0]


def hop_diameter(g: Graph, m: Metric) -> int:
    """Largest hop count of a fewest-hop shortest path, over reachable pairs."""
    best = 0
    for s in range(g.n):
        dist = {s: (0, 0)}
        heap = [(0, 0, s)]
        while heap:
            dd, hops, x = heapq.heappop(heap)
            if (dd, hops) > dist[x]:
                continue
            best = max(best, hops)
            for y in g.adj[x]:
                cand = (dd + m(x, y), hops + 1)
                if y not in dist or cand < dist[y]:
                    dist[y] = cand
                    heapq.heappush(heap, (cand[0], cand[1], y))
    return best
