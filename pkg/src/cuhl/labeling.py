"""Customizable hub labels: canonical construction, inversion, cover checks."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .graph import Graph, Order
from .hierarchy import ChordalSupergraph

OPTIMAL_LIMIT = 8


@dataclass(frozen=True)
class LabelSet:
    """Per-vertex hub arrays sorted by vertex id.

    ``up_flags[v][i]`` marks ``hubs[v][i]`` as an upward supergraph neighbour
    of ``v``; ``order`` is set when the labels are known to be hierarchical.
    """

    hubs: tuple[tuple[int, ...], ...]
    up_flags: tuple[tuple[bool, ...], ...] | None = None
    order: Order | None = None

    @classmethod
    def from_lists(cls, hubs: Iterable[Iterable[int]], up_flags=None, order: Order | None = None) -> LabelSet:
        hubs = tuple(tuple(sorted(set(h))) for h in hubs)
        if up_flags is not None:
            up_flags = tuple(tuple(f) for f in up_flags)
        return cls(hubs, up_flags, order)

    @property
    def n(self) -> int:
        return len(self.hubs)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.hubs[v]

    @cached_property
    def hub_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(h) for h in self.hubs)

    def contains(self, v: int, u: int) -> bool:
        h = self.hubs[v]
        i = bisect_left(h, u)
        return i < len(h) and h[i] == u

    def sizes(self) -> list[int]:
        return [len(h) for h in self.hubs]

    @property
    def total(self) -> int:
        return sum(len(h) for h in self.hubs)

    def up_neighbors(self, v: int) -> tuple[int, ...]:
        if self.up_flags is None:
            raise ValueError("labels carry no upward-neighbour flags")
        return tuple(u for u, f in zip(self.hubs[v], self.up_flags[v]) if f)

    def same_hubs(self, other: LabelSet) -> bool:
        return self.hubs == other.hubs

    def without(self, v: int, u: int) -> LabelSet:
        """Copy with hub ``u`` removed from ``L(v)`` (flags and order dropped)."""
        hubs = list(self.hubs)
        hubs[v] = tuple(x for x in hubs[v] if x != u)
        return LabelSet(tuple(hubs))

    def validate(self) -> None:
        for v, h in enumerate(self.hubs):
            if list(h) != sorted(set(h)):
                raise ValueError(f"hubs of {v} are not sorted and unique")
            if not self.contains(v, v):
                raise ValueError(f"vertex {v} is missing from its own label")
            if self.order is not None:
                rv = self.order.rank[v]
                if any(self.order.rank[u] < rv for u in h):
                    raise ValueError(f"label of {v} holds a lower-ranked hub")


@dataclass(frozen=True)
class InverseLabels:
    members: tuple[tuple[int, ...], ...]

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.members[v]


@dataclass(frozen=True)
class CoverReport:
    ok: bool
    failing_pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def build_canonical_hcuhl(h: ChordalSupergraph) -> LabelSet:
    """Labels equal to the upward search spaces of the supergraph.

    Computed top-down by rank: ``SS(v) = {v} | union of SS(w) for w in up(v)``.
    """
    ss: list[frozenset[int]] = [frozenset()] * h.n
    for v in reversed(h.order.vertices):
        acc = {v}
        for w in h.up[v]:
            acc |= ss[w]
        ss[v] = frozenset(acc)
    hubs = []
    flags = []
    for v in range(h.n):
        hv = tuple(sorted(ss[v]))
        up = set(h.up[v])
        hubs.append(hv)
        flags.append(tuple(u in up for u in hv))
    return LabelSet(tuple(hubs), tuple(flags), h.order)


def brute_force_canonical_labels(g: Graph, order: Order) -> LabelSet:
    """``u`` is a hub of every vertex in its component of ``g[rank <= rank(u)]``."""
    rank = order.rank
    hubs: list[list[int]] = [[] for _ in range(g.n)]
    for u in range(g.n):
        ru = rank[u]
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y not in seen and rank[y] <= ru:
                    seen.add(y)
                    stack.append(y)
        for v in seen:
            hubs[v].append(u)
    return LabelSet(tuple(tuple(sorted(h)) for h in hubs), None, order)


def build_inverse_labels(labels: LabelSet) -> InverseLabels:
    inv: list[list[int]] = [[] for _ in range(labels.n)]
    for v, h in enumerate(labels.hubs):
        for u in h:
            inv[u].append(v)
    return InverseLabels(tuple(tuple(x) for x in inv))


def label_stats(labels: LabelSet) -> tuple[Fraction, int, int]:
    """``(average, maximum, total)`` label size."""
    sizes = labels.sizes()
    total = sum(sizes)
    if not sizes:
        return Fraction(0), 0, 0
    return Fraction(total, len(sizes)), max(sizes), total


def _separated(g: Graph, s: int, t: int, blocked: frozenset[int] | set[int]) -> bool:
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y == t:
                return False
            if y not in seen and y not in blocked:
                seen.add(y)
                stack.append(y)
    return True


def verify_customizable_cover(g: Graph, labels: LabelSet) -> CoverReport:
    """Check that every s-t path meets ``L(s) & L(t)``, for all pairs ``s <= t``."""
    sets = labels.hub_sets
    for s in range(g.n):
        for t in range(s, g.n):
            common = sets[s] & sets[t]
            if s in common or t in common:
                continue
            if s == t or not _separated(g, s, t, common):
                return CoverReport(False, (s, t))
    return CoverReport(True)


def _component_size(nbr: Sequence[int], alive: int, start: int) -> int:
    comp = frontier = 1 << start
    while frontier:
        bit = frontier & -frontier
        frontier ^= bit
        new = nbr[bit.bit_length() - 1] & alive & ~comp
        comp |= new
        frontier |= new
    return bin(comp).count("1")


def canonical_total(g: Graph, order: Order) -> int:
    """Total canonical label size: sum over u of its component in ``g[rank <= rank(u)]``."""
    nbr = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    alive = 0
    total = 0
    for u in order.vertices:
        alive |= 1 << u
        total += _component_size(nbr, alive, u)
    return total


def optimal_hcuhl_bruteforce(g: Graph) -> tuple[Order, Fraction]:
    """Minimum-average canonical labeling over all ``n!`` orders.

    Orders are enumerated depth-first so that prefixes share their partial
    label totals; the first minimiser in lexicographic order is returned.
    """
    n = g.n
    if n > OPTIMAL_LIMIT:
        raise ValueError(f"exhaustive order search limited to n <= {OPTIMAL_LIMIT}")
    if n == 0:
        return Order.identity(0), Fraction(0)
    nbr = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    step_cost: dict[tuple[int, int], int] = {}
    best_cost = None
    best_seq: list[int] = []
    seq: list[int] = []

    def dfs(prefix: int, cost: int) -> None:
        nonlocal best_cost, best_seq
        if len(seq) == n:
            if best_cost is None or cost < best_cost:
                best_cost, best_seq = cost, list(seq)
            return
        for u in range(n):
            bit = 1 << u
            if prefix & bit:
                continue
            alive = prefix | bit
            key = (alive, u)
            c = step_cost.get(key)
            if c is None:
                c = step_cost[key] = _component_size(nbr, alive, u)
            seq.append(u)
            dfs(alive, cost + c)
            seq.pop()

    dfs(0, 0)
    return Order.from_sequence(best_seq), Fraction(best_cost, n)
