"""Balanced separators, separator decompositions and nested dissection orders."""

from __future__ import annotations

import heapq
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .graph import Graph, Order, gen_grid

log = logging.getLogger(__name__)

DEFAULT_ALPHA = Fraction(2, 3)
EXACT_LIMIT = 20
MODES = ("heuristic", "grid-aware", "exact")


def as_ratio(alpha) -> Fraction:
    """Exact ratio from an int, Fraction, decimal string or float.

    Floats are snapped to the nearest fraction with denominator <= 10**6, so
    ``2/3`` typed as a float still means two thirds.
    """
    if isinstance(alpha, Fraction):
        return alpha
    if isinstance(alpha, float):
        return Fraction(alpha).limit_denominator(10**6)
    return Fraction(alpha)


def _check_alpha(alpha) -> Fraction:
    a = as_ratio(alpha)
    if a < Fraction(1, 2):
        raise ValueError(f"alpha must be at least 1/2, got {a}")
    if a >= 1:
        raise ValueError(f"alpha must be below 1, got {a}")
    return a


@dataclass(frozen=True)
class SeparatorReport:
    separator: tuple[int, ...]
    alpha: Fraction
    n: int
    largest_component: int

    @property
    def balanced(self) -> bool:
        return self.largest_component <= self.alpha * self.n


@dataclass
class SeparatorNode:
    vertices: tuple[int, ...]
    size: int  # vertex count of the subgraph this node separates
    children: list[SeparatorNode] = field(default_factory=list)

    def walk(self) -> Iterator[SeparatorNode]:
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass
class SeparatorTree:
    """Separator decomposition; a forest when the input graph is disconnected."""

    roots: list[SeparatorNode]
    alpha: Fraction

    def nodes(self) -> Iterator[SeparatorNode]:
        for r in self.roots:
            yield from r.walk()

    def height(self) -> int:
        def h(node: SeparatorNode) -> int:
            return 1 + max((h(c) for c in node.children), default=0)

        return max((h(r) for r in self.roots), default=0)

    def dump(self) -> str:
        lines = []

        def emit(node: SeparatorNode, depth: int) -> None:
            ids = " ".join(str(v + 1) for v in node.vertices)
            lines.append(f"{'  ' * depth}S = {{{ids}}} (n'={node.size})")
            for c in node.children:
                emit(c, depth + 1)

        for r in self.roots:
            emit(r, 0)
        return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ helpers


def _components(g: Graph, verts: Iterable[int], removed: set[int] = frozenset()) -> list[list[int]]:
    """Components of ``g[verts - removed]``, sorted, ordered by smallest vertex."""
    alive = set(verts) - set(removed)
    out = []
    for s in sorted(alive):
        if s not in alive:
            continue
        alive.discard(s)
        comp, stack = [s], [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y in alive:
                    alive.discard(y)
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def _largest_remaining(g: Graph, verts: Iterable[int], sep: Iterable[int]) -> int:
    return max((len(c) for c in _components(g, verts, set(sep))), default=0)


def _is_balanced(largest: int, n: int, alpha: Fraction) -> bool:
    return largest * alpha.denominator <= alpha.numerator * n


class _MaskGraph:
    """Bitmask view of ``g[verts]`` for exhaustive separator search."""

    def __init__(self, g: Graph, verts: list[int]):
        self.verts = sorted(verts)
        index = {v: i for i, v in enumerate(self.verts)}
        self.nbr = [0] * len(self.verts)
        for i, v in enumerate(self.verts):
            for w in g.adj[v]:
                j = index.get(w)
                if j is not None:
                    self.nbr[i] |= 1 << j

    def largest(self, alive: int, cap: int) -> int:
        # Stops early once a component exceeds ``cap``.
        best = 0
        nbr = self.nbr
        while alive:
            low = alive & -alive
            comp = frontier = low
            while frontier:
                bit = frontier & -frontier
                frontier ^= bit
                new = nbr[bit.bit_length() - 1] & alive & ~comp
                comp |= new
                frontier |= new
            alive &= ~comp
            size = bin(comp).count("1")
            if size > best:
                best = size
                if best > cap:
                    return best
        return best


def _exact_search(g: Graph, verts: list[int], alpha: Fraction, first_only: bool):
    if len(verts) > EXACT_LIMIT:
        raise ValueError(f"exact separator limited to n <= {EXACT_LIMIT}")
    mg = _MaskGraph(g, verts)
    k = len(mg.verts)
    full = (1 << k) - 1
    cap = (alpha.numerator * k) // alpha.denominator
    for size in range(k + 1):
        best = None
        for combo in itertools.combinations(range(k), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            largest = mg.largest(full & ~mask, cap)
            if largest > cap:
                continue
            if first_only:
                return tuple(mg.verts[i] for i in combo), largest
            if best is None or largest < best[1]:
                best = (combo, largest)
        if best is not None:
            return tuple(mg.verts[i] for i in best[0]), best[1]
    raise AssertionError("the full vertex set is always a balanced separator")


def _bfs_levels(g: Graph, alive: set[int], root: int) -> list[list[int]]:
    dist = {root: 0}
    levels = [[root]]
    q = deque([root])
    while q:
        x = q.popleft()
        for y in g.adj[x]:
            if y in alive and y not in dist:
                dist[y] = dist[x] + 1
                if dist[y] == len(levels):
                    levels.append([])
                levels[dist[y]].append(y)
                q.append(y)
    return levels


def _pseudo_peripheral(g: Graph, alive: set[int]) -> int:
    v = min(alive, key=lambda x: (g.degree(x), x))
    ecc = -1
    while True:
        levels = _bfs_levels(g, alive, v)
        if len(levels) - 1 <= ecc:
            return v
        ecc = len(levels) - 1
        v = min(levels[-1], key=lambda x: (g.degree(x), x))


def _shrink(g: Graph, verts: list[int], sep: set[int], alpha: Fraction) -> set[int]:
    """Drop separator vertices one at a time while balance survives."""
    n = len(verts)
    changed = True
    while changed:
        changed = False
        for s in sorted(sep):
            trial = sep - {s}
            if _is_balanced(_largest_remaining(g, verts, trial), n, alpha):
                sep = trial
                changed = True
    return sep


def _heuristic_separator(g: Graph, verts: list[int], alpha: Fraction) -> tuple[int, ...]:
    n = len(verts)
    alive = set(verts)
    start = _pseudo_peripheral(g, alive)
    far = _bfs_levels(g, alive, start)[-1]
    roots = [start] + [min(far, key=lambda x: (g.degree(x), x))]
    candidates: list[set[int]] = []
    for root in roots:
        for level in _bfs_levels(g, alive, root)[1:]:
            if _is_balanced(_largest_remaining(g, verts, level), n, alpha):
                candidates.append(set(level))
    if not candidates:
        candidates.append(alive - {min(alive)})
    best = None
    for cand in candidates:
        sep = _shrink(g, verts, cand, alpha)
        key = (len(sep), _largest_remaining(g, verts, sep), tuple(sorted(sep)))
        if best is None or key < best:
            best = key
    return best[2]


# ------------------------------------------------------------ grid awareness


def grid_shape(g: Graph) -> tuple[int, int] | None:
    """``(p, q)`` if ``g`` is exactly the row-major ``p x q`` grid, else None."""
    for p in range(1, g.n + 1):
        if g.n % p:
            continue
        q = g.n // p
        if g.m == 2 * p * q - p - q and gen_grid(p, q).edges == g.edges:
            return p, q
    return None


def _grid_separator(verts: list[int], coords: dict[int, tuple[int, int]]):
    rows = [coords[v][0] for v in verts]
    cols = [coords[v][1] for v in verts]
    r0, r1, c0, c1 = min(rows), max(rows), min(cols), max(cols)
    height, width = r1 - r0 + 1, c1 - c0 + 1
    if height * width != len(verts):
        return None
    if width >= height:
        mid = c0 + (width - 1) // 2
        return tuple(v for v in sorted(verts) if coords[v][1] == mid)
    mid = r0 + (height - 1) // 2
    return tuple(v for v in sorted(verts) if coords[v][0] == mid)


def _grid_coords(g: Graph):
    shape = grid_shape(g)
    if shape is None:
        return None
    q = shape[1]
    return {v: divmod(v, q) for v in range(g.n)}


# --------------------------------------------------------------- operations


def _separator(g, verts, alpha, mode, coords) -> tuple[int, ...]:
    if mode == "exact":
        return _exact_search(g, verts, alpha, first_only=False)[0]
    if mode == "grid-aware":
        if coords is not None:
            sep = _grid_separator(verts, coords)
            if sep is not None:
                return sep
        log.debug("grid-aware: %d vertices are not a grid rectangle", len(verts))
    elif mode != "heuristic":
        raise ValueError(f"unknown separator mode {mode!r}")
    return _heuristic_separator(g, verts, alpha)


def find_balanced_separator(g: Graph, alpha=DEFAULT_ALPHA, mode: str = "heuristic") -> SeparatorReport:
    """Balanced separator of a connected graph.

    ``exact`` returns a minimum-cardinality separator, preferring the best
    balance and then the lexicographically smallest vertex set.
    """
    a = _check_alpha(alpha)
    if mode not in MODES:
        raise ValueError(f"unknown separator mode {mode!r}")
    if g.n < 2:
        raise ValueError("separator needs at least two vertices")
    if not g.is_connected():
        raise ValueError("separator input must be connected")
    verts = list(range(g.n))
    coords = _grid_coords(g) if mode == "grid-aware" else None
    sep = _separator(g, verts, a, mode, coords)
    return SeparatorReport(tuple(sorted(sep)), a, g.n, _largest_remaining(g, verts, sep))


def exact_b_alpha(g: Graph, alpha=DEFAULT_ALPHA) -> int:
    """Minimum size of an alpha-balanced separator, by exhaustive search."""
    a = as_ratio(alpha)
    if g.n > EXACT_LIMIT:
        raise ValueError(f"exact separator limited to n <= {EXACT_LIMIT}")
    if g.n <= 1:
        return 0
    return len(_exact_search(g, list(range(g.n)), a, first_only=True)[0])


def build_separator_decomposition(g: Graph, alpha=DEFAULT_ALPHA, mode: str = "heuristic") -> SeparatorTree:
    a = _check_alpha(alpha)
    if mode not in MODES:
        raise ValueError(f"unknown separator mode {mode!r}")
    coords = _grid_coords(g) if mode == "grid-aware" else None

    def decompose(verts: list[int]) -> SeparatorNode:
        if len(verts) == 1:
            return SeparatorNode((verts[0],), 1)
        sep = _separator(g, verts, a, mode, coords)
        comps = _components(g, verts, set(sep))
        largest = max((len(c) for c in comps), default=0)
        if not _is_balanced(largest, len(verts), a):
            raise RuntimeError(
                f"separator of size {len(sep)} leaves a component of {largest} "
                f"> {a} * {len(verts)}"
            )
        node = SeparatorNode(tuple(sorted(sep)), len(verts))
        node.children = [decompose(c) for c in comps]
        return node

    return SeparatorTree([decompose(c) for c in g.components()], a)


def nested_dissection_order(tree: SeparatorTree, g: Graph) -> Order:
    """Post-order ranks: descendants first, each separator above its subtree.

    Inside a separator, vertices are ranked by descending degree, then id.
    """
    seq: list[int] = []

    def visit(node: SeparatorNode) -> None:
        for c in node.children:
            visit(c)
        seq.extend(sorted(node.vertices, key=lambda v: (-g.degree(v), v)))

    for r in tree.roots:
        visit(r)
    return Order.from_sequence(seq)


def nd_order(g: Graph, alpha=DEFAULT_ALPHA, mode: str = "heuristic") -> Order:
    return nested_dissection_order(build_separator_decomposition(g, alpha, mode), g)


def min_degree_order(g: Graph) -> Order:
    """Greedy minimum-degree elimination order (fill edges counted), id tie-break."""
    nbrs = [set(a) for a in g.adj]
    heap = [(len(nbrs[v]), v) for v in range(g.n)]
    heapq.heapify(heap)
    done = [False] * g.n
    seq = []
    while heap:
        d, v = heapq.heappop(heap)
        if done[v] or d != len(nbrs[v]):
            continue
        done[v] = True
        seq.append(v)
        rest = nbrs[v]
        for x in rest:
            nbrs[x].discard(v)
            nbrs[x] |= rest - {x}
        for x in rest:
            heapq.heappush(heap, (len(nbrs[x]), x))
    return Order.from_sequence(seq)
