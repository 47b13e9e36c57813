"""Plain-text artifact formats. Every file uses 1-based vertex ids.

Lines starting with ``c`` are comments everywhere.
"""

from __future__ import annotations

from typing import Iterator

from .customize_hier import CustomizedLabels
from .graph import INF, Graph, Metric, Order, ParseError
from .labeling import LabelSet


def _records(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line.split()


def _ints(tokens: list[str], lineno: int, count: int | None = None) -> list[int]:
    if count is not None and len(tokens) != count:
        raise ParseError(f"expected {count} fields, found {len(tokens)}", lineno)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer field in {' '.join(tokens)!r}", lineno) from None


def _vertex(x: int, n: int, lineno: int) -> int:
    if not 1 <= x <= n:
        raise ParseError(f"vertex id {x} out of range 1..{n}", lineno)
    return x - 1


# -------------------------------------------------------------------- graph


def parse_graph(text: str) -> Graph:
    """Edge list ("n m" header, then m lines "u v") or DIMACS ``.gr``."""
    records = list(_records(text))
    if records and records[0][1][0] == "p":
        return parse_dimacs(text)[0]
    if not records:
        raise ParseError("empty graph file")
    lineno, head = records[0]
    n, m = _ints(head, lineno, 2)
    if n < 0 or m < 0:
        raise ParseError("negative header value", lineno)
    body = records[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else lineno)
        raise ParseError(f"header promises {m} edges, found {len(body)}", where)
    edges = []
    for lineno, tokens in body:
        u, v = (_vertex(x, n, lineno) for x in _ints(tokens, lineno, 2))
        if u == v:
            raise ParseError(f"self-loop at vertex {u + 1}", lineno)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> tuple[Graph, Metric]:
    """DIMACS shortest-path format; both arc directions collapse to one edge.

    Asymmetric arc pairs keep the smaller length.
    """
    n = None
    weights: dict[tuple[int, int], int] = {}
    for lineno, tokens in _records(text):
        if tokens[0] == "p":
            if n is not None or len(tokens) != 4 or tokens[1] != "sp":
                raise ParseError("bad problem line, expected 'p sp n m'", lineno)
            n = _ints(tokens[2:3], lineno)[0]
        elif tokens[0] == "a":
            if n is None:
                raise ParseError("arc before problem line", lineno)
            u, v, w = _ints(tokens[1:], lineno, 3)
            u, v = _vertex(u, n, lineno), _vertex(v, n, lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u + 1}", lineno)
            if w < 0:
                raise ParseError("negative arc length", lineno)
            key = (min(u, v), max(u, v))
            weights[key] = min(w, weights.get(key, w))
        else:
            raise ParseError(f"unknown record type {tokens[0]!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    g = Graph.from_edges(n, weights)
    return g, Metric.for_graph(g, weights)


def parse_metric(text: str, g: Graph) -> Metric:
    weights: dict[tuple[int, int], int] = {}
    for lineno, tokens in _records(text):
        u, v, w = _ints(tokens, lineno, 3)
        u, v = _vertex(u, g.n, lineno), _vertex(v, g.n, lineno)
        if not g.has_edge(u, v):
            raise ParseError(f"{u + 1} {v + 1} is not an edge of the graph", lineno)
        if w < 0 or w >= INF:
            raise ParseError(f"weight {w} outside 0..{INF - 1}", lineno)
        key = (min(u, v), max(u, v))
        if key in weights:
            raise ParseError(f"edge {u + 1} {v + 1} weighted twice", lineno)
        weights[key] = w
    missing = [e for e in g.edges if e not in weights]
    if missing:
        u, v = missing[0]
        raise ParseError(f"edge {u + 1} {v + 1} has no weight")
    return Metric(weights)


def format_metric(g: Graph, m: Metric) -> str:
    return "".join(f"{u + 1} {v + 1} {m(u, v)}\n" for u, v in g.edges)


# -------------------------------------------------------------------- order


def parse_order(text: str, n: int | None = None) -> Order:
    seq = []
    for lineno, tokens in _records(text):
        (x,) = _ints(tokens, lineno, 1)
        if x < 1:
            raise ParseError(f"vertex id {x} out of range", lineno)
        seq.append((x - 1, lineno))
    if n is not None and len(seq) != n:
        raise ParseError(f"order lists {len(seq)} vertices, graph has {n}")
    seen = set()
    for v, lineno in seq:
        if v >= len(seq):
            raise ParseError(f"vertex id {v + 1} out of range 1..{len(seq)}", lineno)
        if v in seen:
            raise ParseError(f"vertex {v + 1} ranked twice", lineno)
        seen.add(v)
    return Order.from_sequence(v for v, _ in seq)


def format_order(order: Order) -> str:
    return "".join(f"{v + 1}\n" for v in order.vertices)


# ------------------------------------------------------------------- labels


def format_labels(labels: LabelSet) -> str:
    lines = []
    for v, hubs in enumerate(labels.hubs):
        flags = labels.up_flags[v] if labels.up_flags is not None else (False,) * len(hubs)
        items = [f"{u + 1}^" if f else str(u + 1) for u, f in zip(hubs, flags)]
        lines.append(" ".join([str(v + 1), str(len(hubs)), *items]))
    return "\n".join(lines) + "\n"


def _label_lines(text: str):
    rows = list(_records(text))
    n = len(rows)
    for expected, (lineno, tokens) in enumerate(rows):
        head = _ints(tokens[:2], lineno, 2)
        if head[0] != expected + 1:
            raise ParseError(f"expected label of vertex {expected + 1}, found {head[0]}", lineno)
        if len(tokens) - 2 != head[1]:
            raise ParseError(f"label announces {head[1]} hubs, lists {len(tokens) - 2}", lineno)
        yield n, lineno, tokens[2:]


def parse_labels(text: str, order: Order | None = None) -> LabelSet:
    hubs, flags = [], []
    has_flags = False
    for n, lineno, items in _label_lines(text):
        hv, fv = [], []
        for item in items:
            flagged = item.endswith("^")
            has_flags |= flagged
            (u,) = _ints([item.rstrip("^")], lineno)
            hv.append(_vertex(u, n, lineno))
            fv.append(flagged)
        if hv != sorted(set(hv)):
            raise ParseError("hubs must be strictly ascending", lineno)
        hubs.append(tuple(hv))
        flags.append(tuple(fv))
    return LabelSet(tuple(hubs), tuple(flags) if has_flags else None, order)


def _fmt_dist(d: int) -> str:
    return "inf" if d >= INF else str(d)


def format_customized(c: CustomizedLabels, stats_line: str | None = None) -> str:
    lines = [f"c {stats_line}"] if stats_line else []
    for v, hubs in enumerate(c.labels.hubs):
        items = [f"{u + 1}:{_fmt_dist(d)}" for u, d in zip(hubs, c.dist[v])]
        lines.append(" ".join([str(v + 1), str(len(hubs)), *items]))
    return "\n".join(lines) + "\n"


def parse_customized(text: str) -> CustomizedLabels:
    hubs, dists = [], []
    for n, lineno, items in _label_lines(text):
        hv, dv = [], []
        for item in items:
            hub, sep, dist = item.partition(":")
            if not sep:
                raise ParseError(f"entry {item!r} lacks ':distance'", lineno)
            (u,) = _ints([hub], lineno)
            hv.append(_vertex(u, n, lineno))
            dv.append(INF if dist == "inf" else _ints([dist], lineno)[0])
        if hv != sorted(set(hv)):
            raise ParseError("hubs must be strictly ascending", lineno)
        hubs.append(tuple(hv))
        dists.append(tuple(dv))
    return CustomizedLabels(LabelSet(tuple(hubs)), tuple(dists))


# ------------------------------------------------------------------ queries


def parse_pairs(text: str, n: int) -> list[tuple[int, int]]:
    out = []
    for lineno, tokens in _records(text):
        s, t = _ints(tokens, lineno, 2)
        out.append((_vertex(s, n, lineno), _vertex(t, n, lineno)))
    return out


def format_answer(s: int, t: int, dist: int, hub: int | None) -> str:
    if hub is None:
        return f"{s + 1} {t + 1} inf -"
    return f"{s + 1} {t + 1} {dist} {hub + 1}"
