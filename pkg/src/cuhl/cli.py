"""Command-line pipeline: gen -> order -> label -> customize -> query / verify."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import formats
from .bounds import check_lower_bounds, check_nd_approximation, grid_report
from .customize_general import hop_diameter, run_queue_customization
from .customize_hier import (
    customize_edges,
    customize_hybrid,
    customize_top_down,
    customize_upward_dijkstra,
)
from .graph import (
    Graph,
    ParseError,
    gen_clique_apex,
    gen_complete,
    gen_cycle,
    gen_grid,
    gen_path,
    gen_random,
    gen_random_metric,
    gen_star_clique,
    gen_weights_exponential,
    Metric,
)
from .hierarchy import build_cch, dump_cch
from .labeling import build_canonical_hcuhl, build_inverse_labels, label_stats, verify_customizable_cover
from .oracles import all_pairs, gap_experiment, gap_table
from .ordering import build_separator_decomposition, nested_dissection_order
from .query import hl_query

log = logging.getLogger("cuhl")

LOG_LEVELS = {"quiet": logging.WARNING, "info": logging.INFO, "trace": logging.DEBUG}
FAMILIES = ("grid", "random", "path", "cycle", "complete", "star-clique", "clique-apex")
HOP_STATS_LIMIT = 200


class VerificationFailed(Exception):
    pass


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_graph(path: str) -> Graph:
    return formats.parse_graph(_read(path))


def _load_order(path: str, g: Graph):
    return formats.parse_order(_read(path), g.n)


# ----------------------------------------------------------------- commands


def cmd_gen(args) -> None:
    metric = labels = None
    fam = args.family
    if fam == "grid":
        g = gen_grid(args.p, args.q or args.p)
    elif fam == "random":
        g = gen_random(args.n, args.m if args.m is not None else 2 * args.n, args.seed)
    elif fam == "path":
        g = gen_path(args.n)
    elif fam == "cycle":
        g = gen_cycle(args.n)
    elif fam == "complete":
        g = gen_complete(args.n)
    elif fam == "star-clique":
        g, metric, labels = gen_star_clique(args.k)
    else:
        g, metric, labels = gen_clique_apex(args.n)
    if args.weights == "unit":
        metric = Metric.uniform(g)
    elif args.weights == "random":
        metric = gen_random_metric(g, args.wmin, args.wmax, args.seed)
    elif args.weights == "exp":
        if not args.order:
            raise ValueError("--weights exp needs --order")
        metric = gen_weights_exponential(g, _load_order(args.order, g))
    _write(args.out, formats.format_graph(g))
    if args.metric_out:
        if metric is None:
            raise ValueError(f"family {fam} has no metric; pass --weights")
        _write(args.metric_out, formats.format_metric(g, metric))
    if args.labels_out:
        if labels is None:
            raise ValueError(f"family {fam} has no explicit labels")
        _write(args.labels_out, formats.format_labels(labels))
    log.info("generated %s: n=%d m=%d", fam, g.n, g.m)


def cmd_order(args) -> None:
    g = _load_graph(args.graph)
    tree = build_separator_decomposition(g, args.alpha, args.mode)
    order = nested_dissection_order(tree, g)
    _write(args.out, formats.format_order(order))
    if args.tree_out:
        _write(args.tree_out, tree.dump())
    log.info("nested dissection: n=%d height=%d", g.n, tree.height())


def cmd_cch(args) -> None:
    g = _load_graph(args.graph)
    _write(args.out, dump_cch(build_cch(g, _load_order(args.order, g))))


def cmd_label(args) -> None:
    g = _load_graph(args.graph)
    labels = build_canonical_hcuhl(build_cch(g, _load_order(args.order, g)))
    _write(args.out, formats.format_labels(labels))


def cmd_customize(args) -> None:
    g = _load_graph(args.graph)
    m = formats.parse_metric(_read(args.metric), g)
    labels = formats.parse_labels(_read(args.labels))
    if labels.n != g.n:
        raise ValueError(f"labels cover {labels.n} vertices, graph has {g.n}")
    engine = args.engine
    stats_line = None
    if engine == "queue":
        custom, stats = run_queue_customization(g, labels, build_inverse_labels(labels), m)
        d_hop = hop_diameter(g, m) if g.n <= HOP_STATS_LIMIT else "na"
        stats_line = f"dequeues={stats.dequeues} max_per_pair={stats.max_per_pair} d_hop={d_hop}"
        log.info(stats_line)
    else:
        if not args.order:
            raise ValueError(f"engine {engine} needs --order")
        h = build_cch(g, _load_order(args.order, g))
        canonical = build_canonical_hcuhl(h)
        if not canonical.same_hubs(labels):
            raise ValueError("labels are not the canonical labels of this order")
        ed = customize_edges(h, m)
        if engine == "upward":
            custom = customize_upward_dijkstra(h, canonical, ed, workers=args.threads)
        elif engine == "topdown":
            custom = customize_top_down(h, canonical, ed)
        elif engine.startswith("hybrid:"):
            custom = customize_hybrid(h, canonical, ed, int(engine.split(":", 1)[1]))
        else:
            raise ValueError(f"unknown engine {engine!r}")
    _write(args.out, formats.format_customized(custom, stats_line))


def cmd_query(args) -> None:
    custom = formats.parse_customized(_read(args.customized))
    pairs = formats.parse_pairs(_read(args.pairs), custom.n)
    out = []
    for s, t in pairs:
        r = hl_query(custom, s, t)
        out.append(formats.format_answer(s, t, r.distance, r.hub))
    _write(args.out, "\n".join(out) + ("\n" if out else ""))


def cmd_verify(args) -> None:
    g = _load_graph(args.graph)
    failures = []
    if args.labels:
        labels = formats.parse_labels(_read(args.labels))
        rep = verify_customizable_cover(g, labels)
        print(f"cover: {'pass' if rep.ok else 'FAIL at ' + str(_one_based(rep.failing_pair))}")
        if not rep.ok:
            failures.append("cover")
    if args.oracle:
        if not (args.metric and args.customized):
            raise ValueError("--oracle needs --metric and --customized")
        m = formats.parse_metric(_read(args.metric), g)
        custom = formats.parse_customized(_read(args.customized))
        dist = all_pairs(g, m)
        bad = next(
            ((s, t) for s in range(g.n) for t in range(g.n)
             if hl_query(custom, s, t).distance != dist[s][t]),
            None,
        )
        print(f"oracle: {'pass' if bad is None else 'FAIL at ' + str(_one_based(bad))}")
        if bad is not None:
            failures.append("oracle")
    if not (args.labels or args.oracle):
        raise ValueError("nothing to verify: pass --labels and/or --oracle")
    if failures:
        raise VerificationFailed(", ".join(failures))


def _one_based(pair):
    return tuple(x + 1 for x in pair)


def cmd_stats(args) -> None:
    labels = formats.parse_labels(_read(args.labels))
    avg, mx, total = label_stats(labels)
    print(f"n={labels.n} l_avg={float(avg):.4f} ({avg}) l_max={mx} total={total}")


def cmd_bounds(args) -> None:
    reports = []
    if args.grid is not None:
        reports.append(grid_report(args.grid, grid_aware=not args.heuristic))
    if args.graph:
        g = _load_graph(args.graph)
        if args.labels:
            labels = formats.parse_labels(_read(args.labels))
            hierarchical = args.hierarchical or labels.up_flags is not None
            reports.append(check_lower_bounds(g, labels, hierarchical))
        if g.n <= 8:
            reports.append(check_nd_approximation(g))
    if not reports:
        raise ValueError("bounds needs GRAPH and/or --grid")
    text = "".join(r.tsv() for r in reports)
    _write(args.out, text)
    for r in reports:
        print(r.summary(), file=sys.stderr if args.out in (None, "-") else sys.stdout)
    if not all(r.ok for r in reports):
        raise VerificationFailed("bound violated")


def cmd_gap(args) -> None:
    ks = [int(x) for x in args.k.split(",") if x.strip()]
    rows = gap_experiment(ks)
    _write(args.out, gap_table(rows))
    if not all(r.cover_ok for r in rows):
        raise VerificationFailed("explicit labels failed the cover check")


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cuhl", description=__doc__)
    p.add_argument("--threads", type=int, default=1, help="worker threads for parallel stages")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="generate a graph (and optionally a metric)")
    s.add_argument("--family", choices=FAMILIES, required=True)
    s.add_argument("--p", type=int, default=4)
    s.add_argument("--q", type=int)
    s.add_argument("--n", type=int, default=16)
    s.add_argument("--m", type=int)
    s.add_argument("--k", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--weights", choices=("unit", "random", "exp"))
    s.add_argument("--wmin", type=int, default=1)
    s.add_argument("--wmax", type=int, default=100)
    s.add_argument("--order", help="order file for --weights exp")
    s.add_argument("--out")
    s.add_argument("--metric-out")
    s.add_argument("--labels-out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("order", help="nested dissection order")
    s.add_argument("graph")
    s.add_argument("--alpha", default="2/3")
    s.add_argument("--mode", choices=("heuristic", "grid-aware", "exact"), default="heuristic")
    s.add_argument("--out")
    s.add_argument("--tree-out")
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("cch", help="dump the chordal supergraph of an order")
    s.add_argument("graph")
    s.add_argument("--order", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_cch)

    s = sub.add_parser("label", help="canonical hierarchical labels of an order")
    s.add_argument("graph")
    s.add_argument("--order", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_label)

    s = sub.add_parser("customize", help="fill label distances for a metric")
    s.add_argument("graph")
    s.add_argument("--labels", required=True)
    s.add_argument("--metric", required=True)
    s.add_argument("--engine", default="topdown", help="upward | topdown | hybrid:<cutoff> | queue")
    s.add_argument("--order")
    s.add_argument("--out")
    s.set_defaults(func=cmd_customize)

    s = sub.add_parser("query", help="answer 's t' pairs from customized labels")
    s.add_argument("customized")
    s.add_argument("--pairs", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("verify", help="cover property and Dijkstra oracle checks")
    s.add_argument("graph")
    s.add_argument("--labels")
    s.add_argument("--metric")
    s.add_argument("--customized")
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="label size statistics")
    s.add_argument("labels")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("bounds", help="separator lower bounds and approximation checks")
    s.add_argument("graph", nargs="?")
    s.add_argument("--labels")
    s.add_argument("--hierarchical", action="store_true")
    s.add_argument("--grid", type=int, metavar="P")
    s.add_argument("--heuristic", action="store_true", help="plain heuristic separators for --grid")
    s.add_argument("--out")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("gap-exp", help="HHL vs CH search-space gap on the star-clique family")
    s.add_argument("--k", default="4,8,12,16")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gap)
    return p


def _configure_logging() -> None:
    level = LOG_LEVELS.get(os.environ.get("CUHL_LOG", "quiet"), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def run(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
