"""Separator-based lower bounds and nested-dissection approximation checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Graph, gen_grid
from .hierarchy import build_cch
from .labeling import LabelSet, build_canonical_hcuhl, label_stats, optimal_hcuhl_bruteforce
from .ordering import DEFAULT_ALPHA, as_ratio, exact_b_alpha, nd_order

LOWER_BOUND_LIMIT = 18
ND_CHECK_LIMIT = 8
GRID_LIMIT = 64
GRID_FACTOR_LIMIT = 14.7


@dataclass(frozen=True)
class Check:
    name: str
    lhs: float
    rhs: float
    ok: bool


@dataclass
class BoundsReport:
    title: str
    values: dict[str, object] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, lhs, rhs, ok: bool) -> None:
        self.checks.append(Check(name, float(lhs), float(rhs), ok))

    def tsv(self) -> str:
        lines = ["check\tlhs\trhs\tok"]
        lines += [f"{c.name}\t{c.lhs:.6g}\t{c.rhs:.6g}\t{'pass' if c.ok else 'FAIL'}" for c in self.checks]
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        vals = " ".join(f"{k}={_fmt(v)}" for k, v in self.values.items())
        verdict = "PASS" if self.ok else "FAIL"
        return f"{self.title}: {verdict} ({vals})"


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return f"{float(v):.4f}"
    if isinstance(v, float):
        return f"{v:.4f}"
    return str(v)


def check_lower_bounds(g: Graph, labels: LabelSet, hierarchical: bool) -> BoundsReport:
    """Compare a valid labeling against the balanced-separator lower bounds (alpha = 2/3)."""
    if g.n > LOWER_BOUND_LIMIT:
        raise ValueError(f"lower-bound check needs exact b_alpha, limited to n <= {LOWER_BOUND_LIMIT}")
    alpha = DEFAULT_ALPHA
    b = exact_b_alpha(g, alpha)
    l_avg, l_max, _ = label_stats(labels)
    rep = BoundsReport("lower-bounds", {"n": g.n, "b_2/3": b, "L_avg": l_avg, "L_max": l_max})
    general = Fraction(2 * alpha - 1) / (2 * alpha) * b
    rep.add("L_avg >= b/4", l_avg, general, l_avg >= general)
    if hierarchical:
        rep.add("L_avg >= 2b/3", l_avg, alpha * b, l_avg >= alpha * b)
        count = sum(1 for s in labels.sizes() if s >= b)
        need = math.ceil(alpha * g.n)
        rep.add("#{|L(v)| >= b} >= ceil(2n/3)", count, need, count >= need)
    return rep


def nd_factor_bound(n: int, alpha=DEFAULT_ALPHA) -> float:
    """``1 + (1/alpha) log_{1/alpha} n``."""
    a = float(as_ratio(alpha))
    if n <= 1:
        return 1.0
    return 1 + (1 / a) * math.log(n) / math.log(1 / a)


def check_nd_approximation(g: Graph) -> BoundsReport:
    """Exact-separator nested dissection against the best order of all ``n!``."""
    if g.n > ND_CHECK_LIMIT:
        raise ValueError(f"nested-dissection check limited to n <= {ND_CHECK_LIMIT}")
    order = nd_order(g, DEFAULT_ALPHA, "exact")
    l_nd = label_stats(build_canonical_hcuhl(build_cch(g, order)))[0]
    _, l_opt = optimal_hcuhl_bruteforce(g)
    bound = nd_factor_bound(g.n)
    factor = l_nd / l_opt if l_opt else Fraction(1)
    rep = BoundsReport("nd-approximation", {"n": g.n, "L_nd": l_nd, "L_opt": l_opt, "factor": factor})
    rep.add("L_nd <= (1 + 1.5 log_1.5 n) L_opt", l_nd, bound * float(l_opt), float(factor) <= bound)
    return rep


def grid_report(p: int, grid_aware: bool = True) -> BoundsReport:
    """Label sizes of nested dissection on the ``p x p`` grid."""
    if not 1 <= p <= GRID_LIMIT:
        raise ValueError(f"grid side must lie in 1..{GRID_LIMIT}")
    g = gen_grid(p, p)
    mode = "grid-aware" if grid_aware else "heuristic"
    labels = build_canonical_hcuhl(build_cch(g, nd_order(g, DEFAULT_ALPHA, mode)))
    l_avg, l_max, _ = label_stats(labels)
    lower = 0.25 * math.sqrt(2 * g.n / 3)
    ratio = float(l_avg) / lower
    rep = BoundsReport(f"grid-{p}x{p}", {"n": g.n, "L_max": l_max, "L_avg": l_avg, "3p": 3 * p, "ratio": ratio})
    rep.add("L_max <= 3p", l_max, 3 * p, l_max <= 3 * p)
    rep.add("L_avg / (sqrt(2n/3)/4) <= 14.7", ratio, GRID_FACTOR_LIMIT, ratio <= GRID_FACTOR_LIMIT)
    return rep
