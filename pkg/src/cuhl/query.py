"""Distance queries over customized labels."""

from __future__ import annotations

from typing import TYPE_CHECKING, NamedTuple

from .graph import INF, sat_add

if TYPE_CHECKING:
    from .customize_hier import CustomizedLabels


class QueryResult(NamedTuple):
    distance: int  # INF when unreachable
    hub: int | None
    comparisons: int = 0

    @property
    def reachable(self) -> bool:
        return self.hub is not None


def hl_query(c: CustomizedLabels, s: int, t: int) -> QueryResult:
    """Merge the two sorted hub arrays; ties go to the smallest hub id."""
    n = c.labels.n
    if not (0 <= s < n and 0 <= t < n):
        raise IndexError(f"query ({s}, {t}) outside 0..{n - 1}")
    hs, ht = c.labels.hubs[s], c.labels.hubs[t]
    ds, dt = c.dist[s], c.dist[t]
    i = j = steps = 0
    best, hub = INF, None
    while i < len(hs) and j < len(ht):
        steps += 1
        a, b = hs[i], ht[j]
        if a == b:
            d = sat_add(ds[i], dt[j])
            if d < best:
                best, hub = d, a
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return QueryResult(best, hub, steps)
