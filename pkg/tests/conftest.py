from __future__ import annotations

import re

CRITERIA = {
    1: "query exactness, three engines, random graphs + grids to 16x16",
    2: "canonical labels equal rank-bounded reachability labels (100 instances)",
    3: "canonical labels are minimal under single-hub removal (20 graphs)",
    4: "3^max-rank weights: metric HHL equals canonical HCuHL",
    5: "star-clique gap: L_avg <= 3, cover ok, S_avg increasing, ratio >= 2",
    6: "separator lower bounds on n <= 18 graphs",
    7: "nested-dissection factor vs. optimal order (200 graphs, n 4..8)",
    8: "grid constants L_max <= 3p and ratio <= 14.7",
    9: "queue customization: fixpoint, k-hop invariant, dequeue bound",
    10: "hierarchical customization: upper bound, 4-cycle, engine agreement",
}

_ID = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcome: dict[int, bool] = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            hit = _ID.search(getattr(rep, "nodeid", ""))
            if hit and getattr(rep, "when", "call") in ("call", "setup"):
                num = int(hit.group(1))
                ok = key == "passed"
                outcome[num] = outcome.get(num, True) and ok
    if not outcome:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(outcome):
        verdict = "PASS" if outcome[num] else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {num:2d} {verdict}  {CRITERIA.get(num, '')}")
