"""Acceptance bookkeeping: one pass/fail line per criterion A1..A9 in the terminal summary.

A criterion passes when every test named ``test_aN_*`` passed and their
summed call time stays inside the runtime budget.
"""

import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    "A1": ("differential strata: closed form = orbit oracle, homology = witness homology", 60),
    "A2": ("non-emptiness predicates <=> GF(2) census on the tiny box", 120),
    "A3": ("witnesses validate with exactly the requested profiles", 30),
    "A4": ("recursion, Euler, kernel-image and rank Euler identities on random data", 30),
    "A5": ("hom0 solver = split closed form; equal profiles give equal hom0", 30),
    "A6": ("pinned discrepancy records emitted by compare", None),
    "A7": ("sl2 fusion, equivariant strata and derivation-rank strata vs oracles", 120),
    "A8": ("DGLA axioms, residual identities, fiber oracle, worked example", 60),
    "A9": ("CLI round trip and report determinism", 10),
}

_outcomes = {}
_durations = {}
_notes = {}

_NAME = re.compile(r"::test_(a\d)_")


def _criterion(nodeid):
    m = _NAME.search(nodeid)
    return m.group(1).upper() if m else None


def pytest_runtest_logreport(report):
    key = _criterion(report.nodeid)
    if key is None:
        return
    if report.when == "call":
        _durations[key] = _durations.get(key, 0.0) + report.duration
    if report.when == "call" or report.outcome != "passed":
        _outcomes[key] = _outcomes.get(key, True) and report.outcome == "passed"
        if report.outcome != "passed":
            _notes.setdefault(key, []).append(report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key, (desc, budget) in CRITERIA.items():
        if key not in _outcomes:
            terminalreporter.write_line(f"{key} NOT RUN  {desc}")
            continue
        t = _durations.get(key, 0.0)
        over = budget is not None and t > budget
        status = "PASS" if _outcomes[key] and not over else "FAIL"
        extra = f" [{t:.1f}s" + (f" / budget {budget}s" if budget else "") + "]"
        if over:
            extra += " over budget"
        failed = _notes.get(key)
        if failed:
            extra += " failing: " + ", ".join(failed)
        terminalreporter.write_line(f"{key} {status}  {desc}{extra}")
