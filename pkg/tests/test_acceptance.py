"""End-to-end acceptance checks, one test per criterion.

Each test prints a single summary line; run with ``-s`` (or read the captured
output of ``-v`` runs) to see them.
"""

import pytest

from artifact.harness.checks import CRITERIA, run_criterion


def _summary(number, results, wall):
    crit = CRITERIA[number]
    ok = all(r.passed for r in results) and wall <= crit.budget
    detail = "; ".join(f"{r.name}={r.value:.3e}{'>' if r.lower else '<='}{r.tol:.0e}" for r in results)
    return ok, f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {crit.title} ({wall:.1f}s / {crit.budget:.0f}s): {detail}"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    results, wall = run_criterion(number)
    ok, line = _summary(number, results, wall)
    with capsys.disabled():
        print("\n" + line)
    failed = [r.name for r in results if not r.passed]
    assert not failed, line
    assert wall <= CRITERIA[number].budget, line
    assert ok
