"""Run registered check suites and assemble a report."""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .checks import SUITES, CheckResult

THREADS_ENV = "ARTIFACT_THREADS"


class UnknownSuiteError(ValueError):
    pass


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        """``check,value,tol,pass`` rows with a header."""
        rows = ["check,value,tol,pass"]
        rows += [f"{c.name},{c.value:.6e},{c.tol:.6e},{'pass' if c.passed else 'FAIL'}" for c in self.checks]
        return rows

    def table(self) -> str:
        width = max((len(c.name) for c in self.checks), default=5)
        out = [f"{'check':<{width}}  {'value':>12}  {'tol':>10}  result  time[s]"]
        for c in self.checks:
            bound = ">" if c.lower else "<="
            flag = "pass" if c.passed else "FAIL"
            out.append(f"{c.name:<{width}}  {c.value:12.4e}  {bound}{c.tol:9.2e}  {flag:>6}  {c.wall:7.2f}")
        out.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(out)

    def write(self, path: str | Path) -> None:
        Path(path).write_text("\n".join(self.lines()) + "\n")


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _run_suite(name: str) -> list[CheckResult]:
    out = []
    for fn in SUITES[name]:
        start = time.perf_counter()
        results = fn()
        wall = (time.perf_counter() - start) / max(1, len(results))
        out.extend(replace(r, wall=wall) for r in results)
    return out


def run_verify(suites=None, threads: int | None = None) -> VerifyReport:
    """Run the named suites (all by default); checks keep registry order."""
    suites = list(SUITES) if not suites else list(suites)
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise UnknownSuiteError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    threads = threads if threads is not None else thread_count()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_run_suite, suites))
    return VerifyReport(tuple(r for part in parts for r in part))
