"""Grid sweep of the graph oracle against the closed forms."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .catalog.oracle import Check, confirm_known_typo, verify_point_invariants
from .catalog.types import (
    INF,
    ROLE_INF_INF_P,
    ROLE_P_INF_INF,
    ROLE_P_INF_R,
    ROLE_PQ_INF,
    DegCusp3,
    DegCusp4,
    is_inf,
)


@dataclass(frozen=True)
class SweepCase:
    family: str
    params: tuple
    role: str | None = None

    def build(self):
        if self.family.startswith("T3"):
            return DegCusp3(*self.params)
        return DegCusp4(*self.params)

    def sort_key(self):
        return (self.family, tuple((1, 0) if is_inf(x) else (0, x) for x in self.params), self.role or "")


def sweep_cases(pmax: int, qmax: int, rmax: int) -> list[SweepCase]:
    cases = []
    for p in range(3, pmax + 1):
        for q in range(3, qmax + 1):
            for r in range(2, rmax + 1):
                cases.append(SweepCase("T4 W4", (p, q, r)))
    for q in range(3, qmax + 1):
        for r in range(2, rmax + 1):
            cases.append(SweepCase("T4 V4", (2, q, r)))
    for r in range(2, rmax + 1):
        cases.append(SweepCase("T4 m", (2, 2, r)))
    for p in range(1, pmax + 1):
        for q in range(1, qmax + 1):
            cases.append(SweepCase("T3", (p, q)))
        cases.append(SweepCase("T3 inf", (p, INF)))
    cases.append(SweepCase("T3 inf", (INF, INF)))
    for p in range(2, pmax + 1):
        for q in range(2, qmax + 1):
            cases.append(SweepCase("T4 inf", (p, q, INF), ROLE_PQ_INF))
        for r in range(2, rmax + 1):
            cases.append(SweepCase("T4 inf", (p, INF, r), ROLE_P_INF_R))
        cases.append(SweepCase("T4 inf", (p, INF, INF), ROLE_P_INF_INF))
        cases.append(SweepCase("T4 inf", (p, INF, INF), ROLE_INF_INF_P))
    return sorted(cases, key=SweepCase.sort_key)


@dataclass(frozen=True)
class CaseResult:
    case: SweepCase
    label: str
    checks: int
    disagreements: tuple[Check, ...]


def run_case(case: SweepCase) -> CaseResult:
    report = verify_point_invariants(case.build(), case.role)
    return CaseResult(case, report.case, len(report.checks), tuple(report.disagreements))


@dataclass(frozen=True)
class SweepResult:
    results: tuple[CaseResult, ...]
    printed_delta4: object
    rederived_delta4: object
    known_typo_confirmed: bool

    @property
    def disagreements(self) -> list[tuple[str, Check]]:
        return [(r.label, c) for r in self.results for c in r.disagreements]

    @property
    def checks(self) -> int:
        return sum(r.checks for r in self.results)


def run_sweep(pmax: int, qmax: int, rmax: int, jobs: int = 1) -> SweepResult:
    cases = sweep_cases(pmax, qmax, rmax)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_case, cases, chunksize=max(1, len(cases) // (4 * jobs))))
    else:
        results = [run_case(c) for c in cases]
    typo = confirm_known_typo()
    return SweepResult(tuple(results), typo.printed_delta4, typo.rederived_delta4, typo.confirmed)
