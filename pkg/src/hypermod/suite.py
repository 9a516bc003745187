"""The acceptance suite: ten criteria, each returning a pass/fail line plus details."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .catalog import default_catalog
from .odefit import LinearODE, fit_linear_ode, ode_to_recurrence
from .pi_lab import PI_CASES, verify_equivalence_case, verify_pi_formula
from .qmodular import Q_IDENTITIES, verify_q_identity
from .sequences import FAMILY_PARAMS, params_for, table1_oracle, zagier_T, zagier_t
from .verifier import expand_entry, verify_clausen, verify_group, verify_translate_formal, verify_zs

# printed operator for entry T2.01 (coefficients of y, y', y'' in p)
T2_TRANSCRIPT = LinearODE((
    (-2, 0, 48, -64),
    (1, -10, 0, 80, -80),
    (0, 1, -5, 0, 20, -16),
))
# (n+1)^2 t(n+1) = (5n^2+5n+2) t(n) - 4(5n^2-5n+2) t(n-2) + 16(n-1)^2 t(n-3), moved to one side
T2_RECURRENCE = (
    (1, 2, 1),
    (-2, -5, -5),
    (0,),
    (8, -20, 20),
    (-16, 32, -16),
)

EXAMPLE_GROUPS = tuple(f"EX8.{i}" for i in range(1, 8))
EQUIV_POINT_CASES = ("THM9.3", "THM9.4", "THM9.4b", "THM9.5", "THM9.6", "THM9.7")


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    details: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] criterion {self.number:2d}: {self.title} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "status": "pass" if self.ok else "fail",
                "seconds": round(self.seconds, 3), "details": self.details}


def _head_ok(report, head) -> bool:
    return tuple(report.common.coeffs[: len(head)]) == tuple(Fraction(h) for h in head)


def criterion_1(jobs: int = 1) -> CriterionResult:
    rep = verify_group(default_catalog().group("T1"), 60, jobs)
    ok = rep.certified and rep.pairwise_count == 861 and _head_ok(rep, (1, 4, 16))
    return CriterionResult(1, "42 level-1..4 entries agree to p^60, 861 pairs", ok, [rep.to_json()])


def criterion_2(jobs: int = 1) -> CriterionResult:
    cat = default_catalog()
    t2 = verify_group(cat.group("T2"), 120, jobs)
    t3 = verify_group(cat.group("T3"), 80, jobs)
    t1_pairs = cat.group("T1").pairwise_count
    total = t1_pairs + t2.pairwise_count + t3.pairwise_count
    ok = (t2.certified and t2.pairwise_count == 253 and _head_ok(t2, (1, 2))
          and t3.certified and t3.pairwise_count == 78 and _head_ok(t3, (1, 2, 6)) and total == 1192)
    return CriterionResult(2, "23 entries to p^120 and 13 entries to p^80; 1192 pairs overall", ok,
                           [t2.to_json(), t3.to_json(), {"pairwise_total": total}])


def criterion_3(jobs: int = 1) -> CriterionResult:
    reports = [verify_clausen(level, 60) for level in (1, 2, 3, 4)]
    reports += [verify_zs(params_for(fam), 60) for fam in FAMILY_PARAMS]
    return CriterionResult(3, "Clausen squares (4 levels) and zs forms (4 triples) to order 60",
                           all(r.certified for r in reports), [r.to_json() for r in reports])


def criterion_4(jobs: int = 1) -> CriterionResult:
    bad = []
    for fam, triple in FAMILY_PARAMS.items():
        params = params_for(fam)
        for n in range(41):
            if zagier_t(params, n) != table1_oracle(triple, "t", n):
                bad.append(f"{fam} t({n})")
            if zagier_T(params, n) != table1_oracle(triple, "T", n):
                bad.append(f"{fam} T({n})")
    return CriterionResult(4, "recurrence values equal binomial sums for t and T, n <= 40", not bad,
                           [{"mismatches": bad[:10]}])


def criterion_5(jobs: int = 1) -> CriterionResult:
    cat = default_catalog()
    series = expand_entry(cat.entry("T2.01"), 49)
    ode = fit_linear_ode(series, 2, 5)
    fit_ok = ode is not None and ode.normalized().polys == T2_TRANSCRIPT.normalized().polys
    rec = ode_to_recurrence(ode) if ode is not None else None
    rec_polys = tuple(tuple(int(c) for c in p) for p in rec.polys) if rec else None
    rec_ok = rec_polys == T2_RECURRENCE
    details = [{"fitted": ode.to_json() if ode else None, "recurrence": rec.to_json() if rec else None,
                "operator_matches": fit_ok, "recurrence_matches": rec_ok}]
    return CriterionResult(5, "ODE guessed from 50 terms of T2.01 and its recurrence", fit_ok and rec_ok, details)


def criterion_6(jobs: int = 1) -> CriterionResult:
    reports = [verify_q_identity(q) for q in Q_IDENTITIES]
    orders_ok = {r.id: r.order for r in reports}.get("M2") == 200 and {r.id: r.order for r in reports}.get("T75") == 30
    return CriterionResult(6, f"{len(reports)} q-series parameterizations", all(r.certified for r in reports) and orders_ok,
                           [r.to_json() for r in reports])


def criterion_7(jobs: int = 1) -> CriterionResult:
    cat = default_catalog()
    reports = [verify_group(cat.group(g), 40, jobs) for g in EXAMPLE_GROUPS]
    return CriterionResult(7, "seven example groups to order 40", all(r.certified for r in reports),
                           [r.to_json() for r in reports])


def criterion_8(jobs: int = 1) -> CriterionResult:
    reports = [verify_pi_formula(c) for c in PI_CASES]
    digits_ok = {r.case: r.digits for r in reports} == {
        "EQ1.1": 50, "EQ9.1": 50, "EQ9.2": 50, "EQ9.3": 20, "EQ9.5": 40, "EQ9.6": 50}
    return CriterionResult(8, "six 1/pi series against an arctangent pi", digits_ok and all(r.certified for r in reports),
                           [r.to_json() for r in reports])


def criterion_9(jobs: int = 1) -> CriterionResult:
    cat = default_catalog()
    rep = verify_equivalence_case("THM9.1", 30, cat)
    needed = {"x", "y", "r_sq", "dydx_sq", "drdx_sq"}
    claims = {c["name"].split()[1] for c in rep.exact_checks if c["name"].startswith("T1.02->T1.11")}
    formal = [
        verify_translate_formal(cat.entry("T1.02"), cat.entry("T1.11"), Fraction(3, 28), 40),
        verify_translate_formal(cat.entry("T1.11"), cat.entry("T1.21"), Fraction(3, 40), 40),
    ]
    ok = rep.certified and needed <= claims and all(f.certified for f in formal)
    return CriterionResult(9, "exact replay at the first equivalence point and the translation identity", ok,
                           [rep.to_json()] + [f.to_json() for f in formal])


def criterion_10(jobs: int = 1) -> CriterionResult:
    reports = [verify_equivalence_case(c) for c in EQUIV_POINT_CASES]
    decimals = [c for r in reports for c in r.ball_checks if "printed decimal" in c["name"]]
    ok = all(r.certified for r in reports) and len(decimals) >= 3
    return CriterionResult(10, "exact points and root refinement for the remaining equivalence cases", ok,
                           [r.to_json() for r in reports])


CRITERIA: tuple[Callable[..., CriterionResult], ...] = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
)


def run_criterion(k: int, jobs: int = 1) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        res = CRITERIA[k - 1](jobs)
    except Exception as exc:  # a crash is a failed criterion, not a crashed suite
        res = CriterionResult(k, CRITERIA[k - 1].__name__, False, [{"error": repr(exc)}])
    res.seconds = time.perf_counter() - t0
    return res


def run_all(jobs: int = 1) -> list[CriterionResult]:
    return [run_criterion(k, jobs) for k in range(1, len(CRITERIA) + 1)]
