"""Invariant suites shared by ``superlink check`` and the acceptance tests."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List

from . import oracle
from .decomp import DecompTable, enumerate_allowable, diagram_weight, gl21_adjoint_table, gl_family_table, osp_family_table
from .engine import XiSeries, spectral_recurrence_check
from .exact import ZERO, qpow
from .superalg import classical_dim0, make_algebra, AlgebraKind

SUITES = ("markov", "recurrence", "oracle", "dimension")


@dataclass
class CheckResult:
    suite: str
    case: str
    passed: bool
    detail: str = ""
    millis: float = 0.0

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'}  {self.suite:<10} {self.case}  {self.detail}".rstrip()

    def to_json(self):
        return asdict(self)


def builtin_tables(max_rank: int = 3) -> Dict[str, Callable[[], DecompTable]]:
    """Every built-in table with m, n <= max_rank, keyed by a stable name."""
    out = {}
    for m in range(1, max_rank + 1):
        for n in range(1, max_rank + 1):
            out[f"gl({m}|{n})"] = (lambda m, n: lambda: gl_family_table(m, n))(m, n)
    for n in range(1, max_rank + 1):
        out[f"osp(2|{2 * n})"] = (lambda n: lambda: osp_family_table(n))(n)
    out["gl(2|1) adjoint"] = gl21_adjoint_table
    return out


def _timed(fn):
    t0 = time.perf_counter()
    res = fn()
    return res, round(1000 * (time.perf_counter() - t0), 1)


def markov_suite() -> List[CheckResult]:
    out = []
    for name, build in builtin_tables().items():
        def run(build=build):
            s = XiSeries(build())
            return {
                "xi_0 = 0": s(0) == ZERO,
                "xi_1 = q^C": s(1) == qpow(s.c_lambda),
                "xi_-1 = q^-C": s(-1) == qpow(-s.c_lambda),
            }
        res, ms = _timed(run)
        bad = [k for k, v in res.items() if not v]
        out.append(CheckResult("markov", name, not bad, "failed: " + ", ".join(bad) if bad else "", ms))
    return out


RECURRENCE_TABLES = ("gl(1|1)", "gl(2|1)", "gl(2|2)", "osp(2|2)", "osp(2|4)")


def recurrence_suite() -> List[CheckResult]:
    tables = builtin_tables()
    out = []
    for name in RECURRENCE_TABLES:
        table = tables[name]()
        kmax = 2 * len(table.terms) + 2
        rep, ms = _timed(lambda: spectral_recurrence_check(table, kmax))
        detail = f"degree {rep.degree}, kmax {kmax}"
        if not rep.ok:
            detail += f", first failure at {rep.first_failure}"
        out.append(CheckResult("recurrence", name, rep.ok, detail, ms))
    return out


def oracle_suite(workers: int = 1) -> List[CheckResult]:
    cases = oracle.standard_cases()
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        reports = list(pool.map(oracle.cross_check, cases))
    out = []
    for case, rows in zip(cases, reports):
        failed = [r["k"] for r in rows if not r["pass"]]
        detail = f"k in {case.k_range[0]}..{case.k_range[1]}"
        if failed:
            detail += f", failing k: {failed}"
        out.append(CheckResult("oracle", case.name, not failed, detail, sum(r["millis"] for r in rows)))
    return out


def diagram_dimension_sum(m: int, n: int) -> int:
    """sum over allowable diagrams of dim V_0(Lambda_[lambda]) at q = 1."""
    rs = make_algebra(AlgebraKind.gl(m, n))
    return sum(classical_dim0(rs, diagram_weight(m, n, d)) for d in enumerate_allowable(m, n))


def dimension_suite() -> List[CheckResult]:
    out = []
    for m in range(1, 4):
        for n in range(1, 4):
            got, ms = _timed(lambda: diagram_dimension_sum(m, n))
            out.append(CheckResult("dimension", f"gl({m}|{n})", got == 2 ** (m * n), f"{got} vs 2^{m * n}", ms))
    for name, build in builtin_tables().items():
        (lhs, rhs), ms = _timed(lambda: build().dimension_balance(0))
        out.append(CheckResult("dimension", f"{name} tensor square", lhs == rhs, f"{lhs} vs {rhs}", ms))
    return out


def run_suites(names, workers: int = 1) -> List[CheckResult]:
    runners = {
        "markov": markov_suite,
        "recurrence": recurrence_suite,
        "oracle": lambda: oracle_suite(workers),
        "dimension": dimension_suite,
    }
    results = []
    for name in names:
        results.extend(sorted(runners[name](), key=lambda r: r.case))
    return results
