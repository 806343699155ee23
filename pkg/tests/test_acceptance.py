"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.
"""

import json
import random
import time
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest

from superlink import oracle
from superlink.cli import run
from superlink.engine import BraidSpec, XiSeries, link_polynomial, spectral_recurrence_check
from superlink.errors import PoleAtPoint
from superlink.exact import ZERO, qpow, rf_eval
from superlink.suites import RECURRENCE_TABLES, builtin_tables, diagram_dimension_sum

REPORT = Path(__file__).resolve().parent.parent / "discrepancy_report.json"
SEED = 20261018

_series = {}


def series(name):
    if name not in _series:
        _series[name] = XiSeries(builtin_tables()[name]())
    return _series[name]


def report(number, title, ok, detail=""):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else ""))


def _oracle_block(cases):
    t0 = time.perf_counter()
    failures = []
    for case in cases:
        failures += [(r["case"], r["k"]) for r in oracle.cross_check(case) if not r["pass"]]
    return failures, time.perf_counter() - t0


def criterion_1():
    cases = [c for c in oracle.standard_cases((-3, 3)) if c.name in
             ("gl(1|1)", "gl(2|1)", "gl(2|2)", "gl(3|1)", "gl(3|2)")]
    assert len(cases) == 5
    failures, secs = _oracle_block(cases)
    return not failures and secs < 60, f"{len(cases)} algebras, k=-3..3, {secs:.1f}s, failures {failures}"


def criterion_2():
    ks = (1, 2, 3)
    engine = [series("gl(2|2)")(k) for k in ks]
    verbatim = [engine[i] == oracle.xi_gl22_closed_form(k) for i, k in enumerate(ks)]
    if all(verbatim):
        return True, "closed form reproduced verbatim"
    # three-way rule: the two independent computations must agree and the
    # disagreement with the closed form is reported
    two_agree = all(engine[i] == oracle.xi_explicit_glmn(2, 2, k) for i, k in enumerate(ks))
    repaired = all(engine[i] == oracle.xi_gl22_closed_form_corrected(k) for i, k in enumerate(ks))
    rows = oracle.discrepancy_report(ks)
    REPORT.write_text(json.dumps(rows, indent=2) + "\n", encoding="utf-8")
    ok = two_agree and repaired and REPORT.exists()
    return ok, (f"verbatim form differs for k={[k for k, v in zip(ks, verbatim) if not v]}; "
                f"engine == oracle: {two_agree}; repaired closed form == engine: {repaired}; "
                f"report {REPORT.name}")


def criterion_3():
    cases = [c for c in oracle.standard_cases((-3, 3)) if c.name.startswith("osp")]
    assert len(cases) == 3
    failures, secs = _oracle_block(cases)
    return not failures and secs < 60, f"n=1,2,3, k=-3..3, {secs:.1f}s, failures {failures}"


def criterion_4():
    (case,) = [c for c in oracle.standard_cases((-3, 3)) if c.name == "gl(2|1) adjoint"]
    failures, secs = _oracle_block([case])
    mult2 = [t for t in case.table().terms if t.m_plus == t.m_minus == 1]
    return not failures and len(mult2) == 1, f"k=-3..3, {secs:.1f}s, multiplicity-2 terms {len(mult2)}"


def criterion_5(capsys=None):
    bad = []
    for name in builtin_tables():
        s = series(name)
        if not (s(1) == qpow(s.c_lambda) and s(-1) == qpow(-s.c_lambda)):
            bad.append(name)
    outs = []
    for alg in ("gl:2,2", "osp:2", "gl:3,1"):
        code = run(["link", "--algebra", alg, "--family", "vector", "--exponents", "1"])
        if capsys is not None:
            outs.append((code, capsys.readouterr().out))
    cli_ok = capsys is None or all(o == (0, "1\n") for o in outs)
    return not bad and cli_ok, f"{len(builtin_tables())} tables, failing {bad}, CLI prints 1: {cli_ok}"


def _random_point(rnd):
    q0 = Fraction(rnd.randint(11, 40), rnd.randint(5, 10))
    while q0 == 1:
        q0 = Fraction(rnd.randint(11, 40), rnd.randint(5, 10))
    return q0, Fraction(rnd.randint(-40, 40), rnd.randint(3, 9))


def criterion_6():
    rnd = random.Random(SEED)
    symbolic = [name for name in builtin_tables() if series(name)(0) != ZERO]
    worst = mpmath.mpf(0)
    points = 0
    while points < 10:
        q0, a0 = _random_point(rnd)
        try:
            for name in builtin_tables():
                s = series(name)
                with mpmath.workdps(60):
                    vals = [rf_eval(w, q0, a0, 40) * (t.multiplicity if not t.parity else -t.multiplicity)
                            for t, _, w in s._static]
                    scale = sum(abs(v) for v in vals)
                    worst = max(worst, abs(sum(vals)) / scale)
        except PoleAtPoint:
            continue
        points += 1
    ok = not symbolic and worst < mpmath.mpf(10) ** -30
    return ok, f"numerator identically zero for all tables: {not symbolic}; 10 points, max relative residual {mpmath.nstr(worst, 3)}"


def criterion_7():
    t0 = time.perf_counter()
    bad = []
    for name in RECURRENCE_TABLES:
        table = builtin_tables()[name]()
        if not spectral_recurrence_check(table, 2 * len(table.terms) + 2).ok:
            bad.append(name)
    secs = time.perf_counter() - t0
    return not bad and secs < 120, f"{', '.join(RECURRENCE_TABLES)}; {secs:.1f}s; failing {bad}"


def criterion_8():
    bad = [(m, n) for m in range(1, 4) for n in range(1, 4) if diagram_dimension_sum(m, n) != 2 ** (m * n)]
    example = diagram_dimension_sum(2, 2)
    return not bad and example == 16, f"m,n <= 3; gl(2|2) sum {example}; failing {bad}"


def _random_braids(rnd, count=20):
    return [[rnd.choice([k for k in range(-3, 4)]) for _ in range(rnd.randint(1, 4))] for _ in range(count)]


def criterion_9():
    rnd = random.Random(SEED + 9)
    bad = []
    for name in builtin_tables():
        table = series(name).table
        for ks in _random_braids(rnd):
            if link_polynomial(table, BraidSpec(ks)).a_exponents() != {0}:
                bad.append((name, ks))
    return not bad, f"{20 * len(builtin_tables())} braids, failing {bad[:3]}"


def criterion_10():
    rnd = random.Random(SEED + 10)
    bad = []
    for name in builtin_tables():
        table = series(name).table
        for ks in _random_braids(rnd):
            perm = ks[:]
            rnd.shuffle(perm)
            if link_polynomial(table, BraidSpec(ks)) != link_polynomial(table, BraidSpec(perm)):
                bad.append((name, ks, perm))
    return not bad, f"{20 * len(builtin_tables())} permutations, failing {bad[:3]}"


TITLES = {
    1: "oracle equivalence, gl",
    2: "gl(2|2) closed form",
    3: "oracle equivalence, osp",
    4: "gl(2|1) adjoint",
    5: "Markov normalization",
    6: "zero q-supertrace",
    7: "spectral recurrence",
    8: "dimension balance",
    9: "A-cancellation",
    10: "permutation invariance",
}
CRITERIA = {i: globals()[f"criterion_{i}"] for i in TITLES}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    fn = CRITERIA[number]
    ok, detail = fn(capsys) if number == 5 else fn()
    with capsys.disabled():
        report(number, TITLES[number], ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for number, fn in CRITERIA.items():
        ok, detail = fn()
        report(number, TITLES[number], ok, detail)
        results.append(ok)
    print(f"\n{sum(results)}/{len(results)} criteria passed")
    raise SystemExit(0 if all(results) else 1)
