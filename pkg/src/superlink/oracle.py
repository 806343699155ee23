"""Closed-form xi_k for the gl(m|n), gl(m|1), gl(2|1)-adjoint and osp(2|2n) families.

Everything here is written straight from the explicit product formulas and
deliberately avoids the root-system and decomposition code, so that
:func:`cross_check` compares two independent computations.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .errors import IndexNestingUnresolved
from .exact import ONE, ZERO, AffineInt, QuadExponent, RatFunc, qbinom, qnum, qpow


def br(a, b=0):
    """[a + b*alpha]_q"""
    return qnum(AffineInt(a, b))


def qp(a=0, b=0, c=0):
    """q^(a + b*alpha + c*alpha^2)"""
    return qpow(QuadExponent(a, b, c))


def cosh_like(a, b=0):
    """q^x + q^-x for x = a + b*alpha."""
    return qp(a, b) + qp(-a, -b)


def _sign(e):
    return -1 if e % 2 else 1


def _diagrams(m, n):
    out = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for rows in frontier:
            if len(rows) == m:
                continue
            cap = rows[-1] if rows else n
            for r in range(1, cap + 1):
                nxt.append(rows + (r,))
        out.extend(nxt)
        frontier = nxt
    return out


def _conjugate(rows):
    return tuple(sum(1 for r in rows if r > j) for j in range(rows[0])) if rows else ()


def _hook_content_qdim(rows, rank):
    """q-dimension of the gl(rank) irrep labelled by a partition (hook-content formula)."""
    out = ONE
    conj = _conjugate(rows)
    for i, r in enumerate(rows):
        for j in range(r):
            hook = (r - j - 1) + (conj[j] - i - 1) + 1
            out = out * br(rank + j - i) / br(hook)
    return out


def gamma_gl(rows, n):
    """Corrected exponent: sum l_i (l_i + 1 - 2 alpha - 2 i) - n alpha^2, as (a, b, c)."""
    a = sum(l * (l + 1 - 2 * i) for i, l in enumerate(rows, start=1))
    b = -2 * sum(rows)
    return (a, b, -n)


def gamma_gl_printed(rows, n, m):
    """The displayed (inconsistent) exponent 2 sum l_i(l_i + 1 - 2 alpha - 2 i) - alpha n (3 alpha + m)."""
    a, b, _ = gamma_gl(rows, 0)
    return (2 * a, 2 * b - n * m, -3 * n)


def _row(rows, i):
    return rows[i - 1] if i <= len(rows) else 0


def _chi_l_factor(rows, i):
    t = len(rows)
    li = _row(rows, i)
    out = ONE
    for l in range(1, t + 1):
        out = out * br(rows[l - 1] + li - i + 1 - l, -2) / br(li - i + 1 - l, -2)
    return out


def _chi_ij(rows, m, n, i):
    li = _row(rows, i)
    out = ONE
    for j in range(1, n + 1):
        out = out * br(i - j, 1) / br(i - j - li, 2)
    return out


def _chi_l_inside_i(rows, m, n):
    out = ONE
    for i in range(1, m + 1):
        out = out * _chi_ij(rows, m, n, i) * _chi_l_factor(rows, i)
    return out


def _chi_l_inside_ij(rows, m, n):
    out = ONE
    for i in range(1, m + 1):
        out = out * _chi_ij(rows, m, n, i) * _chi_l_factor(rows, i) ** n
    return out


def _chi_l_rows_only(rows, m, n):
    out = ONE
    for i in range(1, m + 1):
        out = out * _chi_ij(rows, m, n, i)
        if i <= len(rows):
            out = out * _chi_l_factor(rows, i)
    return out


CHI_INTERPRETATIONS: Dict[str, Callable] = {
    "l-inside-i": _chi_l_inside_i,
    "l-inside-ij": _chi_l_inside_ij,
    "l-rows-only": _chi_l_rows_only,
}

# fixed by resolve_chi_nesting(); guarded by a regression test
CHI_NESTING = "l-inside-i"


def gl22_chi_reference():
    """The four distinct chi_alpha values listed for gl(2|2), keyed by diagram rows."""
    top = br(0, 1) ** 2 * br(-1, 1) * br(1, 1)
    empty = top / (br(0, 2) ** 2 * br(-1, 2) * br(1, 2))
    box = top / (br(0, 2) ** 2 * br(-2, 2) * br(2, 2))
    domino = top / (br(1, 2) * br(-1, 2) * br(-2, 2) * br(2, 2))
    return {(): empty, (1,): box, (2, 1): box, (2,): domino, (1, 1): domino, (2, 2): empty}


def resolve_chi_nesting():
    """The unique reading of the chi_alpha product that matches the gl(2|2) values
    and the gl(m|1) reduction."""
    printed = gl22_chi_reference()
    survivors = []
    for name, fn in CHI_INTERPRETATIONS.items():
        ok = all(fn(rows, 2, 2) == value for rows, value in printed.items())
        for m in (1, 2, 3):
            for t in range(m + 1):
                rows = (1,) * t
                ok = ok and fn(rows, m, 1) == _chi_glm1(m, t)
        if ok:
            survivors.append(name)
    if len(survivors) != 1:
        raise IndexNestingUnresolved(f"candidate readings consistent with the examples: {survivors}")
    return survivors[0]


def chi_alpha(rows, m, n, nesting=None):
    return CHI_INTERPRETATIONS[nesting or CHI_NESTING](tuple(rows), m, n)


def xi_explicit_glmn(m: int, n: int, k: int) -> RatFunc:
    """sum over allowable [l] of (-1)^{(k-1)N} q^{k gamma} chi_alpha([l]) D_q(Lambda_[l])."""
    if m < n:
        raise ValueError("the explicit gl(m|n) formula assumes m >= n")
    total = ZERO
    for rows in _diagrams(m, n):
        a, b, c = gamma_gl(rows, n)
        dq = _hook_content_qdim(rows, m) * _hook_content_qdim(_conjugate(rows), n)
        total = total + qp(k * a, k * b, k * c) * chi_alpha(rows, m, n) * dq * _sign((k - 1) * sum(rows))
    return total


def _chi_glm1(m, t):
    out = ONE
    for i in range(1, m + 1):
        li = 1 if i <= t else 0
        out = out * br(i - 1, 1) / br(i + t - 1 - li, 2)
    return out


def xi_explicit_glm1(m: int, k: int) -> RatFunc:
    """The gl(m|1) sum over column diagrams [1^t], t = 0..m."""
    total = ZERO
    for t in range(m + 1):
        term = qp(-k * t * (t - 1), -2 * k * t, -k) * _sign((k - 1) * t)
        for i in range(1, t + 1):
            term = term * br(m + 1 - i) * br(i - 1, 1) / (br(t + 1 - i) * br(i + t - 2, 2))
        for i in range(t + 1, m + 1):
            term = term * br(i - 1, 1) / br(i + t - 1, 2)
        total = total + term
    return total


def xi_gl22_closed_form(k: int) -> RatFunc:
    """The three-line gl(2|2) closed form exactly as displayed."""
    pre = qp(0, -4 * k, -2 * k)
    line1 = pre * (qp(0, 4 * k) + qp(0, -4 * k)) * br(1, 1) * br(-1, 1) / (
        cosh_like(0, 1) ** 2 * br(1, 2) * br(-1, 2))
    line2 = pre * (qp(0, 2 * k) + qp(0, -2 * k)) * br(2) ** 2 / (
        cosh_like(0, 1) ** 2 * cosh_like(-1, 1) * cosh_like(1, 1)) * (-_sign(k))
    line3 = qp(-2 * k, -2 * k, -2 * k) * (qp(0, 2 * k) + qp(0, -2 * k)) * br(3) * cosh_like(0, 1) ** 2 / (
        qbinom(AffineInt(-1, 2)) * qbinom(AffineInt(1, 2)) * cosh_like(-1, 1) * cosh_like(1, 1))
    return line1 + line2 + line3


def xi_gl22_closed_form_corrected(k: int) -> RatFunc:
    """The gl(2|2) closed form with the third line's exponent and (q^a - q^-a)^2 factor repaired."""
    pre = qp(0, -4 * k, -2 * k)
    line1 = pre * (qp(0, 4 * k) + qp(0, -4 * k)) * br(1, 1) * br(-1, 1) / (
        cosh_like(0, 1) ** 2 * br(1, 2) * br(-1, 2))
    line2 = pre * (qp(0, 2 * k) + qp(0, -2 * k)) * br(2) ** 2 / (
        cosh_like(0, 1) ** 2 * cosh_like(-1, 1) * cosh_like(1, 1)) * (-_sign(k))
    line3 = pre * (qp(2 * k) + qp(-2 * k)) * br(3) * qbinom(AffineInt(0, 1)) ** 2 / (
        qbinom(AffineInt(-1, 2)) * qbinom(AffineInt(1, 2)) * cosh_like(-1, 1) * cosh_like(1, 1))
    return line1 + line2 + line3


def xi_explicit_gl21_adjoint(k: int, printed: bool = False) -> RatFunc:
    """The six-term gl(2|1) adjoint expression.

    The displayed Casimir value for nu = (2,0|-2) is -alpha(alpha+2); working it
    out from (nu + 2 rho, nu) gives -alpha(alpha-2), which is what is used
    unless ``printed`` is set.
    """
    s = _sign(k)
    ab = br(1, 1) * br(-1, 1)
    first = qp(0, -2 * k, -k) if printed else qp(0, 2 * k, -k)
    return (
        first * ab * br(3) / (br(1, 2) * br(-2, 2) * br(2))
        + qp(0, -2 * k, -k) * ab * br(3) / (br(2, 2) * br(-1, 2) * br(2))
        + qp(-2 * k, -2 * k, -k) * ab / (br(1, 2) * br(0, 2) * br(2)) * s
        + qp(-2 * k, 2 * k, -k) * ab / (br(0, 2) * br(-1, 2) * br(2)) * s
        - qp(2 * k, 0, -k) * ab * br(4) / (br(2, 2) * br(-2, 2) * br(2)) * s
        - qp(-k, 0, -k) * ab / (br(1, 2) * br(-1, 2)) * (1 + s)
    )


def _gamma_osp(n, c, d):
    """(1/2) C(Lambda_cd) - C(alpha eps_0) using the displayed Casimir values, as (a, b, c)."""
    # C(Lambda_cd) = 4(alpha - d)(n + c + d - alpha) - 2c(c - 1); C(alpha eps_0) = alpha(2n - alpha)
    half = (Fraction(-4 * d * (n + c + d) - 2 * c * (c - 1), 2), Fraction(4 * (n + c + d) + 4 * d, 2), Fraction(-4, 2))
    return (half[0], half[1] - 2 * n, half[2] + 1)


def osp_chi_printed(n, c, d):
    out = ONE
    for i in range(1, n + 1):
        di = 1 if i <= c else 0
        out = out * br(2 * n + 1 - i, -1) * br(i - 1, -1) / (
            br(c + 2 * d + 2 * n + 1 - i - di, -2) * br(c + 2 * d + i - 1 + di, -2))
    return out


def osp_chi_corrected(n, c, d):
    """chi_alpha(c, d) with the Kronecker delta signs matching Lambda_cd = (2 alpha - c - 2d) eps_0 + lambda_c."""
    out = ONE
    for i in range(1, n + 1):
        di = 1 if i <= c else 0
        out = out * br(2 * n + 1 - i, -1) * br(i - 1, -1) / (
            br(c + 2 * d + 2 * n + 1 - i + di, -2) * br(c + 2 * d + i - 1 - di, -2))
    return out


def osp_qdim_printed(n, c):
    out = ONE
    for i in range(1, c + 1):
        for j in range(i + 1, c + 1):
            out = out * br(2 * (n + 2) - i - j) / br(2 * (n + 1) - i - j)
    for l in range(1, c + 1):
        out = out * br(2 * (n + 2 - l)) / br(2 * (n + 1 - l))
    return out


def osp_qdim_corrected(n, c):
    """Displayed D_q(lambda_c) times the roots eps_i +- eps_j with i <= c < j it leaves out."""
    out = osp_qdim_printed(n, c)
    for i in range(1, c + 1):
        for j in range(c + 1, n + 1):
            out = out * br(2 * n + 3 - i - j) * br(j - i + 1) / (br(2 * n + 2 - i - j) * br(j - i))
    return out


def xi_explicit_osp(n: int, k: int, printed: bool = False, chi=None, qdim=None) -> RatFunc:
    """Double sum over 0 <= c <= n, 0 <= d <= n - c for osp(2|2n).

    ``chi`` and ``qdim`` select the chi_alpha(c, d) and D_q(lambda_c)
    products.  The defaults are the corrected ones; ``printed`` switches both
    to the displayed forms.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    chi = chi or (osp_chi_printed if printed else osp_chi_corrected)
    qdim = qdim or (osp_qdim_printed if printed else osp_qdim_corrected)
    total = ZERO
    for c in range(n + 1):
        dq = qdim(n, c)
        for d in range(n - c + 1):
            a, b, cc = _gamma_osp(n, c, d)
            total = total + qp(k * a, k * b, k * cc) * chi(n, c, d) * dq * _sign((k - 1) * (c + 2 * d))
    return total


# ---------------------------------------------------------------------------
# cross checks


@dataclass
class OracleCase:
    name: str
    algebra: str
    k_range: Tuple[int, int]
    builder: Callable[[int], RatFunc]
    table: Callable


def _fingerprint(x: RatFunc) -> str:
    return hashlib.sha256(json.dumps(x.to_json(), sort_keys=True).encode()).hexdigest()[:16]


def cross_check(case: OracleCase, hashes: bool = False) -> List[dict]:
    """Exact engine-vs-oracle comparison for every k in ``case.k_range``."""
    from .engine import XiSeries

    series = XiSeries(case.table())
    lo, hi = case.k_range
    rows = []
    for k in range(lo, hi + 1):
        t0 = time.perf_counter()
        engine = series(k)
        oracle = case.builder(k)
        ok = engine == oracle
        rec = {
            "case": case.name,
            "k": k,
            "pass": bool(ok),
            "millis": round(1000 * (time.perf_counter() - t0), 1),
        }
        if hashes:
            rec["engine_hash"] = _fingerprint(engine)
            rec["oracle_hash"] = _fingerprint(oracle)
        rows.append(rec)
    return rows


def standard_cases(k_range=(-3, 3)) -> List[OracleCase]:
    from . import decomp

    cases = []
    for m, n in ((1, 1), (2, 1), (2, 2), (3, 1), (3, 2)):
        cases.append(OracleCase(
            f"gl({m}|{n})", f"gl:{m},{n}", k_range,
            (lambda m, n: lambda k: xi_explicit_glmn(m, n, k))(m, n),
            (lambda m, n: lambda: decomp.gl_family_table(m, n))(m, n),
        ))
    for m in (1, 2, 3):
        cases.append(OracleCase(
            f"gl({m}|1) column sum", f"gl:{m},1", k_range,
            (lambda m: lambda k: xi_explicit_glm1(m, k))(m),
            (lambda m: lambda: decomp.gl_family_table(m, 1))(m),
        ))
    for n in (1, 2, 3):
        cases.append(OracleCase(
            f"osp(2|{2 * n})", f"osp:{n}", k_range,
            (lambda n: lambda k: xi_explicit_osp(n, k))(n),
            (lambda n: lambda: decomp.osp_family_table(n))(n),
        ))
    cases.append(OracleCase("gl(2|1) adjoint", "gl:2,1", k_range, xi_explicit_gl21_adjoint, decomp.gl21_adjoint_table))
    return cases


def discrepancy_report(k_values: Sequence[int] = (1, 2, 3)) -> List[dict]:
    """Where the displayed closed forms disagree with the two independent computations."""
    from .decomp import gl21_adjoint_table, gl_family_table, osp_family_table
    from .engine import XiSeries

    out = []
    gl22 = XiSeries(gl_family_table(2, 2))
    for k in k_values:
        engine, oracle = gl22(k), xi_explicit_glmn(2, 2, k)
        printed, fixed = xi_gl22_closed_form(k), xi_gl22_closed_form_corrected(k)
        out.append({
            "formula": "gl(2|2) closed form",
            "k": k,
            "engine_eq_oracle": bool(engine == oracle),
            "printed_eq_engine": bool(printed == engine),
            "corrected_eq_engine": bool(fixed == engine),
            "note": "third line: exponent should be -2k alpha(alpha+2) with (q^{2k}+q^{-2k}), "
                    "and (q^alpha+q^-alpha)^2 should read (q^alpha-q^-alpha)^2",
        })
    for n in (1, 2, 3):
        series = XiSeries(osp_family_table(n))
        for k in k_values:
            engine = series(k)
            out.append({
                "formula": f"osp(2|{2 * n}) closed form",
                "k": k,
                "engine_eq_oracle": bool(engine == xi_explicit_osp(n, k)),
                "printed_eq_engine": bool(xi_explicit_osp(n, k, printed=True) == engine),
                "corrected_eq_engine": bool(xi_explicit_osp(n, k) == engine),
                "note": "chi_alpha(c,d): the delta_{i<=c} shifts carry the opposite signs to those of "
                        "Lambda_cd + rho; D_q(lambda_c) omits the roots eps_i +- eps_j with i <= c < j",
            })
    adj = XiSeries(gl21_adjoint_table())
    for k in k_values:
        engine = adj(k)
        out.append({
            "formula": "gl(2|1) adjoint closed form",
            "k": k,
            "engine_eq_oracle": bool(engine == xi_explicit_gl21_adjoint(k)),
            "printed_eq_engine": bool(xi_explicit_gl21_adjoint(k, printed=True) == engine),
            "corrected_eq_engine": bool(xi_explicit_gl21_adjoint(k) == engine),
            "note": "Casimir shift for nu = (2,0|-2) is -alpha(alpha-2), displayed as -alpha(alpha+2)",
        })
    gl21 = XiSeries(gl_family_table(2, 1))
    for k in k_values:
        out.append({
            "formula": "gamma_alpha[lambda] display",
            "k": k,
            "engine_eq_oracle": bool(gl21(k) == xi_explicit_glmn(2, 1, k)),
            "printed_eq_engine": bool(_glmn_with_printed_gamma(2, 1, k) == gl21(k)),
            "corrected_eq_engine": bool(xi_explicit_glmn(2, 1, k) == gl21(k)),
            "note": "displayed gamma contradicts the example values; corrected form sum l_i(l_i+1-2a-2i) - n a^2",
        })
    return out


def _glmn_with_printed_gamma(m, n, k):
    total = ZERO
    for rows in _diagrams(m, n):
        a, b, c = gamma_gl_printed(rows, n, m)
        dq = _hook_content_qdim(rows, m) * _hook_content_qdim(_conjugate(rows), n)
        total = total + qp(k * a, k * b, k * c) * chi_alpha(rows, m, n) * dq * _sign((k - 1) * sum(rows))
    return total
