import json
from fractions import Fraction
from math import comb

import pytest

from superlink import oracle as O
from superlink.decomp import gl_family_table
from superlink.errors import IndexNestingUnresolved
from superlink.exact import ZERO, rf_limit_q1


def q_casimir_gl(m, n):
    # C(alpha delta) = -n alpha^2 - n m alpha
    return O.qp(0, -n * m, -n)


def q_casimir_osp(n):
    # C(alpha eps_0) = alpha (2n - alpha)
    return O.qp(0, 2 * n, -1)


# which candidate reading reproduces which check; frozen after the resolution run
NESTING_TABLE = {
    "l-inside-i": True,
    "l-inside-ij": False,
    "l-rows-only": False,
}


def test_chi_nesting_is_frozen():
    assert O.resolve_chi_nesting() == O.CHI_NESTING == "l-inside-i"
    printed = O.gl22_chi_reference()
    for name, expected in NESTING_TABLE.items():
        fn = O.CHI_INTERPRETATIONS[name]
        ok = all(fn(rows, 2, 2) == v for rows, v in printed.items()) and all(
            fn((1,) * t, m, 1) == O._chi_glm1(m, t) for m in (1, 2, 3) for t in range(m + 1)
        )
        assert ok is expected, name


def test_nesting_unresolved(monkeypatch):
    monkeypatch.setitem(O.CHI_INTERPRETATIONS, "copy", O.CHI_INTERPRETATIONS["l-inside-i"])
    with pytest.raises(IndexNestingUnresolved):
        O.resolve_chi_nesting()


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_glmn_reduces_to_glm1(m):
    for k in range(-3, 4):
        assert O.xi_explicit_glmn(m, 1, k) == O.xi_explicit_glm1(m, k)


def test_glmn_precondition():
    with pytest.raises(ValueError):
        O.xi_explicit_glmn(1, 2, 1)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_gl_oracle_self_consistency(m, n):
    assert O.xi_explicit_glmn(m, n, 0) == ZERO
    assert O.xi_explicit_glmn(m, n, 1) == q_casimir_gl(m, n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_osp_oracle_self_consistency(n):
    assert O.xi_explicit_osp(n, 0) == ZERO
    assert O.xi_explicit_osp(n, 1) == q_casimir_osp(n)
    # the displayed products break the normalization
    assert O.xi_explicit_osp(n, 1, printed=True) != q_casimir_osp(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_osp_qdim_against_classical(n):
    for c in range(n + 1):
        expected = comb(2 * n, c) - (comb(2 * n, c - 2) if c >= 2 else 0)
        assert rf_limit_q1(O.osp_qdim_corrected(n, c)) == expected


def test_osp_printed_qdim_not_integral():
    assert rf_limit_q1(O.osp_qdim_printed(2, 1)) == Fraction(3, 2)


def test_adjoint_oracle():
    # C(psi + alpha delta) = 2 - alpha^2
    assert O.xi_explicit_gl21_adjoint(0) == ZERO
    assert O.xi_explicit_gl21_adjoint(1) == O.qp(2, 0, -1)
    assert O.xi_explicit_gl21_adjoint(1, printed=True) != O.qp(2, 0, -1)


def test_gl22_closed_form_vs_corrected():
    for k in (1, 2, 3):
        oracle = O.xi_explicit_glmn(2, 2, k)
        assert O.xi_gl22_closed_form_corrected(k) == oracle
        assert O.xi_gl22_closed_form(k) != oracle
    assert O.xi_gl22_closed_form_corrected(1) == q_casimir_gl(2, 2)
    assert O.xi_gl22_closed_form(1) != q_casimir_gl(2, 2)


def test_gamma_printed_breaks_examples():
    # the printed gamma fails the normalization, the corrected one does not
    assert O._glmn_with_printed_gamma(2, 1, 1) != q_casimir_gl(2, 1)


def test_cross_check_report():
    case = O.standard_cases((-1, 1))[0]
    rows = O.cross_check(case, hashes=True)
    assert [r["k"] for r in rows] == [-1, 0, 1]
    assert all(r["pass"] for r in rows)
    assert set(rows[0]) == {"case", "k", "pass", "engine_hash", "oracle_hash", "millis"}
    assert rows[0]["engine_hash"] == rows[0]["oracle_hash"]
    json.dumps(rows)


def test_cross_check_negative_control():
    case = O.OracleCase("corrupt", "gl:2,1", (1, 1), lambda k: O.xi_explicit_glmn(2, 1, k),
                        lambda: gl_family_table(2, 1).with_parity_flipped(1))
    rows = O.cross_check(case)
    assert rows == [dict(rows[0], k=1, **{"pass": False})]


def test_discrepancy_report_shape():
    rep = O.discrepancy_report((1,))
    assert rep and all(r["engine_eq_oracle"] and r["corrected_eq_engine"] and not r["printed_eq_engine"] for r in rep)
