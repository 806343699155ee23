import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superlink.decomp import DecompTable, DecompTerm, gl21_adjoint_table, gl_family_table, osp_family_table
from superlink.engine import (
    BraidSpec,
    XiSeries,
    casimir_eigenvalues_typical,
    casimir_eigenvalues_unitary,
    link_polynomial,
    spectral_recurrence_check,
    xi_k,
)
from superlink.exact import ONE, ZERO, QuadExponent, qbinom, qpow
from superlink.superalg import AlgebraKind, make_algebra, parse_weight

TABLES = {
    "gl11": lambda: gl_family_table(1, 1),
    "gl21": lambda: gl_family_table(2, 1),
    "gl22": lambda: gl_family_table(2, 2),
    "osp1": lambda: osp_family_table(1),
    "osp2": lambda: osp_family_table(2),
    "adj": gl21_adjoint_table,
}


@pytest.mark.parametrize("name", sorted(TABLES))
def test_markov_and_supertrace(name):
    s = XiSeries(TABLES[name]())
    assert s(0) == ZERO
    assert s(1) == qpow(s.c_lambda)
    assert s(-1) == qpow(-s.c_lambda)


def test_braid_spec():
    b = BraidSpec([3, -1, 2])
    assert b.M == 4 and b.writhe == 4


def test_unknot_is_one():
    t = gl_family_table(2, 2)
    assert link_polynomial(t, BraidSpec((1,))) == ONE
    assert link_polynomial(t, BraidSpec((-1,))) == ONE
    assert link_polynomial(t, BraidSpec((1,))).to_text() == "1"


def test_corrupted_parity_breaks_markov():
    t = gl_family_table(2, 1).with_parity_flipped(1)
    s = XiSeries(t)
    assert s(1) != qpow(s.c_lambda)


@pytest.mark.parametrize("name", ["gl11", "gl21", "osp1"])
def test_recurrence_with_negative_control(name):
    t = TABLES[name]()
    kmax = 2 * len(t.terms) + 2
    assert spectral_recurrence_check(t, kmax).ok
    bad = spectral_recurrence_check(t.with_parity_flipped(0), kmax)
    assert not bad.ok
    # the recurrence alone does not see coefficient errors
    assert spectral_recurrence_check(t.with_parity_flipped(0), kmax, anchored=False).ok


def test_recurrence_kmax_guard():
    with pytest.raises(ValueError):
        spectral_recurrence_check(gl_family_table(1, 1), 2)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(TABLES)), st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.randoms())
def test_link_properties(name, ks, rnd):
    t = TABLES[name]()
    value = link_polynomial(t, BraidSpec(ks))
    num, den = value.canonical()
    assert all(m[2] == 0 for m in num.monomials()) and all(m[2] == 0 for m in den.monomials())
    shuffled = list(ks)
    rnd.shuffle(shuffled)
    assert link_polynomial(t, BraidSpec(shuffled)) == value


def test_casimir_typical_identity():
    t = gl_family_table(2, 1)
    # chi(c) = (1 - q^{2C(L) - C(nu)})/(q - q^-1), so k = 1 gives (xi_0 - xi_-2)/(q - q^-1)
    assert casimir_eigenvalues_typical(t, 1) == (xi_k(t, 0) - xi_k(t, -2)) / qbinom((1, 0))


def test_unitary_atypical_case():
    kind = AlgebraKind.gl(2, 1)
    rs = make_algebra(kind)
    eps1 = parse_weight(kind, "(1,0|0)")
    branching = DecompTable(rs, eps1, (
        DecompTerm(parse_weight(kind, "(2,0|0)"), 1, 0, 0),
        DecompTerm(parse_weight(kind, "(1,1|0)"), 1, 0, 0),
        DecompTerm(parse_weight(kind, "(1,0|1)"), 1, 0, 1),
    ))
    for k in (1, 2, 3):
        res = casimir_eigenvalues_unitary(rs, eps1, branching, k)
        assert res.skipped == [1, 2]
        assert res.value == qpow(QuadExponent(-k, 0, 0))
    with pytest.raises(ValueError):
        casimir_eigenvalues_unitary(rs, eps1, branching, 0)


def test_cache_concurrent():
    s = XiSeries(gl_family_table(2, 2))
    out = []
    threads = [threading.Thread(target=lambda k=k: out.append((k, s(k % 3)))) for k in range(9)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    for k, v in out:
        assert v is s.cache[k % 3]
