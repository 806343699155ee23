"""Casimir eigenvalues xi_k and two-variable link polynomials built from decomposition tables."""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .decomp import DecompTable
from .exact import H_FACTOR, ONE, ZERO, LaurentPoly, RatFunc, qpow
from .superalg import (
    RootSystem,
    Weight,
    atypicality_index,
    casimir,
    gamma0_eigenvalue,
    odd_bracket_product,
    q_dimension,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BraidSpec:
    """Braid (s_i1)^k1 ... (s_i{M-1})^k{M-1} using each generator exactly once."""

    exponents: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(k) for k in self.exponents))

    @property
    def M(self):
        return len(self.exponents) + 1

    @property
    def writhe(self):
        return sum(self.exponents)


def _term_weight(table: DecompTable, term) -> RatFunc:
    """chi_Lambda(Gamma_0) / chi_nu(Gamma_0) * D_q(nu) / D_q(Lambda)."""
    rs, lam = table.rs, table.lam_alpha
    return (
        gamma0_eigenvalue(rs, lam) / gamma0_eigenvalue(rs, term.nu)
        * q_dimension(rs, term.nu) / q_dimension(rs, lam)
    )


class XiSeries:
    """xi_k for one table, cached by k.

    The per-term q-dimension and Gamma_0 ratios do not depend on k and are
    computed once.  Cache population is guarded by a lock.
    """

    def __init__(self, table: DecompTable):
        self.table = table
        self.cache: Dict[int, RatFunc] = {}
        self._lock = threading.Lock()
        rs = table.rs
        self.c_lambda = casimir(rs, table.lam_alpha)
        self._static = [(t, casimir(rs, t.nu), _term_weight(table, t)) for t in table.terms]
        self._a_shift = None

    def compute(self, k: int) -> RatFunc:
        total = ZERO
        sign_k = 1 if k % 2 == 0 else -1
        shift = None
        for term, c_nu, weight in self._static:
            mult = term.m_plus + sign_k * term.m_minus
            if not mult:
                continue
            exponent = c_nu.scale(Fraction(k, 2)) - self.c_lambda.scale(k)
            # every summand carries the same power of A = q^(alpha^2)
            if shift is None:
                shift = exponent.c
            elif exponent.c != shift:
                raise AssertionError(f"A-exponent {exponent.c} != {shift} in xi_{k}")
            coeff = -mult if term.parity else mult
            total = total + qpow(exponent) * weight * coeff
        return total

    def __call__(self, k: int) -> RatFunc:
        value = self.cache.get(k)
        if value is None:
            value = self.compute(k)
            with self._lock:
                value = self.cache.setdefault(k, value)
        return value


_series: Dict[int, XiSeries] = {}
_series_lock = threading.Lock()


def xi_series(table: DecompTable) -> XiSeries:
    key = id(table)
    with _series_lock:
        s = _series.get(key)
        if s is None or s.table is not table:
            s = _series[key] = XiSeries(table)
        return s


def xi_k(table: DecompTable, k: int) -> RatFunc:
    """Eigenvalue of the k-th Casimir invariant C_k = (I (x) str)[q^{-2h_rho}] sigma^k."""
    return xi_series(table)(k)


def link_polynomial(table: DecompTable, braid: BraidSpec) -> RatFunc:
    """L = q^{-C(Lambda_alpha) * sum k_i} * prod xi_{k_i}."""
    series = xi_series(table)
    out = qpow(-series.c_lambda.scale(braid.writhe))
    for k in braid.exponents:
        out = out * series(k)
    return out


def chi_nu_c(rs: RootSystem, mu: Weight, lam: Weight, nu: Weight) -> RatFunc:
    """Eigenvalue of c = (1 - R^T R)/(q - q^-1) on V(nu) inside V(mu) (x) V(lam)."""
    e = casimir(rs, mu) + casimir(rs, lam) - casimir(rs, nu)
    return (ONE - qpow(e)) / _h()


def _h():
    return RatFunc._make(LaurentPoly.constant(1), {H_FACTOR: 1}, LaurentPoly.constant(1), {})


def casimir_eigenvalues_typical(table: DecompTable, k: int, mu: Optional[Weight] = None) -> RatFunc:
    """chi_mu(C_k^Lambda) = sum (-1)^[nu] m_nu chi_nu(c)^k chi_mu(G0)/chi_nu(G0) D(nu)/D(mu).

    ``mu`` defaults to the table's highest weight, i.e. V(mu) (x) V(Lambda)
    with mu = Lambda.
    """
    rs, lam = table.rs, table.lam_alpha
    mu = lam if mu is None else mu
    g_mu, d_mu = gamma0_eigenvalue(rs, mu), q_dimension(rs, mu)
    total = ZERO
    for t in table.terms:
        c = chi_nu_c(rs, mu, lam, t.nu)
        w = g_mu / gamma0_eigenvalue(rs, t.nu) * q_dimension(rs, t.nu) / d_mu
        sign = -1 if t.parity else 1
        total = total + c ** k * w * (sign * t.multiplicity)
    return total


@dataclass
class UnitaryEigenvalue:
    value: RatFunc
    skipped: List[int] = field(default_factory=list)


def casimir_eigenvalues_unitary(rs: RootSystem, mu: Weight, branching: DecompTable, k: int) -> UnitaryEigenvalue:
    """Casimir eigenvalue on a unitary, possibly atypical V(mu).

    ``branching`` lists the V_0(nu) inside V_0(mu) (x) V(Lambda), with Lambda
    its highest weight.  Terms whose atypicality differs from mu's are left
    out and their indices reported in ``skipped``.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    lam = branching.lam_alpha
    a_mu = atypicality_index(rs, mu)
    top = odd_bracket_product(rs, mu, skip_zero=True) / q_dimension(rs, mu)
    total = ZERO
    skipped = []
    for i, t in enumerate(branching.terms):
        if atypicality_index(rs, t.nu) != a_mu:
            log.info("AtypicalityMismatch: term %d (%s) skipped", i, t.nu)
            skipped.append(i)
            continue
        w = top / odd_bracket_product(rs, t.nu, skip_zero=True) * q_dimension(rs, t.nu)
        sign = -1 if t.parity else 1
        total = total + chi_nu_c(rs, mu, lam, t.nu) ** k * w * (sign * t.multiplicity)
    return UnitaryEigenvalue(total, skipped)


@dataclass
class RecurrenceReport:
    ok: bool
    degree: int
    checked: List[int]
    first_failure: Optional[int] = None
    anchors: Dict[str, bool] = field(default_factory=dict)


def _poly_coefficients(roots: Sequence[LaurentPoly]) -> List[LaurentPoly]:
    """Coefficients e_0..e_D of prod (y - r), lowest degree first."""
    coeffs = [LaurentPoly.constant(1)]
    for r in roots:
        nxt = [LaurentPoly() for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * r
        coeffs = nxt
    return coeffs


def spectral_recurrence_check(table: DecompTable, kmax: int, anchored: bool = True) -> RecurrenceReport:
    """Check s_k = q^{k C(Lambda)} xi_k against prod_nu (x^2 - q^{C(nu)}).

    Any linear combination of the powers (+-q^{C(nu)/2})^k satisfies the
    recurrence, so it cannot see wrong coefficients.  With ``anchored`` the
    initial values xi_0 = 0 and xi_1 = q^{C(Lambda)} are checked as well.
    """
    series = xi_series(table)
    rs = table.rs
    distinct = []
    for t in table.terms:
        c = casimir(rs, t.nu)
        if c not in distinct:
            distinct.append(c)
    roots = [LaurentPoly.monomial(c.to_monomial()) for c in distinct]
    coeffs = _poly_coefficients(roots)  # in y = x^2
    degree = 2 * len(distinct)
    if kmax < degree:
        raise ValueError(f"kmax must be at least {degree}")
    seq = [qpow(series.c_lambda.scale(k)) * series(k) for k in range(kmax + 1)]
    report = RecurrenceReport(True, degree, [])
    for start in range(0, kmax - degree + 1):
        residual = ZERO
        for j, e in enumerate(coeffs):
            if e:
                residual = residual + RatFunc(e) * seq[start + 2 * j]
        report.checked.append(start)
        if not residual.is_zero() and not residual.reduced().is_zero():
            if residual != ZERO:
                report.ok = False
                report.first_failure = start
                return report
    if anchored:
        report.anchors["xi_0 = 0"] = seq[0] == ZERO
        report.anchors["xi_1 = q^C"] = series(1) == qpow(series.c_lambda)
        if not all(report.anchors.values()):
            report.ok = False
            report.first_failure = 0 if not report.anchors["xi_0 = 0"] else 1
    return report
