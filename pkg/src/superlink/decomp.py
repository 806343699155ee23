"""Tensor product decompositions V(Lambda_alpha) (x) V(Lambda_alpha) = sum m_nu V(nu)."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import List, Tuple

from .errors import InvariantViolation, KindMismatch, NotAllowable, SchemaError, WeightSyntaxError
from .exact import AffineInt
from .superalg import (
    AlgebraKind,
    RootSystem,
    Weight,
    atypicality_index,
    basis_vector,
    classical_dim0,
    make_algebra,
    parse_weight,
    zero_weight,
)

FAMILIES = ("GlVector", "Osp", "Gl21Adjoint", "UserSupplied")


@dataclass(frozen=True)
class YoungDiagram:
    rows: Tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r <= 0 for r in rows) or any(a < b for a, b in zip(rows, rows[1:])):
            raise NotAllowable(f"{list(rows)} is not a partition")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self):
        return sum(self.rows)

    @property
    def length(self):
        return len(self.rows)

    def conjugate(self):
        if not self.rows:
            return YoungDiagram()
        return YoungDiagram(tuple(sum(1 for r in self.rows if r > j) for j in range(self.rows[0])))

    def fits(self, m, n):
        return self.length <= m and (not self.rows or self.rows[0] <= n)

    def __str__(self):
        return "[" + ",".join(map(str, self.rows)) + "]"


def _partitions_in_box(rows, cols, max_part=None):
    if max_part is None:
        max_part = cols
    yield ()
    if rows == 0:
        return
    for first in range(1, max_part + 1):
        for rest in _partitions_in_box(rows - 1, cols, first):
            yield (first,) + rest


def enumerate_allowable(m: int, n: int) -> List[YoungDiagram]:
    """Young diagrams with at most m rows and n columns, empty one included.

    Ordered by number of boxes, then reverse-lexicographically on the rows
    (so [2] comes before [1,1]).
    """
    found = sorted(set(_partitions_in_box(m, n)), key=lambda r: (sum(r), tuple(-x for x in r)))
    return [YoungDiagram(r) for r in found]


def diagram_weight(m: int, n: int, d: YoungDiagram) -> Weight:
    """(0..0, -l_t, .., -l_1 | l'_1, .., l'_n): the epsilon block holds the rows
    reversed and negated, the delta block the column lengths."""
    if not d.fits(m, n):
        raise NotAllowable(f"{d} does not fit in {m} rows and {n} columns")
    t = d.length
    eps = [0] * (m - t) + [-r for r in reversed(d.rows)]
    cols = list(d.conjugate().rows)
    dlt = cols + [0] * (n - len(cols))
    return Weight(AlgebraKind.gl(m, n), tuple(AffineInt(v) for v in eps + dlt))


@dataclass(frozen=True)
class DecompTerm:
    nu: Weight
    m_plus: int
    m_minus: int
    parity: int
    label: str = ""

    @property
    def multiplicity(self):
        return self.m_plus + self.m_minus


@dataclass(frozen=True)
class DecompTable:
    rs: RootSystem
    lam_alpha: Weight
    terms: Tuple[DecompTerm, ...]
    family: str = "UserSupplied"

    def validate(self, require_typical=True):
        if self.family not in FAMILIES:
            raise InvariantViolation(f"unknown family {self.family!r}")
        if self.lam_alpha.kind != self.rs.kind:
            raise InvariantViolation("highest weight over the wrong algebra")
        for i, t in enumerate(self.terms):
            if t.nu.kind != self.rs.kind:
                raise InvariantViolation("weight over the wrong algebra", i)
            if t.m_plus < 0 or t.m_minus < 0 or t.multiplicity < 1:
                raise InvariantViolation(f"multiplicities ({t.m_plus}, {t.m_minus}) must be >= 0 with positive sum", i)
            if t.parity not in (0, 1):
                raise InvariantViolation(f"parity {t.parity} not in {{0,1}}", i)
            if require_typical and atypicality_index(self.rs, t.nu):
                raise InvariantViolation(f"{t.nu} is atypical for generic alpha", i)
        return self

    def with_parity_flipped(self, index):
        """Copy with one term's parity flipped (negative controls)."""
        terms = list(self.terms)
        terms[index] = replace(terms[index], parity=1 - terms[index].parity)
        return replace(self, terms=tuple(terms))

    def dimension_balance(self, alpha0):
        """(sum m_nu dim V(nu), (dim V(Lambda_alpha))^2) at q = 1, alpha = alpha0."""
        rs = self.rs
        d = 2 ** rs.num_odd
        lhs = sum(t.multiplicity * d * classical_dim0(rs, t.nu, alpha0) for t in self.terms)
        rhs = (d * classical_dim0(rs, self.lam_alpha, alpha0)) ** 2
        return lhs, rhs


def _alpha_delta(rs, coeff):
    return rs.delta.scale(coeff).times_alpha()


def gl_family_table(m: int, n: int) -> DecompTable:
    """V(alpha delta) (x) V(alpha delta) for gl(m|n): one typical summand per allowable diagram."""
    rs = make_algebra(AlgebraKind.gl(m, n))
    two_ad = _alpha_delta(rs, 2)
    terms = []
    for d in enumerate_allowable(m, n):
        level = d.size
        parity = level % 2
        terms.append(DecompTerm(diagram_weight(m, n, d) + two_ad, 1 - parity, parity, parity, str(d)))
    return DecompTable(rs, _alpha_delta(rs, 1), tuple(terms), "GlVector")


def osp_family_table(n: int) -> DecompTable:
    """V(alpha eps_0) (x) V(alpha eps_0) = sum over 0 <= c <= n, 0 <= d <= n - c of V(Lambda_cd)."""
    rs = make_algebra(AlgebraKind.osp(n))
    kind = rs.kind
    terms = []
    for c in range(n + 1):
        lam_c = zero_weight(kind)
        for i in range(1, c + 1):
            lam_c = lam_c + basis_vector(kind, i)
        for d in range(n - c + 1):
            level = c + 2 * d
            eps0 = Weight(kind, (AffineInt(-c - 2 * d, 2),) + (AffineInt(0),) * n)
            parity = level % 2
            terms.append(DecompTerm(eps0 + lam_c, 1 - parity, parity, parity, f"c={c},d={d}"))
    return DecompTable(rs, _alpha_delta(rs, 1), tuple(terms), "Osp")


_ADJOINT_TERMS = (
    # (nu - 2 alpha delta, m_plus, m_minus, parity)
    ((2, 0, -2), 1, 0, 0),
    ((1, 1, -2), 0, 1, 0),
    ((2, -1, -1), 0, 1, 1),
    ((1, 0, -1), 1, 1, 1),
    ((1, -1, 0), 1, 0, 0),
    ((0, 0, 0), 0, 1, 0),
)


def gl21_adjoint_table() -> DecompTable:
    """Square of V(psi + alpha delta) with psi = (1,0|-1), the gl(2|1) adjoint weight."""
    rs = make_algebra(AlgebraKind.gl(2, 1))
    kind = rs.kind
    psi = Weight(kind, (AffineInt(1), AffineInt(0), AffineInt(-1)))
    two_ad = _alpha_delta(rs, 2)
    terms = tuple(
        DecompTerm(Weight(kind, tuple(AffineInt(v) for v in nu)) + two_ad, mp, mm, par, str(nu))
        for nu, mp, mm, par in _ADJOINT_TERMS
    )
    return DecompTable(rs, psi + _alpha_delta(rs, 1), terms, "Gl21Adjoint")


def builtin_table(kind: AlgebraKind, family: str = "vector") -> DecompTable:
    if family in ("vector", "GlVector", "Osp"):
        if kind.tag == "gl":
            return gl_family_table(kind.m, kind.n)
        return osp_family_table(kind.n)
    if family in ("adjoint", "Gl21Adjoint"):
        if kind != AlgebraKind.gl(2, 1):
            raise NotAllowable("the adjoint family is only tabulated for gl(2|1)")
        return gl21_adjoint_table()
    raise NotAllowable(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# JSON


def table_to_json(t: DecompTable) -> dict:
    kind = t.rs.kind
    return {
        "algebra": {"kind": kind.tag, "m": kind.m, "n": kind.n},
        "family": t.family,
        "highest_weight": t.lam_alpha.to_literal(),
        "terms": [
            {"nu": term.nu.to_literal(), "m_plus": term.m_plus, "m_minus": term.m_minus, "parity": term.parity}
            for term in t.terms
        ],
    }


def _require(obj, key, typ, where):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing {key!r}")
    v = obj[key]
    if typ is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise SchemaError(f"{where}.{key}: expected integer")
    if typ is not int and not isinstance(v, typ):
        raise SchemaError(f"{where}.{key}: expected {typ.__name__}")
    return v


def table_from_json(obj, require_typical=True) -> DecompTable:
    alg = _require(obj, "algebra", dict, "table")
    tag = _require(alg, "kind", str, "algebra")
    n = _require(alg, "n", int, "algebra")
    if tag == "gl":
        kind = AlgebraKind.gl(_require(alg, "m", int, "algebra"), n)
    elif tag == "osp":
        kind = AlgebraKind.osp(n)
    else:
        raise SchemaError(f"algebra.kind must be 'gl' or 'osp', got {tag!r}")
    rs = make_algebra(kind)
    family = _require(obj, "family", str, "table")
    try:
        lam = parse_weight(kind, _require(obj, "highest_weight", str, "table"))
        terms = []
        for i, rec in enumerate(_require(obj, "terms", list, "table")):
            where = f"terms[{i}]"
            terms.append(DecompTerm(
                parse_weight(kind, _require(rec, "nu", str, where)),
                _require(rec, "m_plus", int, where),
                _require(rec, "m_minus", int, where),
                _require(rec, "parity", int, where),
            ))
    except (WeightSyntaxError, KindMismatch) as exc:
        raise SchemaError(str(exc)) from exc
    return DecompTable(rs, lam, tuple(terms), family).validate(require_typical)


def save_table(t: DecompTable, path) -> None:
    Path(path).write_text(json.dumps(table_to_json(t), indent=2) + "\n", encoding="utf-8")


def load_table(path, require_typical=True) -> DecompTable:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    return table_from_json(obj, require_typical)


def same_table(a: DecompTable, b: DecompTable) -> bool:
    """Equality ignoring the cosmetic term labels."""
    key = lambda t: [(x.nu, x.m_plus, x.m_minus, x.parity) for x in t.terms]
    return a.rs.kind == b.rs.kind and a.family == b.family and a.lam_alpha == b.lam_alpha and key(a) == key(b)
