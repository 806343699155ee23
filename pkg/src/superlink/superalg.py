"""Root data of gl(m|n) and osp(2|2n) in the distinguished simple root system.

Weights have coordinates ``r + s*alpha`` over the basis
``eps_1..eps_m, delta_1..delta_n`` (gl) or ``eps_0, eps_1..eps_n`` (osp).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from .errors import (
    InvalidRank,
    KindMismatch,
    NonIntegralDimension,
    NonRepresentableBracketArgument,
    WeightSyntaxError,
    ZeroDenominatorBracket,
)
from .exact import ONE, AffineInt, QuadExponent, RatFunc, qnum, rf_limit_q1


@dataclass(frozen=True)
class AlgebraKind:
    """``gl(m|n)`` when ``tag == "gl"``; ``osp(2|2n)`` when ``tag == "osp"`` (m unused)."""

    tag: str
    m: int
    n: int

    @classmethod
    def gl(cls, m, n):
        return cls("gl", m, n)

    @classmethod
    def osp(cls, n):
        return cls("osp", 2, n)

    @property
    def size(self):
        return self.m + self.n if self.tag == "gl" else 1 + self.n

    def __str__(self):
        if self.tag == "gl":
            return f"gl({self.m}|{self.n})"
        return f"osp(2|{2 * self.n})"


@dataclass(frozen=True)
class Weight:
    kind: AlgebraKind
    coords: Tuple[AffineInt, ...]

    def __post_init__(self):
        coords = tuple(c if isinstance(c, AffineInt) else AffineInt(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.kind.size:
            raise KindMismatch(f"{self.kind} weights have {self.kind.size} coordinates, got {len(coords)}")

    def _check(self, other):
        if self.kind != other.kind:
            raise KindMismatch(f"{self.kind} vs {other.kind}")

    def __add__(self, other):
        self._check(other)
        return Weight(self.kind, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return Weight(self.kind, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return Weight(self.kind, tuple(-x for x in self.coords))

    def scale(self, s):
        s = Fraction(s)
        return Weight(self.kind, tuple(AffineInt(x.a * s, x.b * s) for x in self.coords))

    def times_alpha(self):
        """Multiply a numeric weight by the symbol alpha."""
        if any(x.b for x in self.coords):
            raise ValueError("weight already depends on alpha")
        return Weight(self.kind, tuple(AffineInt(0, x.a) for x in self.coords))

    def at(self, alpha0):
        return Weight(self.kind, tuple(AffineInt(x.at(alpha0)) for x in self.coords))

    def depends_on_alpha(self):
        return any(x.b for x in self.coords)

    def to_literal(self):
        parts = [_coord_literal(x) for x in self.coords]
        if self.kind.tag == "gl":
            m = self.kind.m
            return f"({','.join(parts[:m])}|{','.join(parts[m:])})"
        return f"({parts[0]}|{','.join(parts[1:])})"

    __str__ = to_literal


def zero_weight(kind):
    return Weight(kind, (AffineInt(0),) * kind.size)


def basis_vector(kind, index, coeff=1):
    coords = [AffineInt(0)] * kind.size
    coords[index] = AffineInt(coeff)
    return Weight(kind, tuple(coords))


def _frac_literal(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coord_literal(x):
    if x.b == 0:
        return _frac_literal(x.a)
    s = "al" if x.b == 1 else f"{_frac_literal(x.b)}*al"
    if x.a == 0:
        return s
    if x.b < 0:
        return f"{_frac_literal(x.a)}-{_frac_literal(-x.b)}*al" if x.b != -1 else f"{_frac_literal(x.a)}-al"
    return f"{_frac_literal(x.a)}+{s}"


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?\s*al)?")


def parse_coord(text):
    """Parse ``r``, ``r+s*al``, ``s*al``, ``al``, ``-al`` and similar."""
    s = text.replace(" ", "")
    if not s:
        raise WeightSyntaxError("empty coordinate")
    a = b = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise WeightSyntaxError(f"cannot parse coordinate {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if pos and not m.group(1):
            raise WeightSyntaxError(f"missing operator in {text!r}")
        num = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            b += sign * num
        else:
            a += sign * num
        pos = m.end()
    return AffineInt(a, b)


def parse_weight(kind: AlgebraKind, text: str) -> Weight:
    """Parse ``(a1,...,am|b1,...,bn)`` (gl) or ``(b|a1,...,an)`` (osp)."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")) or s.count("|") != 1:
        raise WeightSyntaxError(f"weight literal must look like '(..|..)': {text!r}")
    left, right = s[1:-1].split("|")
    lcoords = [parse_coord(t) for t in left.split(",")] if left.strip() else []
    rcoords = [parse_coord(t) for t in right.split(",")] if right.strip() else []
    want = (kind.m, kind.n) if kind.tag == "gl" else (1, kind.n)
    if (len(lcoords), len(rcoords)) != want:
        raise WeightSyntaxError(f"{kind} literal needs {want[0]}|{want[1]} entries: {text!r}")
    return Weight(kind, tuple(lcoords + rcoords))


@dataclass(frozen=True)
class RootSystem:
    kind: AlgebraKind
    even_pos: Tuple[Weight, ...]
    odd_pos: Tuple[Weight, ...]
    rho: Weight
    metric: Tuple[int, ...]

    @property
    def delta(self):
        """The direction of the one-parameter family: sum of delta_j (gl) or eps_0 (osp)."""
        if self.kind.tag == "gl":
            return Weight(self.kind, (AffineInt(0),) * self.kind.m + (AffineInt(1),) * self.kind.n)
        return basis_vector(self.kind, 0)

    @property
    def num_odd(self):
        return len(self.odd_pos)


@lru_cache(maxsize=None)
def make_algebra(kind: AlgebraKind) -> RootSystem:
    m, n = kind.m, kind.n
    if n < 1 or (kind.tag == "gl" and m < 1):
        raise InvalidRank(f"{kind}: ranks must be at least 1")
    size = kind.size

    def vec(*pairs):
        coords = [0] * size
        for idx, c in pairs:
            coords[idx] += c
        return Weight(kind, tuple(AffineInt(c) for c in coords))

    if kind.tag == "gl":
        eps = list(range(m))
        dlt = [m + j for j in range(n)]
        even = [vec((eps[i], 1), (eps[j], -1)) for i in range(m) for j in range(i + 1, m)]
        even += [vec((dlt[i], 1), (dlt[j], -1)) for i in range(n) for j in range(i + 1, n)]
        odd = [vec((eps[i], 1), (dlt[j], -1)) for i in range(m) for j in range(n)]
        two_rho = [m - n - 2 * i + 1 for i in range(1, m + 1)] + [m + n - 2 * j + 1 for j in range(1, n + 1)]
        rho = Weight(kind, tuple(AffineInt(Fraction(c, 2)) for c in two_rho))
        metric = (1,) * m + (-1,) * n
    elif kind.tag == "osp":
        even = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                even.append(vec((i, 1), (j, -1)))
                even.append(vec((i, 1), (j, 1)))
            even.append(vec((i, 2)))
        odd = []
        for i in range(1, n + 1):
            odd.append(vec((0, 1), (i, 1)))
            odd.append(vec((0, 1), (i, -1)))
        rho = Weight(kind, (AffineInt(-n),) + tuple(AffineInt(n - i + 1) for i in range(1, n + 1)))
        metric = (-1,) + (1,) * n
    else:
        raise InvalidRank(f"unknown algebra tag {kind.tag!r}")
    return RootSystem(kind, tuple(even), tuple(odd), rho, metric)


def gl(m, n):
    return make_algebra(AlgebraKind.gl(m, n))


def osp(n):
    return make_algebra(AlgebraKind.osp(n))


def bilinear(rs: RootSystem, x: Weight, y: Weight) -> QuadExponent:
    if x.kind != rs.kind or y.kind != rs.kind:
        raise KindMismatch(f"weights over {x.kind}/{y.kind} used with {rs.kind}")
    a = b = c = Fraction(0)
    for g, u, v in zip(rs.metric, x.coords, y.coords):
        a += g * u.a * v.a
        b += g * (u.a * v.b + u.b * v.a)
        c += g * u.b * v.b
    return QuadExponent(a, b, c)


def casimir(rs: RootSystem, lam: Weight) -> QuadExponent:
    """C(lam) = (lam, lam + 2 rho)."""
    return bilinear(rs, lam, lam + rs.rho.scale(2))


def _pairing_arg(rs, lam, beta):
    e = bilinear(rs, lam, beta)
    if e.c != 0 or e.b.denominator != 1 or (2 * e.a).denominator != 1:
        raise NonRepresentableBracketArgument(f"({lam}, {beta}) = {e} cannot be a q-number argument")
    return AffineInt(e.a, e.b)


def atypical_roots(rs: RootSystem, lam: Weight):
    """Odd positive roots beta with (lam + rho, beta) identically zero in alpha."""
    shifted = lam + rs.rho
    return [beta for beta in rs.odd_pos if bilinear(rs, shifted, beta).is_zero()]


def atypicality_index(rs: RootSystem, lam: Weight) -> int:
    return len(atypical_roots(rs, lam))


def is_typical(rs: RootSystem, lam: Weight) -> bool:
    return atypicality_index(rs, lam) == 0


def q_dimension(rs: RootSystem, lam: Weight) -> RatFunc:
    """q-dimension of the even-subalgebra irrep with highest weight ``lam``."""
    shifted = lam + rs.rho
    out = ONE
    for beta in rs.even_pos:
        out = out * qnum(_pairing_arg(rs, shifted, beta)) / qnum(_pairing_arg(rs, rs.rho, beta))
    return out


def odd_bracket_product(rs: RootSystem, lam: Weight, skip_zero=False) -> RatFunc:
    """prod over odd positive roots of [(lam + rho, beta)]_q (optionally skipping zero brackets)."""
    shifted = lam + rs.rho
    out = ONE
    for beta in rs.odd_pos:
        arg = _pairing_arg(rs, shifted, beta)
        if skip_zero and arg.is_zero():
            continue
        out = out * qnum(arg)
    return out


def gamma0_eigenvalue(rs: RootSystem, lam: Weight, strict=False) -> RatFunc:
    """Eigenvalue of the even central element Gamma_0 on V_0(lam).

    Both families have odd roots with (rho, beta) = 0, so the textbook
    normalization by prod [(rho, beta)]_q is singular.  The default drops the
    vanishing brackets from the normalization; only ratios of these values
    are meaningful and those do not depend on the choice.  ``strict=True``
    insists on the full normalization and raises instead.
    """
    norm = odd_bracket_product(rs, zero_weight(rs.kind), skip_zero=not strict)
    if norm.is_zero():
        raise ZeroDenominatorBracket(f"{rs.kind}: some (rho, beta) vanishes on an odd root")
    return odd_bracket_product(rs, lam) / norm


def classical_dim0(rs: RootSystem, lam: Weight, alpha0=0) -> int:
    """Classical dimension of V_0(lam) (q -> 1 limit of the q-dimension)."""
    value = rf_limit_q1(q_dimension(rs, lam), alpha0)
    if value.denominator != 1 or value <= 0:
        raise NonIntegralDimension(f"dim V_0({lam}) -> {value}; weight is not dominant")
    return int(value)


def typical_dimension(rs: RootSystem, lam: Weight, alpha0=0) -> int:
    """dim V(lam) = 2^d dim V_0(lam) for typical lam."""
    return 2 ** rs.num_odd * classical_dim0(rs, lam, alpha0)


class Unitarity(enum.Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    NON_UNITARY = "NonUnitary"


def _num(rs, x, y):
    e = bilinear(rs, x, y)
    if not (e.b == 0 and e.c == 0):
        raise ValueError("expected a numeric pairing")
    return e.a


def unitarity_class(rs: RootSystem, lam: Weight, alpha0=0) -> Unitarity:
    """Unitarity type of V(lam) with alpha set to ``alpha0``.

    Type (1) is reported when both conditions hold.
    """
    lam = lam.at(alpha0)
    shifted = lam + rs.rho
    kind = rs.kind
    if kind.tag == "gl":
        m, n = kind.m, kind.n
        eps = lambda i: basis_vector(kind, i - 1)
        dlt = lambda j: basis_vector(kind, m + j - 1)
        type1 = _num(rs, shifted, eps(m) - dlt(n)) > 0 or any(
            _num(rs, shifted, eps(m) - dlt(w)) == 0 and _num(rs, lam, dlt(w) - dlt(n)) == 0
            for w in range(1, n + 1)
        )
        type2 = _num(rs, shifted, eps(1) - dlt(1)) < 0 or any(
            _num(rs, shifted, eps(k) - dlt(1)) == 0 and _num(rs, lam, eps(1) - eps(k)) == 0
            for k in range(1, m + 1)
        )
    else:
        n = kind.n
        e = lambda i: basis_vector(kind, i)
        odd_simple = e(0) - e(1)
        type1 = _num(rs, lam, odd_simple) >= 0
        type2 = (
            _num(rs, shifted, e(0) + e(1)) < 0
            or any(
                _num(rs, shifted, e(0) + e(k)) == 0 and _num(rs, lam, e(1) - e(k)) == 0
                for k in range(1, n + 1)
            )
            or all(x.a == 0 for x in lam.coords)
        )
    if type1:
        return Unitarity.TYPE1
    if type2:
        return Unitarity.TYPE2
    return Unitarity.NON_UNITARY


def parse_algebra(spec: str) -> AlgebraKind:
    """``gl:m,n`` or ``osp:n``."""
    try:
        tag, _, rest = spec.partition(":")
        nums = [int(t) for t in rest.split(",")]
    except ValueError:
        raise WeightSyntaxError(f"bad algebra spec {spec!r}") from None
    if tag == "gl" and len(nums) == 2:
        kind = AlgebraKind.gl(*nums)
    elif tag == "osp" and len(nums) == 1:
        kind = AlgebraKind.osp(nums[0])
    else:
        raise WeightSyntaxError(f"bad algebra spec {spec!r}; use gl:m,n or osp:n")
    make_algebra(kind)  # validates ranks
    return kind


def weight_from_ints(kind: AlgebraKind, values: Sequence) -> Weight:
    return Weight(kind, tuple(AffineInt(v) for v in values))
