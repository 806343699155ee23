"""Exact Laurent polynomials and rational functions in q, p = q^alpha, A = q^(alpha^2).

Exponents live on the half-integer lattice and are stored doubled, so the
monomial ``q^(1/2) p^(-1)`` is ``Monomial(1, -2, 0)``.

Rational functions keep the q-number binomials ``q^x - q^(-x)`` that appear in
their numerator and denominator as a multiset of symbolic factors.  Sums use
the least common multiple of those factor multisets, which keeps expressions
built from q-numbers small without any polynomial GCD.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Optional, Tuple

import mpmath
import numpy as np

from .errors import DivisionByZero, LimitDiverges, NonHalfIntegerExponent, PoleAtPoint

try:  # GMP multiplication is much faster on the huge packed integers below
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover
    _bigint = int


class Monomial(NamedTuple):
    """``q^(eq2/2) p^(ep2/2) A^(ea2/2)``; ordered lexicographically."""

    eq2: int = 0
    ep2: int = 0
    ea2: int = 0


IDENTITY = Monomial(0, 0, 0)


def _half(n):
    return Fraction(n, 2)


def _format_exp(n2):
    if n2 % 2 == 0:
        return str(n2 // 2)
    return f"{n2}/2"


# ---------------------------------------------------------------------------
# LaurentPoly


class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients.

    ``terms`` maps :class:`Monomial` (or plain 3-tuples) to nonzero ints.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Tuple[int, int, int], int]] = None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {tuple(m): int(c) for m, c in terms.items() if c}

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, mono=IDENTITY, coeff=1):
        return cls._raw({tuple(mono): coeff} if coeff else {})

    @classmethod
    def constant(cls, c):
        return cls.monomial(IDENTITY, int(c))

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and IDENTITY in self.terms)

    def __len__(self):
        return len(self.terms)

    # -- ring operations --------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            return LaurentPoly._raw({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(_mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only exist for monomials")
            (m, c), = self.terms.items()
            if abs(c) != 1:
                raise ValueError("monomial with non-unit coefficient is not invertible")
            return LaurentPoly._raw({(-m[0] * -k, -m[1] * -k, -m[2] * -k): c ** -k})
        out = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def shift(self, mono):
        """Multiply by the monomial ``mono`` (a doubled-exponent triple)."""
        a, b, c = mono
        return LaurentPoly._raw(
            {(m[0] + a, m[1] + b, m[2] + c): v for m, v in self.terms.items()}
        )

    def mul_binomial(self, f):
        """Multiply by ``q^(a) p^(b) - q^(-a) p^(-b)`` with ``f = (2a, 2b)``."""
        a2, b2 = f
        out = {}
        get = out.get
        for (x, y, z), c in self.terms.items():
            k1 = (x + a2, y + b2, z)
            k2 = (x - a2, y - b2, z)
            out[k1] = get(k1, 0) + c
            out[k2] = get(k2, 0) - c
        return LaurentPoly._raw({m: c for m, c in out.items() if c})

    def divide_binomial(self, f):
        """Exact quotient by the binomial ``f`` or ``None`` if it does not divide."""
        q = _divide_binomial(self.terms, f)
        return None if q is None else LaurentPoly._raw(q)

    # -- structure --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def monomials(self):
        return sorted(self.terms)

    def leading(self):
        m = max(self.terms)
        return Monomial(*m), self.terms[m]

    def trailing(self):
        m = min(self.terms)
        return Monomial(*m), self.terms[m]

    def content(self):
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        return g

    def exact_div_int(self, g):
        return LaurentPoly._raw({m: c // g for m, c in self.terms.items()})

    # -- rendering --------------------------------------------------------
    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = [
                f"{v}^{{{_format_exp(e)}}}" for v, e in zip("qpA", m) if e
            ]
            mag = abs(c)
            if factors:
                body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"

    def to_json(self):
        return [
            {"eq2": m[0], "ep2": m[1], "ea2": m[2], "coeff": str(self.terms[m])}
            for m in sorted(self.terms)
        ]

    @classmethod
    def from_json(cls, records):
        terms = {}
        for r in records:
            m = (int(r["eq2"]), int(r["ep2"]), int(r["ea2"]))
            terms[m] = terms.get(m, 0) + int(r["coeff"])
        return cls(terms)

    # -- numerics ---------------------------------------------------------
    def evaluate(self, sq, sp, sa):
        """Evaluate with ``sq = q^(1/2)``, ``sp = p^(1/2)``, ``sa = A^(1/2)`` (mpmath)."""
        total = mpmath.mpf(0)
        for (x, y, z), c in self.terms.items():
            total += c * sq ** x * sp ** y * sa ** z
        return total

    def abs_evaluate(self, sq, sp, sa):
        total = mpmath.mpf(0)
        for (x, y, z), c in self.terms.items():
            total += abs(c) * sq ** x * sp ** y * sa ** z
        return total


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly.constant(1)


def _mul_terms(a, b):
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return {}
    if len(a) == 1:
        ((x, y, z), c), = a.items()
        return {(m[0] + x, m[1] + y, m[2] + z): v * c for m, v in b.items()}
    if len(a) * len(b) > 4000:
        out = _kronecker_mul(a, b)
        if out is not None:
            return out
    out = {}
    get = out.get
    bi = list(b.items())
    for (x, y, z), c in a.items():
        for (u, v, w), d in bi:
            k = (x + u, y + v, z + w)
            out[k] = get(k, 0) + c * d
    return {m: c for m, c in out.items() if c}


def _pack(idx, coeffs, nslots, width):
    buf = bytearray(nslots * width)
    for i, c in zip(idx, coeffs):
        o = i * width
        buf[o:o + width] = c.to_bytes(width, "little")
    return _bigint(int.from_bytes(buf, "little"))


def _kronecker_mul(a, b):
    """Multiply by packing both operands into big integers (Kronecker substitution)."""
    ka = np.array(list(a.keys()), dtype=np.int64)
    kb = np.array(list(b.keys()), dtype=np.int64)
    lo_a, lo_b = ka.min(axis=0), kb.min(axis=0)
    span = (ka.max(axis=0) - lo_a) + (kb.max(axis=0) - lo_b) + 1
    nslots = int(span[0]) * int(span[1]) * int(span[2])
    bound = max(abs(c) for c in a.values()) * sum(abs(c) for c in b.values())
    width = (bound.bit_length() + 7) // 8 + 1
    if nslots * width > 200_000_000 or nslots > 200 * len(a) * len(b):
        return None
    strides = np.array([1, span[0], span[0] * span[1]], dtype=np.int64)
    ia = ((ka - lo_a) @ strides).tolist()
    ib = ((kb - lo_b) @ strides).tolist()
    ca, cb = list(a.values()), list(b.values())

    def parts(idx, cs):
        pos = [(i, c) for i, c in zip(idx, cs) if c > 0]
        neg = [(i, -c) for i, c in zip(idx, cs) if c < 0]
        return ([i for i, _ in pos], [c for _, c in pos]), ([i for i, _ in neg], [c for _, c in neg])

    (pa_i, pa_c), (na_i, na_c) = parts(ia, ca)
    (pb_i, pb_c), (nb_i, nb_c) = parts(ib, cb)
    PA = _pack(pa_i, pa_c, nslots, width)
    NA = _pack(na_i, na_c, nslots, width)
    PB = _pack(pb_i, pb_c, nslots, width)
    NB = _pack(nb_i, nb_c, nslots, width)
    plus = PA * PB + NA * NB
    minus = PA * NB + NA * PB

    out = {}
    lo = lo_a + lo_b
    for packed, sign in ((plus, 1), (minus, -1)):
        raw = int(packed).to_bytes(nslots * width, "little")
        arr = np.frombuffer(raw, dtype=np.uint8).reshape(nslots, width)
        nz = np.flatnonzero(arr.any(axis=1))
        if not len(nz):
            continue
        ex = np.empty((len(nz), 3), dtype=np.int64)
        ex[:, 0] = nz % span[0] + lo[0]
        rest = nz // span[0]
        ex[:, 1] = rest % span[1] + lo[1]
        ex[:, 2] = rest // span[1] + lo[2]
        for i, e in zip(nz.tolist(), map(tuple, ex.tolist())):
            o = i * width
            v = int.from_bytes(raw[o:o + width], "little")
            out[e] = out.get(e, 0) + sign * v
    return {m: c for m, c in out.items() if c}


def _divide_binomial(terms, f):
    a2, b2 = f
    v0, v1 = 2 * a2, 2 * b2
    chains = {}
    for (x, y, z), c in terms.items():
        j = x // v0 if v0 else y // v1
        key = (x - j * v0, y - j * v1, z)
        chains.setdefault(key, []).append((j, c))
    out = {}
    for (bx, by, bz), entries in chains.items():
        if sum(c for _, c in entries) != 0:
            return None
        entries.sort()
        d = 0
        prev = None
        for j, c in entries:
            if prev is not None and d:
                for jj in range(prev, j):
                    out[(bx + jj * v0 + a2, by + jj * v1 + b2, bz)] = d
            d -= c
            prev = j
        # d == 0 at the top of the chain; the last stretch has no terms
    return out


# ---------------------------------------------------------------------------
# exponent helpers


@dataclass(frozen=True)
class AffineInt:
    """The q-number argument ``a + b*alpha``."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, other):
        return AffineInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return AffineInt(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return AffineInt(-self.a, -self.b)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def at(self, alpha0):
        return self.a + self.b * Fraction(alpha0)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*al"


@dataclass(frozen=True)
class QuadExponent:
    """The q-exponent ``a + b*alpha + c*alpha^2``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __add__(self, other):
        return QuadExponent(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other):
        return QuadExponent(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self):
        return QuadExponent(-self.a, -self.b, -self.c)

    def scale(self, s):
        s = Fraction(s)
        return QuadExponent(self.a * s, self.b * s, self.c * s)

    def is_zero(self):
        return self.a == 0 and self.b == 0 and self.c == 0

    def at(self, alpha0):
        x = Fraction(alpha0)
        return self.a + self.b * x + self.c * x * x

    def to_monomial(self):
        doubled = [2 * v for v in (self.a, self.b, self.c)]
        if any(d.denominator != 1 for d in doubled):
            raise NonHalfIntegerExponent(f"q^({self}) is not on the half-integer lattice")
        return Monomial(*(int(d) for d in doubled))

    def __str__(self):
        return f"{self.a} + {self.b}*al + {self.c}*al^2"


# ---------------------------------------------------------------------------
# RatFunc

# A factor (a2, b2) stands for the binomial q^(a2/2) p^(b2/2) - q^(-a2/2) p^(-b2/2),
# normalized so that its first nonzero entry is positive.
Factor = Tuple[int, int]
H_FACTOR: Factor = (2, 0)  # q - q^-1


def _normalize_factor(a2, b2):
    if a2 > 0 or (a2 == 0 and b2 > 0):
        return 1, (a2, b2)
    return -1, (-a2, -b2)


def _fmul(x, y):
    out = dict(x)
    for f, k in y.items():
        out[f] = out.get(f, 0) + k
    return out


def _fmin(x, y):
    return {f: min(k, y[f]) for f, k in x.items() if f in y}


def _fsub(x, y):
    return {f: k - y.get(f, 0) for f, k in x.items() if k - y.get(f, 0)}


def _expand(poly, factors):
    for f, k in sorted(factors.items()):
        for _ in range(k):
            poly = poly.mul_binomial(f)
    return poly


class RatFunc:
    """Exact rational function ``nu * prod(nf) / (du * prod(df))``.

    ``nu`` and ``du`` are :class:`LaurentPoly`; ``nf`` and ``df`` are factor
    multisets (dict factor -> multiplicity).  Instances are immutable.
    """

    __slots__ = ("nu", "nf", "du", "df", "_canon")

    def __init__(self, num=1, den=1):
        num = num if isinstance(num, LaurentPoly) else LaurentPoly.constant(num)
        den = den if isinstance(den, LaurentPoly) else LaurentPoly.constant(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        self._set(num, {}, den, {})

    def _set(self, nu, nf, du, df):
        if du.is_monomial() and not du.is_constant():
            (m, c), = du.terms.items()
            nu = nu.shift((-m[0], -m[1], -m[2]))
            du = LaurentPoly.constant(c)
        if du.is_constant():
            c = du.terms[IDENTITY]
            if c < 0:
                nu, du = -nu, -du
                c = -c
            if c != 1 and nu.content() % c == 0:
                nu, du = nu.exact_div_int(c), ONE_POLY
        if nu.is_zero():
            nf, du, df = {}, ONE_POLY, {}
        self.nu, self.nf, self.du, self.df = nu, nf, du, df
        self._canon = None

    @classmethod
    def _make(cls, nu, nf, du, df):
        common = _fmin(nf, df)
        if common:
            nf, df = _fsub(nf, common), _fsub(df, common)
        obj = cls.__new__(cls)
        obj._set(nu, nf, du, df)
        return obj

    @classmethod
    def monomial(cls, mono, coeff=1):
        return cls(LaurentPoly.monomial(mono, coeff))

    # -- coercion -----------------------------------------------------------
    @staticmethod
    def lift(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, LaurentPoly)):
            return RatFunc(x)
        return NotImplemented

    # -- predicates -----------------------------------------------------------
    def is_zero(self):
        return self.nu.is_zero()

    # -- field operations ---------------------------------------------------
    def __mul__(self, other):
        other = RatFunc.lift(other)
        if other is NotImplemented:
            return other
        return RatFunc._make(
            self.nu * other.nu, _fmul(self.nf, other.nf),
            self.du * other.du, _fmul(self.df, other.df),
        )

    __rmul__ = __mul__

    def __neg__(self):
        return RatFunc._make(-self.nu, self.nf, self.du, self.df)

    def __truediv__(self, other):
        other = RatFunc.lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.lift(other) * self.inverse()

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc._make(self.du, self.df, self.nu, self.nf)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** -k
        nf = {f: e * k for f, e in self.nf.items()}
        df = {f: e * k for f, e in self.df.items()}
        return RatFunc._make(self.nu ** k, nf, self.du ** k, df)

    def __add__(self, other):
        other = RatFunc.lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        common = _fmin(self.nf, other.nf)
        lcm = dict(self.df)
        for f, k in other.df.items():
            lcm[f] = max(lcm.get(f, 0), k)
        xa = _expand(self.nu, _fmul(_fsub(self.nf, common), _fsub(lcm, self.df)))
        ya = _expand(other.nu, _fmul(_fsub(other.nf, common), _fsub(lcm, other.df)))
        if self.du == other.du:
            nu, du = xa + ya, self.du
        else:
            nu, du = xa * other.du + ya * self.du, self.du * other.du
        return RatFunc._make(nu, common, du, lcm)

    __radd__ = __add__

    def __sub__(self, other):
        other = RatFunc.lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc.lift(other) + (-self)

    # -- equality by cross-multiplication -----------------------------------
    def __eq__(self, other):
        other = RatFunc.lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        left = _fmul(self.nf, other.df)
        right = _fmul(other.nf, self.df)
        common = _fmin(left, right)
        left, right = _fsub(left, common), _fsub(right, common)
        lhs = _expand(self.nu * other.du, left)
        rhs = _expand(other.nu * self.du, right)
        return lhs == rhs

    __hash__ = None

    # -- canonical form -----------------------------------------------------
    def reduced(self):
        """Cancel denominator factors that divide the numerator polynomial exactly."""
        nu, df = self.nu, dict(self.df)
        changed = False
        for f in sorted(df):
            while df.get(f):
                q = nu.divide_binomial(f)
                if q is None:
                    break
                nu, changed = q, True
                df[f] -= 1
                if not df[f]:
                    del df[f]
        if not changed:
            return self
        return RatFunc._make(nu, self.nf, self.du, df)

    def canonical(self):
        """Return ``(num, den)`` expanded and normalized.

        The trailing monomial of ``den`` is 1, its leading coefficient is
        positive and the integer content of ``num`` and ``den`` jointly is 1.
        """
        if self._canon is not None:
            return self._canon
        num = _expand(self.nu, self.nf)
        df = dict(self.df)
        for f in sorted(df):
            while df.get(f):
                q = num.divide_binomial(f)
                if q is None:
                    break
                num = q
                df[f] -= 1
        den = _expand(self.du, df)
        if num.is_zero():
            self._canon = (ZERO_POLY, ONE_POLY)
            return self._canon
        (tm, _) = den.trailing()
        inv = (-tm[0], -tm[1], -tm[2])
        num, den = num.shift(inv), den.shift(inv)
        g = math.gcd(num.content(), den.content())
        if g != 1:
            num, den = num.exact_div_int(g), den.exact_div_int(g)
        if den.leading()[1] < 0:
            num, den = -num, -den
        self._canon = (num, den)
        return self._canon

    @property
    def num(self):
        return self.canonical()[0]

    @property
    def den(self):
        return self.canonical()[1]

    def to_text(self):
        num, den = self.canonical()
        if den == ONE_POLY:
            return num.to_text()
        return f"({num.to_text()})/({den.to_text()})"

    __str__ = to_text

    def __repr__(self):
        return f"RatFunc({self.to_text()})"

    def to_json(self):
        num, den = self.canonical()
        return {"num": num.to_json(), "den": den.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(LaurentPoly.from_json(obj["num"]), LaurentPoly.from_json(obj["den"]))

    def a_exponents(self):
        """Set of A-exponents occurring in the canonical numerator and denominator.

        The binomial factors carry no A, and multiplying or exactly dividing by
        an A-free factor keeps the support of every A-graded component, so the
        set is read off nu and du without expanding.  The canonical shift moves
        du's trailing monomial to 1.
        """
        if self.is_zero():
            return {Fraction(0)}
        shift = self.du.trailing()[0][2]
        return {_half(m[2] - shift) for m in self.nu.terms} | {_half(m[2] - shift) for m in self.du.terms}

    def _a_exponents_slow(self):
        num, den = self.canonical()
        return {_half(m[2]) for m in num.terms} | {_half(m[2]) for m in den.terms}


ZERO = RatFunc(0)
ONE = RatFunc(1)


# ---------------------------------------------------------------------------
# constructors


def _bracket_args(x):
    if not isinstance(x, AffineInt):
        x = AffineInt(*x) if isinstance(x, tuple) else AffineInt(x)
    a2, b2 = 2 * x.a, 2 * x.b
    if a2.denominator != 1 or b2.denominator != 1:
        raise NonHalfIntegerExponent(f"[{x}]_q needs half-integer coefficients")
    return int(a2), int(b2)


def qnum(x) -> RatFunc:
    """The q-number ``[a + b*alpha]_q = (q^a p^b - q^-a p^-b) / (q - q^-1)``."""
    a2, b2 = _bracket_args(x)
    if a2 == 0 and b2 == 0:
        return ZERO
    sign, f = _normalize_factor(a2, b2)
    return RatFunc._make(LaurentPoly.constant(sign), {f: 1}, ONE_POLY, {H_FACTOR: 1})


def qbinom(x) -> RatFunc:
    """``q^x - q^-x`` as a rational function (no ``q - q^-1`` denominator)."""
    a2, b2 = _bracket_args(x)
    if a2 == 0 and b2 == 0:
        return ZERO
    sign, f = _normalize_factor(a2, b2)
    return RatFunc._make(LaurentPoly.constant(sign), {f: 1}, ONE_POLY, {})


def qpow(e: QuadExponent) -> RatFunc:
    """``q^(a + b*alpha + c*alpha^2)`` as the monomial ``q^a p^b A^c``."""
    return RatFunc.monomial(e.to_monomial())


def rf_add(x, y):
    return RatFunc.lift(x) + y


def rf_mul(x, y):
    return RatFunc.lift(x) * y


def rf_div(x, y):
    return RatFunc.lift(x) / y


def rf_neg(x):
    return -RatFunc.lift(x)


_RF_OPS = {"add": rf_add, "mul": rf_mul, "div": rf_div}


def rf_arith(x, y, op):
    if op == "neg":
        return rf_neg(x)
    return _RF_OPS[op](x, y)


# ---------------------------------------------------------------------------
# numerics


def _roots(q0, alpha0):
    q0, alpha0 = Fraction(q0), Fraction(alpha0)
    sq = mpmath.sqrt(mpmath.mpf(q0.numerator) / q0.denominator)
    a = mpmath.mpf(alpha0.numerator) / alpha0.denominator
    return sq, sq ** a, sq ** (a * a)


def _factor_value(f, sq, sp):
    a2, b2 = f
    t = sq ** a2 * sp ** b2
    return t - 1 / t


def _eval_once(x, q0, alpha0):
    return _eval_parts(x, *_roots(q0, alpha0))


def _eval_parts(x, sq, sp, sa):
    num = x.nu.evaluate(sq, sp, sa)
    den = x.du.evaluate(sq, sp, sa)
    for f, k in x.nf.items():
        num *= _factor_value(f, sq, sp) ** k
    for f, k in x.df.items():
        den *= _factor_value(f, sq, sp) ** k
    return num, den


def rf_eval(x: RatFunc, q0, alpha0=0, precision: int = 30):
    """Evaluate at ``q = q0`` and ``alpha = alpha0`` to ``precision`` digits."""
    q0, alpha0 = Fraction(q0), Fraction(alpha0)
    if q0 <= 0 or q0 == 1:
        raise ValueError("q0 must be positive and different from 1")
    x = RatFunc.lift(x)
    for f in x.df:
        if f[0] + f[1] * alpha0 == 0:
            raise PoleAtPoint(f"denominator factor {f} vanishes at alpha = {alpha0}")
    if x.is_zero():
        return mpmath.mpf(0)
    tol = mpmath.mpf(10) ** (-precision)
    dps = precision + 20
    prev = None
    while dps <= 64 * (precision + 20):
        with mpmath.workdps(dps):
            num, den = _eval_once(x, q0, alpha0)
            if x.du.is_monomial():
                val = num / den
            else:
                sq, sp, sa = _roots(q0, alpha0)
                noise = x.du.abs_evaluate(sq, sp, sa) * mpmath.mpf(10) ** (precision + 10 - dps)
                val = None if abs(x.du.evaluate(sq, sp, sa)) <= noise else num / den
            if val is not None and prev is not None:
                if abs(val - prev) <= max(abs(val), 1) * tol * mpmath.mpf(10) ** -5:
                    return +val
            prev = val
        dps *= 2
    if prev is None:
        raise PoleAtPoint("denominator vanishes at the evaluation point")
    raise PoleAtPoint("evaluation did not stabilize")


def rf_limit_q1(x: RatFunc, alpha0=0) -> Fraction:
    """The classical ``q -> 1`` limit at ``alpha = alpha0``.

    Products of q-numbers use ``[x]_q -> x`` directly; anything else falls
    back to high-precision evaluation near ``q = 1`` and extrapolation.
    """
    x = RatFunc.lift(x).reduced()
    alpha0 = Fraction(alpha0)
    for f in x.df:
        if f[0] + f[1] * alpha0 == 0:
            raise LimitDiverges(f"denominator factor {f} vanishes identically at alpha = {alpha0}")
    if x.is_zero() or any(f[0] + f[1] * alpha0 == 0 for f in x.nf):
        return Fraction(0)
    if not (x.nu.is_monomial() and x.du.is_monomial()):
        return _numeric_limit(x, alpha0)
    value = Fraction(next(iter(x.nu.terms.values())), next(iter(x.du.terms.values())))
    order = 0
    # each binomial behaves like 2*v*log(q)
    for fs, sign in ((x.nf, 1), (x.df, -1)):
        for (a2, b2), k in fs.items():
            v = Fraction(a2 + b2 * alpha0, 2)
            order += sign * k
            value *= (2 * v) ** (sign * k)
    if order > 0:
        return Fraction(0)
    if order < 0:
        raise LimitDiverges("pole at q = 1")
    return value


def _numeric_limit(x, alpha0, levels=10):
    with mpmath.workdps(400):
        hs = [mpmath.mpf(2) ** (-12 - j) for j in range(levels)]
        table = []
        for h in hs:
            sq = mpmath.sqrt(1 + h)
            a = mpmath.mpf(alpha0.numerator) / alpha0.denominator
            num, den = _eval_parts(x, sq, sq ** a, sq ** (a * a))
            if den == 0:
                raise LimitDiverges("denominator vanishes near q = 1")
            table.append(num / den)
        # Neville extrapolation to h = 0
        est = list(table)
        history = [est[-1]]
        for level in range(1, levels):
            est = [
                (hs[i + level] * est[i] - hs[i] * est[i + 1]) / (hs[i + level] - hs[i])
                for i in range(levels - level)
            ]
            history.append(est[-1])
        a, b = history[-1], history[-2]
        if abs(a - b) > mpmath.mpf(10) ** -20 * max(1, abs(a)):
            raise LimitDiverges("extrapolation does not stabilize")
        frac = Fraction(mpmath.nstr(a, 60, strip_zeros=False)).limit_denominator(10 ** 9)
        if abs(mpmath.mpf(frac.numerator) / frac.denominator - a) > mpmath.mpf(10) ** -15 * max(1, abs(a)):
            raise LimitDiverges("limit is not a recognizable rational")
        return frac
