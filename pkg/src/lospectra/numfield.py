"""Exact arithmetic in Q(i; sqrt2, sqrt3, sqrt5).

An element is stored as ``sum_d c_d * sqrt(d)`` with ``d`` running over the
eight square-free products of 2, 3 and 5 and each ``c_d`` a Gaussian
rational ``re + im*i``.  Coefficients are ``gmpy2.mpq`` values, which are
always in lowest terms with a positive denominator.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt

import gmpy2
from gmpy2 import mpq

__all__ = [
    "RADICANDS",
    "Rational",
    "to_rational",
    "FieldElem",
    "ZERO",
    "ONE",
    "I",
    "sqrt",
    "field_mul",
    "field_inverse",
    "field_sign",
    "field_to_float",
    "parse_field",
    "NonRealError",
]

RADICANDS = (1, 2, 3, 5, 6, 10, 15, 30)

Rational = type(mpq(0))

_Q0 = mpq(0)
_Q1 = mpq(1)


class NonRealError(ValueError):
    pass


def to_rational(x) -> Rational:
    if isinstance(x, Rational):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    if type(x) is type(gmpy2.mpz(0)):
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _build_product_table():
    table = {}
    for a in RADICANDS:
        for b in RADICANDS:
            g = gcd(a, b)
            table[a, b] = (g, a * b // (g * g))
    return table


# sqrt(a)*sqrt(b) = g*sqrt(a*b/g^2), g = gcd(a, b)
_PROD = _build_product_table()


def _squarefree_split(n: int):
    """Write a positive integer as s^2 * d with d square-free; d must be a radicand."""
    s, d = 1, 1
    for p in (2, 3, 5):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    if n != 1:
        r = isqrt(n)
        if r * r != n:
            raise ValueError("radicand has prime factors outside {2, 3, 5}")
        s *= r
    return s, d


class FieldElem:
    """Immutable element of Q(i, sqrt2, sqrt3, sqrt5)."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for d, (re_, im_) in coeffs.items():
                if d not in _PROD_KEYS:
                    raise ValueError(f"radicand {d} not in {RADICANDS}")
                re_ = to_rational(re_)
                im_ = to_rational(im_)
                if re_ or im_:
                    c[d] = (re_, im_)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = object.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q) -> "FieldElem":
        q = to_rational(q)
        return cls._raw({1: (q, _Q0)} if q else {})

    @classmethod
    def gaussian(cls, re_, im_=0) -> "FieldElem":
        return cls({1: (re_, im_)})

    @classmethod
    def coerce(cls, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, complex):
            raise TypeError("floating point values cannot be coerced exactly")
        return cls.rational(x)

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self):
        """Mapping radicand -> (re, im); absent radicands are zero."""
        return dict(self._c)

    def __bool__(self):
        return bool(self._c)

    def is_real(self) -> bool:
        return all(not im_ for _, im_ in self._c.values())

    def is_rational(self) -> bool:
        c = self._c
        return not c or (len(c) == 1 and 1 in c and not c[1][1])

    def to_rational(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._c[1][0] if self._c else _Q0

    def real_part(self) -> "FieldElem":
        return FieldElem._raw({d: (r, _Q0) for d, (r, _) in self._c.items() if r})

    def imag_part(self) -> "FieldElem":
        return FieldElem._raw({d: (i, _Q0) for d, (_, i) in self._c.items() if i})

    def conj(self) -> "FieldElem":
        return FieldElem._raw({d: (r, -i) for d, (r, i) in self._c.items()})

    def norm_sq(self) -> "FieldElem":
        return self * self.conj()

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem.coerce(other)
            except TypeError:
                return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for d, (r, i) in other._c.items():
            if d in c:
                r0, i0 = c[d]
                r += r0
                i += i0
                if r or i:
                    c[d] = (r, i)
                else:
                    del c[d]
            else:
                c[d] = (r, i)
        return FieldElem._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem._raw({d: (-r, -i) for d, (r, i) in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q) -> "FieldElem":
        q = to_rational(q)
        if not q:
            return ZERO
        return FieldElem._raw({d: (r * q, i * q) for d, (r, i) in self._c.items()})

    def __mul__(self, other):
        if not isinstance(other, FieldElem):
            if isinstance(other, (int, Rational, Fraction)):
                return self.scale(other)
            return NotImplemented
        a = self._c
        b = other._c
        if not a or not b:
            return ZERO
        out = {}
        prod = _PROD
        for d1, (r1, i1) in a.items():
            for d2, (r2, i2) in b.items():
                g, d = prod[d1, d2]
                if i1:
                    if i2:
                        re_ = r1 * r2 - i1 * i2
                        im_ = r1 * i2 + i1 * r2
                    else:
                        re_ = r1 * r2
                        im_ = i1 * r2
                elif i2:
                    re_ = r1 * r2
                    im_ = r1 * i2
                else:
                    re_ = r1 * r2
                    im_ = _Q0
                if g != 1:
                    re_ *= g
                    im_ *= g
                if d in out:
                    r0, i0 = out[d]
                    out[d] = (r0 + re_, i0 + im_)
                else:
                    out[d] = (re_, im_)
        return FieldElem._raw({d: v for d, v in out.items() if v[0] or v[1]})

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        return field_inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational, Fraction)):
            q = to_rational(other)
            if not q:
                raise ZeroDivisionError("division by zero in FieldElem")
            return self.scale(1 / q)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self * field_inverse(other)

    def __rtruediv__(self, other):
        return FieldElem.coerce(other) * field_inverse(self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return field_inverse(self) ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem.coerce(other)
            except TypeError:
                return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((d, (int(r.numerator), int(r.denominator), int(i.numerator), int(i.denominator)))
                                        for d, (r, i) in self._c.items()))
        return self._hash

    def sign(self) -> int:
        return field_sign(self)

    def __float__(self):
        z = field_to_float(self)
        if z.imag:
            raise NonRealError(f"{self} is not real")
        return z.real

    def __complex__(self):
        return field_to_float(self)

    def __str__(self):
        return format_field(self)

    def __repr__(self):
        return f"FieldElem({format_field(self)!r})"


_PROD_KEYS = frozenset(RADICANDS)

ZERO = FieldElem._raw({})
ONE = FieldElem._raw({1: (_Q1, _Q0)})
I = FieldElem._raw({1: (_Q0, _Q1)})


def sqrt(x) -> FieldElem:
    """Exact square root of a rational whose square-free part lies in the field.

    Negative arguments give ``i*sqrt(-x)``, so ``sqrt(-3/8) == i*sqrt(6)/4``.
    """
    q = to_rational(x)
    if not q:
        return ZERO
    neg = q < 0
    if neg:
        q = -q
    p, r = int(q.numerator), int(q.denominator)
    s, d = _squarefree_split(p * r)
    coef = mpq(s, r)
    return FieldElem._raw({d: (_Q0, coef) if neg else (coef, _Q0)})


def field_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


# -- inversion ---------------------------------------------------------------

def _mult_matrix(a: FieldElem):
    """16x16 rational matrix of x -> a*x in the basis (sqrt d, i*sqrt d)."""
    idx = {d: k for k, d in enumerate(RADICANDS)}
    n = 2 * len(RADICANDS)
    m = [[_Q0] * n for _ in range(n)]
    for d2 in RADICANDS:
        for part in (0, 1):
            col = 2 * idx[d2] + part
            for d1, (r, i) in a._c.items():
                g, d = _PROD[d1, d2]
                # (r + i*I) * (I^part) * sqrt(d1) * sqrt(d2)
                if part == 0:
                    re_, im_ = r * g, i * g
                else:
                    re_, im_ = -i * g, r * g
                row = 2 * idx[d]
                m[row][col] += re_
                m[row + 1][col] += im_
    return m


def _solve_rational(m, rhs):
    n = len(m)
    a = [row[:] + [rhs[k]] for k, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular multiplication matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        pr = a[col]
        for j in range(col, n + 1):
            pr[j] *= inv
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                row = a[r]
                for j in range(col, n + 1):
                    if pr[j]:
                        row[j] -= f * pr[j]
    return [a[r][n] for r in range(n)]


def field_inverse(a: FieldElem) -> FieldElem:
    """Multiplicative inverse; raises ZeroDivisionError on zero."""
    c = a._c
    if not c:
        raise ZeroDivisionError("inverse of zero FieldElem")
    if len(c) == 1:
        (d, (r, i)), = c.items()
        nrm = (r * r + i * i) * d
        return FieldElem._raw({d: (r / nrm, -i / nrm)})
    m = _mult_matrix(a)
    rhs = [_Q0] * 16
    rhs[0] = _Q1
    sol = _solve_rational(m, rhs)
    out = {}
    for k, d in enumerate(RADICANDS):
        r, i = sol[2 * k], sol[2 * k + 1]
        if r or i:
            out[d] = (r, i)
    return FieldElem._raw(out)


# -- sign and numerics -------------------------------------------------------

def _enclosure(a: FieldElem, part: int, bits: int):
    """Rational interval [lo, hi] (scaled by 2^bits as ints) containing the chosen part."""
    lo = hi = 0
    scale = 1 << bits
    for d, pair in a._c.items():
        c = pair[part]
        if not c:
            continue
        if d == 1:
            s_lo = s_hi = scale
        else:
            s_lo = isqrt(d * scale * scale)
            s_hi = s_lo + 1
        num, den = int(c.numerator), int(c.denominator)
        # c * [s_lo, s_hi] / den, rounded outward
        if num > 0:
            lo += (num * s_lo) // den
            hi += -((-num * s_hi) // den)
        else:
            lo += (num * s_hi) // den
            hi += -((-num * s_lo) // den)
    return lo, hi


def _part_sign(a: FieldElem, part: int) -> int:
    if all(not pair[part] for pair in a._c.values()):
        return 0
    bits = 64
    while True:
        lo, hi = _enclosure(a, part, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
        if bits > 1 << 20:  # pragma: no cover - a nonzero element always separates
            raise ArithmeticError("sign refinement did not terminate")


def field_sign(a: FieldElem) -> int:
    """Exact sign (-1, 0, 1) of a real element."""
    if not a.is_real():
        raise NonRealError(f"sign of non-real element {a}")
    return _part_sign(a, 0)


def _part_to_float(a: FieldElem, part: int, precision: int) -> float:
    if all(not pair[part] for pair in a._c.values()):
        return 0.0
    bits = precision + 16
    while True:
        lo, hi = _enclosure(a, part, bits)
        mid = lo + hi
        # width relative to magnitude below 2^-precision
        if (lo > 0 or hi < 0) and (hi - lo) * (1 << precision) <= min(abs(lo), abs(hi)):
            return float(mpq(mid, 2 << bits))
        bits *= 2


def field_to_float(a: FieldElem, precision: int = 53) -> complex:
    """Complex float with relative error below 2^(1-precision) per component."""
    return complex(_part_to_float(a, 0, precision), _part_to_float(a, 1, precision))


# -- canonical text ------------------------------------------------------------

def _fmt_q(q: Rational) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_field(a: FieldElem) -> str:
    """Canonical text, e.g. ``(1/2 + 0*i)*sqrt(1) + (0 + -3*i)*sqrt(6)``; zero is ``0``."""
    if not a._c:
        return "0"
    parts = []
    for d in sorted(a._c):
        r, i = a._c[d]
        parts.append(f"({_fmt_q(r)} + {_fmt_q(i)}*i)*sqrt({d})")
    return " + ".join(parts)


_TERM_RE = re.compile(r"\(\s*(-?\d+(?:/\d+)?)\s*\+\s*(-?\d+(?:/\d+)?)\*i\s*\)\*sqrt\((\d+)\)")


def parse_field(text: str) -> FieldElem:
    """Inverse of :func:`format_field`."""
    text = text.strip()
    if text == "0":
        return ZERO
    pos = 0
    out = {}
    while True:
        m = _TERM_RE.match(text, pos)
        if not m:
            raise ValueError(f"malformed field element text at {pos}: {text!r}")
        d = int(m.group(3))
        if d not in _PROD_KEYS or d in out:
            raise ValueError(f"bad radicand {d} in {text!r}")
        out[d] = (mpq(m.group(1)), mpq(m.group(2)))
        pos = m.end()
        if pos == len(text):
            break
        if not text.startswith(" + ", pos):
            raise ValueError(f"expected ' + ' at {pos} in {text!r}")
        pos += 3
    return FieldElem(out)


def fsum(items) -> FieldElem:
    return reduce(lambda x, y: x + y, items, ZERO)
