"""Polynomials over the number field in four commuting generators.

Two rings share one implementation: ``sphere`` with generators z, zb, w, wb
(zb standing for the conjugate of z) and ``euclidean4`` with real
coordinates x1, y1, x2, y2.  On the sphere ring the right-invariant vector
fields d1, d2, d3 of S^3 = Sp(1) act as derivations through their values on
the generators; nothing is ever reduced modulo z*zb + w*wb = 1.
"""
from __future__ import annotations

import re
from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .numfield import I, ONE, ZERO, FieldElem, Rational, format_field, parse_field, to_rational

SPHERE = "sphere"
EUCLIDEAN4 = "euclidean4"

GENERATOR_NAMES = {
    SPHERE: ("z", "zb", "w", "wb"),
    EUCLIDEAN4: ("x1", "y1", "x2", "y2"),
}


class RingMismatchError(ValueError):
    pass


def mono_key(m):
    """Graded lexicographic sort key."""
    return (sum(m), m)


class Poly:
    """Immutable multivariate polynomial; ``terms`` maps exponent 4-tuples to FieldElem."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: str, terms=None):
        if ring not in GENERATOR_NAMES:
            raise ValueError(f"unknown ring tag {ring!r}")
        self.ring = ring
        t = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != 4 or any(e < 0 for e in m):
                    raise ValueError(f"bad monomial {m}")
                c = FieldElem.coerce(c)
                if c:
                    t[m] = t[m] + c if m in t else c
                    if not t[m]:
                        del t[m]
        self.terms = t

    @classmethod
    def _raw(cls, ring, terms):
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    @classmethod
    def const(cls, ring, c):
        c = FieldElem.coerce(c)
        return cls._raw(ring, {(0, 0, 0, 0): c} if c else {})

    @classmethod
    def gen(cls, ring, index):
        m = [0, 0, 0, 0]
        m[index] = 1
        return cls._raw(ring, {tuple(m): ONE})

    @classmethod
    def zero(cls, ring):
        return cls._raw(ring, {})

    # -- structure -----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, k=None):
        degs = {sum(m) for m in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (k is None or degs == {k})

    def weights(self):
        """Set of d1-weights a - b + c - d of the sphere monomials."""
        self._need(SPHERE)
        return {m[0] - m[1] + m[2] - m[3] for m in self.terms}

    def monomials(self):
        return sorted(self.terms, key=mono_key, reverse=True)

    def coeff(self, m):
        return self.terms.get(tuple(m), ZERO)

    def _need(self, ring):
        if self.ring != ring:
            raise RingMismatchError(f"operation needs ring {ring!r}, got {self.ring!r}")

    def _check(self, other):
        if not isinstance(other, Poly):
            return Poly.const(self.ring, other)
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot combine {self.ring} with {other.ring}")
        return other

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            if m in t:
                s = t[m] + c
                if s:
                    t[m] = s
                else:
                    del t[m]
            else:
                t[m] = c
        return Poly._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = FieldElem.coerce(c)
        if not c:
            return Poly.zero(self.ring)
        return Poly._raw(self.ring, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._check(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                v = c1 * c2
                if m in t:
                    v = t[m] + v
                    if v:
                        t[m] = v
                    else:
                        del t[m]
                elif v:
                    t[m] = v
        return Poly._raw(self.ring, t)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        result = Poly.const(self.ring, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == Poly.const(self.ring, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def conj(self):
        """Complex conjugate; on the sphere ring also swaps z<->zb and w<->wb."""
        if self.ring == SPHERE:
            return Poly._raw(SPHERE, {(m[1], m[0], m[3], m[2]): c.conj() for m, c in self.terms.items()})
        return Poly._raw(self.ring, {m: c.conj() for m, c in self.terms.items()})

    def evaluate(self, point):
        point = [FieldElem.coerce(p) for p in point]
        total = ZERO
        powers = [[ONE] for _ in range(4)]
        for m, c in self.terms.items():
            v = c
            for k, e in enumerate(m):
                pw = powers[k]
                while len(pw) <= e:
                    pw.append(pw[-1] * point[k])
                if e:
                    v = v * pw[e]
            total = total + v
        return total

    def diff(self, index):
        """Partial derivative with respect to generator ``index``."""
        t = {}
        for m, c in self.terms.items():
            e = m[index]
            if e:
                n = list(m)
                n[index] -= 1
                t[tuple(n)] = c * e
        return Poly._raw(self.ring, t)

    # -- text ------------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.ring!r}, {format_poly(self)!r})"


def sphere_gens():
    return tuple(Poly.gen(SPHERE, k) for k in range(4))


def euclid_gens():
    return tuple(Poly.gen(EUCLIDEAN4, k) for k in range(4))


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    names = GENERATOR_NAMES[p.ring]
    out = []
    for m in p.monomials():
        mono = "*".join(f"{n}^{e}" for n, e in zip(names, m))
        out.append(f"({format_field(p.terms[m])})*{mono}")
    return " + ".join(out)


def parse_poly(text: str, ring: str = SPHERE) -> Poly:
    text = text.strip()
    if text == "0":
        return Poly.zero(ring)
    names = GENERATOR_NAMES[ring]
    mono_re = re.compile(r"\)\*" + r"\*".join(rf"{n}\^(\d+)" for n in names))
    terms = {}
    pos = 0
    while pos < len(text):
        if text[pos] != "(":
            raise ValueError(f"malformed polynomial text at {pos}")
        # the coefficient ends at the ')' that is followed by the monomial
        m = mono_re.search(text, pos)
        if not m:
            raise ValueError(f"malformed polynomial text at {pos}")
        coeff = parse_field(text[pos + 1:m.start()])
        mono = tuple(int(g) for g in m.groups())
        if mono in terms:
            raise ValueError(f"repeated monomial {mono}")
        terms[mono] = coeff
        pos = m.end()
        if pos < len(text):
            if not text.startswith(" + ", pos):
                raise ValueError(f"expected ' + ' at {pos}")
            pos += 3
    return Poly(ring, terms)


# -- derivations on the sphere ring ------------------------------------------------

_MI = -I
# images of (z, zb, w, wb) under each derivation: (coefficient, target generator)
DERIVATION_TABLE = {
    1: ((I, 0), (_MI, 1), (I, 2), (_MI, 3)),
    2: ((-ONE, 3), (-ONE, 2), (ONE, 1), (ONE, 0)),
    3: ((_MI, 3), (I, 2), (I, 1), (_MI, 0)),
}


def derivation_table(i: int):
    """Images of the generators z, zb, w, wb under d_i, as sphere polynomials."""
    out = []
    for coef, tgt in DERIVATION_TABLE[i]:
        out.append(Poly.gen(SPHERE, tgt).scale(coef))
    return tuple(out)


@lru_cache(maxsize=None)
def _derive_mono(i, m):
    t = {}
    for g, e in enumerate(m):
        if not e:
            continue
        coef, tgt = DERIVATION_TABLE[i][g]
        n = list(m)
        n[g] -= 1
        n[tgt] += 1
        n = tuple(n)
        v = coef * e
        if n in t:
            v = t[n] + v
            if v:
                t[n] = v
            else:
                del t[n]
        else:
            t[n] = v
    return tuple(t.items())


def _apply_linear(f: Poly, mono_map):
    t = {}
    for m, c in f.terms.items():
        for n, v in mono_map(m):
            v = c * v
            if n in t:
                v = t[n] + v
                if v:
                    t[n] = v
                else:
                    del t[n]
            else:
                t[n] = v
    return Poly._raw(f.ring, t)


def apply_derivation(i: int, f: Poly) -> Poly:
    """d_i f by the Leibniz rule from the generator table."""
    if i not in (1, 2, 3):
        raise ValueError(f"derivation index must be 1, 2 or 3, got {i}")
    f._need(SPHERE)
    if i == 1:
        return Poly._raw(SPHERE, {m: c * I * (m[0] - m[1] + m[2] - m[3])
                                  for m, c in f.terms.items() if m[0] - m[1] + m[2] - m[3]})
    return _apply_linear(f, lambda m: _derive_mono(i, m))


# [d_i, d_j] = coefficient * d_k
BRACKETS = {
    (2, 3): (-2, 1),
    (1, 3): (2, 2),
    (1, 2): (-2, 3),
}


def bracket(i: int, j: int):
    """(coefficient, k) with [d_i, d_j] = coefficient * d_k."""
    if (i, j) in BRACKETS:
        return BRACKETS[i, j]
    c, k = BRACKETS[j, i]
    return -c, k


def commutator_check(i: int, j: int, f: Poly) -> Poly:
    """[d_i, d_j] f minus the bracket prediction; zero when the relation holds."""
    if i == j:
        raise ValueError("commutator needs distinct indices")
    lhs = apply_derivation(i, apply_derivation(j, f)) - apply_derivation(j, apply_derivation(i, f))
    c, k = bracket(i, j)
    return lhs - apply_derivation(k, f).scale(c)


@lru_cache(maxsize=None)
def _transverse_mono(m):
    """(d2^2 + d3^2) applied to a monomial."""
    acc = {}
    for i in (2, 3):
        for n, c in _derive_mono(i, m):
            for n2, c2 in _derive_mono(i, n):
                v = c * c2
                if n2 in acc:
                    acc[n2] = acc[n2] + v
                else:
                    acc[n2] = v
    return tuple((n, v) for n, v in acc.items() if v)


def laplacian_berger(f: Poly, tau=1) -> Poly:
    """(1/tau) d1^2 f + d2^2 f + d3^2 f."""
    tau = to_rational(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    f._need(SPHERE)
    inv_tau = 1 / tau

    def mono_map(m):
        wt = m[0] - m[1] + m[2] - m[3]
        out = list(_transverse_mono(m))
        if wt:
            out.append((m, FieldElem.rational(-wt * wt * inv_tau)))
        return out

    return _apply_linear(f, mono_map)


def laplacian_round(f: Poly) -> Poly:
    return laplacian_berger(f, 1)


def laplacian_C2(f: Poly) -> Poly:
    """Euclidean Laplacian on C^2 in Wirtinger form 4(d^2/dz dzb + d^2/dw dwb)."""
    f._need(SPHERE)
    t = {}
    for (a, b, c, d), v in f.terms.items():
        for n, k in (((a - 1, b - 1, c, d), a * b), ((a, b, c - 1, d - 1), c * d)):
            if k:
                w = v * (4 * k)
                if n in t:
                    w = t[n] + w
                    if w:
                        t[n] = w
                    else:
                        del t[n]
                else:
                    t[n] = w
    return Poly._raw(SPHERE, t)


def sphere_integral(m) -> Rational:
    """Average of the monomial z^a zb^b w^c wb^d over the unit S^3."""
    a, b, c, d = m
    if a != b or c != d:
        return mpq(0)
    return mpq(factorial(a) * factorial(c), factorial(a + c + 1))


def sphere_inner(f: Poly, g: Poly) -> FieldElem:
    """Normalized L^2 product: average of f * conj(g) over S^3."""
    f._need(SPHERE)
    total = ZERO
    gc = g.conj()
    for m1, c1 in f.terms.items():
        for m2, c2 in gc.terms.items():
            if m1[0] + m2[0] == m1[1] + m2[1] and m1[2] + m2[2] == m1[3] + m2[3]:
                total = total + (c1 * c2).scale(sphere_integral(
                    (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])))
    return total


def homogeneous_monomials(k: int, weight=None):
    """Degree-k sphere monomials (optionally of fixed weight), graded-lex ascending."""
    out = []
    for a in range(k + 1):
        for b in range(k + 1 - a):
            for c in range(k + 1 - a - b):
                d = k - a - b - c
                if weight is None or a - b + c - d == weight:
                    out.append((a, b, c, d))
    out.sort(key=mono_key)
    return out


# -- euclidean ring helpers ------------------------------------------------------

def reduce_sphere_relation(f: Poly, radius_sq) -> Poly:
    """Normal form modulo x1^2 + y1^2 + x2^2 + y2^2 = radius_sq (rewrites y2^2)."""
    f._need(EUCLIDEAN4)
    r2 = FieldElem.coerce(to_rational(radius_sq))
    t = {}

    def add(m, v):
        if m in t:
            v = t[m] + v
            if v:
                t[m] = v
            else:
                del t[m]
        elif v:
            t[m] = v

    work = list(f.terms.items())
    while work:
        m, c = work.pop()
        if m[3] < 2:
            add(m, c)
            continue
        base = (m[0], m[1], m[2], m[3] - 2)
        work.append((base, c * r2))
        work.append(((base[0] + 2, base[1], base[2], base[3]), -c))
        work.append(((base[0], base[1] + 2, base[2], base[3]), -c))
        work.append(((base[0], base[1], base[2] + 2, base[3]), -c))
    return Poly._raw(EUCLIDEAN4, t)
