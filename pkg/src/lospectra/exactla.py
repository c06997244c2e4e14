"""Exact dense linear algebra over FieldElem.

Matrices are plain lists of rows.  Polynomials over Q are lists of mpq,
lowest degree first.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from gmpy2 import mpq

from .numfield import ONE, ZERO, FieldElem, Rational, field_inverse, field_sign, format_field, parse_field, to_rational


class NotHermitianError(ValueError):
    pass


class IrrationalCoefficientError(ValueError):
    pass


def as_matrix(rows):
    return [[FieldElem.coerce(x) for x in row] for row in rows]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(n, m=None):
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def conj_transpose(M):
    return [[M[j][i].conj() for j in range(len(M))] for i in range(len(M[0]))] if M else []


def mat_mul(A, B):
    n, m = len(A), len(B[0])
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        row = out[i]
        for k, a in enumerate(A[i]):
            if not a:
                continue
            for j, b in enumerate(B[k]):
                if b:
                    row[j] = row[j] + a * b
    return out


def mat_vec(A, v):
    out = []
    for row in A:
        s = ZERO
        for a, x in zip(row, v):
            if a and x:
                s = s + a * x
        out.append(s)
    return out


def is_hermitian(M) -> bool:
    n = len(M)
    return all(M[i][j] == M[j][i].conj() for i in range(n) for j in range(i, n))


def approx_abs(a: FieldElem) -> float:
    """Cheap double approximation of |a|, used only to rank pivot candidates."""
    re_ = im = 0.0
    for d, (r, i) in a.coeffs.items():
        s = math.sqrt(d)
        re_ += float(r) * s
        im += float(i) * s
    return math.hypot(re_, im)


# -- elimination ---------------------------------------------------------------

def rref(M):
    """Reduced row echelon form.  Returns (R, pivot_columns); pivots leftmost, pivot entries 1."""
    R = [list(r) for r in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = field_inverse(R[r][c])
        R[r] = [x * inv if x else x for x in R[r]]
        piv = R[r]
        for i in range(rows):
            if i != r:
                f = R[i][c]
                if f:
                    R[i] = [x - f * y if y else x for x, y in zip(R[i], piv)]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M) -> int:
    return len(rref(M)[1]) if M else 0


def kernel(M):
    """(dimension, basis) of the right kernel {v : M v = 0}.

    One basis vector per free column f, with v[f] = 1 and other free entries 0.
    """
    if not M:
        return 0, []
    cols = len(M[0])
    R, pivots = rref(M)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for row, p in zip(R, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return len(basis), basis


def solve_independent_rows(B):
    """Pick a maximal set of independent rows of B (n x r of full column rank).

    Returns (row_indices, inverse of the selected r x r block).  Raises if B is rank deficient.
    """
    r = len(B[0]) if B else 0
    if r == 0:
        return [], []
    # eliminate on the transpose to find pivot rows
    T = [[B[i][j] for i in range(len(B))] for j in range(r)]
    _, piv = rref(T)
    if len(piv) < r:
        raise ValueError("columns are linearly dependent")
    sub = [list(B[i]) for i in piv]
    return piv, invert(sub)


def invert(M):
    n = len(M)
    aug = [list(M[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


# -- rational polynomials -------------------------------------------------------

def qpoly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return qpoly_trim(out)


def qpoly_add(a, b):
    n = max(len(a), len(b))
    return qpoly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def qpoly_pow(a, e):
    out = [mpq(1)]
    for _ in range(e):
        out = qpoly_mul(out, a)
    return out


def qpoly_eval(p, x):
    acc = mpq(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def qpoly_divmod(a, b):
    a = [mpq(x) for x in a]
    b = qpoly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = qpoly_trim(a)
    return qpoly_trim(q), a


def qpoly_deriv(p):
    return qpoly_trim([p[i] * i for i in range(1, len(p))])


def qpoly_gcd(a, b):
    a, b = qpoly_trim(a), qpoly_trim(b)
    while b:
        _, r = qpoly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def squarefree_decomposition(p):
    """Yun's algorithm: list of (squarefree factor, multiplicity) with p = lead * prod f^m."""
    p = qpoly_trim(p)
    if len(p) <= 1:
        return []
    lead = p[-1]
    p = [c / lead for c in p]
    out = []
    a = qpoly_gcd(p, qpoly_deriv(p))
    b, _ = qpoly_divmod(p, a)
    c, _ = qpoly_divmod(qpoly_deriv(p), a)
    d = qpoly_add(c, [-x for x in qpoly_deriv(b)])
    i = 1
    while len(b) > 1:
        a = qpoly_gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b, _ = qpoly_divmod(b, a)
        c, _ = qpoly_divmod(d, a)
        d = qpoly_add(c, [-x for x in qpoly_deriv(b)])
        i += 1
    return out


def sturm_root_intervals(p, eps=mpq(1, 10**12)):
    """Isolating intervals (lo, hi) of width < eps for the real roots of a squarefree p."""
    p = qpoly_trim(p)
    seq = [p, qpoly_deriv(p)]
    while len(seq[-1]) > 1:
        _, r = qpoly_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(x):
        signs = [s for s in (qpoly_eval(q, x) for q in seq) if s != 0]
        return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))

    bound = 1 + max((abs(c / p[-1]) for c in p[:-1]), default=mpq(0))
    out = []

    def isolate(lo, hi, clo, chi):
        n = clo - chi
        if n == 0:
            return
        if n == 1 and hi - lo < eps:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        if qpoly_eval(p, mid) == 0:
            out.append((mid, mid))
            cm_left = changes(mid - eps / 4)
            cm_right = changes(mid + eps / 4)
            isolate(lo, mid - eps / 4, clo, cm_left)
            isolate(mid + eps / 4, hi, cm_right, chi)
            return
        cm = changes(mid)
        isolate(lo, mid, clo, cm)
        isolate(mid, hi, cm, chi)

    lo, hi = -bound, bound
    isolate(lo, hi, changes(lo), changes(hi))
    out.sort()
    return out


def root_multiplicity(p, lambda0) -> int:
    """Multiplicity of the rational number lambda0 as a root, by repeated synthetic division."""
    q = charpoly_rational(p) if isinstance(p, CharPoly) else [to_rational(c) for c in p]
    x = to_rational(lambda0)
    q = qpoly_trim(q)
    m = 0
    while len(q) > 1 and qpoly_eval(q, x) == 0:
        q, _ = qpoly_divmod(q, [-x, mpq(1)])
        m += 1
    return m


# -- characteristic polynomials ---------------------------------------------------

@dataclass(frozen=True)
class CharPoly:
    """det(lambda I - M); coeffs[i] multiplies lambda^i, leading coefficient 1."""

    coeffs: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_rational(self):
        return all(c.is_rational() for c in self.coeffs)

    def is_real(self):
        return all(c.is_real() for c in self.coeffs)

    def rational_coeffs(self):
        return charpoly_rational(self)

    def __str__(self):
        return format_charpoly(self)


def charpoly_rational(p: CharPoly):
    if not p.is_rational():
        raise IrrationalCoefficientError("characteristic polynomial has non-rational coefficients")
    return [c.to_rational() for c in p.coeffs]


def charpoly(M) -> CharPoly:
    """Faddeev-LeVerrier trace recursion, exploiting sparsity of M."""
    n = len(M)
    sparse = [[(j, a) for j, a in enumerate(row) if a] for row in M]
    c = [ZERO] * (n + 1)
    c[n] = ONE
    Mk = None  # M_{k} with M_1 = I
    for k in range(1, n + 1):
        if Mk is None:
            # A * M_1 = A
            AM = [list(row) for row in M]
        else:
            AM = []
            for i in range(n):
                acc = [ZERO] * n
                for j, a in sparse[i]:
                    rj = Mk[j]
                    for t in range(n):
                        x = rj[t]
                        if x:
                            acc[t] = acc[t] + a * x
                AM.append(acc)
        tr = ZERO
        for i in range(n):
            tr = tr + AM[i][i]
        c[n - k] = tr.scale(mpq(-1, k))
        if k < n:
            for i in range(n):
                AM[i][i] = AM[i][i] + c[n - k]
            Mk = AM
    return CharPoly(tuple(c))


def _fpoly_mul(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    while out and not out[-1]:
        out.pop()
    return out


def _fpoly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else ZERO) - (b[i] if i < len(b) else ZERO) for i in range(n)]
    while out and not out[-1]:
        out.pop()
    return out


def _fpoly_exact_div_monic(a, b):
    """a / b for monic b, asserting zero remainder."""
    a = list(a)
    db = len(b) - 1
    if not a:
        return []
    q = [ZERO] * (len(a) - db)
    for s in range(len(a) - 1 - db, -1, -1):
        f = a[s + db]
        q[s] = f
        if f:
            for i in range(db + 1):
                if b[i]:
                    a[s + i] = a[s + i] - f * b[i]
    if any(a[:db]):
        raise ArithmeticError("inexact division in fraction-free elimination")
    while q and not q[-1]:
        q.pop()
    return q


def charpoly_bareiss(M) -> CharPoly:
    """det(lambda I - M) by fraction-free elimination over K[lambda].

    The pivots are leading principal minors of lambda I - M, hence monic, so every
    Bareiss division is an exact division by a monic polynomial.
    """
    n = len(M)
    A = [[([-M[i][j], ONE] if i == j else ([-M[i][j]] if M[i][j] else [])) for j in range(n)] for i in range(n)]
    prev = [ONE]
    for k in range(n - 1):
        piv = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                t = _fpoly_mul(piv, A[i][j])
                akj = A[k][j]
                if aik and akj:
                    t = _fpoly_sub(t, _fpoly_mul(aik, akj))
                A[i][j] = _fpoly_exact_div_monic(t, prev)
        prev = piv
    det = A[n - 1][n - 1] if n else [ONE]
    return CharPoly(tuple(det))


def format_charpoly(p: CharPoly, var: str = "lambda") -> str:
    parts = []
    for e in range(p.degree, -1, -1):
        c = p.coeffs[e]
        if not c:
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if c == ONE and e:
            parts.append(mono)
        elif e:
            parts.append(f"({format_field(c)})*{mono}")
        else:
            parts.append(f"({format_field(c)})")
    return " + ".join(parts) if parts else "0"


# -- polynomial expression parsing ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(lambda)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


def parse_qpoly(text: str):
    """Parse a rational polynomial expression in lambda with +, -, *, ^, parentheses.

    Accepts the expanded and the factored forms, e.g. "lambda^8*(lambda^5 - 220*lambda^4 + ...)^8".
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {pos}: {text[pos:pos + 10]!r}")
        tokens.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else None

    def take():
        nonlocal idx
        idx += 1
        return tokens[idx - 1]

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        acc = term()
        if sign < 0:
            acc = [-c for c in acc]
        while peek() in ("+", "-"):
            op = take()
            t = term()
            acc = qpoly_add(acc, t if op == "+" else [-c for c in t])
        return acc

    def term():
        acc = power()
        while peek() == "*":
            take()
            acc = qpoly_mul(acc, power())
        return acc

    def power():
        base = atom()
        if peek() == "^":
            take()
            e = take()
            if not e.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            base = qpoly_pow(base, int(e))
        return base

    def atom():
        t = take() if peek() is not None else None
        if t == "(":
            v = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return v
        if t == "lambda":
            return [mpq(0), mpq(1)]
        if t is not None and t[0].isdigit():
            return qpoly_trim([mpq(t)])
        raise ValueError(f"unexpected token {t!r}")

    out = expr()
    if idx != len(tokens):
        raise ValueError("trailing tokens in polynomial text")
    return out


def _split_top_level(text, sep=" + "):
    parts, depth, start, pos = [], 0, 0, 0
    while pos < len(text):
        ch = text[pos]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(sep, pos):
            parts.append(text[start:pos])
            pos += len(sep)
            start = pos
            continue
        pos += 1
    parts.append(text[start:])
    return parts


def parse_charpoly(text: str) -> CharPoly:
    """Inverse of format_charpoly; also accepts plain rational expressions."""
    if "sqrt(" not in text:
        return CharPoly(tuple(FieldElem.rational(c) for c in parse_qpoly(text)))
    coeffs = {}
    for part in _split_top_level(text):
        part = part.strip()
        m = re.fullmatch(r"(?:\((.*)\))?(?:\*?lambda(?:\^(\d+))?)?", part)
        if not m:
            raise ValueError(f"bad term {part!r}")
        c = parse_field(m.group(1)) if m.group(1) is not None else ONE
        e = 0 if "lambda" not in part else int(m.group(2) or 1)
        coeffs[e] = c
    deg = max(coeffs)
    return CharPoly(tuple(coeffs.get(e, ZERO) for e in range(deg + 1)))


def verify_factorization(p: CharPoly, factors) -> bool:
    """Exact equality of p with prod f^m; factors are (qpoly or text, multiplicity) pairs."""
    prod = [mpq(1)]
    for f, mult in factors:
        if isinstance(f, str):
            f = parse_qpoly(f)
        prod = qpoly_mul(prod, qpoly_pow([to_rational(c) for c in f], mult))
    if not p.is_rational():
        return False
    return qpoly_trim(charpoly_rational(p)) == prod


# -- inertia --------------------------------------------------------------------

@dataclass(frozen=True)
class InertiaTriple:
    n_plus: int
    n_zero: int
    n_minus: int

    def as_tuple(self):
        return (self.n_plus, self.n_zero, self.n_minus)


def inertia(M, check=True) -> InertiaTriple:
    """Inertia of a Hermitian matrix by LDL* with symmetric pivoting.

    Diagonal pivots are taken largest-first among the exactly nonzero candidates;
    when the remaining diagonal vanishes but an off-diagonal entry a does not, the
    2x2 block [[0, a], [conj a, 0]] is eliminated and contributes one +, one -.
    """
    if check and not is_hermitian(M):
        raise NotHermitianError("inertia needs a Hermitian matrix")
    A = [list(r) for r in M]
    active = list(range(len(A)))
    plus = minus = 0
    while active:
        cands = [i for i in active if A[i][i]]
        if cands:
            p = max(cands, key=lambda i: (approx_abs(A[i][i]), -i))
            d = A[p][p]
            s = field_sign(d)
            if s > 0:
                plus += 1
            else:
                minus += 1
            inv = field_inverse(d)
            active.remove(p)
            rowp = A[p]
            for i in active:
                a_ip = A[i][p]
                if not a_ip:
                    continue
                f = a_ip * inv
                Ai = A[i]
                for j in active:
                    x = rowp[j]
                    if x:
                        Ai[j] = Ai[j] - f * x
            continue
        pair = next(((i, j) for i in active for j in active if j > i and A[i][j]), None)
        if pair is None:
            break
        p, q = pair
        a = A[p][q]
        inv_a = field_inverse(a)
        inv_ac = inv_a.conj()
        plus += 1
        minus += 1
        active.remove(p)
        active.remove(q)
        rowp, rowq = A[p], A[q]
        for i in active:
            fp = A[i][p] * inv_ac if A[i][p] else None
            fq = A[i][q] * inv_a if A[i][q] else None
            if fp is None and fq is None:
                continue
            Ai = A[i]
            for j in active:
                delta = ZERO
                if fp is not None and rowq[j]:
                    delta = delta + fp * rowq[j]
                if fq is not None and rowp[j]:
                    delta = delta + fq * rowp[j]
                if delta:
                    Ai[j] = Ai[j] - delta
    zero = len(active)
    return InertiaTriple(plus, zero, minus)


# -- exact eigenvalue extraction ------------------------------------------------------

@dataclass(frozen=True)
class ExactRoot:
    """a + b*sqrt(d) with rational a, b and squarefree integer d (b = 0 for rational roots).

    exact is False for roots of irreducible factors of degree >= 3, which carry only ``approx``.
    """

    a: Rational
    b: Rational
    d: int
    multiplicity: int
    approx: float
    exact: bool = True

    @property
    def is_rational(self):
        return self.exact and self.b == 0

    def __str__(self):
        if not self.exact:
            return f"~{self.approx!r}"
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.d})"


def _squarefree_int(n: int):
    """(s, f) with n = f^2 * s; trial division, adequate for the small discriminants met here."""
    f = 1
    p = 2
    while p * p <= n and p < 10**6:
        while n % (p * p) == 0:
            n //= p * p
            f *= p
        p += 1
    return n, f


def exact_roots(p):
    """Real roots of a rational polynomial with multiplicities, ascending.

    Rational roots are found from float approximations and confirmed exactly;
    leftover quadratic factors give exact surds.
    """
    from fractions import Fraction

    coeffs = charpoly_rational(p) if isinstance(p, CharPoly) else [to_rational(c) for c in p]
    out = []
    for fac, mult in squarefree_decomposition(coeffs):
        rest = fac
        for lo, hi in sturm_root_intervals(fac):
            mid = (lo + hi) / 2
            guess = Fraction(int(mid.numerator), int(mid.denominator)).limit_denominator(10**4)
            r = mpq(guess.numerator, guess.denominator)
            if len(rest) > 1 and qpoly_eval(rest, r) == 0:
                rest, _ = qpoly_divmod(rest, [-r, mpq(1)])
                out.append(ExactRoot(r, mpq(0), 1, mult, float(r)))
        if len(rest) == 3:
            c, b, a = rest
            disc = b * b - 4 * a * c
            num, den = int(disc.numerator), int(disc.denominator)
            s, f = _squarefree_int(num * den)
            center = -b / (2 * a)
            half = mpq(f, den) / (2 * abs(a))
            val = math.sqrt(s)
            out.append(ExactRoot(center, -half, s, mult, float(center) - float(half) * val))
            out.append(ExactRoot(center, half, s, mult, float(center) + float(half) * val))
        elif len(rest) > 3:
            for lo, hi in sturm_root_intervals(rest):
                out.append(ExactRoot(mpq(0), mpq(0), 1, mult, float((lo + hi) / 2), exact=False))
    out.sort(key=lambda r: r.approx)
    return out
