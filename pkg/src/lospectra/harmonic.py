"""Harmonic polynomial spaces Q_k = sum of Q_k^m on S^3 and their bases."""
from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .exactla import kernel, solve_independent_rows
from .numfield import I, ONE, ZERO, FieldElem, sqrt
from .polyops import SPHERE, Poly, apply_derivation, homogeneous_monomials, laplacian_berger, laplacian_C2, laplacian_round, sphere_gens

BERGER_TAU = mpq(1, 6)


class SpanMismatchError(ValueError):
    pass


class ExpansionError(ValueError):
    """A polynomial is not in the span of the given basis."""


@dataclass(frozen=True)
class BasisFamily:
    k: int
    blocks: tuple  # ((m, (Poly, ...)), ...)
    provenance: str = "generated"

    @property
    def vectors(self):
        return [f for _, fs in self.blocks for f in fs]

    @property
    def labels(self):
        return [m for m, fs in self.blocks for _ in fs]

    def __len__(self):
        return sum(len(fs) for _, fs in self.blocks)

    def block(self, m):
        for w, fs in self.blocks:
            if w == m:
                return fs
        return ()

    def weights(self):
        return [m for m, _ in self.blocks]


def build_Qkm(k: int, m: int):
    """Q-coefficient basis of harmonic degree-k polynomials of d1-weight m."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if abs(m) > k or (k - m) % 2:
        return []
    src = homogeneous_monomials(k, m)
    tgt = homogeneous_monomials(k - 2, m) if k >= 2 else []
    if not tgt:
        return [Poly(SPHERE, {mono: ONE}) for mono in src]
    row_of = {mono: r for r, mono in enumerate(tgt)}
    A = [[ZERO] * len(src) for _ in tgt]
    for c, mono in enumerate(src):
        for n, v in laplacian_C2(Poly(SPHERE, {mono: ONE})).terms.items():
            A[row_of[n]][c] = v
    _, vecs = kernel(A)
    return [Poly(SPHERE, {mono: x for mono, x in zip(src, v) if x}) for v in vecs]


def generated_basis(k: int) -> BasisFamily:
    """Machine basis of Q_k, weights in descending order k, k-2, ..., -k."""
    return BasisFamily(k, tuple((m, tuple(build_Qkm(k, m))) for m in range(k, -k - 1, -2)), "generated")


def paper_basis(k: int) -> BasisFamily:
    """The hand-normalized bases for k <= 4, in their printed block and vector order."""
    if not 0 <= k <= 4:
        raise ValueError(f"explicit bases exist only for 0 <= k <= 4, got {k}")
    z, zb, w, wb = sphere_gens()
    zz = z * zb  # |z|^2
    ww = w * wb
    one = Poly.const(SPHERE, 1)
    h = mpq(1, 2)
    s2, s3, s6 = sqrt(2), sqrt(3), sqrt(6)
    if k == 0:
        blocks = [(0, [one])]
    elif k == 1:
        blocks = [(1, [z, w]), (-1, [zb, wb])]
    elif k == 2:
        blocks = [
            (2, [z * z, z * w, w * w]),
            (-2, [zb * zb, zb * wb, wb * wb]),
            (0, [(zz - ww) * s2.inverse(), z * wb * s2, zb * w * s2]),
        ]
    elif k == 3:
        r = s3.inverse()
        a = zz * r - ww * (2 * r)
        b = zz * (2 * r) - ww * r
        blocks = [
            (3, [z ** 3, z * z * w, z * w * w, w ** 3]),
            (-3, [zb ** 3, zb * zb * wb, wb * wb * zb, wb ** 3]),
            (1, [z * z * wb * s3, a * z, b * w, w * w * zb * s3]),
            (-1, [zb * zb * w * s3, a * zb, b * wb, wb * wb * z * s3]),
        ]
    else:
        p = zz * h - ww * (3 * h)
        q = zz - ww
        r = zz * (3 * h) - ww * h
        c32 = sqrt(mpq(3, 2))
        c16 = sqrt(mpq(1, 6))
        blocks = [
            (4, [z ** 4, z ** 3 * w, z * z * w * w, z * w ** 3, w ** 4]),
            (-4, [zb ** 4, zb ** 3 * wb, zb * zb * wb * wb, zb * wb ** 3, wb ** 4]),
            (2, [z ** 3 * wb * (-2), z * z * p, z * w * q, w * w * r, w ** 3 * zb * 2]),
            (-2, [zb ** 3 * w * (-2), zb * zb * p, zb * wb * q, wb * wb * r, wb ** 3 * z * 2]),
            (0, [(z * wb) ** 2 * s6, z * wb * (ww - zz) * c32, (zz * zz + ww * ww - zz * ww * 4) * c16,
                 zb * w * q * c32, (zb * w) ** 2 * s6]),
        ]
    return BasisFamily(k, tuple((m, tuple(fs)) for m, fs in blocks), "paper")


def basis(k: int, source: str = "paper") -> BasisFamily:
    if source == "paper":
        return paper_basis(k)
    if source == "generated":
        return generated_basis(k)
    raise ValueError(f"unknown basis source {source!r}")


def berger_eigenvalue(k: int, m: int, tau=BERGER_TAU):
    """gamma with Delta_tau f = -gamma f on Q_k^m; equals k(k+2) + 5m^2 at tau = 1/6."""
    return k * (k + 2) + m * m * (1 / mpq(tau) - 1)


@dataclass
class EigenReport:
    k: int
    m: int
    round_ok: bool
    weight_ok: bool
    berger_ok: bool
    harmonic_ok: bool
    gamma_round: int
    gamma_berger: object
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def verify_eigen(f: Poly, k: int, m: int, tau=BERGER_TAU) -> EigenReport:
    if not f.is_homogeneous(k):
        raise ValueError(f"polynomial is not homogeneous of degree {k}")
    g_round = k * (k + 2)
    g_berger = berger_eigenvalue(k, m, tau)
    round_ok = laplacian_round(f) == f.scale(-g_round)
    weight_ok = apply_derivation(1, f) == f.scale(I * m)
    berger_ok = laplacian_berger(f, tau) == f.scale(-g_berger)
    harmonic_ok = not laplacian_C2(f)
    failures = [name for name, ok in (("round Laplacian", round_ok), ("d1 weight", weight_ok),
                                      ("Berger Laplacian", berger_ok), ("C2 harmonicity", harmonic_ok)) if not ok]
    return EigenReport(k, m, round_ok, weight_ok, berger_ok, harmonic_ok, g_round, g_berger, failures)


def split_by_weight(f: Poly):
    parts = {}
    for mono, c in f.terms.items():
        wt = mono[0] - mono[1] + mono[2] - mono[3]
        parts.setdefault(wt, {})[mono] = c
    return {wt: Poly._raw(SPHERE, t) for wt, t in parts.items()}


class BlockSolver:
    """Exact coordinates of polynomials in one weight block of a basis."""

    def __init__(self, vectors):
        self.vectors = list(vectors)
        monos = sorted({mono for v in self.vectors for mono in v.terms})
        self.index = {mono: i for i, mono in enumerate(monos)}
        B = [[v.coeff(mono) for v in self.vectors] for mono in monos]
        rows, inv = solve_independent_rows(B)
        self.rows = [monos[r] for r in rows]
        self.inv = inv

    def solve(self, f: Poly):
        rhs = [f.coeff(mono) for mono in self.rows]
        x = []
        for row in self.inv:
            s = ZERO
            for a, b in zip(row, rhs):
                if a and b:
                    s = s + a * b
            x.append(s)
        recon = Poly.zero(SPHERE)
        for c, v in zip(x, self.vectors):
            if c:
                recon = recon + v.scale(c)
        if recon != f:
            raise ExpansionError("polynomial is outside the span of the block")
        return x


class FamilySolver:
    """Coordinates in a whole BasisFamily, solving weight block by weight block."""

    def __init__(self, fam: BasisFamily):
        self.family = fam
        self.offsets = {}
        self.solvers = {}
        pos = 0
        for m, fs in fam.blocks:
            self.offsets[m] = pos
            self.solvers[m] = BlockSolver(fs)
            pos += len(fs)
        self.size = pos

    def solve(self, f: Poly):
        x = [ZERO] * self.size
        for wt, part in split_by_weight(f).items():
            if wt not in self.solvers:
                raise ExpansionError(f"component of weight {wt} is outside Q_{self.family.k}")
            off = self.offsets[wt]
            for i, c in enumerate(self.solvers[wt].solve(part)):
                x[off + i] = c
        return x


def change_of_basis(A: BasisFamily, B: BasisFamily):
    """T with A = B T (columns of T are coordinates of A's vectors in B)."""
    if A.k != B.k:
        raise SpanMismatchError("bases have different degrees")
    if sorted(A.weights()) != sorted(B.weights()) or any(len(A.block(m)) != len(B.block(m)) for m in A.weights()):
        raise SpanMismatchError("bases have different block structure")
    solver = FamilySolver(B)
    cols = []
    for v in A.vectors:
        try:
            cols.append(solver.solve(v))
        except ExpansionError as exc:
            raise SpanMismatchError(str(exc)) from exc
    n = len(cols)
    return [[cols[j][i] for j in range(n)] for i in range(n)]
