"""The operator L on triples of sphere polynomials and its matrices L_k on V_k = Q_k^3."""
from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from . import exactla
from .harmonic import BERGER_TAU, BasisFamily, FamilySolver, basis, generated_basis
from .numfield import ZERO, FieldElem, sqrt, to_rational
from .polyops import SPHERE, Poly, apply_derivation, laplacian_berger, laplacian_round, sphere_inner

SQRT6 = sqrt(6)
JACOBI_SCALE = mpq(3, 8)


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class TripleField:
    components: tuple

    def __post_init__(self):
        if len(self.components) != 3:
            raise ValueError("a triple field has exactly three components")
        object.__setattr__(self, "components", tuple(
            c if isinstance(c, Poly) else Poly.const(SPHERE, c) for c in self.components))

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        return isinstance(other, TripleField) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def scale(self, c):
        return TripleField(tuple(f.scale(c) for f in self.components))

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.components) + ")"


def triple(f1=0, f2=0, f3=0) -> TripleField:
    return TripleField((f1, f2, f3))


def berger(f):
    return laplacian_berger(f, BERGER_TAU)


def apply_L(X: TripleField) -> TripleField:
    f1, f2, f3 = X.components
    d = apply_derivation
    r1 = -(berger(f1) + f1.scale(10)) + d(2, f2).scale(SQRT6) + d(3, f3).scale(SQRT6)
    r2 = -d(2, f1).scale(SQRT6) - berger(f2) - d(1, f3).scale(14)
    r3 = -d(3, f1).scale(SQRT6) + d(1, f2).scale(14) - berger(f3)
    return TripleField((r1, r2, r3))


def apply_Ltilde(X: TripleField) -> TripleField:
    return TripleField(tuple(-laplacian_round(f) for f in X.components))


@dataclass(frozen=True)
class OperatorMatrix:
    k: int
    basis: BasisFamily
    entries: list

    @property
    def dimension(self):
        return len(self.entries)

    @property
    def provenance(self):
        return self.basis.provenance


def slot_vectors(fam: BasisFamily):
    """Basis of V_k in slot order: every vector in component 1, then 2, then 3."""
    out = []
    for slot in range(3):
        for f in fam.vectors:
            comps = [Poly.zero(SPHERE)] * 3
            comps[slot] = f
            out.append(TripleField(tuple(comps)))
    return out


def assemble_matrix(k: int, fam: BasisFamily = None, source: str = "paper") -> OperatorMatrix:
    """Column j holds the coordinates of L applied to the j-th slot vector.

    Raises harmonic.ExpansionError if some image leaves V_k.
    """
    fam = fam if fam is not None else basis(k, source)
    if fam.k != k:
        raise ValueError("basis degree does not match k")
    solver = FamilySolver(fam)
    n = len(fam)
    cols = []
    for X in slot_vectors(fam):
        Y = apply_L(X)
        col = []
        for comp in Y.components:
            col.extend(solver.solve(comp))
        cols.append(col)
    N = 3 * n
    entries = [[cols[j][i] for j in range(N)] for i in range(N)]
    return OperatorMatrix(k, fam, entries)


def derivation_matrices(fam: BasisFamily):
    """{i: A_i} with d_i applied to basis vector j equal to sum_r b_r A_i[r][j]."""
    solver = FamilySolver(fam)
    out = {}
    for i in (1, 2, 3):
        cols = [solver.solve(apply_derivation(i, f)) for f in fam.vectors]
        out[i] = [[cols[j][r] for j in range(len(cols))] for r in range(len(cols))]
    return out


def block_formula(fam: BasisFamily):
    """L_k rebuilt from the representation matrices A_i and the Berger eigenvalues."""
    A = derivation_matrices(fam)
    solver = FamilySolver(fam)
    cols = [solver.solve(berger(f)) for f in fam.vectors]
    n = len(cols)
    D = [[cols[j][r] for j in range(n)] for r in range(n)]  # matrix of Delta_{1/6}

    def lin(*terms):
        return [[sum((M[r][c] * s for s, M in terms if M[r][c]), ZERO) for c in range(n)] for r in range(n)]

    s6 = SQRT6
    I10 = [[FieldElem.rational(10) if r == c else ZERO for c in range(n)] for r in range(n)]
    m1 = FieldElem.rational(-1)
    blocks = [
        [lin((m1, D), (m1, I10)), lin((s6, A[2])), lin((s6, A[3]))],
        [lin((-s6, A[2])), lin((m1, D)), lin((FieldElem.rational(-14), A[1]))],
        [lin((-s6, A[3])), lin((FieldElem.rational(14), A[1])), lin((m1, D))],
    ]
    return [[blocks[bi][bj][r][c] for bj in range(3) for c in range(n)] for bi in range(3) for r in range(n)]


def check_hermitian(M) -> bool:
    entries = M.entries if isinstance(M, OperatorMatrix) else M
    return exactla.is_hermitian(entries)


def jacobi_eigenvalue(mu_L):
    """Jacobi eigenvalue (3/8) mu_L, keeping the input's type."""
    if isinstance(mu_L, FieldElem):
        return mu_L.scale(JACOBI_SCALE)
    return JACOBI_SCALE * to_rational(mu_L)


def gram_matrix(fam: BasisFamily):
    """G[l][i] = <b_i, b_l> in the normalized L^2 product, extended to V_k slot by slot."""
    vecs = fam.vectors
    n = len(vecs)
    g = [[sphere_inner(vecs[i], vecs[l]) for i in range(n)] for l in range(n)]
    N = 3 * n
    G = [[ZERO] * N for _ in range(N)]
    for s in range(3):
        for l in range(n):
            for i in range(n):
                G[s * n + l][s * n + i] = g[l][i]
    return G


def hermitian_form(op: OperatorMatrix):
    """H = G L_k, the matrix of (X, Y) -> <L X, Y>; congruent to a Hermitian form with L_k's eigenvalue signs."""
    return exactla.mat_mul(gram_matrix(op.basis), op.entries)


@dataclass
class PositivityReport:
    k: int
    method: str
    dimension: int
    passed: bool
    inertia: tuple = None
    form_hermitian: bool = None
    min_eigenvalue: float = None
    bound: float = None
    residual_bound: float = None


DEFAULT_MAX_POSITIVITY_K = 8


def positivity_check(k: int, method: str = "exact_inertia", max_k: int = DEFAULT_MAX_POSITIVITY_K,
                     op: OperatorMatrix = None, tol: float = 1e-6) -> PositivityReport:
    if k < 5:
        raise ValueError("positivity_check covers k >= 5")
    if k > max_k:
        raise ResourceLimitError(f"k = {k} exceeds the configured limit {max_k}")
    op = op if op is not None else assemble_matrix(k, generated_basis(k))
    if method == "exact_inertia":
        H = hermitian_form(op)
        herm = exactla.is_hermitian(H)
        if not herm:
            return PositivityReport(k, method, op.dimension, False, form_hermitian=False)
        tri = exactla.inertia(H, check=False).as_tuple()
        return PositivityReport(k, method, op.dimension, tri == (op.dimension, 0, 0), inertia=tri, form_hermitian=True)
    if method == "float_bound":
        from .floatoracle import float_spectrum_generalized
        spec = float_spectrum_generalized(op.entries, gram_matrix(op.basis))
        lo = spec.eigenvalues[0]
        return PositivityReport(k, method, op.dimension, lo >= 1.5 - tol, min_eigenvalue=lo, bound=1.5,
                                residual_bound=spec.residual_bound)
    raise ValueError(f"unknown method {method!r}")
