"""Frames, connection data, group actions and the Killing-field map of the link in R^7.

Points of R^7 are (x1, y1, x2, y2, x3, x4, y4).  The link is parametrized by
S^3(2/3) in the first four coordinates through the graph map G.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from . import exactla
from .numfield import I, ONE, ZERO, FieldElem, sqrt, to_rational
from .polyops import EUCLIDEAN4, Poly, euclid_gens, reduce_sphere_relation

RADIUS = mpq(2, 3)
RADIUS_SQ = RADIUS * RADIUS
S5 = sqrt(5)
C_E2 = sqrt(mpq(3, 8))
C_E5 = sqrt(mpq(15, 8))
FRAME_LABELS = ("e1", "e2", "e3", "e4", "e5", "e6", "nu")


def P0():
    """Base point (2/3, 0, 0, 0, sqrt5/3, 0, 0)."""
    return tuple(FieldElem.coerce(v) for v in (RADIUS, 0, 0, 0, 0, 0, 0))[:4] + (S5.scale(mpq(1, 3)), ZERO, ZERO)


# -- frames ----------------------------------------------------------------------

@dataclass(frozen=True)
class FrameField:
    label: str
    components: tuple  # seven euclidean4 polynomials

    def at(self, x):
        return tuple(c.evaluate(x) for c in self.components)


def frame_fields():
    """The seven frame fields e1..e6, nu as polynomial maps R^4 -> R^7."""
    x1, y1, x2, y2 = euclid_gens()
    q = mpq
    a = x1 * x1 - y1 * y1 - x2 * x2 + y2 * y2
    b = x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2
    c = -x1 * x1 - x2 * x2 + y1 * y1 + y2 * y2
    s5 = S5
    e1 = [x * q(3, 2) for x in (-y1, x1, -y2, x2)] + [0, 0, 0]
    e2 = [-x2, y2, x1, -y1, (x1 * x2 - y1 * y2) * (s5 * -3), a * (s5 * q(3, 2)), (x1 * y1 + x2 * y2) * (s5 * 3)]
    e3 = [-y2, -x2, y1, x1, (x1 * y2 + x2 * y1) * (s5 * -3), (x1 * y1 - x2 * y2) * (s5 * 3), c * (s5 * q(3, 2))]
    e4 = [x * (s5 * q(1, 2)) for x in (x1, y1, x2, y2)] + [b * q(-3, 2), (x1 * x2 + y1 * y2) * -3, (x2 * y1 - x1 * y2) * -3]
    e5 = [-x2, y2, x1, -y1, (x1 * x2 - y1 * y2) * (s5 * q(3, 5)), a * (s5 * q(-3, 10)), (x1 * y1 + x2 * y2) * (s5 * q(-3, 5))]
    e6 = [-y2, -x2, y1, x1, (x1 * y2 + x2 * y1) * (s5 * q(3, 5)), (x1 * y1 - x2 * y2) * (s5 * q(-3, 5)), c * (s5 * q(-3, 10))]
    nu = [x1, y1, x2, y2, b * (s5 * q(3, 4)), (x1 * x2 + y1 * y2) * (s5 * q(3, 2)), (x2 * y1 - x1 * y2) * (s5 * q(3, 2))]

    def wrap(comps, scale=ONE):
        return tuple((p if isinstance(p, Poly) else Poly.const(EUCLIDEAN4, p)).scale(scale) for p in comps)

    raw = {"e1": wrap(e1), "e2": wrap(e2, C_E2), "e3": wrap(e3, C_E2), "e4": wrap(e4),
           "e5": wrap(e5, C_E5), "e6": wrap(e6, C_E5), "nu": wrap(nu)}
    return {k: FrameField(k, v) for k, v in raw.items()}


def complex_frames_at(x):
    """Frames from their complex form, with sqrt(-3/8) read as i*sqrt(3/8) (same for 15/8).

    A complex vector (c1, c2, c3, c4) with c3 real is flattened to
    (Re c1, Im c1, Re c2, Im c2, c3, Re c4, Im c4).
    """
    x1, y1, x2, y2 = (FieldElem.coerce(v) for v in x)
    z1 = x1 + I * y1
    z2 = x2 + I * y2
    zb1, zb2 = z1.conj(), z2.conj()
    q = mpq
    s5 = S5
    p = z1 * z2
    n1, n2 = z1 * zb1, z2 * zb2
    raw = {
        "e1": (I * z1 * q(3, 2), I * z2 * q(3, 2), ZERO, ZERO),
        "e2": tuple(C_E2 * t for t in (-zb2, zb1, -(p.conj() + p) * s5 * q(3, 2), (z1 * z1 - zb2 * zb2) * s5 * q(3, 2))),
        "e3": tuple(I * C_E2 * t for t in (-zb2, zb1, -(p.conj() - p) * s5 * q(3, 2), -(z1 * z1 + zb2 * zb2) * s5 * q(3, 2))),
        "e4": (z1 * s5 * q(1, 2), z2 * s5 * q(1, 2), (n1 - n2) * q(-3, 2), z1 * zb2 * -3),
        "e5": tuple(C_E5 * t for t in (-zb2, zb1, (p.conj() + p) * s5 * q(3, 10), -(z1 * z1 - zb2 * zb2) * s5 * q(3, 10))),
        "e6": tuple(I * C_E5 * t for t in (-zb2, zb1, (p.conj() - p) * s5 * q(3, 10), (z1 * z1 + zb2 * zb2) * s5 * q(3, 10))),
        "nu": (z1, z2, (n1 - n2) * s5 * q(3, 4), z1 * zb2 * s5 * q(3, 2)),
    }
    out = {}
    for k, (c1, c2, c3, c4) in raw.items():
        if not c3.is_real():
            raise ValueError(f"third component of {k} is not real")
        out[k] = (c1.real_part(), c1.imag_part(), c2.real_part(), c2.imag_part(), c3, c4.real_part(), c4.imag_part())
    return out


def dot(u, v):
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def graph_map(x):
    """G(x1, y1, x2, y2) in R^7."""
    x1, y1, x2, y2 = (FieldElem.coerce(v) for v in x)
    k = S5 * mpq(3, 4)
    return (x1, y1, x2, y2, k * (x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2),
            k * 2 * (x1 * x2 + y1 * y2), k * 2 * (y1 * x2 - y2 * x1))


def rational_sphere_points(n: int, radius=1, seed: int = 0):
    """n distinct exact points of S^3(radius) by inverse stereographic projection of rational v in R^3."""
    if n < 1:
        raise ValueError("need at least one point")
    r = to_rational(radius)
    rng = random.Random(seed)
    seen = set()
    out = []
    while len(out) < n:
        v = [mpq(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(3)]
        p = stereo_inverse(v, r)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def stereo_inverse(v, r=1):
    v = [to_rational(t) for t in v]
    s = sum(t * t for t in v)
    den = 1 + s
    return tuple(to_rational(r) * t for t in (2 * v[0] / den, 2 * v[1] / den, 2 * v[2] / den, (s - 1) / den))


def orthonormality_check(points=None, n: int = 50):
    """Exact Gram matrix of the frame at points of S^3(2/3); returns list of failing (point, i, j)."""
    points = points if points is not None else rational_sphere_points(n, RADIUS, seed=1)
    frames = frame_fields()
    bad = []
    for x in points:
        vecs = [frames[k].at(x) for k in FRAME_LABELS]
        for i in range(7):
            for j in range(i, 7):
                if dot(vecs[i], vecs[j]) != (ONE if i == j else ZERO):
                    bad.append((x, FRAME_LABELS[i], FRAME_LABELS[j]))
    return bad


# -- connection coefficients -------------------------------------------------------

def directional_derivative(frame: FrameField, v, x):
    """D_v of the extended field at x, v a vector whose first four entries move x."""
    out = []
    for comp in frame.components:
        s = ZERO
        for a in range(4):
            if v[a]:
                s = s + v[a] * comp.diff(a).evaluate(x)
        out.append(s)
    return tuple(out)


def connection_coefficients(x=None):
    """{(i, j): (c_1..c_6, c_nu)} with D_{e_i} e_j = sum_l c_l e_l + c_nu nu at G(x).

    x defaults to the base point (2/3, 0, 0, 0).  Raises if the projection does not
    reconstruct the derivative.
    """
    x = x if x is not None else (RADIUS, 0, 0, 0)
    x = tuple(FieldElem.coerce(t) for t in x)
    frames = frame_fields()
    at = {k: frames[k].at(x) for k in FRAME_LABELS}
    table = {}
    for i in (1, 2, 3):
        for j in range(1, 7):
            D = directional_derivative(frames[f"e{j}"], at[f"e{i}"], x)
            coeffs = tuple(dot(D, at[k]) for k in FRAME_LABELS)
            recon = [ZERO] * 7
            for c, k in zip(coeffs, FRAME_LABELS):
                recon = [r + c * a for r, a in zip(recon, at[k])]
            if tuple(recon) != D:
                raise ArithmeticError(f"projection of D_e{i} e{j} is incomplete")
            table[i, j] = coeffs
    return table


def _v(**kw):
    out = [ZERO] * 7
    for k, val in kw.items():
        out[FRAME_LABELS.index(k)] = FieldElem.coerce(val)
    return tuple(out)


def reference_connection():
    """The connection table (ambient derivative at the base point) as printed."""
    r = S5
    q = mpq
    return {
        (1, 1): _v(e4=r * q(-1, 2), nu=-1),
        (1, 2): _v(e3=q(-11, 4), e6=r * q(1, 4)),
        (1, 3): _v(e2=q(11, 4), e5=r * q(-1, 4)),
        (1, 4): _v(e1=r * q(1, 2)),
        (1, 5): _v(e3=r * q(1, 4), e6=q(-7, 4)),
        (1, 6): _v(e2=r * q(-1, 4), e5=q(7, 4)),
        (2, 1): _v(e3=q(1, 4), e6=r * q(1, 4)),
        (2, 2): _v(e4=r * q(1, 4), nu=-1),
        (2, 3): _v(e1=q(-1, 4)),
        (2, 4): _v(e2=r * q(-1, 4), e5=q(3, 4)),
        (2, 5): _v(e4=q(-3, 4)),
        (2, 6): _v(e1=r * q(-1, 4)),
        (3, 1): _v(e2=q(-1, 4), e5=r * q(-1, 4)),
        (3, 2): _v(e1=q(1, 4)),
        (3, 3): _v(e4=r * q(1, 4), nu=-1),
        (3, 4): _v(e3=r * q(-1, 4), e6=q(3, 4)),
        (3, 5): _v(e1=r * q(1, 4)),
        (3, 6): _v(e4=q(-3, 4)),
    }


def second_fundamental_form(table):
    """B[i][j] = normal (e4, e5, e6) part of D_{e_i} e_j."""
    return {(i, j): table[i, j][3:6] for i in (1, 2, 3) for j in (1, 2, 3)}


def normal_connection(table):
    """{(i, k): coefficients on (e4, e5, e6)} of the normal connection along e_i of e_k."""
    return {(i, k): table[i, k][3:6] for i in (1, 2, 3) for k in (4, 5, 6)}


@dataclass
class ShapeReport:
    btilde: list  # 3x3 matrix on (e4, e5, e6)
    mean_curvature: tuple
    tangential_geodesic: bool
    normal_laplacian: list  # 3x3 matrix of the normal Laplacian on e4, e5, e6
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def shape_operator_checks(table=None) -> ShapeReport:
    table = table if table is not None else connection_coefficients()
    B = second_fundamental_form(table)
    bt = [[sum((B[i, j][a] * B[i, j][b] for i in (1, 2, 3) for j in (1, 2, 3)), ZERO) for b in range(3)] for a in range(3)]
    H = tuple(sum((B[i, i][a] for i in (1, 2, 3)), ZERO) for a in range(3))
    # tangential part of D_{e_i} e_i vanishes (the e_i are geodesic fields on M)
    geo = all(not any(table[i, i][:3]) for i in (1, 2, 3))
    # connection coefficients are constant along M, and grad of e_i e_i vanishes, so the
    # normal Laplacian of e_k is sum_i w_i w_i with w_i the matrix of the normal connection along e_i
    W = normal_connection(table)
    lap = [[ZERO] * 3 for _ in range(3)]
    for i in (1, 2, 3):
        Wi = [[W[i, 4 + k][a] for k in range(3)] for a in range(3)]  # column k = image of e_{4+k}
        sq = exactla.mat_mul(Wi, Wi)
        lap = [[lap[a][b] + sq[a][b] for b in range(3)] for a in range(3)]
    expected_bt = [[FieldElem.coerce(mpq(15, 8) if a == b == 0 else (mpq(5, 8) if a == b else 0)) for b in range(3)]
                   for a in range(3)]
    expected_lap = [[FieldElem.coerce(mpq(-9, 8) if a == b == 0 else (mpq(-29, 8) if a == b else 0)) for b in range(3)]
                    for a in range(3)]
    failures = []
    if bt != expected_bt:
        failures.append("Btilde differs from diag(15/8, 5/8, 5/8)")
    if any(H):
        failures.append("mean curvature is nonzero")
    if not geo:
        failures.append("e_i are not geodesic")
    if lap != expected_lap:
        failures.append("normal Laplacian differs from diag(-9/8, -29/8, -29/8)")
    return ShapeReport(bt, H, geo, lap, failures)


def jacobi_coefficients(table=None):
    """Coefficients of the Jacobi operator in the normal frame.

    Returns (zero_order, first_order) where zero_order[k] multiplies xi_k e_k and
    first_order[(a, i, b)] multiplies (e_i xi_b) e_a, as read off from
    Delta^perp (xi X) = xi Delta^perp X + 2 sum (e_i xi) nabla_{e_i} X + (Delta_M xi) X,
    Btilde, and the curvature term 3X.
    """
    table = table if table is not None else connection_coefficients()
    rep = shape_operator_checks(table)
    W = normal_connection(table)
    zero = {4 + a: rep.normal_laplacian[a][a] + rep.btilde[a][a] + 3 for a in range(3)}
    first = {}
    for b in range(3):
        for i in (1, 2, 3):
            for a in range(3):
                c = W[i, 4 + b][a] * 2
                if c:
                    first[4 + a, i, 4 + b] = c
    return zero, first


# -- group actions -------------------------------------------------------------------

def _gauss(z):
    return FieldElem.coerce(z)


def on_unit_sphere(z1, z2):
    return (z1 * z1.conj() + z2 * z2.conj()) == ONE


def phi_hom(z1, z2):
    """The SO(3) image of the unit quaternion z1 + z2 j, as a 3x3 rational matrix."""
    z1, z2 = _gauss(z1), _gauss(z2)
    if not on_unit_sphere(z1, z2):
        raise ValueError("phi_hom needs |z1|^2 + |z2|^2 = 1")
    a = z1 * z2.conj()
    p = z1 * z2
    s = z1 * z1 - z2 * z2
    t = z1 * z1 + z2 * z2
    rows = [
        [z1 * z1.conj() - z2 * z2.conj(), a.real_part() * 2, a.imag_part() * 2],
        [p.real_part() * -2, s.real_part(), t.imag_part()],
        [p.imag_part() * 2, -s.imag_part(), t.real_part()],
    ]
    return [[e.to_rational() for e in row] for row in rows]


def quat_mul(P, Q):
    """(z1 + z2 j)(w1 + w2 j) = (z1 w1 - z2 conj(w2)) + (z1 w2 + z2 conj(w1)) j."""
    z1, z2 = (_gauss(t) for t in P)
    w1, w2 = (_gauss(t) for t in Q)
    return (z1 * w1 - z2 * w2.conj(), z1 * w2 + z2 * w1.conj())


def hopf_eta(z1, z2):
    """eta(z1, z2) = (|z1|^2 - |z2|^2, 2 z1 conj(z2)) as a real row vector of length 3."""
    z1, z2 = _gauss(z1), _gauss(z2)
    c = z1 * z2.conj() * 2
    return [(z1 * z1.conj() - z2 * z2.conj()).to_rational(), c.real_part().to_rational(), c.imag_part().to_rational()]


def _row_times(v, M):
    return [sum((FieldElem.coerce(v[i]) * FieldElem.coerce(M[i][j]) for i in range(len(v))), ZERO) for j in range(len(M[0]))]


def psi_action(x, y, Q):
    """(x, y) Psi(Q) = (x Q, y Phi(Q)) with x = (x1, y1, x2, y2) read as x1 + i y1 + (x2 + i y2) j."""
    x = [FieldElem.coerce(t) for t in x]
    xq = quat_mul((x[0] + I * x[1], x[2] + I * x[3]), Q)
    yp = _row_times(y, phi_hom(*Q))
    return (xq[0].real_part(), xq[0].imag_part(), xq[1].real_part(), xq[1].imag_part(), *yp)


def quaternion_from_point(p):
    return (_gauss(p[0]) + I * _gauss(p[1]), _gauss(p[2]) + I * _gauss(p[3]))


def _det3(M):
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def _matmul_q(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def on_link(p) -> bool:
    """p lies on M: its first four coordinates are on S^3(2/3) and p = G(x)."""
    x = p[:4]
    return sum((FieldElem.coerce(t) * FieldElem.coerce(t) for t in x), ZERO) == FieldElem.coerce(RADIUS_SQ) \
        and tuple(FieldElem.coerce(t) for t in p) == graph_map(x)


@dataclass
class GroupReport:
    configurations: int
    homomorphism_failures: int = 0
    so3_failures: int = 0
    eta_failures: int = 0
    invariance_failures: int = 0
    frame_equivariance_failures: int = 0

    @property
    def ok(self):
        return not (self.homomorphism_failures or self.so3_failures or self.eta_failures
                    or self.invariance_failures or self.frame_equivariance_failures)


def group_checks(n: int = 100, seed: int = 7) -> GroupReport:
    """Phi homomorphism and SO(3) membership, eta-equivariance, invariance of M under Psi."""
    qs = [quaternion_from_point(p) for p in rational_sphere_points(2 * n, 1, seed=seed)]
    xs = rational_sphere_points(n, RADIUS, seed=seed + 1)
    ident = [[mpq(int(i == j)) for j in range(3)] for i in range(3)]
    rep = GroupReport(n)
    for t in range(n):
        P, Q = qs[2 * t], qs[2 * t + 1]
        fP, fQ = phi_hom(*P), phi_hom(*Q)
        PQ = quat_mul(P, Q)
        if phi_hom(*PQ) != _matmul_q(fP, fQ):
            rep.homomorphism_failures += 1
        fT = [list(r) for r in zip(*fQ)]
        if _matmul_q(fT, fQ) != ident or _det3(fQ) != 1:
            rep.so3_failures += 1
        eta_pq = hopf_eta(*PQ)
        if eta_pq != [sum(a * b for a, b in zip(hopf_eta(*P), col)) for col in zip(*fQ)]:
            rep.eta_failures += 1
        p = graph_map(xs[t])
        moved = psi_action(p[:4], p[4:], Q)
        if not on_link(moved):
            rep.invariance_failures += 1
    return rep


def frame_equivariance_check(n: int = 3, seed: int = 11):
    """e_k(p0) Psi(Q) equals the polynomial frame at p0 Psi(Q), and the connection table is unchanged there."""
    frames = frame_fields()
    base = (FieldElem.coerce(RADIUS), ZERO, ZERO, ZERO)
    ref = connection_coefficients()
    failures = []
    for p in rational_sphere_points(n, 1, seed=seed):
        Q = quaternion_from_point(p)
        pq = psi_action(graph_map(base)[:4], graph_map(base)[4:], Q)
        x = pq[:4]
        if tuple(pq) != graph_map(x):
            failures.append(("base point image off the link", p))
            continue
        for k in FRAME_LABELS:
            v = frames[k].at(base)
            pushed = psi_action(v[:4], v[4:], Q)
            if tuple(pushed) != frames[k].at(x):
                failures.append((f"frame {k}", p))
        if connection_coefficients(x) != ref:
            failures.append(("connection table", p))
    return failures


# -- Killing fields ---------------------------------------------------------------------

@dataclass(frozen=True)
class SO7Generator:
    name: str
    A: tuple  # 7x7 rational rows

    def __post_init__(self):
        n = len(self.A)
        if any(self.A[i][j] != -self.A[j][i] for i in range(n) for j in range(n)):
            raise ValueError(f"{self.name} is not antisymmetric")


def _elementary(i, j):
    A = [[mpq(0)] * 7 for _ in range(7)]
    A[i][j] = mpq(1)
    A[j][i] = mpq(-1)
    return tuple(tuple(r) for r in A)


def so7_generators():
    """J_ij (1<=i<j<=4), K_ij (1<=i<j<=3) and W_ab (a<=4, b<=3) in that order."""
    gens = []
    for i in range(4):
        for j in range(i + 1, 4):
            gens.append(SO7Generator(f"J{i + 1}{j + 1}", _elementary(i, j)))
    for i in range(3):
        for j in range(i + 1, 3):
            gens.append(SO7Generator(f"K{i + 1}{j + 1}", _elementary(4 + i, 4 + j)))
    for a in range(4):
        for b in range(3):
            gens.append(SO7Generator(f"W{a + 1}{b + 1}", _elementary(a, 4 + b)))
    return gens


def generator_combination(coeffs: dict):
    """Antisymmetric matrix sum c * A for {name: c}."""
    by_name = {g.name: g for g in so7_generators()}
    A = [[mpq(0)] * 7 for _ in range(7)]
    for name, c in coeffs.items():
        G = by_name[name].A
        for i in range(7):
            for j in range(7):
                A[i][j] += to_rational(c) * G[i][j]
    return SO7Generator("+".join(f"{c}*{n}" for n, c in coeffs.items()), tuple(tuple(r) for r in A))


def killing_components(A):
    """The reduced polynomials <nu A, e_k> for k = 4, 5, 6 on S^3(2/3)."""
    frames = frame_fields()
    nu = frames["nu"].components
    rows = A.A if isinstance(A, SO7Generator) else A
    nuA = []
    for j in range(7):
        s = Poly.zero(EUCLIDEAN4)
        for i in range(7):
            if rows[i][j]:
                s = s + nu[i].scale(FieldElem.rational(rows[i][j]))
        nuA.append(s)
    out = []
    for k in ("e4", "e5", "e6"):
        e = frames[k].components
        s = Poly.zero(EUCLIDEAN4)
        for a, b in zip(nuA, e):
            if a and b:
                s = s + a * b
        out.append(reduce_sphere_relation(s, RADIUS_SQ))
    return tuple(out)


# (name, component, printed polynomial) rows; component 5 or 6, scaled by sqrt(8/15)
KILLING_TABLE = {
    ("J12", 5): "x1*y2 + x2*y1", ("J13", 5): "x1^2 + x2^2", ("J14", 5): "-x1*y1 + x2*y2",
    ("J23", 5): "x1*y1 - x2*y2", ("J24", 5): "-y1^2 - y2^2", ("J34", 5): "-x1*y2 - x2*y1",
    ("J12", 6): "-x1*x2 + y1*y2", ("J13", 6): "x1*y1 + x2*y2", ("J14", 6): "x1^2 + y2^2",
    ("J23", 6): "x2^2 + y1^2", ("J24", 6): "x1*y1 + x2*y2", ("J34", 6): "x1*x2 - y1*y2",
}

KNOWN_KERNEL = (
    {"J12": 1, "J34": 1},
    {"J13": 1, "J24": 1, "K12": 2},
    {"J14": 1, "J23": -1, "K13": -2},
    {"J12": 1, "K23": 1},
)


def parse_quadratic(text: str) -> Poly:
    """Small parser for sums of signed monomials like '-x1*y1 + x2^2' in x1, y1, x2, y2."""
    names = ("x1", "y1", "x2", "y2")
    out = Poly.zero(EUCLIDEAN4)
    for tok in text.replace("-", "+-").split("+"):
        tok = tok.strip()
        if not tok:
            continue
        sign = -1 if tok.startswith("-") else 1
        mono = [0, 0, 0, 0]
        for factor in tok.lstrip("-").strip().split("*"):
            base, _, e = factor.partition("^")
            mono[names.index(base.strip())] += int(e) if e else 1
        out = out + Poly(EUCLIDEAN4, {tuple(mono): sign})
    return out


@dataclass
class KillingReport:
    rank: int
    kernel_dimension: int
    kernel: list  # list of {generator name: coefficient}
    listed_in_kernel: list  # booleans for the four listed combinations
    killing_table: dict  # (name, component) -> (matches, computed text)

    @property
    def ok(self):
        return (self.rank == 17 and self.kernel_dimension == 4 and all(self.listed_in_kernel)
                and all(m for m, _ in self.killing_table.values()))


def killing_map() -> KillingReport:
    gens = so7_generators()
    images = [killing_components(g) for g in gens]
    monos = sorted({(k, m) for im in images for k, p in enumerate(im) for m in p.terms})
    M = [[im[k].coeff(m) for (k, m) in monos] for im in images]  # 21 rows
    rk = exactla.rank(M)
    # left kernel: combinations of generators mapped to zero
    MT = [[M[r][c] for r in range(len(M))] for c in range(len(monos))]
    dim, vecs = exactla.kernel(MT)
    kern = [{g.name: v[i].to_rational() for i, g in enumerate(gens) if v[i]} for v in vecs]
    listed = [not any(killing_components(generator_combination(c))) for c in KNOWN_KERNEL]
    scale = sqrt(mpq(8, 15))
    by_name = {g.name: im for g, im in zip(gens, images)}
    table = {}
    for (name, comp), text in KILLING_TABLE.items():
        got = by_name[name][comp - 4].scale(scale)
        want = reduce_sphere_relation(parse_quadratic(text), RADIUS_SQ)
        table[name, comp] = (got == want, str(got))
    return KillingReport(rk, dim, kern, listed, table)


def killing_e4_formula(W, x):
    """-(27/8) x W (x1^2+y1^2-x2^2-y2^2, 2(x1x2+y1y2), 2(x2y1-x1y2))^t at a point x."""
    x1, y1, x2, y2 = (FieldElem.coerce(t) for t in x)
    h = (x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2, (x1 * x2 + y1 * y2) * 2, (x2 * y1 - x1 * y2) * 2)
    xs = (x1, y1, x2, y2)
    s = ZERO
    for a in range(4):
        for b in range(3):
            if W[a][b]:
                s = s + xs[a] * h[b] * FieldElem.coerce(W[a][b])
    return s.scale(mpq(-27, 8))


def block_generator(J, W, K):
    A = [[mpq(0)] * 7 for _ in range(7)]
    for i in range(4):
        for j in range(4):
            A[i][j] = to_rational(J[i][j])
        for b in range(3):
            A[i][4 + b] = to_rational(W[i][b])
            A[4 + b][i] = -to_rational(W[i][b])
    for a in range(3):
        for b in range(3):
            A[4 + a][4 + b] = to_rational(K[a][b])
    return SO7Generator("block", tuple(tuple(r) for r in A))


def killing_e4_formula_check(W, J=None, K=None, n: int = 20, seed: int = 3) -> list:
    """Compare nu A e4^t with the closed formula at n rational points; returns mismatching points."""
    J = J if J is not None else [[0] * 4 for _ in range(4)]
    K = K if K is not None else [[0] * 3 for _ in range(3)]
    A = block_generator(J, W, K)
    frames = frame_fields()
    bad = []
    for x in rational_sphere_points(n, RADIUS, seed=seed):
        nu = frames["nu"].at(x)
        e4 = frames["e4"].at(x)
        nuA = [sum((nu[i] * FieldElem.rational(A.A[i][j]) for i in range(7) if A.A[i][j]), ZERO) for j in range(7)]
        if dot(nuA, e4) != killing_e4_formula(W, x):
            bad.append(x)
    return bad


def random_antisymmetric(n, rng):
    M = [[mpq(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = mpq(rng.randint(-5, 5), rng.randint(1, 3))
            M[i][j], M[j][i] = v, -v
    return M


def random_rational_matrix(r, c, rng):
    return [[mpq(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)]
