"""Floating-point Hermitian eigensolver used as an independent check on exact spectra.

Cyclic Jacobi rotations on the real symmetric embedding [[Re, -Im], [Im, Re]];
numpy only supplies array storage and vector arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import exactla
from .numfield import field_to_float


class ConvergenceError(RuntimeError):
    pass


@dataclass
class FloatSpectrum:
    eigenvalues: list
    residual_bound: float
    sweeps: int = 0


def to_complex_array(M):
    n = len(M)
    out = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(M):
        for j, a in enumerate(row):
            if a:
                out[i, j] = field_to_float(a)
    return out


def jacobi_eigh(S, tol=1e-14, max_sweeps=100):
    """Eigen-decomposition of a real symmetric array by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvectors as columns, sweeps used).
    """
    A = np.array(S, dtype=float)
    n = A.shape[0]
    V = np.eye(n)
    norm = np.linalg.norm(A)
    if n <= 1 or norm == 0.0:
        return np.diag(A).copy(), V, 0
    for sweep in range(1, max_sweeps + 1):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off < tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-18 * norm:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = A[:, p].copy()
                aq = A[:, q]
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap = A[p, :].copy()
                aq = A[q, :]
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                vp = V[:, p].copy()
                vq = V[:, q]
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise ConvergenceError(f"Jacobi rotations did not converge in {max_sweeps} sweeps")
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order], sweep


def hermitian_float_spectrum(H: np.ndarray, tol=1e-14) -> FloatSpectrum:
    """Spectrum of a complex Hermitian array via its 2n x 2n real embedding."""
    n = H.shape[0]
    S = np.block([[H.real, -H.imag], [H.imag, H.real]])
    S = (S + S.T) / 2
    w, V, sweeps = jacobi_eigh(S, tol)
    resid = float(np.max(np.linalg.norm(S @ V - V * w, axis=0))) if n else 0.0
    # every eigenvalue of H appears twice in the embedding
    vals = [float((w[2 * i] + w[2 * i + 1]) / 2) for i in range(n)]
    return FloatSpectrum(vals, resid, sweeps)


def float_spectrum(M, tol=1e-14) -> FloatSpectrum:
    entries = M.entries if hasattr(M, "entries") else M
    if not exactla.is_hermitian(entries):
        raise exactla.NotHermitianError("float_spectrum needs a Hermitian matrix")
    return hermitian_float_spectrum(to_complex_array(entries), tol)


def float_spectrum_generalized(M, G, tol=1e-14) -> FloatSpectrum:
    """Spectrum of M where G M is Hermitian for a positive definite Gram matrix G.

    With G = C C*, the matrix C^{-1} (G M) C^{-*} is Hermitian and similar to M.
    """
    Mf = to_complex_array(M)
    Gf = to_complex_array(G)
    C = np.linalg.cholesky(Gf)
    Ci = np.linalg.inv(C)
    S = Ci @ (Gf @ Mf) @ Ci.conj().T
    S = (S + S.conj().T) / 2
    return hermitian_float_spectrum(S, tol)


@dataclass
class ComparisonReport:
    passed: bool
    max_error: float
    exact_roots: list  # (approximate value, multiplicity)
    mismatches: list = field(default_factory=list)
    float_inertia: tuple = None
    exact_inertia: tuple = None


def exact_root_list(p):
    """(float value, multiplicity) of every real root of a rational charpoly, ascending."""
    coeffs = exactla.charpoly_rational(p) if isinstance(p, exactla.CharPoly) else list(p)
    roots = []
    for fac, mult in exactla.squarefree_decomposition(coeffs):
        for lo, hi in exactla.sturm_root_intervals(fac):
            roots.append((float((lo + hi) / 2), mult))
    roots.sort()
    return roots


def compare_spectra(exact, approx: FloatSpectrum, tol=1e-8, exact_inertia=None) -> ComparisonReport:
    roots = exact_root_list(exact)
    remaining = [m for _, m in roots]
    mismatches = []
    max_err = 0.0
    for lam in sorted(approx.eigenvalues):
        best = None
        for idx, (r, _) in enumerate(roots):
            if remaining[idx] and (best is None or abs(r - lam) < abs(roots[best][0] - lam)):
                best = idx
        if best is None:
            mismatches.append((lam, None))
            continue
        remaining[best] -= 1
        err = abs(roots[best][0] - lam)
        max_err = max(max_err, err)
        if err > tol:
            mismatches.append((lam, roots[best][0]))
    if any(remaining):
        mismatches.extend((None, roots[i][0]) for i, m in enumerate(remaining) if m)
    ev = approx.eigenvalues
    f_in = (sum(1 for x in ev if x > tol), sum(1 for x in ev if abs(x) <= tol), sum(1 for x in ev if x < -tol))
    ex_in = tuple(exact_inertia.as_tuple() if hasattr(exact_inertia, "as_tuple") else exact_inertia) \
        if exact_inertia is not None else None
    ok = not mismatches and (ex_in is None or ex_in == f_in)
    return ComparisonReport(ok, max_err, roots, mismatches, f_in, ex_in)
