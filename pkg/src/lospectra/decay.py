"""Indicial roots -2 +- sqrt(4 + lambda) of the radial mode equation and a numeric decay demo.

Here lambda is a Jacobi eigenvalue, lambda = (3/8) mu with mu an eigenvalue of L.
A mode xi(t) of a Jacobi field on the cone, in the cylinder variable t = log|x|,
solves xi'' + 4 xi' - lambda xi = 0, whose characteristic roots are exactly the
indicial roots above.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpq

from .exactla import ExactRoot
from .numfield import Rational, to_rational

JACOBI_SCALE = mpq(3, 8)


class NegativeRadicandError(ValueError):
    pass


class DecayFitError(RuntimeError):
    pass


def _rational_sqrt(q: Rational):
    """Exact square root of a nonnegative rational, or None."""
    n, d = int(q.numerator), int(q.denominator)
    rn, rd = gmpy2.isqrt(n), gmpy2.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return mpq(int(rn), int(rd))
    return None


@dataclass(frozen=True)
class IndicialRoot:
    mu: object  # L eigenvalue: Rational, or ExactRoot for irrational ones
    jacobi_eigenvalue: object  # Rational, or float when irrational
    radicand: object
    plus: object  # exact Rational when the radicand is a rational square, else float
    minus: object
    multiplicity: int = 1

    @property
    def exact(self):
        return isinstance(self.plus, type(mpq(0)))

    def float_roots(self):
        return float(self.plus), float(self.minus)

    def vieta_ok(self) -> bool:
        """Sum of roots is -4 and product is -lambda (characteristic polynomial s^2 + 4s - lambda)."""
        if self.exact:
            return self.plus + self.minus == -4 and self.plus * self.minus == -self.jacobi_eigenvalue
        p, m = self.float_roots()
        lam = float(self.jacobi_eigenvalue)
        return math.isclose(p + m, -4, abs_tol=1e-12) and math.isclose(p * m, -lam, rel_tol=1e-12, abs_tol=1e-12)


def indicial_root(mu, multiplicity: int = 1) -> IndicialRoot:
    """Roots for one L eigenvalue mu (a rational or an ExactRoot)."""
    if isinstance(mu, ExactRoot) and not mu.is_rational:
        lam = JACOBI_SCALE * mu.approx
        rad = 4 + lam
        if rad < 0:
            raise NegativeRadicandError(f"4 + lambda = {rad} < 0")
        s = math.sqrt(rad)
        return IndicialRoot(mu, lam, rad, -2 + s, -2 - s, multiplicity)
    q = to_rational(mu.a if isinstance(mu, ExactRoot) else mu)
    lam = JACOBI_SCALE * q
    rad = 4 + lam
    if rad < 0:
        raise NegativeRadicandError(f"4 + lambda = {rad} < 0")
    r = _rational_sqrt(rad)
    if r is not None:
        return IndicialRoot(q, lam, rad, -2 + r, -2 - r, multiplicity)
    s = math.sqrt(float(rad))
    return IndicialRoot(q, lam, rad, -2 + s, -2 - s, multiplicity)


def indicial_roots(spectrum):
    """Table for a list of (mu, multiplicity), merged over equal eigenvalues, ordered by lambda."""
    merged = {}
    order = []
    for mu, mult in spectrum:
        key = str(mu) if isinstance(mu, ExactRoot) else to_rational(mu)
        if key not in merged:
            merged[key] = [mu, 0]
            order.append(key)
        merged[key][1] += mult
    rows = [indicial_root(mu, m) for mu, m in (merged[k] for k in order)]
    rows.sort(key=lambda r: float(r.jacobi_eigenvalue))
    return rows


def spectrum_from_charpolys(charpolys):
    """Merge exact roots of several characteristic polynomials into (mu, multiplicity) pairs."""
    from .exactla import exact_roots

    out = []
    for p in charpolys:
        for r in exact_roots(p):
            out.append((r.a if r.is_rational else r, r.multiplicity))
    return out


# the six roots listed for the three lowest Jacobi eigenvalues
PAPER_ROOTS = {
    (2, "+"): mpq(0), (1, "+"): mpq(-1), (0, "+"): mpq(-3, 2),
    (0, "-"): mpq(-5, 2), (1, "-"): mpq(-3), (2, "-"): mpq(-4),
}


@dataclass(frozen=True)
class DecayEntry:
    label: str
    root: Rational
    exponent: Rational  # |Z(x)| ~ |x|^exponent
    meaning: str


def decay_rate_table(roots=None):
    """Graph decay orders |x|^(1 + root) of the lowest modes, with |x| = e^t and Z = e^t X."""
    if roots is None:
        lowest = indicial_roots([(-10, 1), (-8, 7), (0, 17)])
        roots = {}
        for idx, r in enumerate(lowest):
            roots[idx, "+"] = r.plus
            roots[idx, "-"] = r.minus
    entries = []
    meaning = {
        (1, "+"): "constant vector (translation mode)",
        (0, "+"): "leading decay of the graph perturbation",
        (0, "-"): "next decay order",
    }
    for key in ((1, "+"), (0, "+"), (0, "-")):
        root = roots[key]
        entries.append(DecayEntry(f"lambda_{key[0]},{key[1]}", root, 1 + root, meaning[key]))
    return entries


def _rk4(lam, y0, yp0, T, h):
    def f(y, v):
        return v, lam * y - 4 * v

    ts, ys = [0.0], [y0]
    y, v = y0, yp0
    n = int(round(T / h))
    for i in range(n):
        k1y, k1v = f(y, v)
        k2y, k2v = f(y + h / 2 * k1y, v + h / 2 * k1v)
        k3y, k3v = f(y + h / 2 * k2y, v + h / 2 * k2v)
        k4y, k4v = f(y + h * k3y, v + h * k3v)
        y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
        v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        ts.append((i + 1) * h)
        ys.append(y)
    return ts, ys


def ode_mode_demo(lam, xi0: float = 1.0, xi0p: float = 0.0, T: float = 20.0, h: float = 1e-3) -> float:
    """Integrate xi'' + 4 xi' - lam xi = 0 on [0, T] and return the least-squares slope of log|xi| on [T/2, T]."""
    if T <= 0:
        raise ValueError("T must be positive")
    lam = float(to_rational(lam))
    ts, ys = _rk4(lam, float(xi0), float(xi0p), T, h)
    half = len(ts) // 2
    tail_t, tail_y = ts[half:], ys[half:]
    if any(y == 0.0 for y in tail_y) or any((a > 0) != (b > 0) for a, b in zip(tail_y, tail_y[1:])):
        raise DecayFitError("solution vanishes or changes sign on the fitting window")
    logs = [math.log(abs(y)) for y in tail_y]
    n = len(tail_t)
    mt = sum(tail_t) / n
    ml = sum(logs) / n
    num = sum((t - mt) * (l - ml) for t, l in zip(tail_t, logs))
    den = sum((t - mt) ** 2 for t in tail_t)
    return num / den


def fast_direction_horizon(root: IndicialRoot, budget: float = 24.0) -> float:
    """Integration length for data on the fast eigen-direction.

    Rounding puts about 1e-16 of the slow mode into the solution, which grows
    relative to the fast one like exp(gap * t); budget bounds gap * T.
    """
    gap = float(root.plus - root.minus)
    return 20.0 if gap <= 0 else min(20.0, budget / gap)


def demo_all(roots=None, tol: float = 1e-3):
    """Fit every listed root numerically; returns [(label, exact root, fitted, ok)]."""
    if roots is None:
        roots = indicial_roots([(-10, 1), (-8, 7), (0, 17)])
    out = []
    for r in roots:
        fit = ode_mode_demo(r.jacobi_eigenvalue, 1.0, 0.0, 20.0)
        out.append((f"lambda={r.jacobi_eigenvalue} +", r.plus, fit, abs(fit - float(r.plus)) < tol))
        T = fast_direction_horizon(r)
        fit = ode_mode_demo(r.jacobi_eigenvalue, 1.0, float(r.minus), T)
        out.append((f"lambda={r.jacobi_eigenvalue} -", r.minus, fit, abs(fit - float(r.minus)) < tol))
    return out
