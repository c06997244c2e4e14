import random

import pytest
from gmpy2 import mpq

from lospectra import exactla
from lospectra.exactla import (
    NotHermitianError, charpoly, charpoly_bareiss, charpoly_rational, exact_roots, inertia, kernel,
    parse_charpoly, parse_qpoly, root_multiplicity, verify_factorization,
)
from lospectra.jacobiop import assemble_matrix
from lospectra.numfield import I, ONE, ZERO, FieldElem, sqrt

L1_FACTORS = "lambda^4*(lambda + 8)^4*(lambda - 22)^4"
L2_FACTORS = "(lambda + 8)^3*lambda^3*(lambda - 6)^9*(lambda - 20)^6*(lambda - 56)^6"
L3_QUINTIC = "lambda^5 - 220*lambda^4 + 16820*lambda^3 - 566720*lambda^2 + 8472000*lambda - 44808192"
L4_FACTORS = [("lambda^2 - 166*lambda + 6720", 10), ("lambda^3 - 46*lambda^2 + 560*lambda - 1280", 5),
              ("lambda^4 - 266*lambda^3 + 20440*lambda^2 - 591360*lambda + 5529600", 10)]


def q(x):
    return FieldElem.rational(x)


def diag(*vals):
    n = len(vals)
    return [[q(vals[i]) if i == j else ZERO for j in range(n)] for i in range(n)]


def test_charpoly_small():
    assert charpoly_rational(charpoly(diag(0, 0))) == [0, 0, 1]
    assert charpoly_rational(charpoly(diag(1, 2, 3))) == [-6, 11, -6, 1]


def test_charpoly_L1():
    p = charpoly(assemble_matrix(1).entries)
    assert charpoly_rational(p) == parse_qpoly(L1_FACTORS)


def test_charpoly_L2_and_bareiss():
    M = assemble_matrix(2).entries
    p = charpoly(M)
    assert charpoly_rational(p) == parse_qpoly(L2_FACTORS)
    assert charpoly_bareiss(M) == p


def test_printed_alternative_forms():
    # the raw symbolic output forms agree with the normalized ones
    alt1 = parse_qpoly("lambda^4*(- lambda^2 + 14*lambda + 176)^4")
    assert alt1 == parse_qpoly(L1_FACTORS)
    alt2 = parse_qpoly("-lambda^3*(lambda + 8)^2*(lambda - 20)^3*(lambda^2 - 26*lambda + 120)^3"
                       "*(lambda^2 - 62*lambda + 336)^5*(- lambda^3 + 54*lambda^2 + 160*lambda - 2688)")
    assert alt2 == parse_qpoly(L2_FACTORS)


def test_charpoly_L3_L4_factorizations():
    p3 = charpoly(assemble_matrix(3).entries)
    assert verify_factorization(p3, [("lambda", 8), (L3_QUINTIC, 8)])
    p4 = charpoly(assemble_matrix(4).entries)
    assert verify_factorization(p4, L4_FACTORS)
    assert not verify_factorization(p4, L4_FACTORS[:2])
    assert verify_factorization(charpoly(diag(0, 0)), [("lambda", 2)])


def test_root_multiplicity():
    p1 = charpoly(assemble_matrix(1).entries)
    assert root_multiplicity(p1, -8) == 4
    assert root_multiplicity(charpoly(diag(0, 0)), 1) == 0
    p2 = charpoly(assemble_matrix(2).entries)
    assert root_multiplicity(p2, 6) == 9


def test_charpoly_text_round_trip():
    p = charpoly([[q(1), sqrt(2)], [sqrt(2), I]])
    assert parse_charpoly(str(p)) == p


def test_kernel():
    assert kernel(assemble_matrix(0).entries)[0] == 2
    assert kernel(diag(1, 1, 1))[0] == 0
    dim, vecs = kernel(assemble_matrix(3).entries)
    assert dim == 8
    M = assemble_matrix(3).entries
    for v in vecs:
        assert all(not x for x in exactla.mat_vec(M, v))


def test_inertia_examples():
    assert inertia(assemble_matrix(3).entries).as_tuple() == (40, 8, 0)
    assert inertia(assemble_matrix(4).entries).as_tuple() == (75, 0, 0)
    assert inertia(diag(-1, -1, -1)).as_tuple() == (0, 0, 3)


def test_inertia_zero_diagonal_pivot():
    M = [[ZERO, ONE + I], [ONE - I, ZERO]]
    assert inertia(M).as_tuple() == (1, 0, 1)


def test_inertia_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        inertia([[ONE, I], [I, ONE]])


def _random_hermitian(n, rng):
    vals = [mpq(rng.randint(-3, 3)) for _ in range(n)]
    H = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        H[i][i] = q(vals[i])
        for j in range(i + 1, n):
            a = FieldElem.gaussian(rng.randint(-2, 2), rng.randint(-2, 2)) + sqrt(2) * rng.randint(-1, 1)
            H[i][j] = a
            H[j][i] = a.conj()
    return H


@pytest.mark.parametrize("seed", range(5))
def test_sylvester_congruence(seed):
    rng = random.Random(seed)
    n = 6
    H = _random_hermitian(n, rng)
    while True:
        P = [[FieldElem.gaussian(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(n)] for _ in range(n)]
        if exactla.rank(P) == n:
            break
    C = exactla.mat_mul(exactla.conj_transpose(P), exactla.mat_mul(H, P))
    assert inertia(C) == inertia(H)
    tri = inertia(H)
    assert tri.n_plus + tri.n_zero + tri.n_minus == n
    assert tri.n_zero == n - exactla.rank(H)


def test_exact_roots_L4():
    roots = exact_roots(charpoly(assemble_matrix(4).entries))
    surds = {str(r): r.multiplicity for r in roots if not r.is_rational and r.exact}
    assert surds["15 - 1*sqrt(145)"] == 5
    assert surds["35 + 1*sqrt(265)"] == 10
    assert sum(r.multiplicity for r in roots) == 75


def test_hermitian_charpoly_is_real_rational():
    p = charpoly(assemble_matrix(2).entries)
    assert p.is_real() and p.is_rational()
