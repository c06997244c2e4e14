import numpy as np
import pytest
from gmpy2 import mpq

from golden_derivations import PRINTED
from lospectra import exactla, floatoracle, harmonic
from lospectra.jacobiop import (
    ResourceLimitError, apply_L, apply_Ltilde, assemble_matrix, block_formula, check_hermitian,
    derivation_matrices, jacobi_eigenvalue, positivity_check, triple,
)
from lospectra.numfield import I, sqrt
from lospectra.polyops import SPHERE, Poly, sphere_gens

z, zb, w, wb = sphere_gens()


def test_apply_L_examples():
    one = Poly.const(SPHERE, 1)
    assert apply_L(triple(one)) == triple(one.scale(-10))
    assert apply_L(triple(0, one)) == triple()
    assert apply_L(triple(z)) == triple(z.scale(-2), wb * sqrt(6), wb * sqrt(6) * I)


def test_apply_Ltilde_examples():
    assert apply_Ltilde(triple(z)) == triple(z.scale(3))
    assert apply_Ltilde(triple(1, 1, 1)) == triple()
    f = z * wb
    assert apply_Ltilde(triple(f, f, 0)) == triple(f.scale(8), f.scale(8))


def test_L0_diagonal():
    op = assemble_matrix(0)
    assert [[a.to_rational() for a in row] for row in op.entries] == [[-10, 0, 0], [0, 0, 0], [0, 0, 0]]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_printed_representation_matrices(k):
    A = derivation_matrices(harmonic.paper_basis(k))
    want = PRINTED[k]()
    for i in (1, 2, 3):
        assert np.abs(floatoracle.to_complex_array(A[i]) - want[i - 1]).max() < 1e-12


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_printed_block_structure(k):
    op = assemble_matrix(k)
    L = floatoracle.to_complex_array(op.entries)
    A1, A2, A3, T = PRINTED[k]()
    n = T.shape[0]
    r6 = np.sqrt(6)
    want = np.block([[T - 10 * np.eye(n), r6 * A2, r6 * A3],
                     [-r6 * A2, T, -14 * A1],
                     [-r6 * A3, 14 * A1, T]])
    assert np.abs(L - want).max() < 1e-12


@pytest.mark.parametrize("k", range(5))
def test_block_formula_matches_assembly(k):
    fam = harmonic.paper_basis(k)
    assert block_formula(fam) == assemble_matrix(k, fam).entries


@pytest.mark.parametrize("k", range(5))
def test_paper_matrices_hermitian(k):
    assert check_hermitian(assemble_matrix(k))


def test_generated_not_hermitian_but_same_charpoly():
    gen = assemble_matrix(2, harmonic.generated_basis(2))
    assert not check_hermitian(gen)
    assert exactla.charpoly(gen.entries) == exactla.charpoly(assemble_matrix(2).entries)


def test_jacobi_eigenvalue():
    assert jacobi_eigenvalue(-10) == mpq(-15, 4)
    assert jacobi_eigenvalue(0) == 0
    assert jacobi_eigenvalue(-8) == -3


def test_positivity_k5():
    rep = positivity_check(5)
    assert rep.passed and rep.inertia == (108, 0, 0)
    rep = positivity_check(5, "float_bound")
    assert rep.passed and rep.min_eigenvalue >= 1.5 - 1e-6


def test_positivity_k6():
    rep = positivity_check(6)
    assert rep.passed and rep.inertia == (147, 0, 0)


def test_positivity_limits():
    with pytest.raises(ResourceLimitError):
        positivity_check(9)
    with pytest.raises(ValueError):
        positivity_check(3)
