import pytest
from gmpy2 import mpq

from lospectra.numfield import I, sqrt
from lospectra.polyops import (
    EUCLIDEAN4, SPHERE, Poly, RingMismatchError, apply_derivation, commutator_check, euclid_gens,
    format_poly, homogeneous_monomials, laplacian_berger, laplacian_C2, laplacian_round, parse_poly,
    sphere_gens, sphere_inner, sphere_integral,
)

z, zb, w, wb = sphere_gens()
one = Poly.const(SPHERE, 1)


def test_degree_and_weight():
    f = z * z * wb
    assert f.degree() == 3
    assert f.weights() == {1}
    assert not Poly.zero(SPHERE).terms


def test_cross_ring_rejected():
    x1 = euclid_gens()[0]
    with pytest.raises(RingMismatchError):
        z + x1


def test_derivation_table():
    assert apply_derivation(1, z) == z * I
    assert apply_derivation(2, z) == -wb
    assert apply_derivation(3, z) == wb * (-I)
    assert apply_derivation(1, one) == Poly.zero(SPHERE)
    assert apply_derivation(3, z * w) == (z * zb - w * wb) * I
    with pytest.raises(ValueError):
        apply_derivation(4, z)
    with pytest.raises(RingMismatchError):
        apply_derivation(1, euclid_gens()[0])


def test_sphere_relation_annihilated():
    rel = z * zb + w * wb
    for i in (1, 2, 3):
        assert apply_derivation(i, rel) == Poly.zero(SPHERE)


def test_commutator_examples():
    assert not commutator_check(2, 3, z)
    assert not commutator_check(1, 2, one)
    assert not commutator_check(1, 3, z * z * wb)


def test_commutator_direct():
    # [d2, d3] z = -2 d1 z, computed by hand
    f = z
    lhs = apply_derivation(2, apply_derivation(3, f)) - apply_derivation(3, apply_derivation(2, f))
    assert lhs == apply_derivation(1, f).scale(-2)


def test_round_laplacian():
    assert laplacian_round(z) == z.scale(-3)
    assert laplacian_round(one) == Poly.zero(SPHERE)
    f = z * zb - w * wb
    assert laplacian_round(f) == f.scale(-8)


def test_berger_laplacian():
    assert laplacian_berger(z, mpq(1, 6)) == z.scale(-8)
    assert laplacian_berger(one, mpq(1, 3)) == Poly.zero(SPHERE)
    assert laplacian_berger(z * z, mpq(1, 6)) == (z * z).scale(-28)


def test_berger_tau_one_is_round():
    f = z * z * wb + w * zb
    assert laplacian_berger(f, 1) == laplacian_round(f)


def test_flat_laplacian():
    assert laplacian_C2(z * z) == Poly.zero(SPHERE)
    assert laplacian_C2(z * zb) == Poly.const(SPHERE, 4)
    assert laplacian_C2(z * zb - w * wb) == Poly.zero(SPHERE)


def test_sphere_integral():
    assert sphere_integral((0, 0, 0, 0)) == 1
    assert sphere_integral((1, 1, 0, 0)) == mpq(1, 2)
    assert sphere_integral((1, 1, 1, 1)) == mpq(1, 6)
    assert sphere_inner(z, w) == 0 * I
    assert sphere_inner(z * zb + w * wb, one).to_rational() == 1


def test_text_round_trip():
    f = z * z * wb * sqrt(6) - w * I * mpq(2, 3) + one
    assert parse_poly(format_poly(f)) == f
    g = euclid_gens()[1] * euclid_gens()[2] * sqrt(5)
    assert parse_poly(format_poly(g), EUCLIDEAN4) == g


def test_monomial_counts():
    # homogeneous monomials in four variables
    assert len(homogeneous_monomials(3)) == 20
    assert all(sum(m) == 3 for m in homogeneous_monomials(3))
