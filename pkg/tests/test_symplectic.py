"""Symplectic group algebra: membership, the congruence subgroup G(l, 2l),
the semidirect product, symplectic bases and the M = SP decomposition."""

import random

import pytest
from mpmath import mp, mpc, mpf

from siegel import exact, halfspace, symplectic
from siegel.errors import ValidationError
from siegel.symplectic import AffineElement, SymplecticElement


def test_is_symplectic_examples():
    assert symplectic.is_symplectic(exact.eye(4))
    assert symplectic.is_symplectic(symplectic.standard_form(2))
    assert symplectic.is_symplectic(((1, 1), (0, 1)))
    assert not symplectic.is_symplectic(((1, 1), (1, 1)))
    with pytest.raises(ValidationError):
        symplectic.is_symplectic(((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_standard_form_identities():
    for g in (1, 2, 3):
        j = symplectic.standard_form(g)
        assert exact.transpose(j) == exact.neg(j)
        assert exact.mul(j, j) == exact.scale(-1, exact.eye(2 * g))


def test_symplectic_element_validation():
    with pytest.raises(ValidationError):
        SymplecticElement(((2, 0), (0, 2)))
    element = SymplecticElement(((1, 1), (0, 1)))
    assert element.g == 1
    inv = element.inverse()
    assert exact.mul(inv.matrix, element.matrix) == exact.eye(2)


def test_congruence_group_examples():
    assert symplectic.in_congruence_group(SymplecticElement.identity(2), 16)
    assert not symplectic.in_congruence_group(((1, 16), (0, 1)), 16)
    assert symplectic.in_congruence_group(((1, 32), (0, 1)), 16)
    assert symplectic.in_congruence_group(((1, 0), (32, 1)), 16)


def test_congruence_group_closure():
    rng = random.Random(29)
    gens = [SymplecticElement(((1, 32), (0, 1))),
            SymplecticElement(((1, 0), (32, 1)))]
    for _ in range(20):
        a = rng.choice(gens)
        b = rng.choice(gens)
        if rng.random() < 0.5:
            a = a.inverse()
        product = a * b
        assert symplectic.in_congruence_group(product, 16)
        assert symplectic.is_symplectic(product.matrix)


def test_semidirect_mul_examples():
    e = SymplecticElement.identity(1)
    x = AffineElement(e, (1, 2))
    y = AffineElement(e, (3, -1))
    assert symplectic.semidirect_mul(x, y).shift == (4, 1)
    ident = AffineElement.identity(1)
    t = AffineElement(SymplecticElement(((1, 1), (0, 1))), (2, -3))
    assert symplectic.semidirect_mul(t, ident) == t
    assert symplectic.semidirect_mul(ident, t) == t


def test_semidirect_associativity_exact():
    rng = random.Random(31)
    j = SymplecticElement(symplectic.standard_form(1))
    t = SymplecticElement(((1, 1), (0, 1)))
    for _ in range(30):
        def rand_affine():
            el = SymplecticElement.identity(1)
            for _ in range(rng.randint(0, 3)):
                el = el * rng.choice((j, t))
            return AffineElement(el, (rng.randint(-4, 4), rng.randint(-4, 4)))
        x, y, z = rand_affine(), rand_affine(), rand_affine()
        left = symplectic.semidirect_mul(symplectic.semidirect_mul(x, y), z)
        right = symplectic.semidirect_mul(x, symplectic.semidirect_mul(y, z))
        assert left == right


def test_semidirect_inverse():
    x = AffineElement(SymplecticElement(((1, 2), (0, 1))), (5, -7))
    inv = symplectic.semidirect_inverse(x)
    assert symplectic.semidirect_mul(x, inv) == AffineElement.identity(1)
    assert symplectic.semidirect_mul(inv, x) == AffineElement.identity(1)


def test_semidirect_action_identity_and_translation():
    tau = halfspace.siegel_point([[mpc(0.2, 1.4)]])
    z = [mpc(0.3, 0.1)]
    ident = AffineElement.identity(1)
    point, vec = symplectic.semidirect_act(ident, tau, z)
    assert abs(point.tau[0, 0] - tau.tau[0, 0]) < mpf("1e-30")
    assert abs(vec[0, 0] - z[0]) < mpf("1e-30")

    shift = AffineElement(SymplecticElement.identity(1), (2, -1))
    point, vec = symplectic.semidirect_act(shift, tau, z)
    with mp.workprec(140):
        expected = z[0] + tau.tau[0, 0] * 2 - 1
        assert abs(vec[0, 0] - expected) < mpf("1e-30")


def test_semidirect_action_compatible_with_group_law():
    rng = random.Random(37)
    j = SymplecticElement(symplectic.standard_form(1))
    t = SymplecticElement(((1, 1), (0, 1)))
    tau = halfspace.siegel_point([[mpc(0.1, 1.2)]])
    z = [mpc(0.2, -0.3)]
    for _ in range(15):
        def rand_affine():
            el = SymplecticElement.identity(1)
            for _ in range(rng.randint(0, 2)):
                el = el * rng.choice((j, t))
            return AffineElement(el, (rng.randint(-2, 2), rng.randint(-2, 2)))
        x, y = rand_affine(), rand_affine()
        p1, v1 = symplectic.semidirect_act(y, tau, z)
        p2, v2 = symplectic.semidirect_act(x, p1, [v1[0, 0]])
        p3, v3 = symplectic.semidirect_act(symplectic.semidirect_mul(x, y), tau, z)
        assert abs(p2.tau[0, 0] - p3.tau[0, 0]) < mpf("1e-12")
        assert abs(v2[0, 0] - v3[0, 0]) < mpf("1e-12")


def test_symplectic_basis_standard_form_is_fixed():
    for g in (1, 2, 3):
        assert symplectic.symplectic_basis(symplectic.standard_form(g)) == \
            exact.eye(2 * g)


def test_symplectic_basis_negated_form():
    j = symplectic.standard_form(2)
    p = symplectic.symplectic_basis(exact.neg(j))
    assert exact.mul(exact.mul(exact.transpose(p), exact.neg(j)), p) == j
    assert abs(exact.exact_det(p)) == 1


def test_symplectic_basis_round_trip():
    rng = random.Random(41)
    for g in (1, 2):
        n = 2 * g
        for _ in range(30):
            u = [[int(i == k) for k in range(n)] for i in range(n)]
            for _ in range(8):
                i, k = rng.sample(range(n), 2)
                c = rng.randint(-3, 3)
                for r in range(n):
                    u[r][i] += c * u[r][k]
            u = tuple(tuple(row) for row in u)
            form = exact.mul(exact.mul(exact.transpose(u),
                                       symplectic.standard_form(g)), u)
            p = symplectic.symplectic_basis(form)
            assert exact.mul(exact.mul(exact.transpose(p), form), p) == \
                symplectic.standard_form(g)
            assert abs(exact.exact_det(p)) == 1


def test_symplectic_basis_rejects_bad_forms():
    with pytest.raises(ValidationError):
        symplectic.symplectic_basis(exact.eye(2))  # not alternating
    with pytest.raises(ValidationError):
        symplectic.symplectic_basis(((0, 2), (-2, 0)))  # not unimodular


def test_decompose_identity():
    dec = symplectic.symplectic_decompose(exact.eye(4))
    assert dec.s.matrix == exact.eye(4)
    assert dec.p == exact.eye(4)
    assert dec.p_height == 1


def test_decompose_scaled_identity():
    dec = symplectic.symplectic_decompose(((2, 0), (0, 2)))
    m = ((2, 0), (0, 2))
    assert exact.mul(dec.s.matrix, dec.p) == m
    # H(M^t J M) = H(4 J) = 4
    assert dec.gram_height == 4


def test_decompose_random_sweep():
    rng = random.Random(43)
    j = symplectic.standard_form(2)
    for _ in range(50):
        while True:
            m = tuple(tuple(rng.randint(-20, 20) for _ in range(4))
                      for _ in range(4))
            if exact.exact_det(m) != 0:
                break
        dec = symplectic.symplectic_decompose(m)
        assert exact.mul(dec.s.matrix, dec.p) == m
        s = dec.s.matrix
        assert exact.mul(exact.mul(exact.transpose(s), j), s) == j
        assert dec.p_height == exact.mat_height(dec.p)


def test_decompose_rejects_singular():
    with pytest.raises(ValidationError):
        symplectic.symplectic_decompose(((1, 1), (1, 1)))
