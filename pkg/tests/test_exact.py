"""Exact linear algebra: heights, norms, determinants, adjugates, and the
Hermite-style decomposition M = U T."""

import random
from fractions import Fraction

import pytest
from mpmath import mpc, mpf

from siegel import exact
from siegel.errors import ValidationError


def test_rat_height_examples():
    assert exact.rat_height(Fraction(3, 2)) == 3
    assert exact.rat_height(0) == 1
    assert exact.rat_height(-5) == 5
    assert exact.rat_height(Fraction(-6, 4)) == 3  # canonical form first


def test_mat_height_examples():
    assert exact.mat_height(exact.eye(2)) == 1
    assert exact.mat_height(((Fraction(1, 2), 3), (-7, 0))) == 7
    assert exact.mat_height(exact.zeros(3, 3)) == 1


def test_mat_height_empty_matrix_rejected():
    with pytest.raises(ValidationError):
        exact.matrix([])
    with pytest.raises(ValidationError):
        exact.mat_height(tuple())


def test_rowsum_norm_examples():
    assert exact.rowsum_norm(exact.eye(3)) == 1
    assert exact.rowsum_norm(((1, -2), (3, 4))) == 7
    assert exact.rowsum_norm(((1j, 1),)) == 2


def test_rowsum_norm_operator_property():
    rng = random.Random(11)
    for _ in range(25):
        a = [[mpc(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)]
             for _ in range(4)]
        v = [mpc(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)]
        av = [sum(a[i][j] * v[j] for j in range(4)) for i in range(4)]
        norm_v = max(abs(x) for x in v)
        norm_av = max(abs(x) for x in av)
        assert norm_av <= exact.rowsum_norm(a) * norm_v + mpf("1e-12")


def test_rowsum_norm_submultiplicative():
    rng = random.Random(13)
    for _ in range(25):
        a = [[mpc(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)]
             for _ in range(4)]
        b = [[mpc(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)]
             for _ in range(4)]
        ab = [[sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)]
              for i in range(4)]
        assert exact.rowsum_norm(ab) <= \
            exact.rowsum_norm(a) * exact.rowsum_norm(b) + mpf("1e-12")


def test_hnf_already_reduced():
    u, t = exact.hnf_decompose(((2, 1), (0, 3)))
    assert u == exact.eye(2)
    assert t == ((2, 1), (0, 3))


def test_hnf_row_swap():
    m = ((0, 1), (1, 0))
    u, t = exact.hnf_decompose(m)
    assert exact.mul(u, t) == m
    assert t == exact.eye(2)
    assert exact.exact_det(u) == -1


def _check_hnf_postconditions(m):
    u, t = exact.hnf_decompose(m)
    n = len(m)
    assert exact.mul(u, t) == m
    assert abs(exact.exact_det(u)) == 1
    for i in range(n):
        assert t[i][i] > 0
        for j in range(i):
            assert t[i][j] == 0
        for r in range(i):
            assert 0 <= t[r][i] < t[i][i]
    return t


def test_hnf_exhaustive_small_matrices():
    # every nonsingular 2x2 with entries in [-2, 2]
    span = range(-2, 3)
    for a in span:
        for b in span:
            for c in span:
                for d in span:
                    m = ((a, b), (c, d))
                    if exact.exact_det(m) == 0:
                        continue
                    _check_hnf_postconditions(m)


def test_hnf_diagonal_bounded_by_determinant():
    rng = random.Random(17)
    for _ in range(60):
        while True:
            m = tuple(tuple(rng.randint(-10, 10) for _ in range(4))
                      for _ in range(4))
            if exact.exact_det(m) != 0:
                break
        t = _check_hnf_postconditions(m)
        bound = abs(exact.exact_det(m))
        assert all(t[i][i] <= bound for i in range(4))


def test_hnf_rejects_singular_and_nonsquare():
    with pytest.raises(ValidationError):
        exact.hnf_decompose(((1, 2), (2, 4)))
    with pytest.raises(ValidationError):
        exact.hnf_decompose(((1, 2, 3), (4, 5, 6)))


def test_adjugate_examples():
    assert exact.adjugate(((1, 0), (0, 2))) == ((2, 0), (0, 1))
    assert exact.exact_det(exact.eye(5)) == 1
    assert exact.adjugate(((7,),)) == ((1,),)


def test_adjugate_identity_random_including_singular():
    rng = random.Random(19)
    for _ in range(40):
        n = rng.choice([2, 3, 4])
        m = tuple(tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(n))
        det = exact.exact_det(m)
        assert exact.mul(m, exact.adjugate(m)) == exact.scale(det, exact.eye(n))
        assert exact.mul(exact.adjugate(m), m) == exact.scale(det, exact.eye(n))


def test_exact_inverse():
    rng = random.Random(23)
    for _ in range(20):
        while True:
            m = tuple(tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                            for _ in range(3)) for _ in range(3))
            if exact.exact_det(m) != 0:
                break
        inv = exact.exact_inverse(m)
        assert exact.mul(m, inv) == exact.eye(3)
    with pytest.raises(ValidationError):
        exact.exact_inverse(((1, 1), (1, 1)))


def test_to_int_matrix():
    assert exact.to_int_matrix(((Fraction(4, 2), Fraction(0)),
                                (Fraction(-3), Fraction(1)))) == ((2, 0), (-3, 1))
    with pytest.raises(ValidationError):
        exact.to_int_matrix(((Fraction(1, 2),),))
