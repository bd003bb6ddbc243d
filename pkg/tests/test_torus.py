"""Polarized tori, isogenies, polarization pullbacks, sublattices,
enumeration and orbit witnesses."""

import dataclasses
import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from siegel import exact, halfspace, symplectic, torus
from siegel.errors import DomainError, ValidationError
from siegel.halfspace import siegel_point
from siegel.symplectic import SymplecticElement

TAU_I = siegel_point([[mpc(0, 1)]])


def test_riemann_check_examples():
    assert torus.riemann_check([[mpc(0, 1), 0], [0, mpc(0, 2)]])
    assert not torus.riemann_check([[mpc(0, 1), 1], [0, mpc(0, 1)]])
    assert not torus.riemann_check([[mpc(0, -1)]])


def test_polarized_torus_invariants():
    point = siegel_point([[mpc("0.3", "1.4"), mpc("0.1", "0.2")],
                          [mpc("0.1", "0.2"), mpc("-0.2", "1.1")]])
    t = torus.polarized_torus(point)
    with mp.workprec(140):
        product = t.hermitian_form * point.imag
        gap = max(abs(product[i, j] - (1 if i == j else 0))
                  for i in range(2) for j in range(2))
        assert gap < mpf("1e-30")
    assert t.periods.cols == 4 and t.periods.rows == 2


def test_real_polarization_form_g1():
    point = siegel_point([[mpc(0, 2)]])
    form = torus.real_polarization_form(point)
    with mp.workprec(140):
        assert abs(form[0, 0] - 2) < mpf("1e-30")
        assert abs(form[0, 1]) < mpf("1e-30")
        assert abs(form[1, 1] - mpf(1) / 2) < mpf("1e-30")
        assert abs(mpmath.det(form) - 1) < mpf("1e-25")


def test_isogeny_from_rational_rep_example():
    iso = torus.isogeny_from_rational_rep(TAU_I, ((1, 0), (0, 2)))
    assert abs(iso.target.point.tau[0, 0] - mpc(0, 2)) < mpf("1e-30")
    assert abs(iso.tangent_map[0, 0] - 2) < mpf("1e-30")
    assert iso.degree == 2
    assert iso.compatibility_residual() < mpf("1e-30")


def test_isogeny_identity():
    iso = torus.isogeny_from_rational_rep(TAU_I, exact.eye(2))
    assert iso.degree == 1
    assert abs(iso.target.point.tau[0, 0] - mpc(0, 1)) < mpf("1e-30")
    assert abs(iso.tangent_map[0, 0] - 1) < mpf("1e-30")


def test_isogeny_validation():
    with pytest.raises(ValidationError):
        torus.isogeny_from_rational_rep(TAU_I, ((1, 1), (1, 1)))  # singular
    with pytest.raises(ValidationError):
        torus.isogeny_from_rational_rep(TAU_I, ((1, 0), (0, -2)))  # det < 0
    point2 = siegel_point([[mpc("0.1", "1.0"), mpc(0, "0.3")],
                           [mpc(0, "0.3"), mpc("-0.2", "1.5")]])
    with pytest.raises(DomainError):
        torus.isogeny_from_rational_rep(
            point2, ((1, 0, 0, 0), (0, 2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))


def test_degree_identity():
    rng = random.Random(73)
    for _ in range(10):
        d = rng.randint(1, 3)
        beta = exact.mul(((1, 1), (0, 1)), ((d, 0), (0, d * rng.randint(1, 2))))
        if exact.exact_det(beta) <= 0:
            continue
        iso = torus.isogeny_from_rational_rep(TAU_I, beta)
        with mp.workprec(150):
            lhs = abs(mpmath.det(iso.tangent_map)) ** 2 * \
                mpmath.det(iso.source.point.imag)
            rhs = mpf(iso.degree) * mpmath.det(iso.target.point.imag)
            assert abs(lhs - rhs) / abs(rhs) < mpf("1e-9")


def test_complementary_isogeny():
    iso = torus.isogeny_from_rational_rep(TAU_I, ((1, 0), (0, 2)))
    back = torus.complementary_isogeny(iso)
    assert back.rational_rep == ((2, 0), (0, 1))
    assert exact.mul(back.rational_rep, iso.rational_rep) == ((2, 0), (0, 2))
    ident = torus.isogeny_from_rational_rep(TAU_I, exact.eye(2))
    assert torus.complementary_isogeny(ident).rational_rep == exact.eye(2)


def test_pullback_polarization_identity():
    iso = torus.isogeny_from_rational_rep(TAU_I, exact.eye(2))
    m1, m3 = torus.pullback_polarization(iso)
    a_prime = torus.real_polarization_form(TAU_I)
    with mp.workprec(140):
        assert max(abs(m1[i, j] - (1 if i == j else 0))
                   for i in range(2) for j in range(2)) < mpf("1e-30")
        assert max(abs(m3[i, j] - a_prime[i, j])
                   for i in range(2) for j in range(2)) < mpf("1e-30")


def test_pullback_polarization_determinant():
    point = siegel_point([[mpc("0.2", "1.1")]])
    beta = ((2, 1), (0, 3))
    iso = torus.isogeny_from_rational_rep(point, beta)
    m1, m3 = torus.pullback_polarization(iso)
    with mp.workprec(150):
        # det M1 = (deg)^2 since both real polarization forms have det 1
        expected = mpf(exact.exact_det(beta)) ** 2
        assert abs(mpmath.det(m1) - expected) / expected < mpf("1e-8")
        sym_gap = max(abs(m3[i, j] - m3[j, i]) for i in range(2) for j in range(2))
        assert sym_gap < mpf("1e-30")


def test_ampleness_bound_identity_and_scaling():
    iso = torus.isogeny_from_rational_rep(TAU_I, exact.eye(2))
    a_prime = torus.real_polarization_form(TAU_I)
    m1, m3 = torus.pullback_polarization(iso)
    assert torus.ampleness_bound(m1, m3, a_prime) == 2

    # doubling beta can only shrink the bound: the conjugated operator norm
    # scales by 1/4
    beta = ((1, 1), (0, 2))
    iso1 = torus.isogeny_from_rational_rep(TAU_I, beta)
    iso2 = torus.isogeny_from_rational_rep(TAU_I, exact.scale(2, beta))
    n1 = torus.ampleness_bound(*torus.pullback_polarization(iso1), a_prime)
    n2 = torus.ampleness_bound(*torus.pullback_polarization(iso2), a_prime)
    assert n2 <= n1


def test_m4_two_path_identity_and_inversion():
    point = siegel_point([[mpc(0, 2)]])
    assert torus.m4_two_path_check(SymplecticElement(exact.eye(2)), point) \
        < mpf("1e-25")
    inv = SymplecticElement(((0, -1), (1, 0)))
    assert torus.m4_two_path_check(inv, point) < mpf("1e-10")


def test_m4_two_path_random_g2():
    rng = random.Random(79)
    j = SymplecticElement(symplectic.standard_form(2))
    shift = SymplecticElement(exact.from_blocks(
        exact.eye(2), ((1, 0), (0, -2)), exact.zeros(2, 2), exact.eye(2)))
    point = siegel_point([[mpc("0.2", "1.2"), mpc("0.1", "0.3")],
                          [mpc("0.1", "0.3"), mpc("-0.3", "1.6")]])
    for element in (j, shift, j * shift, shift * j * shift):
        assert torus.m4_two_path_check(element, point) < mpf("1e-9")


def test_polarization_imaginary_form():
    ident = torus.isogeny_from_rational_rep(TAU_I, exact.eye(2))
    assert torus.polarization_imaginary_form(ident) == symplectic.standard_form(1)
    iso = torus.isogeny_from_rational_rep(TAU_I, ((1, 0), (0, 2)))
    assert torus.polarization_imaginary_form(iso) == ((0, 2), (-2, 0))
    rng = random.Random(83)
    for _ in range(5):
        beta = ((rng.randint(1, 3), rng.randint(0, 2)),
                (0, rng.randint(1, 3)))
        iso = torus.isogeny_from_rational_rep(TAU_I, beta)
        form = torus.polarization_imaginary_form(iso)
        assert exact.transpose(form) == exact.neg(form)


def test_sublattice_check_examples():
    point = siegel_point([[mpc(0, 1), 0], [0, mpc(0, 2)]])
    # columns e1, e3: the first complex coordinate axis
    h = torus.SublatticeRep(rows=4, entries=((1, 0), (0, 0), (0, 1), (0, 0)))
    check = torus.sublattice_check(h, point)
    assert check.rank == 1 and check.is_complex_subspace
    assert h.codim == 1

    zero = torus.SublatticeRep.zero(2)
    assert torus.sublattice_check(zero, point).rank == 0
    assert zero.codim == 2

    full = torus.SublatticeRep(rows=4, entries=exact.eye(4))
    check_full = torus.sublattice_check(full, point)
    assert check_full.rank == 2 and check_full.is_complex_subspace

    # a real 2-plane that is not a complex line: spanned by e1, e2
    not_complex = torus.SublatticeRep(rows=4,
                                      entries=((1, 0), (0, 1), (0, 0), (0, 0)))
    check_nc = torus.sublattice_check(not_complex, point)
    assert check_nc.rank == 2 and not check_nc.is_complex_subspace


def test_enumerate_isogenies_basics():
    single = torus.enumerate_isogenies_g1(TAU_I, 1)
    assert len(single) == 1
    assert single[0].rational_rep == exact.eye(2)

    pairs = torus.enumerate_isogenies_g1(TAU_I, 2)
    assert len(pairs) == 3
    imag_parts = sorted(float(mpmath.im(iso.target.point.tau[0, 0]))
                        for iso in pairs)
    assert abs(imag_parts[0] - 1) < 1e-12
    assert abs(imag_parts[1] - 2) < 1e-12 and abs(imag_parts[2] - 2) < 1e-12

    for degree in range(1, 13):
        isos = torus.enumerate_isogenies_g1(TAU_I, degree)
        sigma = sum(d for d in range(1, degree + 1) if degree % d == 0)
        assert len(isos) == sigma


def test_enumerate_parallel_matches_serial():
    serial = torus.enumerate_isogenies_g1(TAU_I, 6, jobs=1)
    parallel = torus.enumerate_isogenies_g1(TAU_I, 6, jobs=2)
    assert len(serial) == len(parallel)
    for a, b in zip(serial, parallel):
        assert a.rational_rep == b.rational_rep
        assert a.target.point.tau[0, 0] == b.target.point.tau[0, 0]


def test_enumerate_validation():
    with pytest.raises(ValidationError):
        torus.enumerate_isogenies_g1(TAU_I, 0)
    point2 = siegel_point([[mpc(0, 1), 0], [0, mpc(0, 2)]])
    with pytest.raises(ValidationError):
        torus.enumerate_isogenies_g1(point2, 2)


def test_identity_witness_passes():
    witness = torus.identity_witness(TAU_I)
    report = torus.check_orbit_witness(witness, TAU_I)
    assert report.ok
    assert all(v == 0 for v in report.residuals.values())
    assert report.sublattice_rank == 0


def test_constructed_witness_and_corruptions():
    isos = torus.enumerate_isogenies_g1(TAU_I, 2)
    iso = isos[0]
    witness = torus.make_witness(
        TAU_I, iso,
        subgroup_coeffs=(2, -1),
        generator_lifts=((Fraction(1, 3), Fraction(1, 5)),
                         (Fraction(1, 2), Fraction(3, 4))),
        denominator=2,
        lattice_seed=(1, -2))
    report = torus.check_orbit_witness(witness, TAU_I)
    assert report.ok

    worse = dataclasses.replace(
        witness, lattice_vector=(witness.lattice_vector[0] + 1,
                                 witness.lattice_vector[1]))
    assert not torus.check_orbit_witness(worse, TAU_I).ok
    worse = dataclasses.replace(
        witness, subgroup_coeffs=(witness.subgroup_coeffs[0] + 1,
                                  witness.subgroup_coeffs[1]))
    assert not torus.check_orbit_witness(worse, TAU_I).ok
    worse = dataclasses.replace(witness, denominator=witness.denominator + 1)
    assert not torus.check_orbit_witness(worse, TAU_I).ok
    worse = dataclasses.replace(witness, denominator=0)
    assert not torus.check_orbit_witness(worse, TAU_I).ok


def test_witness_with_torsion_point_spec_example():
    # degree-2 isogeny plus the 2-torsion coordinate x = (1/2, 0): N = 2
    # clears denominators
    isos = torus.enumerate_isogenies_g1(TAU_I, 2)
    iso = isos[1]  # the (1, 1, 2) triple, whose reduced target is i again
    beta = iso.rational_rep
    adj = exact.adjugate(beta)
    x = (Fraction(1, 2), Fraction(0))
    target_r = exact.mat_vec(adj, [2 * v for v in x])
    witness = torus.OrbitWitness(
        subgroup_coeffs=(0,),
        denominator=2,
        lattice_vector=tuple(int(v) for v in target_r),
        rational_rep=beta,
        sublattice=torus.SublatticeRep.zero(1),
        tangent_map=iso.tangent_map,
        sublattice_coords=(),
        target=iso.target.point,
        fiber_coords=x,
        generator_lifts=((Fraction(0), Fraction(0)),),
    )
    report = torus.check_orbit_witness(witness, TAU_I, tol=1e-10)
    assert report.ok


def test_witness_validation():
    isos = torus.enumerate_isogenies_g1(TAU_I, 2)
    with pytest.raises(ValidationError):
        torus.OrbitWitness(
            subgroup_coeffs=(), denominator=1, lattice_vector=(0, 0),
            rational_rep=exact.eye(2),
            sublattice=torus.SublatticeRep.zero(1),
            tangent_map=mpmath.eye(1), sublattice_coords=(),
            target=TAU_I, fiber_coords=(Fraction(3, 2), Fraction(0)),
            generator_lifts=())
    # generator lifts are folded into [0, 1)
    witness = torus.make_witness(
        TAU_I, isos[0], subgroup_coeffs=(1,),
        generator_lifts=((Fraction(7, 3), Fraction(-1, 5)),),
        denominator=1)
    u = witness.generator_lifts[0]
    assert all(0 <= v < 1 for v in u)
    assert u == (Fraction(1, 3), Fraction(4, 5))
