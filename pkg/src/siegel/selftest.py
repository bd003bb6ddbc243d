"""Acceptance suites: the package's verifiable claims, runnable both from
pytest (tests/test_acceptance.py) and from the CLI (`siegel selftest`).

Each suite checks one batch of criteria at its stated tolerance against
independent oracles (direct summation for theta, a classical SL_2(Z)
continued-fraction reduction for genus one, canonicalized sublattice
enumeration for isogeny counts) and reports one pass/fail line per
criterion.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

import mpmath
from mpmath import mp, mpc, mpf

from . import exact, halfspace, mparith, symplectic, torus
from .theta import (EvalContext, automorphy_check, chordal_distance,
                    exp_map, theta)
from .errors import NumericError
from .halfspace import SiegelPoint, siegel_point
from .symplectic import SymplecticElement


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    details: str = ""


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    criteria: Tuple[CriterionResult, ...]
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)


def _make_suite(name: str, runner: Callable[[], List[CriterionResult]]) -> SuiteResult:
    start = time.perf_counter()
    criteria = runner()
    return SuiteResult(suite=name, criteria=tuple(criteria),
                       elapsed=time.perf_counter() - start)


# ---------------------------------------------------------------------------
# shared random generators


def _random_int_matrix(rng: random.Random, n: int, bound: int):
    return tuple(tuple(rng.randint(-bound, bound) for _ in range(n))
                 for _ in range(n))


def _random_nonsingular(rng: random.Random, n: int, bound: int):
    while True:
        m = _random_int_matrix(rng, n, bound)
        if exact.exact_det(m) != 0:
            return m


def _random_unimodular(rng: random.Random, n: int, ops: int = 6,
                       coeff: int = 2):
    if n == 1:
        return ((rng.choice((-1, 1)),),)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(ops):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-coeff, coeff)
        for r in range(n):
            u[r][i] += c * u[r][j]
    return tuple(tuple(row) for row in u)


def _random_symplectic(rng: random.Random, g: int, words: int = 4) -> SymplecticElement:
    j = SymplecticElement(symplectic.standard_form(g))
    out = SymplecticElement.identity(g)
    for _ in range(words):
        kind = rng.randrange(3)
        if kind == 0:
            out = out * j
        elif kind == 1:
            b = [[0] * g for _ in range(g)]
            for r in range(g):
                for c in range(r, g):
                    b[r][c] = b[c][r] = rng.randint(-2, 2)
            step = exact.from_blocks(exact.eye(g), exact.matrix(b),
                                     exact.zeros(g, g), exact.eye(g))
            out = out * SymplecticElement(step)
        else:
            u = _random_unimodular(rng, g, ops=3, coeff=1)
            u_inv = exact.to_int_matrix(exact.exact_inverse(u))
            step = exact.from_blocks(exact.transpose(u), exact.zeros(g, g),
                                     exact.zeros(g, g), u_inv)
            out = out * SymplecticElement(step)
    return out


def _random_point(rng: random.Random, g: int, prec: int = 128) -> SiegelPoint:
    with mp.workprec(prec + 10):
        a = mpmath.matrix(g, g)
        for i in range(g):
            for j in range(g):
                a[i, j] = mpf(rng.uniform(-1, 1))
        y = a.T * a + mpmath.eye(g) * mpf(rng.uniform(0.3, 1.5))
        x = mpmath.matrix(g, g)
        for i in range(g):
            for j in range(i, g):
                x[i, j] = x[j, i] = mpf(rng.uniform(-2, 2))
        tau = x + y * mpc(0, 1)
    return siegel_point(tau, prec=prec)


def _random_reduced_point(rng: random.Random, g: int, prec: int = 128) -> SiegelPoint:
    return halfspace.siegel_reduce(_random_point(rng, g, prec), prec=prec).point


# ---------------------------------------------------------------------------
# criterion 1: symplectic decomposition sweep


def _run_symplectic() -> List[CriterionResult]:
    rng = random.Random(1031)
    start = time.perf_counter()
    max_exponent = 0.0
    count = 0
    exact_ok = True
    j = symplectic.standard_form(2)
    for _ in range(500):
        m = _random_nonsingular(rng, 4, 20)
        dec = symplectic.symplectic_decompose(m)
        s, p = dec.s.matrix, dec.p
        if exact.mul(s, p) != m:
            exact_ok = False
            break
        if exact.mul(exact.mul(exact.transpose(s), j), s) != j:
            exact_ok = False
            break
        if dec.gram_height > 1:
            ratio = mpmath.log(dec.p_height) / mpmath.log(dec.gram_height)
            max_exponent = max(max_exponent, float(ratio))
        count += 1
    elapsed = time.perf_counter() - start
    return [
        CriterionResult(
            "decomposition exactness (M = SP, S^tJS = J) on 500 random M4(Z)",
            exact_ok and count == 500,
            "%d/500 decompositions exact" % count),
        CriterionResult(
            "decomposition sweep runtime under 30 s",
            elapsed < 30.0, "%.2f s" % elapsed),
        CriterionResult(
            "empirical height exponent max log H(P)/log H(M^tJM) <= 10",
            0.0 < max_exponent <= 10.0, "max exponent %.3f" % max_exponent),
    ]


# ---------------------------------------------------------------------------
# criterion 2: theta evaluation against the direct-summation oracle


def _theta_null_oracle_at_i(terms: int = 10 ** 4, prec: int = 256) -> mpc:
    with mp.workprec(prec):
        tau = mpc(0, 1)
        return mp.fsum(mpmath.expjpi(mpf(n) ** 2 * tau)
                       for n in range(-terms, terms + 1))


def _odd_half_characteristics(g: int):
    for u in itertools.product(range(2), repeat=g):
        for v in itertools.product(range(2), repeat=g):
            if sum(a * b for a, b in zip(u, v)) % 2:
                yield ([Fraction(a, 2) for a in u], [Fraction(b, 2) for b in v])


def _run_theta() -> List[CriterionResult]:
    results = []
    ctx = EvalContext()
    point_i = siegel_point([[mpc(0, 1)]])

    oracle = _theta_null_oracle_at_i()
    value = theta(None, None, point_i, None, ctx)
    diff = abs(value - oracle)
    results.append(CriterionResult(
        "theta[0,0](i, 0) matches 10^4-term 256-bit oracle to 1e-12",
        diff <= mpf("1e-12"), "difference %s" % mpmath.nstr(diff, 4)))

    rng = random.Random(2083)
    worst_null = mpf(0)
    for g in (1, 2):
        for _ in range(3):
            point = _random_reduced_point(rng, g)
            for a, b in _odd_half_characteristics(g):
                worst_null = max(worst_null, abs(theta(a, b, point, None, ctx)))
    results.append(CriterionResult(
        "odd-characteristic theta-nulls vanish to 1e-18 at default precision",
        worst_null <= mpf("1e-18"), "largest |theta| %s" % mpmath.nstr(worst_null, 4)))

    worst_shift = mpf(0)
    for idx in range(100):
        g = 1 if idx % 2 else 2
        point = _random_reduced_point(rng, g)
        z = [mpc(rng.uniform(-0.4, 0.4), rng.uniform(-0.3, 0.3)) for _ in range(g)]
        a = [Fraction(rng.randrange(4), 4) for _ in range(g)]
        plan = ctx.truncation_plan(point, z, a, None)
        base = theta(a, None, point, z, ctx)
        doubled = theta(a, None, point, z, ctx, radius=2 * plan.radius)
        worst_shift = max(worst_shift, abs(base - doubled))
    results.append(CriterionResult(
        "doubling the truncation radius moves values by <= target_eps "
        "(100 reduced points, g in {1,2})",
        worst_shift <= mpf(ctx.target_eps),
        "largest change %s" % mpmath.nstr(worst_shift, 4)))
    return results


# ---------------------------------------------------------------------------
# criterion 3: automorphy identity


def _run_automorphy() -> List[CriterionResult]:
    rng = random.Random(3169)
    ctx = EvalContext()
    worst = mpf(0)
    for idx in range(200):
        g = 1 if idx % 2 else 2
        point = _random_reduced_point(rng, g)
        z = [mpc(rng.uniform(-0.4, 0.4), rng.uniform(-0.25, 0.25)) for _ in range(g)]
        m = [rng.randint(-2, 2) for _ in range(g)]
        n = [rng.randint(-2, 2) for _ in range(g)]
        c = [Fraction(rng.randrange(16), 16) for _ in range(g)]
        residual = automorphy_check(c, point, z, m, n, l=16, ctx=ctx)
        worst = max(worst, residual)
    return [CriterionResult(
        "automorphy residual <= 1e-9 on 200 random (tau, z, m, n), "
        "g in {1,2}, l = 16, |(m,n)| <= 2",
        worst <= mpf("1e-9"), "largest residual %s" % mpmath.nstr(worst, 4))]


# ---------------------------------------------------------------------------
# criterion 4: exp-map kernel and equivariance


def _sample_congruence_elements(rng: random.Random, count: int, l: int = 16):
    """Random small elements of G(l, 2l) x| Z^2 at g = 1: short words in the
    standard congruence generators paired with small lattice shifts."""
    gens = [SymplecticElement(((1, 2 * l), (0, 1))),
            SymplecticElement(((1, 0), (2 * l, 1)))]
    out = []
    seen = set()
    guard = 0
    while len(out) < count and guard < 200 * count:
        guard += 1
        word = SymplecticElement.identity(1)
        for _ in range(rng.randint(1, 2)):
            gen = rng.choice(gens)
            if rng.random() < 0.5:
                gen = gen.inverse()
            word = word * gen
        if not symplectic.in_congruence_group(word, l):
            continue
        shift = (rng.randint(-1, 1), rng.randint(-1, 1))
        if (word.matrix, shift) in seen:
            continue
        seen.add((word.matrix, shift))
        out.append(symplectic.AffineElement(word, shift))
    return out


def _run_expmap() -> List[CriterionResult]:
    rng = random.Random(4241)
    ctx = EvalContext()
    results = []
    point = siegel_point([[mpc("0.21", "1.13")]])
    with mp.workprec(ctx.precision_bits + 30):
        z = [mpc("0.17", "0.08")]
        base = exp_map(point, z, l=16, ctx=ctx)
        worst_kernel = mpf(0)
        tau_val = point.tau[0, 0]
        for u1 in range(-2, 3):
            for u2 in range(-2, 3):
                if not (u1 or u2):
                    continue
                shifted = [z[0] + tau_val * u1 + u2]
                image = exp_map(point, shifted, l=16, ctx=ctx)
                worst_kernel = max(
                    worst_kernel,
                    chordal_distance(base[0], image[0]),
                    chordal_distance(base[1], image[1]))
    results.append(CriterionResult(
        "exp-map kernel Omega_tau Z^2g: chordal distance <= 1e-9 "
        "for all |u| <= 2",
        worst_kernel <= mpf("1e-9"), "largest distance %s" % mpmath.nstr(worst_kernel, 4)))

    elements = _sample_congruence_elements(rng, 20)
    worst_eq = mpf(0)
    for affine in elements:
        new_point, new_z = halfspace.affine_act(affine, point, z,
                                                prec=ctx.precision_bits)
        image = exp_map(new_point, new_z, l=16, ctx=ctx)
        worst_eq = max(worst_eq,
                       chordal_distance(base[0], image[0]),
                       chordal_distance(base[1], image[1]))
    results.append(CriterionResult(
        "exp-map equivariance under 20 sampled elements of "
        "G(16,32) x| Z^2 at g = 1: chordal distance <= 1e-9",
        len(elements) == 20 and worst_eq <= mpf("1e-9"),
        "%d elements, largest distance %s" % (len(elements), mpmath.nstr(worst_eq, 4))))
    return results


# ---------------------------------------------------------------------------
# criterion 5: Siegel reduction


def _sl2_reduce_oracle(tau: mpc, prec: int = 128) -> mpc:
    """Independent classical SL_2(Z) reduction: translate to |Re| <= 1/2,
    invert while |tau| < 1."""
    with mp.workprec(prec + 10):
        value = mpc(tau)
        for _ in range(10000):
            value -= mpmath.floor(mpmath.re(value) + mpf(1) / 2)
            if abs(value) ** 2 < 1 - mpf("1e-12"):
                value = -1 / value
            else:
                return value
        raise NumericError("oracle did not stabilize")


def _run_reduction() -> List[CriterionResult]:
    rng = random.Random(5351)
    results = []
    worst_gap = mpf(0)
    idempotent = True
    monotone = True
    for _ in range(1000):
        x = rng.uniform(-5, 5)
        y = rng.uniform(0.05, 5)
        point = siegel_point([[mpc(x, y)]])
        res = halfspace.siegel_reduce(point)
        oracle = _sl2_reduce_oracle(point.tau[0, 0])
        worst_gap = max(worst_gap, abs(res.point.tau[0, 0] - oracle))
        again = halfspace.siegel_reduce(res.point)
        if again.transform != exact.eye(2):
            idempotent = False
        dets = res.det_history
        if any(dets[i + 1] < dets[i] for i in range(len(dets) - 1)):
            monotone = False
    results.append(CriterionResult(
        "g=1 agreement with the classical SL2(Z) oracle on 1000 points "
        "(<= 1e-10)", worst_gap <= mpf("1e-10"),
        "largest gap %s" % mpmath.nstr(worst_gap, 4)))
    results.append(CriterionResult(
        "idempotence: reducing a reduced point gives the identity transform",
        idempotent, ""))
    results.append(CriterionResult(
        "det Im never decreases along accepted candidate steps",
        monotone, ""))

    inside_all = True
    for _ in range(50):
        point = _random_point(rng, 2)
        res = halfspace.siegel_reduce(point)
        verdict = halfspace.is_in_siegel_domain(res.point)
        if not (verdict.inside and verdict.certified):
            inside_all = False
            break
        if any(res.det_history[i + 1] < res.det_history[i]
               for i in range(len(res.det_history) - 1)):
            monotone = False
    results.append(CriterionResult(
        "g=2 reduction outputs pass is_in_siegel_domain with the shipped "
        "candidate set (50 random points)", inside_all, ""))
    return results


# ---------------------------------------------------------------------------
# criterion 6: isogeny identities


def _random_valid_beta(rng: random.Random, g: int):
    """Rational representation of a random genuine isogeny: a word in
    symplectic elements, scalar multiplications and polarized dilations."""
    beta = exact.eye(2 * g)
    for _ in range(rng.randint(1, 3)):
        kind = rng.randrange(4)
        if kind == 0:
            beta = exact.mul(_random_symplectic(rng, g, words=2).matrix, beta)
        elif kind == 1:
            n = rng.randint(1, 2)
            beta = exact.scale(n, beta)
        elif kind == 2:
            d = rng.randint(1, 3)
            step = exact.from_blocks(exact.eye(g), exact.zeros(g, g),
                                     exact.zeros(g, g), exact.scale(d, exact.eye(g)))
            beta = exact.mul(step, beta)
        else:
            d = rng.randint(1, 3)
            step = exact.from_blocks(exact.scale(d, exact.eye(g)), exact.zeros(g, g),
                                     exact.zeros(g, g), exact.eye(g))
            beta = exact.mul(step, beta)
    return beta


def _run_isogeny() -> List[CriterionResult]:
    rng = random.Random(6397)
    worst_deg = mpf(0)
    worst_round = mpf(0)
    composition_exact = True
    built = 0
    attempts = 0
    while built < 200 and attempts < 2000:
        attempts += 1
        g = 1 if built % 2 else 2
        point = _random_reduced_point(rng, g)
        beta = _random_valid_beta(rng, g)
        try:
            iso = torus.isogeny_from_rational_rep(point, beta)
        except Exception:
            continue
        built += 1
        with mp.workprec(150):
            lhs = abs(mpmath.det(iso.tangent_map)) ** 2 * mpmath.det(iso.source.point.imag)
            rhs = mpf(iso.degree) * mpmath.det(iso.target.point.imag)
            worst_deg = max(worst_deg, abs(lhs - rhs) / max(abs(rhs), mpf(1)))
            b1, b2, b3, b4 = exact.blocks(iso.rational_rep)
            tau = iso.target.point.tau
            num = mparith.to_mp_matrix(exact.transpose(b1)) * tau + \
                mparith.to_mp_matrix(exact.transpose(b3))
            den = mparith.to_mp_matrix(exact.transpose(b2)) * tau + \
                mparith.to_mp_matrix(exact.transpose(b4))
            roundtrip = num * (den ** -1)
            worst_round = max(worst_round,
                              mparith.max_abs(roundtrip - iso.source.point.tau))
        back = torus.complementary_isogeny(iso)
        expected = exact.scale(iso.degree, exact.eye(2 * g))
        if exact.mul(back.rational_rep, iso.rational_rep) != expected:
            composition_exact = False
    return [
        CriterionResult(
            "degree identity |det alpha|^2 det Im tau0 = det beta det Im tau "
            "to relative 1e-9 on 200 isogenies (g in {1,2})",
            built == 200 and worst_deg <= mpf("1e-9"),
            "%d isogenies, largest relative error %s" % (built, mpmath.nstr(worst_deg, 4))),
        CriterionResult(
            "rational-representation roundtrip tau0 = "
            "(b1^t tau + b3^t)(b2^t tau + b4^t)^-1 residual <= 1e-10",
            worst_round <= mpf("1e-10"),
            "largest residual %s" % mpmath.nstr(worst_round, 4)),
        CriterionResult(
            "complementary-isogeny composition equals deg * identity exactly",
            composition_exact, ""),
    ]


# ---------------------------------------------------------------------------
# criterion 7: polarization pullback pipeline


def _run_pipeline() -> List[CriterionResult]:
    rng = random.Random(7451)
    worst_m4 = mpf(0)
    for _ in range(100):
        point = _random_reduced_point(rng, 2)
        element = _random_symplectic(rng, 2, words=3)
        worst_m4 = max(worst_m4, torus.m4_two_path_check(element, point))
    results = [CriterionResult(
        "two-path M4 = S^t B' S residual <= 1e-9 on 100 random (S, tau_B), g=2",
        worst_m4 <= mpf("1e-9"), "largest residual %s" % mpmath.nstr(worst_m4, 4))]

    point = _random_reduced_point(rng, 1)
    identity_iso = torus.isogeny_from_rational_rep(point, exact.eye(2))
    m1, m3 = torus.pullback_polarization(identity_iso)
    a_prime = torus.real_polarization_form(point)
    n_identity = torus.ampleness_bound(m1, m3, a_prime)

    all_posdef = True
    built = 0
    attempts = 0
    while built < 50 and attempts < 500:
        attempts += 1
        g = 1 if built % 2 else 2
        base = _random_reduced_point(rng, g)
        try:
            iso = torus.isogeny_from_rational_rep(base, _random_valid_beta(rng, g))
            m1, m3 = torus.pullback_polarization(iso)
            torus.ampleness_bound(m1, m3, torus.real_polarization_form(base))
        except NumericError:
            all_posdef = False
            break
        except Exception:
            continue
        built += 1
    results.append(CriterionResult(
        "ampleness bound always yields positive definite n M3 - A' "
        "(Cholesky succeeds) and n = 2 in the identity case",
        all_posdef and built == 50 and n_identity == 2,
        "identity n = %d, %d random isogenies verified" % (n_identity, built)))
    return results


# ---------------------------------------------------------------------------
# criterion 8: genus-1 isogeny enumeration


def _sigma1_by_trial_division(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def _canonical_lattice(bases) -> frozenset:
    """Canonical forms of a family of rank-2 sublattices of Z^2, via the
    exact Hermite decomposition of the transposed basis matrix."""
    out = set()
    for basis in bases:
        _, t = exact.hnf_decompose(exact.transpose(basis))
        out.add(exact.transpose(t))
    return frozenset(out)


def _run_enumeration() -> List[CriterionResult]:
    point = siegel_point([[mpc(0, 1)]])
    counts_ok = True
    lattices_ok = True
    details = ""
    for degree in range(1, 51):
        isos = torus.enumerate_isogenies_g1(point, degree)
        expected = _sigma1_by_trial_division(degree)
        if len(isos) != expected:
            counts_ok = False
            details = "degree %d: %d != sigma1 = %d" % (degree, len(isos), expected)
            break
        # production Hermite triples (a, b, d): lattice spanned by
        # (a, b) and (0, d) in the (tau, 1) coordinates
        production = []
        for a in range(1, degree + 1):
            if degree % a:
                continue
            d = degree // a
            production.extend(((a, 0), (b, d)) for b in range(d))
        # oracle: the transposed convention d1 d2 = D, 0 <= c < d1
        oracle = []
        for d1 in range(1, degree + 1):
            if degree % d1:
                continue
            d2 = degree // d1
            oracle.extend(((d1, c), (0, d2)) for c in range(d1))
        prod_set = _canonical_lattice(production)
        oracle_set = _canonical_lattice(oracle)
        if not (len(prod_set) == len(oracle_set) == expected and prod_set == oracle_set):
            lattices_ok = False
            details = "degree %d: canonical lattice sets differ" % degree
            break

    results = [CriterionResult(
        "enumeration count equals sigma_1(D) for all D <= 50 "
        "(canonicalized sublattice oracle)",
        counts_ok and lattices_ok, details)]

    isos = torus.enumerate_isogenies_g1(point, 2)
    targets = sorted((mpmath.re(i.target.point.tau[0, 0]),
                      mpmath.im(i.target.point.tau[0, 0])) for i in isos)
    expected_targets = [(mpf(0), mpf(1)), (mpf(0), mpf(2)), (mpf(0), mpf(2))]
    gap = max(max(abs(a - c), abs(b - d))
              for (a, b), (c, d) in zip(targets, expected_targets))
    results.append(CriterionResult(
        "degree-2 targets over tau0 = i form the multiset {2i, 2i, i} "
        "to 1e-10", len(isos) == 3 and gap <= mpf("1e-10"),
        "largest gap %s" % mpmath.nstr(gap, 4)))
    return results


# ---------------------------------------------------------------------------
# criterion 9: orbit-witness checker


def _random_witness(rng: random.Random, point: SiegelPoint,
                    isos: Sequence[torus.TorusIsogeny]) -> torus.OrbitWitness:
    iso = rng.choice(isos)
    r = rng.randint(1, 2)
    coeffs = tuple(rng.randint(-3, 3) for _ in range(r))
    lifts = []
    for _ in range(r):
        while True:
            u = (Fraction(rng.randrange(8), 8), Fraction(rng.randrange(8), 8))
            if u != (0, 0):
                lifts.append(u)
                break
    denominator = rng.randint(1, 4)
    seed = tuple(rng.randint(-3, 3) for _ in range(2))
    witness = torus.make_witness(point, iso, subgroup_coeffs=coeffs,
                                 generator_lifts=lifts,
                                 denominator=denominator, lattice_seed=seed)
    return witness


def _witness_is_corruptible(witness: torus.OrbitWitness, point: SiegelPoint) -> bool:
    """The corruption sweep needs every integer field to matter: x and the
    lifts must produce nonzero lattice terms."""
    with mp.workprec(point.prec):
        omega = torus.period_matrix(point)
        beta_inv = mparith.to_mp_matrix(exact.exact_inverse(witness.rational_rep))
        x = mparith.to_mp_vector(witness.fiber_coords)
        drift = mparith.max_abs(omega * (beta_inv * x))
        if drift < mpf("1e-3"):
            return False
        for u in witness.generator_lifts:
            if mparith.max_abs(omega * mparith.to_mp_vector(u)) < mpf("1e-3"):
                return False
    return True


def _run_witness() -> List[CriterionResult]:
    rng = random.Random(8467)
    point = siegel_point([[mpc(0, 1)]])
    isos = []
    for degree in (1, 2, 3, 4):
        isos.extend(torus.enumerate_isogenies_g1(point, degree))

    start = time.perf_counter()
    witnesses = []
    all_pass = True
    while len(witnesses) < 1000:
        witness = _random_witness(rng, point, isos)
        witnesses.append(witness)
        report = torus.check_orbit_witness(witness, point, tol=1e-10)
        if not report.ok:
            all_pass = False
            break
    sweep_elapsed = time.perf_counter() - start
    results = [
        CriterionResult(
            "1000 constructor-generated witnesses all pass at 1e-10",
            all_pass and len(witnesses) == 1000, ""),
        CriterionResult(
            "1000-witness sweep runs in under 10 s",
            sweep_elapsed < 10.0, "%.2f s" % sweep_elapsed),
    ]

    corruptions_fail = True
    checked = 0
    for witness in witnesses[:40]:
        if not _witness_is_corruptible(witness, point):
            continue
        corrupted = []
        for idx in range(len(witness.lattice_vector)):
            for delta in (-1, 1):
                vec = list(witness.lattice_vector)
                vec[idx] += delta
                corrupted.append(replace(witness, lattice_vector=tuple(vec)))
        for idx in range(len(witness.subgroup_coeffs)):
            for delta in (-1, 1):
                coeffs = list(witness.subgroup_coeffs)
                coeffs[idx] += delta
                corrupted.append(replace(witness, subgroup_coeffs=tuple(coeffs)))
        for delta in (-1, 1):
            corrupted.append(replace(witness,
                                     denominator=witness.denominator + delta))
        for bad in corrupted:
            checked += 1
            report = torus.check_orbit_witness(bad, point, tol=1e-10)
            if report.ok:
                corruptions_fail = False
                break
        if not corruptions_fail:
            break
    results.append(CriterionResult(
        "every +-1 corruption of R, a_i, N fails the membership check",
        corruptions_fail and checked > 0,
        "%d corruptions rejected" % checked))
    return results


# ---------------------------------------------------------------------------


SUITES: Dict[str, Callable[[], List[CriterionResult]]] = {
    "symplectic": _run_symplectic,
    "theta": _run_theta,
    "automorphy": _run_automorphy,
    "expmap": _run_expmap,
    "reduction": _run_reduction,
    "isogeny": _run_isogeny,
    "pipeline": _run_pipeline,
    "enumeration": _run_enumeration,
    "witness": _run_witness,
}


def run_suite(name: str) -> SuiteResult:
    if name not in SUITES:
        raise ValueError("unknown suite %r; available: %s"
                         % (name, ", ".join(sorted(SUITES))))
    return _make_suite(name, SUITES[name])


def run_all() -> List[SuiteResult]:
    return [run_suite(name) for name in SUITES]
