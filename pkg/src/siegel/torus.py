"""Polarized complex tori C^g / (tau | E) Z^2g, isogenies as pairs of
analytic and rational representations, polarization pullback identities,
sublattice representations of abelian subvarieties, genus-1 isogeny
enumeration, and the orbit-witness membership checker.

An isogeny from the torus at tau0 to the torus at tau is carried as the
pair (alpha, beta) with alpha (Omega_tau0) = (Omega_tau) beta; the degree
is det beta > 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
from mpmath import mp, mpc, mpf

from . import exact, halfspace, mparith, symplectic
from .errors import NumericError, ValidationError
from .exact import Matrix
from .halfspace import SiegelPoint, siegel_point
from .mparith import DEFAULT_PREC, DEFAULT_TOL
from .symplectic import SymplecticElement


def period_matrix(tau: SiegelPoint) -> mpmath.matrix:
    """The g x 2g period matrix (tau | E_g)."""
    g = tau.g
    out = mpmath.matrix(g, 2 * g)
    for i in range(g):
        for j in range(g):
            out[i, j] = tau.tau[i, j]
        out[i, g + i] = mpf(1)
    return out


@dataclass(frozen=True, eq=False)
class PolarizedTorus:
    """A principally polarized torus: period matrix (tau | E) and the
    Hermitian polarization form (Im tau)^-1."""

    point: SiegelPoint
    periods: mpmath.matrix
    hermitian_form: mpmath.matrix

    @property
    def g(self) -> int:
        return self.point.g


def polarized_torus(tau) -> PolarizedTorus:
    point = tau if isinstance(tau, SiegelPoint) else siegel_point(tau)
    with mp.workprec(point.prec + 10):
        herm = mparith.imag_part(point.tau) ** -1
        return PolarizedTorus(point=point, periods=period_matrix(point),
                              hermitian_form=mparith.symmetrize(herm))


def riemann_check(tau_candidate, tol: float = DEFAULT_TOL,
                  prec: int = DEFAULT_PREC) -> bool:
    """Riemann relations for (tau | E): symmetric, Im positive definite."""
    return halfspace.riemann_check(tau_candidate, tol=tol, prec=prec)


def real_polarization_form(tau) -> mpmath.matrix:
    """Gram matrix of Re H on the lattice basis given by (tau | E), where H
    is the Hermitian form (Im tau)^-1.  In blocks (X = Re tau, Y = Im tau):

        ( X Y^-1 X + Y    X Y^-1 )
        ( Y^-1 X          Y^-1   )
    """
    point = tau if isinstance(tau, SiegelPoint) else siegel_point(tau)
    g = point.g
    with mp.workprec(point.prec + 10):
        x = point.real
        y_inv = mparith.imag_part(point.tau) ** -1
        top_left = x * y_inv * x + mparith.imag_part(point.tau)
        top_right = x * y_inv
        out = mpmath.matrix(2 * g, 2 * g)
        for i in range(g):
            for j in range(g):
                out[i, j] = top_left[i, j]
                out[i, g + j] = top_right[i, j]
                out[g + i, j] = top_right[j, i]
                out[g + i, g + j] = y_inv[i, j]
        return mparith.symmetrize(out)


# ---------------------------------------------------------------------------
# isogenies


@dataclass(frozen=True, eq=False)
class TorusIsogeny:
    """Isogeny between polarized tori: analytic representation alpha on
    tangent spaces, rational representation beta on lattices, linked by
    alpha (tau0 | E) = (tau | E) beta with det beta > 0."""

    source: PolarizedTorus
    target: PolarizedTorus
    tangent_map: mpmath.matrix
    rational_rep: Matrix

    @property
    def degree(self) -> int:
        return exact.exact_det(self.rational_rep)

    def compatibility_residual(self) -> mpf:
        """max | alpha Omega_0 - Omega_tau beta | over all entries."""
        prec = self.source.point.prec
        with mp.workprec(prec + 10):
            lhs = self.tangent_map * self.source.periods
            rhs = self.target.periods * mparith.to_mp_matrix(self.rational_rep)
            return mparith.max_abs(lhs - rhs)


def _validate_isogeny(iso: TorusIsogeny, tol: float) -> TorusIsogeny:
    if exact.exact_det(iso.rational_rep) <= 0:
        raise ValidationError("rational representation must have positive determinant")
    scale = max(mpf(1), mparith.max_abs(iso.target.periods),
                mparith.max_abs(iso.tangent_map))
    if iso.compatibility_residual() > mpf(tol) * scale:
        raise ValidationError("alpha Omega_0 = Omega_tau beta fails at tolerance")
    return iso


def isogeny_from_rational_rep(tau0, beta, prec: Optional[int] = None,
                              tol: float = DEFAULT_TOL) -> TorusIsogeny:
    """Construct the isogeny with rational representation beta out of the
    torus at tau0: the target is tau = (beta^t)^-1 [tau0] under the partial
    GL action and alpha = tau beta_2 + beta_4.

    Raises ``DomainError`` when the partial action leaves H_g and
    ``ValidationError`` when det beta <= 0 (orientation).
    """
    source_pt = tau0 if isinstance(tau0, SiegelPoint) else siegel_point(tau0)
    prec = prec or source_pt.prec
    beta = exact.matrix(beta)
    if exact.shape(beta) != (2 * source_pt.g, 2 * source_pt.g):
        raise ValidationError("beta must be 2g x 2g")
    det = exact.exact_det(beta)
    if det == 0:
        raise ValidationError("beta must be nonsingular")
    if det < 0:
        raise ValidationError("beta has negative determinant; "
                              "genuine isogenies are orientation-preserving")
    beta_t_inv = exact.exact_inverse(exact.transpose(beta))
    target_pt = halfspace.gl_partial_act(beta_t_inv, source_pt, prec=prec, tol=tol)
    g = source_pt.g
    with mp.workprec(prec + 10):
        _, b2, _, b4 = exact.blocks(beta)
        alpha = target_pt.tau * mparith.to_mp_matrix(b2) + mparith.to_mp_matrix(b4)
    iso = TorusIsogeny(source=polarized_torus(source_pt),
                       target=polarized_torus(target_pt),
                       tangent_map=alpha, rational_rep=beta)
    return _validate_isogeny(iso, tol)


def complementary_isogeny(iso: TorusIsogeny, tol: float = DEFAULT_TOL) -> TorusIsogeny:
    """The isogeny back with rational representation adj(beta), so that the
    two rational representations compose to (deg) * identity exactly."""
    beta = iso.rational_rep
    adj = exact.adjugate(beta)
    prec = iso.source.point.prec
    with mp.workprec(prec + 10):
        alpha_back = (iso.tangent_map ** -1) * mpf(iso.degree)
    back = TorusIsogeny(source=iso.target, target=iso.source,
                        tangent_map=alpha_back, rational_rep=adj)
    return _validate_isogeny(back, tol)


def polarization_imaginary_form(iso: TorusIsogeny) -> Matrix:
    """The integral alternating form beta^t J beta representing the imaginary
    part of the pulled-back polarization on the source lattice."""
    beta = iso.rational_rep
    j = symplectic.standard_form(iso.source.g)
    return exact.mul(exact.mul(exact.transpose(beta), j), beta)


def pullback_polarization(iso: TorusIsogeny):
    """Real Gram matrices of the polarization pullback: returns (M1, M3) with
    M3 = Phi^t B' Phi (symmetric positive definite) and M1 = (A')^-1 M3,
    where A', B' are the real forms of the source/target polarizations and
    Phi the rational representation."""
    prec = iso.source.point.prec
    with mp.workprec(prec + 10):
        a_prime = real_polarization_form(iso.source.point)
        b_prime = real_polarization_form(iso.target.point)
        phi = mparith.to_mp_matrix(iso.rational_rep)
        m3 = mparith.symmetrize(phi.T * b_prime * phi)
        try:
            m1 = (a_prime ** -1) * m3
        except ZeroDivisionError:
            raise NumericError("source polarization form is numerically singular")
        return m1, m3


def ampleness_bound(m1: mpmath.matrix, m3: mpmath.matrix,
                    a_prime: mpmath.matrix, prec: int = DEFAULT_PREC) -> int:
    """Smallest workable twist exponent: n = floor(opnorm + 1) where opnorm
    is the operator norm of M1^-1 in the M3 inner product; verifies that
    M2 = n M3 - A' is positive definite and raises ``NumericError`` if not.
    """
    with mp.workprec(prec + 10):
        try:
            lower = mpmath.cholesky(mparith.symmetrize(m3))
        except ValueError:
            raise ValidationError("M3 must be positive definite")
        m_tilde = lower.T
        conj = m_tilde * (m1 ** -1) * (m_tilde ** -1)
        singulars = mp.svd_r(conj, compute_uv=False)
        opnorm = max(singulars[i] for i in range(conj.rows))
        # exact-tie guard: opnorm of an identity map rounds to 1
        n = int(mpmath.floor(opnorm + 1 + mpf("1e-12")))
        m2 = mparith.symmetrize(m3 * n - a_prime)
        try:
            mpmath.cholesky(m2)
        except ValueError:
            raise NumericError(
                "n M3 - A' failed its positive definiteness check "
                "(precision exhausted or inconsistent inputs)")
        return n


def m4_two_path_check(s, tau_b, b_prime: Optional[mpmath.matrix] = None,
                      prec: Optional[int] = None) -> mpf:
    """Consistency residual for the two computations of M4 = S^t B' S.

    Path one conjugates the real polarization form directly; path two
    rebuilds it blockwise from Re/Im of S^t[T_B], including the block
        M5 = (Re S^t[T_B]) (Im S^t[T_B])^-1 (Re S^t[T_B]) + Im S^t[T_B],
    and the Hermitian-form identity
        (S3 T_B + S4) (Im T_B)^-1 (conj(T_B) S3^t + S4^t) = (Im S^t[T_B])^-1
    is checked alongside.  Returns the largest entrywise discrepancy.
    """
    point = tau_b if isinstance(tau_b, SiegelPoint) else siegel_point(tau_b)
    element = s if isinstance(s, SymplecticElement) else SymplecticElement(exact.matrix(s))
    prec = prec or point.prec
    g = point.g
    with mp.workprec(prec + 10):
        if b_prime is None:
            b_prime = real_polarization_form(point)
        s_mp = mparith.to_mp_matrix(element.matrix)
        m4 = s_mp.T * b_prime * s_mp

        s_t = SymplecticElement(exact.transpose(element.matrix))
        image = halfspace.moebius_act(s_t, point, prec=prec)
        m4_block = real_polarization_form(image)
        residual = mparith.max_abs(m4 - m4_block)

        # blocks: S = (S1^t S3^t; S2^t S4^t), so S3 = B^t and S4 = D^t
        _, b_blk, _, d_blk = element.blocks()
        s3 = mparith.to_mp_matrix(exact.transpose(b_blk))
        s4 = mparith.to_mp_matrix(exact.transpose(d_blk))
        tau_m = point.tau
        tau_conj = mpmath.matrix(g, g)
        for i in range(g):
            for j in range(g):
                tau_conj[i, j] = mpmath.conj(tau_m[i, j])
        y_inv = mparith.imag_part(tau_m) ** -1
        lhs = (s3 * tau_m + s4) * y_inv * (tau_conj * s3.T + s4.T)
        rhs = mparith.imag_part(image.tau) ** -1
        residual = max(residual, mparith.max_abs(lhs - rhs))
        return residual


# ---------------------------------------------------------------------------
# sublattices of abelian subvarieties


@dataclass(frozen=True)
class SublatticeRep:
    """Integer matrix whose columns span the lattice of an abelian
    subvariety of codimension k inside the torus at tau0; the matrix has
    shape 2g x 2(g-k) and Omega_tau0 H must have rank g - k."""

    rows: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 2 or self.rows % 2:
            raise ValidationError("sublattice matrices have 2g rows")
        ent = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        if len(ent) != self.rows:
            raise ValidationError("sublattice entry rows do not match 'rows'")
        width = len(ent[0]) if ent else 0
        if any(len(r) != width for r in ent):
            raise ValidationError("sublattice rows have inconsistent lengths")
        if width % 2 or width > self.rows:
            raise ValidationError("sublattice must have 2(g-k) columns, 0 <= k <= g")

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def codim(self) -> int:
        return (self.rows - self.cols) // 2

    @classmethod
    def zero(cls, g: int) -> "SublatticeRep":
        """The empty sublattice (codimension g)."""
        return cls(rows=2 * g, entries=tuple(() for _ in range(2 * g)))


@dataclass(frozen=True)
class SublatticeCheck:
    rank: int
    is_complex_subspace: bool


def sublattice_check(h, tau0, tol: float = DEFAULT_TOL) -> SublatticeCheck:
    """Numerical rank of Omega_tau0 H and stability of its real column span
    under multiplication by i (the lattice-level criterion for coming from
    an abelian subvariety)."""
    point = tau0 if isinstance(tau0, SiegelPoint) else siegel_point(tau0)
    g = point.g
    if not isinstance(h, SublatticeRep):
        rows = [tuple(int(x) for x in row) for row in h]
        h = SublatticeRep(rows=len(rows), entries=tuple(rows))
    if h.rows != 2 * g:
        raise ValidationError("sublattice has %d rows, expected %d" % (h.rows, 2 * g))
    if h.cols == 0:
        return SublatticeCheck(rank=0, is_complex_subspace=True)
    with mp.workprec(point.prec + 10):
        omega = period_matrix(point)
        h_mp = mparith.to_mp_matrix(h.entries)
        w = omega * h_mp  # g x cols complex
        rank = _rank_complex(w, tol)
        real_span = _real_embedding(w)
        i_w = w * mpc(0, 1)
        both = _hstack(real_span, _real_embedding(i_w))
        stable = _rank_real(both, tol) == _rank_real(real_span, tol)
        return SublatticeCheck(rank=rank, is_complex_subspace=stable)


def _real_embedding(w: mpmath.matrix) -> mpmath.matrix:
    out = mpmath.matrix(2 * w.rows, w.cols)
    for i in range(w.rows):
        for j in range(w.cols):
            out[i, j] = mpmath.re(w[i, j])
            out[w.rows + i, j] = mpmath.im(w[i, j])
    return out


def _hstack(a: mpmath.matrix, b: mpmath.matrix) -> mpmath.matrix:
    out = mpmath.matrix(a.rows, a.cols + b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            out[i, j] = a[i, j]
        for j in range(b.cols):
            out[i, a.cols + j] = b[i, j]
    return out


def _rank_from_singulars(sv, count: int, tol: float) -> int:
    values = [sv[i] for i in range(count)]
    top = max(values)
    if top < mpf(PROJECTIVE_RANK_FLOOR):
        return 0
    return sum(1 for v in values if v > mpf(tol) * top)


PROJECTIVE_RANK_FLOOR = "1e-30"


def _rank_complex(w: mpmath.matrix, tol: float) -> int:
    sv = mp.svd_c(w, compute_uv=False)
    return _rank_from_singulars(sv, min(w.rows, w.cols), tol)


def _rank_real(w: mpmath.matrix, tol: float) -> int:
    sv = mp.svd_r(w, compute_uv=False)
    return _rank_from_singulars(sv, min(w.rows, w.cols), tol)


# ---------------------------------------------------------------------------
# genus-1 isogeny enumeration


def _divisors(n: int) -> List[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _hermite_triple_isogeny(args):
    """Worker for one Hermite triple (a, b, d); returns picklable pieces."""
    a, b, d, tau_val, prec, tol = args
    with mp.workprec(prec + 10):
        tau_s = (mpf(a) * tau_val + b) / d
        sub_point = siegel_point([[tau_s]], prec=prec, tol=tol)
        red = halfspace.siegel_reduce(sub_point, prec=prec, tol=tol)
        gamma = red.transform
        beta_q = ((d, 0), (-b, a))
        gamma_inv_t = exact.transpose(SymplecticElement(gamma).inverse().matrix)
        beta = exact.mul(gamma_inv_t, beta_q)
        r_, s_ = gamma[1]
        alpha = (mpf(r_) * tau_s + s_) ** -1 * a
        return beta, alpha, red.point.tau[0, 0]


def enumerate_isogenies_g1(tau0, degree: int, prec: Optional[int] = None,
                           tol: float = DEFAULT_TOL,
                           jobs: int = 1) -> Tuple[TorusIsogeny, ...]:
    """All isogenies of the given degree out of a genus-1 torus, one per
    index-`degree` sublattice, enumerated by Hermite triples (a, b, d) with
    a d = degree and 0 <= b < d; the target (a tau0 + b)/d is Siegel-reduced
    and the reduction transform is folded into the rational representation.

    Output is ordered by (a, b) regardless of ``jobs``; its length is
    sigma_1(degree).
    """
    point = tau0 if isinstance(tau0, SiegelPoint) else siegel_point(tau0)
    if point.g != 1:
        raise ValidationError("enumeration is implemented for g = 1 only")
    if degree < 1:
        raise ValidationError("degree must be a positive integer")
    prec = prec or point.prec
    source = polarized_torus(point)
    tau_val = point.tau[0, 0]
    triples = [(a, b, degree // a, tau_val, prec, tol)
               for a in _divisors(degree) for b in range(degree // a)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            pieces = list(pool.map(_hermite_triple_isogeny, triples, chunksize=8))
    else:
        pieces = [_hermite_triple_isogeny(t) for t in triples]
    out: List[TorusIsogeny] = []
    for beta, alpha, tau_red in pieces:
        target = SiegelPoint(g=1, prec=prec, tau=mpmath.matrix([[tau_red]]))
        with mp.workprec(prec + 10):
            iso = TorusIsogeny(source=source, target=polarized_torus(target),
                               tangent_map=mpmath.matrix([[alpha]]),
                               rational_rep=beta)
            out.append(_validate_isogeny(iso, tol))
    return tuple(out)


# ---------------------------------------------------------------------------
# orbit witnesses (the membership conditions of the definable set)


def _normalize_unit_interval(vec) -> Tuple[Fraction, ...]:
    out = []
    for x in vec:
        frac = Fraction(x) if not isinstance(x, Fraction) else x
        out.append(frac - (frac.numerator // frac.denominator))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class OrbitWitness:
    """Coordinate tuple witnessing one point of the isogeny-orbit
    intersection at the lattice level.

    Fields (all rationals are exact):
      subgroup_coeffs  -- integers a_1..a_r combining the fixed generators
      denominator      -- positive integer N clearing the group element
      lattice_vector   -- R in Z^2g, the lattice coordinates of the cleared
                          relation
      rational_rep     -- beta, the isogeny's rational representation
      sublattice       -- H, spanning the abelian-subvariety lattice
      tangent_map      -- alpha, the isogeny's analytic representation
      sublattice_coords-- y in [0,1)^(2(g-k))
      target           -- tau, the Siegel point of the isogenous torus
      fiber_coords     -- x in [0,1)^2g with the point = Omega_tau x
      generator_lifts  -- u_1..u_r in [0,1)^2g fixing the lifts
                          Omega_tau0 u_i of the generators
    """

    subgroup_coeffs: Tuple[int, ...]
    denominator: int
    lattice_vector: Tuple[int, ...]
    rational_rep: Matrix
    sublattice: SublatticeRep
    tangent_map: mpmath.matrix
    sublattice_coords: Tuple[Fraction, ...]
    target: SiegelPoint
    fiber_coords: Tuple[Fraction, ...]
    generator_lifts: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = self.target.g
        object.__setattr__(self, "subgroup_coeffs",
                           tuple(int(v) for v in self.subgroup_coeffs))
        object.__setattr__(self, "lattice_vector",
                           tuple(int(v) for v in self.lattice_vector))
        object.__setattr__(self, "rational_rep", exact.matrix(self.rational_rep))
        x = tuple(Fraction(v) for v in self.fiber_coords)
        y = tuple(Fraction(v) for v in self.sublattice_coords)
        lifts = tuple(_normalize_unit_interval(u) for u in self.generator_lifts)
        object.__setattr__(self, "fiber_coords", x)
        object.__setattr__(self, "sublattice_coords", y)
        object.__setattr__(self, "generator_lifts", lifts)
        if len(self.lattice_vector) != 2 * g or len(x) != 2 * g:
            raise ValidationError("R and x must have length 2g")
        if exact.shape(self.rational_rep) != (2 * g, 2 * g):
            raise ValidationError("beta must be 2g x 2g")
        if self.sublattice.rows != 2 * g:
            raise ValidationError("H must have 2g rows")
        if len(y) != self.sublattice.cols:
            raise ValidationError("y must have length 2(g-k)")
        if any(not (0 <= v < 1) for v in x):
            raise ValidationError("x must lie in [0,1)^2g")
        if any(len(u) != 2 * g for u in lifts):
            raise ValidationError("generator lifts must have length 2g")

    @property
    def rank(self) -> int:
        return len(self.subgroup_coeffs)


@dataclass(frozen=True)
class WitnessReport:
    """Per-condition residuals of the witness membership check."""

    residuals: Dict[str, mpf]
    flags: Dict[str, bool]
    sublattice_rank: int
    ok: bool


def check_orbit_witness(witness: OrbitWitness, tau0,
                        tol: float = DEFAULT_TOL) -> WitnessReport:
    """Evaluate every defining membership condition of the witness set:

      1. target roundtrip  tau0 (B2^t tau + B4^t) = B1^t tau + B3^t, with
         det(B2^t tau + B4^t) != 0,
      2. det beta > 0,
      3. tangent compatibility  alpha^-1 Omega_tau = Omega_tau0 beta^-1,
      4. rank(Omega_tau0 H) <= g - k  (the exact rank is reported),
      5. N > 0,
      6. the cleared lattice equation
         Omega_tau0 R = det(beta) (N (Omega_tau0 beta^-1 x - Omega_tau0 H y)
                                   - sum_i a_i Omega_tau0 u_i).
    """
    point0 = tau0 if isinstance(tau0, SiegelPoint) else siegel_point(tau0)
    g = point0.g
    w = witness
    if w.target.g != g:
        raise ValidationError("witness target genus does not match tau0")
    prec = max(point0.prec, w.target.prec)
    residuals: Dict[str, mpf] = {}
    flags: Dict[str, bool] = {}
    with mp.workprec(prec + 10):
        tau = w.target.tau
        beta = w.rational_rep
        b1, b2, b3, b4 = exact.blocks(beta)
        b2t = mparith.to_mp_matrix(exact.transpose(b2))
        b4t = mparith.to_mp_matrix(exact.transpose(b4))
        b1t = mparith.to_mp_matrix(exact.transpose(b1))
        b3t = mparith.to_mp_matrix(exact.transpose(b3))
        den = b2t * tau + b4t
        flags["denominator_nonsingular"] = abs(mpmath.det(den)) > mpf(tol)
        residuals["target_roundtrip"] = mparith.max_abs(
            point0.tau * den - (b1t * tau + b3t))

        det_beta = exact.exact_det(beta)
        flags["degree_positive"] = det_beta > 0

        omega0 = period_matrix(point0)
        omega_tau = period_matrix(w.target)
        beta_inv = mparith.to_mp_matrix(exact.exact_inverse(beta))
        try:
            alpha_inv = w.tangent_map ** -1
            residuals["tangent_compatibility"] = mparith.max_abs(
                alpha_inv * omega_tau - omega0 * beta_inv)
        except ZeroDivisionError:
            flags["tangent_invertible"] = False
            residuals["tangent_compatibility"] = mpf("inf")

        rank = sublattice_check(w.sublattice, point0, tol=tol).rank
        flags["sublattice_rank_ok"] = rank <= g - w.sublattice.codim

        flags["denominator_positive"] = w.denominator >= 1

        x = mparith.to_mp_vector(w.fiber_coords)
        r_vec = mparith.to_mp_vector(w.lattice_vector)
        lattice_lhs = omega0 * r_vec
        inner = omega0 * (beta_inv * x) * mpf(w.denominator)
        if w.sublattice.cols:
            h_mp = mparith.to_mp_matrix(w.sublattice.entries)
            y = mparith.to_mp_vector(w.sublattice_coords)
            inner -= (omega0 * (h_mp * y)) * mpf(w.denominator)
        for a_i, u_i in zip(w.subgroup_coeffs, w.generator_lifts):
            if a_i:
                inner -= (omega0 * mparith.to_mp_vector(u_i)) * mpf(a_i)
        residuals["lattice_equation"] = mparith.max_abs(
            lattice_lhs - inner * mpf(det_beta))

    scale = max(mpf(1), mparith.max_abs(point0.tau), mparith.max_abs(w.target.tau))
    ok = all(flags.values()) and all(v <= mpf(tol) * scale
                                     for v in residuals.values())
    return WitnessReport(residuals=residuals, flags=flags,
                         sublattice_rank=rank, ok=ok)


def make_witness(tau0, iso: TorusIsogeny, *,
                 subgroup_coeffs: Sequence[int] = (),
                 generator_lifts: Sequence[Sequence] = (),
                 denominator: int = 1,
                 sublattice: Optional[SublatticeRep] = None,
                 sublattice_coords: Sequence = (),
                 lattice_seed: Sequence[int] = None) -> OrbitWitness:
    """Construct a membership witness by exact denominator clearing.

    Given the isogeny, subgroup data and a seed vector R0 in Z^2g, the fiber
    coordinates are solved exactly from the lattice equation,

        x = beta (R0 + Delta N H y + Delta sum_i a_i u_i) / (Delta N),

    then folded into [0,1)^2g (which adjusts R to R0 - N adj(beta) k for the
    integer fold k), so the resulting witness satisfies every membership
    condition exactly.
    """
    point0 = tau0 if isinstance(tau0, SiegelPoint) else siegel_point(tau0)
    g = point0.g
    beta = iso.rational_rep
    delta = exact.exact_det(beta)
    n_mult = int(denominator)
    if n_mult < 1:
        raise ValidationError("denominator N must be a positive integer")
    if sublattice is None:
        sublattice = SublatticeRep.zero(g)
    coeffs = tuple(int(a) for a in subgroup_coeffs)
    lifts = tuple(_normalize_unit_interval(u) for u in generator_lifts)
    if len(lifts) != len(coeffs):
        raise ValidationError("need one generator lift per subgroup coefficient")
    y = tuple(Fraction(v) for v in sublattice_coords)
    if len(y) != sublattice.cols:
        raise ValidationError("y must have length 2(g-k)")
    r0 = tuple(int(v) for v in (lattice_seed if lattice_seed is not None
                                else (0,) * (2 * g)))
    if len(r0) != 2 * g:
        raise ValidationError("lattice seed must have length 2g")

    # exact solve for x, then fold into the unit box
    target = [Fraction(v) for v in r0]
    if sublattice.cols:
        hy = exact.mat_vec(sublattice.entries, y)
        target = [t + delta * n_mult * v for t, v in zip(target, hy)]
    for a_i, u_i in zip(coeffs, lifts):
        target = [t + delta * a_i * v for t, v in zip(target, u_i)]
    x_raw = exact.mat_vec(beta, target)
    x_raw = [Fraction(v) / (delta * n_mult) for v in x_raw]
    fold = [v.numerator // v.denominator for v in x_raw]
    x = tuple(v - f for v, f in zip(x_raw, fold))
    adj = exact.adjugate(beta)
    correction = exact.mat_vec(adj, fold)
    r_vec = tuple(r - n_mult * c for r, c in zip(r0, correction))

    return OrbitWitness(
        subgroup_coeffs=coeffs,
        denominator=n_mult,
        lattice_vector=r_vec,
        rational_rep=beta,
        sublattice=sublattice,
        tangent_map=iso.tangent_map,
        sublattice_coords=y,
        target=iso.target.point,
        fiber_coords=x,
        generator_lifts=lifts,
    )


def identity_witness(tau0, rank: int = 1) -> OrbitWitness:
    """The trivial witness: identity isogeny, zero subgroup element."""
    point0 = tau0 if isinstance(tau0, SiegelPoint) else siegel_point(tau0)
    g = point0.g
    iso = isogeny_from_rational_rep(point0, exact.eye(2 * g))
    return make_witness(point0, iso,
                        subgroup_coeffs=(0,) * rank,
                        generator_lifts=((Fraction(0),) * (2 * g),) * rank,
                        denominator=1)
