"""The Siegel upper half space H_g and its reductions.

Provides the Moebius action of Sp_2g, the partial action of GL_2g(Q),
Minkowski reduction of positive definite forms (exact for g <= 2, LLL
surrogate beyond), and reduction into the Siegel fundamental domain, for
the full integer symplectic group or for a congruence subgroup given by a
coset representative system.

Certification policy: membership and reduction are certified for g = 1 and,
via the shipped Gottschling-style candidate set, for g = 2.  For g >= 3 the
det-maximality condition is only checked against user-supplied candidates
and results carry ``certified=False``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

import mpmath
from mpmath import mp, mpf

from . import exact, mparith, symplectic
from .errors import DomainError, NumericError, ValidationError
from .exact import Matrix
from .mparith import DEFAULT_PREC, DEFAULT_TOL
from .symplectic import AffineElement, SymplecticElement


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """A point of H_g: a symmetric g x g complex matrix with positive
    definite imaginary part, carried at a stated working precision (bits)."""

    g: int
    prec: int
    tau: mpmath.matrix

    @property
    def real(self) -> mpmath.matrix:
        return mparith.real_part(self.tau)

    @property
    def imag(self) -> mpmath.matrix:
        return mparith.imag_part(self.tau)

    def det_imag(self) -> mpf:
        with mp.workprec(self.prec):
            return mpmath.det(self.imag)

    def __repr__(self):
        return "SiegelPoint(g=%d, prec=%d, tau=%s)" % (self.g, self.prec, self.tau)


def riemann_check(tau_like, tol: float = DEFAULT_TOL, prec: int = DEFAULT_PREC) -> bool:
    """True iff the matrix is symmetric within tol with positive definite
    imaginary part, i.e. the Riemann relations hold for (tau | E_g)."""
    try:
        siegel_point(tau_like, prec=prec, tol=tol)
        return True
    except ValidationError:
        return False


def siegel_point(tau_like, prec: int = DEFAULT_PREC, tol: float = DEFAULT_TOL) -> SiegelPoint:
    """Validate and build a SiegelPoint; raises ValidationError otherwise."""
    if isinstance(tau_like, SiegelPoint):
        return tau_like
    with mp.workprec(prec + 10):
        tau = mparith.to_mp_matrix(tau_like, force_complex=True)
        if tau.rows != tau.cols:
            raise ValidationError("tau must be square")
        scale = max(mpf(1), mparith.max_abs(tau))
        if mparith.symmetry_residual(tau) > mpf(tol) * scale:
            raise ValidationError("tau is not symmetric within tolerance")
        tau = mparith.symmetrize(tau)
        im = mparith.imag_part(tau)
        lam = mparith.min_eig_symmetric(im)
        # strict: a point numerically on or below the boundary of H_g is
        # rejected; the tolerance governs only the symmetry check
        if lam <= 0:
            raise ValidationError("imaginary part of tau is not positive definite")
    return SiegelPoint(g=tau.rows, prec=prec, tau=tau)


# ---------------------------------------------------------------------------
# Moebius actions


def _as_mp_square(m, size: int) -> mpmath.matrix:
    if isinstance(m, SymplecticElement):
        m = m.matrix
    mat = mparith.to_mp_matrix(m)
    if mat.rows != mat.cols or mat.rows != size:
        raise ValidationError("acting matrix must be %d x %d" % (size, size))
    return mat


def _moebius_image(mat: mpmath.matrix, tau: mpmath.matrix):
    """Raw block image ((A tau + B)(C tau + D)^-1, C tau + D)."""
    g = tau.rows
    a = mat[:g, :g]
    b = mat[:g, g:]
    c = mat[g:, :g]
    d = mat[g:, g:]
    den = c * tau + d
    num = a * tau + b
    try:
        image = num * (den ** -1)
    except ZeroDivisionError:
        raise ZeroDivisionError("C tau + D is singular")
    return image, den


def moebius_act(m, tau, prec: Optional[int] = None, tol: float = DEFAULT_TOL) -> SiegelPoint:
    """The action M[tau] = (A tau + B)(C tau + D)^-1 of a symplectic matrix."""
    point = siegel_point(tau) if not isinstance(tau, SiegelPoint) else tau
    prec = prec or point.prec
    with mp.workprec(prec + 10):
        mat = _as_mp_square(m, 2 * point.g)
        try:
            image, _ = _moebius_image(mat, point.tau)
        except ZeroDivisionError:
            raise NumericError("C tau + D is numerically singular")
        scale = max(mpf(1), mparith.max_abs(image))
        if mparith.symmetry_residual(image) > mpf(tol) * scale:
            raise NumericError("Moebius image lost symmetry beyond tolerance")
    return siegel_point(image, prec=prec, tol=tol)


def gl_partial_act(phi, tau, prec: Optional[int] = None, tol: float = DEFAULT_TOL) -> SiegelPoint:
    """Partial action of GL_2g(Q) by the same block formula.

    The action is only defined where the image lands in H_g; an image that
    fails membership raises ``DomainError`` (a legitimate outcome, distinct
    from numerical failure).
    """
    point = siegel_point(tau) if not isinstance(tau, SiegelPoint) else tau
    prec = prec or point.prec
    with mp.workprec(prec + 10):
        mat = _as_mp_square(phi, 2 * point.g)
        try:
            image, _ = _moebius_image(mat, point.tau)
        except ZeroDivisionError:
            raise DomainError("point is outside the partial action's domain (singular C tau + D)")
        try:
            return siegel_point(image, prec=prec, tol=tol)
        except ValidationError as err:
            raise DomainError("image leaves the Siegel upper half space: %s" % err)


def affine_act(x: AffineElement, tau, z, prec: Optional[int] = None,
               tol: float = DEFAULT_TOL):
    """Action of (M, (m, n)) on (tau, z); returns (M[tau], new z)."""
    point = siegel_point(tau) if not isinstance(tau, SiegelPoint) else tau
    g = point.g
    if x.g != g:
        raise ValidationError("affine element genus %d does not match tau" % x.g)
    prec = prec or point.prec
    with mp.workprec(prec + 10):
        mat = _as_mp_square(x.element, 2 * g)
        zvec = mparith.to_mp_vector(z, length=g)
        try:
            image, den = _moebius_image(mat, point.tau)
        except ZeroDivisionError:
            raise NumericError("C tau + D is numerically singular")
        m_half = mparith.to_mp_vector(x.shift[:g])
        n_half = mparith.to_mp_vector(x.shift[g:])
        new_z = (den.T ** -1) * zvec + image * m_half + n_half
        new_point = siegel_point(image, prec=prec, tol=tol)
    return new_point, new_z


# ---------------------------------------------------------------------------
# Minkowski reduction


@dataclass(frozen=True)
class Verdict:
    """Boolean answer plus a certification flag."""

    ok: bool
    certified: bool

    def __bool__(self) -> bool:
        return self.ok


def _gram_fractions(m) -> List[List[Fraction]]:
    if hasattr(m, "rows"):
        rows = mparith.fraction_rows(m)
    else:
        rows = [[Fraction(x) for x in row] for row in m]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValidationError("form must be square")
    # symmetrize exactly; reject if blatantly asymmetric
    for i in range(n):
        for j in range(i):
            avg = (rows[i][j] + rows[j][i]) / 2
            rows[i][j] = rows[j][i] = avg
    if not mparith.ldl_pivots_positive(rows):
        raise ValidationError("form is not positive definite")
    return rows


def is_minkowski_reduced(m, search_bound: int = 3) -> Verdict:
    """Minkowski-reduction test: v^t M v >= m_ii for v with gcd(v_i..v_g) = 1
    and nonnegative superdiagonal.

    Exact (certified) for g <= 2 via the classical finite condition set; for
    g >= 3 the quantifier is truncated to |v|_inf <= search_bound and the
    verdict is uncertified.
    """
    rows = _gram_fractions(m)
    g = len(rows)
    if g == 1:
        return Verdict(True, True)
    if g == 2:
        ok = (2 * abs(rows[0][1]) <= rows[0][0] <= rows[1][1]) and rows[0][1] >= 0
        return Verdict(ok, True)
    if any(rows[i][i + 1] < 0 for i in range(g - 1)):
        return Verdict(False, False)
    for v in itertools.product(range(-search_bound, search_bound + 1), repeat=g):
        if all(x == 0 for x in v):
            continue
        value = sum(v[i] * rows[i][j] * v[j] for i in range(g) for j in range(g))
        for i in range(g):
            tail_gcd = 0
            for x in v[i:]:
                tail_gcd = gcd(tail_gcd, abs(x))
            if tail_gcd == 1 and value < rows[i][i]:
                return Verdict(False, False)
    return Verdict(True, False)


@dataclass(frozen=True)
class ReducedForm:
    """Reduction output: matrix = U^t M U with unimodular certificate U."""

    matrix: mpmath.matrix
    transform: Matrix
    certified: bool


def _gram_colop(gram, u_cols, k: int, j: int, q: int) -> None:
    # basis op b_k <- b_k - q b_j on a Gram matrix and the transform columns
    n = len(gram)
    for r in range(n):
        gram[k][r] -= q * gram[j][r]
    for r in range(n):
        gram[r][k] -= q * gram[r][j]
    for r in range(n):
        u_cols[r][k] -= q * u_cols[r][j]


def _gram_swap(gram, u_cols, k: int, j: int) -> None:
    n = len(gram)
    gram[k], gram[j] = gram[j], gram[k]
    for r in range(n):
        gram[r][k], gram[r][j] = gram[r][j], gram[r][k]
    for r in range(n):
        u_cols[r][k], u_cols[r][j] = u_cols[r][j], u_cols[r][k]


def _gram_flip(gram, u_cols, k: int) -> None:
    n = len(gram)
    for r in range(n):
        gram[k][r] = -gram[k][r]
    for r in range(n):
        gram[r][k] = -gram[r][k]
    for r in range(n):
        u_cols[r][k] = -u_cols[r][k]


def lll_gram(rows: Sequence[Sequence[Fraction]],
             delta: Fraction = Fraction(99, 100)) -> Matrix:
    """Exact LLL on a positive definite rational Gram matrix.

    Returns the unimodular transform U (as columns) with U^t G U LLL-reduced.
    """
    gram = [[Fraction(x) for x in row] for row in rows]
    n = len(gram)
    u_cols = [[int(i == j) for j in range(n)] for i in range(n)]

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = gram[i][j] - sum(mu[j][k] * mu[i][k] * norms[k] for k in range(j))
                mu[i][j] = s / norms[j]
            norms[i] = gram[i][i] - sum(mu[i][k] ** 2 * norms[k] for k in range(i))
        return mu, norms

    k = 1
    while k < n:
        mu, norms = gso()
        for j in range(k - 1, -1, -1):
            q = mparith.nearest_int(mu[k][j])
            if q:
                _gram_colop(gram, u_cols, k, j, q)
                mu, norms = gso()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            _gram_swap(gram, u_cols, k, k - 1)
            k = max(k - 1, 1)
    return tuple(tuple(row) for row in u_cols)


def minkowski_reduce(m, prec: int = DEFAULT_PREC) -> ReducedForm:
    """Reduce a positive definite symmetric matrix: exact Lagrange-Gauss for
    g <= 2, LLL surrogate (uncertified) for g >= 3.

    det is preserved exactly (|det U| = 1) and already-reduced inputs return
    the identity transform.
    """
    rows = _gram_fractions(m)
    g = len(rows)
    if g == 1:
        return ReducedForm(_fractions_to_mp(rows, prec), exact.eye(1), True)

    if g == 2:
        if is_minkowski_reduced(rows).ok:
            return ReducedForm(_fractions_to_mp(rows, prec), exact.eye(2), True)
        gram = [row[:] for row in rows]
        u_cols = [[1, 0], [0, 1]]
        while True:
            q = mparith.nearest_int(gram[0][1] / gram[0][0])
            if q:
                _gram_colop(gram, u_cols, 1, 0, q)
            if gram[1][1] < gram[0][0]:
                _gram_swap(gram, u_cols, 0, 1)
            else:
                break
        if gram[0][1] < 0:
            _gram_flip(gram, u_cols, 1)
        u = tuple(tuple(row) for row in u_cols)
        assert is_minkowski_reduced(gram).ok
        return ReducedForm(_fractions_to_mp(gram, prec), u, True)

    u = lll_gram(rows)
    gram = _apply_transform(rows, u)
    # sign-normalize the superdiagonal left to right
    u_cols = [list(row) for row in u]
    gram_rows = [row[:] for row in gram]
    for i in range(1, g):
        if gram_rows[i - 1][i] < 0:
            _gram_flip(gram_rows, u_cols, i)
    u = tuple(tuple(row) for row in u_cols)
    return ReducedForm(_fractions_to_mp(gram_rows, prec), u, False)


def _apply_transform(rows, u) -> List[List[Fraction]]:
    n = len(rows)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = sum(
                u[r][i] * rows[r][c] * u[c][j] for r in range(n) for c in range(n)
            )
    return out


def _fractions_to_mp(rows, prec: int) -> mpmath.matrix:
    with mp.workprec(prec):
        out = mpmath.matrix(len(rows), len(rows))
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                out[i, j] = mpf(x.numerator) / mpf(x.denominator)
    return out


# ---------------------------------------------------------------------------
# fundamental-domain candidates


def _embedded_inversion(u: Matrix, gamma: Matrix) -> SymplecticElement:
    """SL_2 element gamma acting on the tau-coordinate along the primitive
    vector u e_1, embedded into Sp_2g(Z)."""
    g = len(u)
    a, b = gamma[0]
    c, d = gamma[1]
    ag = exact.eye(g)
    bg = exact.zeros(g, g)
    cg = exact.zeros(g, g)
    dg = exact.eye(g)
    ag = tuple(tuple(a if i == j == 0 else ag[i][j] for j in range(g)) for i in range(g))
    bg = tuple(tuple(b if i == j == 0 else bg[i][j] for j in range(g)) for i in range(g))
    cg = tuple(tuple(c if i == j == 0 else cg[i][j] for j in range(g)) for i in range(g))
    dg = tuple(tuple(d if i == j == 0 else dg[i][j] for j in range(g)) for i in range(g))
    i_gamma = exact.from_blocks(ag, bg, cg, dg)
    u_inv = exact.to_int_matrix(exact.exact_inverse(u))
    g_u = exact.from_blocks(
        exact.transpose(u), exact.zeros(g, g), exact.zeros(g, g), u_inv
    )
    g_u_inv = exact.from_blocks(
        exact.transpose(u_inv), exact.zeros(g, g), exact.zeros(g, g), u
    )
    return SymplecticElement(exact.mul(exact.mul(g_u_inv, i_gamma), g_u))


_SL2_INVERSION = ((0, -1), (1, 0))


def candidates_g1() -> Tuple[SymplecticElement, ...]:
    """Candidate set certifying det-maximality for g = 1 (inversion S)."""
    return (SymplecticElement(_SL2_INVERSION),)


def candidates_g2() -> Tuple[SymplecticElement, ...]:
    """Gottschling-style 19-candidate set for the g = 2 fundamental domain.

    Fifteen translated inversions tau -> -(tau + S)^-1 with S symmetric with
    entries in {0, 1} or {0, -1}, the two partial inversions acting on
    tau_11 / tau_22, and the two inversions along the vector (1, -1).
    """
    mats: List[SymplecticElement] = []
    base = [
        ((0, 0), (0, 0)),
        ((1, 0), (0, 0)),
        ((0, 0), (0, 1)),
        ((1, 0), (0, 1)),
        ((0, 1), (1, 0)),
        ((1, 1), (1, 0)),
        ((0, 1), (1, 1)),
        ((1, 1), (1, 1)),
    ]
    shifts = [base[0]]
    for s in base[1:]:
        shifts.append(s)
        shifts.append(tuple(tuple(-x for x in row) for row in s))
    e2 = exact.eye(2)
    for s in shifts:
        mats.append(SymplecticElement(exact.from_blocks(
            exact.zeros(2, 2), exact.neg(e2), e2, exact.matrix(s))))
    mats.append(_embedded_inversion(e2, _SL2_INVERSION))
    mats.append(_embedded_inversion(((0, 1), (1, 0)), _SL2_INVERSION))
    skew = ((1, 0), (-1, 1))  # first basis vector (1, -1)
    mats.append(_embedded_inversion(skew, ((1, 0), (1, 1))))
    mats.append(_embedded_inversion(skew, ((0, -1), (1, -1))))
    return tuple(mats)


def default_candidates(g: int) -> Tuple[SymplecticElement, ...]:
    if g == 1:
        return candidates_g1()
    if g == 2:
        return candidates_g2()
    return ()


# ---------------------------------------------------------------------------
# fundamental-domain membership and reduction


@dataclass(frozen=True)
class DomainVerdict:
    """Membership verdict for the Siegel fundamental domain."""

    inside: bool
    certified: bool
    boundary: bool

    def __bool__(self) -> bool:
        return self.inside


def is_in_siegel_domain(tau, candidates: Optional[Sequence] = None,
                        tol: float = DEFAULT_TOL) -> DomainVerdict:
    """Check the three fundamental-domain conditions at tolerance ``tol``:
    |Re tau_ij| <= 1/2, Im tau Minkowski-reduced, and det Im maximal over the
    candidate set (shipped for g <= 2, user-supplied beyond)."""
    point = tau if isinstance(tau, SiegelPoint) else siegel_point(tau)
    g = point.g
    shipped = candidates is None
    cands = default_candidates(g) if shipped else tuple(candidates)
    certified = shipped and g <= 2
    tol = mpf(tol)
    boundary = False
    with mp.workprec(point.prec + 10):
        re = point.real
        half = mpf(1) / 2
        for i in range(g):
            for j in range(g):
                v = abs(re[i, j])
                if v > half + tol:
                    return DomainVerdict(False, certified, False)
                if v >= half - tol:
                    boundary = True
        mink = is_minkowski_reduced(point.imag)
        certified = certified and mink.certified
        if not mink.ok:
            return DomainVerdict(False, certified, boundary)
        det_im = mpmath.det(point.imag)
        for m in cands:
            try:
                image = moebius_act(m, point)
            except NumericError:
                continue
            ratio = mpmath.det(image.imag) / det_im
            if ratio > 1 + tol:
                return DomainVerdict(False, certified, boundary)
            if abs(ratio - 1) <= tol:
                boundary = True
    return DomainVerdict(True, certified, boundary)


@dataclass(frozen=True)
class ReductionResult:
    """Outcome of Siegel reduction: the reduced point, the accumulated
    integer symplectic transform with transform[tau_input] = tau_reduced,
    certification status and the det Im trace of accepted steps."""

    point: SiegelPoint
    transform: Matrix
    certified: bool
    iterations: int
    det_history: Tuple[mpf, ...] = field(default_factory=tuple)


def _round_symmetric(re: mpmath.matrix) -> Matrix:
    g = re.rows
    rows = []
    for i in range(g):
        row = []
        for j in range(g):
            x = mparith.mpf_to_fraction(re[i, j])
            row.append((2 * x.numerator + x.denominator) // (2 * x.denominator))
        rows.append(tuple(row))
    return tuple(rows)


def _gl_embed(u: Matrix) -> Matrix:
    g = len(u)
    u_inv = exact.to_int_matrix(exact.exact_inverse(u))
    return exact.from_blocks(exact.transpose(u), exact.zeros(g, g),
                             exact.zeros(g, g), u_inv)


def _translation(b: Matrix) -> Matrix:
    g = len(b)
    return exact.from_blocks(exact.eye(g), b, exact.zeros(g, g), exact.eye(g))


def siegel_reduce(tau, group: str = "sp", l: int = 16,
                  reps: Optional[Sequence] = None,
                  candidates: Optional[Sequence] = None,
                  tol: float = DEFAULT_TOL, max_iter: int = 10000,
                  prec: Optional[int] = None) -> ReductionResult:
    """Reduce tau into the Siegel fundamental domain.

    Iterates {translate Re into [-1/2, 1/2]; Minkowski-reduce Im; apply any
    candidate raising det Im} to a fixed point.  With ``group="g_l2l"`` the
    result is post-composed with a coset representative from ``reps`` so that
    the accumulated transform lies in G(l, 2l) and the point in the
    coset-union domain (Siegel fundamental domain for the subgroup).
    """
    point = tau if isinstance(tau, SiegelPoint) else siegel_point(tau)
    g = point.g
    prec = prec or point.prec
    shipped = candidates is None
    cands = default_candidates(g) if shipped else tuple(candidates)
    certified = shipped and g <= 2
    improve = mpf(tol)

    transform = exact.eye(2 * g)
    current = point
    history: List[mpf] = []
    iterations = 0
    with mp.workprec(prec + 10):
        history.append(mpmath.det(current.imag))
        for iterations in range(1, max_iter + 1):
            changed = False
            # imaginary part: Minkowski reduction
            red = minkowski_reduce(current.imag, prec=prec)
            certified = certified and red.certified
            if red.transform != exact.eye(g):
                step = _gl_embed(red.transform)
                current = moebius_act(step, current, prec=prec, tol=tol)
                transform = exact.mul(step, transform)
                changed = True
            # real part: integer translation
            shift = exact.neg(_round_symmetric(current.real))
            if shift != exact.zeros(g, g):
                step = _translation(shift)
                current = moebius_act(step, current, prec=prec, tol=tol)
                transform = exact.mul(step, transform)
                changed = True
            # det Im improvement over the candidate set
            det_im = mpmath.det(current.imag)
            best = None
            for m in cands:
                try:
                    image = moebius_act(m, current, prec=prec, tol=tol)
                except NumericError:
                    continue
                d = mpmath.det(image.imag)
                if best is None or d > best[0]:
                    best = (d, m, image)
            if best is not None and best[0] > det_im * (1 + improve):
                _, m, image = best
                current = image
                transform = exact.mul(m.matrix, transform)
                history.append(best[0])
                changed = True
            if not changed:
                break
        else:
            raise NumericError("Siegel reduction did not stabilize in %d iterations" % max_iter)

        if group == "sp":
            return ReductionResult(current, transform, certified, iterations,
                                   tuple(history))
        if group != "g_l2l":
            raise ValidationError("group must be 'sp' or 'g_l2l'")
        if not reps:
            raise ValidationError("coset reduction needs a representative system")
        for rep in reps:
            rep_el = rep if isinstance(rep, SymplecticElement) else SymplecticElement(exact.matrix(rep))
            composed = exact.mul(rep_el.matrix, transform)
            if symplectic.in_congruence_group(composed, l):
                final = moebius_act(rep_el, current, prec=prec, tol=tol)
                return ReductionResult(final, composed, certified, iterations,
                                       tuple(history))
        raise ValidationError(
            "coset representative system does not cover this point's coset")
