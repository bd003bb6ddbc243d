"""Rigorously truncated evaluation of classical theta functions and the
projective theta-null embeddings of the universal family.

theta[a, b](tau, z) = sum over m in Z^g of
    exp(pi i (m+a)^t tau (m+a) + 2 pi i (m+a)^t (z+b)).

Truncation: with lambda a certified lower bound on the smallest eigenvalue
of Im tau (exact rational LDL certificate) and c = |Im(z+b)|_2, every term
with |m|_inf = k has modulus at most exp(-pi lambda r^2 + 2 pi c r) at
r = k - |a|_inf.  The radius is the smallest k making the dominated
geometric tail <= target_eps; summation is over the box |m|_inf <= radius
in fixed lexicographic order, so results are bit-reproducible at fixed
precision.
"""

from __future__ import annotations

import itertools
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import mpmath
from mpmath import mp, mpc, mpf

from . import mparith
from .errors import NumericError, ValidationError
from .halfspace import SiegelPoint, siegel_point


@dataclass(frozen=True)
class EvalContext:
    """Evaluation parameters: output precision, absolute error target and
    the guard rails for the truncation-radius search."""

    precision_bits: int = 128
    target_eps: float = 1e-20
    radius_cap: int = 10000
    lambda_floor: float = 1e-6

    def __post_init__(self):
        if self.precision_bits < 8:
            raise ValidationError("precision must be at least 8 bits")
        if not (0 < self.target_eps < 1):
            raise ValidationError("target_eps must lie in (0, 1)")
        if self.radius_cap < 1 or self.lambda_floor <= 0:
            raise ValidationError("radius_cap and lambda_floor must be positive")

    def truncation_plan(self, tau, z=None, a=None, b=None) -> "TruncationPlan":
        """Derived truncation data for evaluating theta[a, b](tau, z)."""
        point = tau if isinstance(tau, SiegelPoint) else siegel_point(tau)
        g = point.g
        a = _characteristic(a, g)
        b = _characteristic(b, g)
        with mp.workprec(self.precision_bits + 30):
            zvec = (mparith.to_mp_vector(z, length=g) if z is not None
                    else mpmath.matrix(g, 1))
            return _plan(point, zvec, a, b, self)


@dataclass(frozen=True)
class TruncationPlan:
    radius: int
    working_prec: int
    lambda_lower: mpf
    term_count: int


def _characteristic(vec, g: int) -> Tuple[Fraction, ...]:
    if vec is None:
        return (Fraction(0),) * g
    out = tuple(Fraction(x) for x in vec)
    if len(out) != g:
        raise ValidationError("characteristic vector must have length g")
    return out


def _certified_lambda(im: mpmath.matrix, floor: float) -> mpf:
    """Certified lower bound for the smallest eigenvalue of Im tau.

    A floating approximation is shrunk until the exact rational LDL of
    (Im tau - t I) has all pivots positive, which proves lambda_min > t."""
    approx = mparith.min_eig_symmetric(im)
    if approx <= 0:
        raise NumericError("imaginary part is numerically indefinite")
    rows = mparith.fraction_rows(mparith.symmetrize(im))
    n = len(rows)
    approx_frac = mparith.mpf_to_fraction(approx)
    for shrink in (Fraction(98, 100), Fraction(9, 10), Fraction(1, 2),
                   Fraction(1, 4), Fraction(1, 16)):
        t = approx_frac * shrink
        shifted = [[rows[i][j] - (t if i == j else 0) for j in range(n)]
                   for i in range(n)]
        if mparith.ldl_pivots_positive(shifted):
            lam = mpf(t.numerator) / mpf(t.denominator)
            if lam < mpf(floor):
                raise NumericError(
                    "smallest eigenvalue of Im tau is below the floor %g; "
                    "Siegel-reduce the point before evaluating" % floor)
            return lam
    raise NumericError("could not certify a positive eigenvalue lower bound")


def _plan(point: SiegelPoint, zvec: mpmath.matrix,
          a: Tuple[Fraction, ...], b: Tuple[Fraction, ...],
          ctx: EvalContext, radius_override: Optional[int] = None) -> TruncationPlan:
    g = point.g
    lam = _certified_lambda(point.imag, ctx.lambda_floor)
    eps = mpf(ctx.target_eps)
    pi = mp.pi

    # b is rational, so Im(z + b) = Im z
    c = mpmath.sqrt(mpmath.fsum(mpmath.im(zvec[i, 0]) ** 2 for i in range(g)))
    s = max([abs(mpf(x.numerator)) / mpf(x.denominator) for x in a] + [mpf(0)])

    def shell_bound(k: int) -> mpf:
        count = mpf((2 * k + 1) ** g - (2 * k - 1) ** g)
        r = mpf(k) - s
        return count * mpmath.exp(-pi * lam * r ** 2 + 2 * pi * c * r)

    if radius_override is not None:
        radius = int(radius_override)
    else:
        k = max(int(mpmath.ceil(s + c / lam)) + 1, 1)
        while True:
            if k > ctx.radius_cap:
                raise NumericError(
                    "truncation radius exceeds cap %d (lambda lower bound %s is "
                    "too small for target_eps %g)" % (ctx.radius_cap, mpmath.nstr(lam, 6), ctx.target_eps))
            t_next = shell_bound(k + 1)
            if t_next <= eps / 2 and t_next <= shell_bound(k) / 2:
                radius = k
                break
            k += 1

    term_count = (2 * radius + 1) ** g
    # worst-case term modulus exp(pi c^2 / lambda) sets the headroom bits
    peak_bits = int(mpmath.ceil(max(mpf(0), pi * c ** 2 / lam / mpmath.ln(2))))
    guard = 12 + int(mpmath.ceil(mpmath.log(term_count, 2))) + peak_bits
    return TruncationPlan(radius=radius, working_prec=ctx.precision_bits + guard,
                          lambda_lower=lam, term_count=term_count)


def theta(a, b, tau, z=None, ctx: Optional[EvalContext] = None,
          radius: Optional[int] = None) -> mpc:
    """Evaluate theta[a, b](tau, z) with absolute error <= ctx.target_eps.

    ``a`` and ``b`` are rational g-vectors (sequences of ints/Fractions or
    None for zero), ``z`` a complex g-vector.  ``radius`` overrides the
    derived truncation radius (the error guarantee only holds when it is at
    least the derived one).
    """
    ctx = ctx or EvalContext()
    point = tau if isinstance(tau, SiegelPoint) else siegel_point(tau)
    g = point.g
    a = _characteristic(a, g)
    b = _characteristic(b, g)
    with mp.workprec(ctx.precision_bits + 30):
        zvec = (mparith.to_mp_vector(z, length=g) if z is not None
                else mpmath.matrix(g, 1))
        plan = _plan(point, zvec, a, b, ctx, radius_override=radius)
    with mp.workprec(plan.working_prec):
        tau_m = mparith.to_mp_matrix(point.tau, force_complex=True)
        zb = mpmath.matrix(g, 1)
        for i in range(g):
            zb[i, 0] = mpc(zvec[i, 0]) + mpf(b[i].numerator) / mpf(b[i].denominator)
        r = plan.radius
        total = mp.fsum(
            _term(m, a, tau_m, zb, g)
            for m in itertools.product(range(-r, r + 1), repeat=g)
        )
    with mp.workprec(ctx.precision_bits):
        return +total


def _term(m: Tuple[int, ...], a: Tuple[Fraction, ...],
          tau_m: mpmath.matrix, zb: mpmath.matrix, g: int) -> mpc:
    n = [mpf((m[i] + a[i]).numerator) / (m[i] + a[i]).denominator
         for i in range(g)]
    quad = mp.fsum(
        n[i] * tau_m[i, j] * n[j] for i in range(g) for j in range(g)
    )
    lin = mp.fsum(n[i] * zb[i, 0] for i in range(g))
    return mpmath.expjpi(quad + 2 * lin)


# ---------------------------------------------------------------------------
# projective points and the embedding maps


PROJECTIVE_FLOOR = "1e-30"


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """A point of P^(n-1)(C): a complex coordinate tuple, not all below the
    normalization floor; equality is projective (chordal metric)."""

    coordinates: Tuple[mpc, ...]

    def __post_init__(self):
        # mp values pass through untouched: re-wrapping with mpc() would
        # silently round them to the ambient precision
        coords = tuple(x if isinstance(x, (mpf, mpc)) else mpmath.mpmathify(x)
                       for x in self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        if not coords:
            raise ValidationError("projective point needs coordinates")
        if max(abs(x) for x in coords) < mpf(PROJECTIVE_FLOOR):
            raise NumericError("all projective coordinates vanish below the floor")

    @property
    def dimension(self) -> int:
        return len(self.coordinates) - 1


def chordal_distance(p: ProjectivePoint, q: ProjectivePoint,
                     prec: int = mparith.DEFAULT_PREC) -> mpf:
    """Fubini-Study chordal distance |x ^ y| / (|x| |y|) on projective space."""
    if len(p.coordinates) != len(q.coordinates):
        raise ValidationError("projective points live in different spaces")
    with mp.workprec(prec + 10):
        x = _sup_normalized(p.coordinates)
        y = _sup_normalized(q.coordinates)
        n = len(x)
        cross = mp.fsum(
            abs(x[i] * y[j] - x[j] * y[i]) ** 2
            for i in range(n) for j in range(i + 1, n)
        )
        nx = mp.fsum(abs(v) ** 2 for v in x)
        ny = mp.fsum(abs(v) ** 2 for v in y)
        return mpmath.sqrt(cross / (nx * ny))


def _sup_normalized(coords: Tuple[mpc, ...]) -> Tuple[mpc, ...]:
    scale = max(abs(x) for x in coords)
    return tuple(x / scale for x in coords)


def characteristics(l: int, g: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """The l^g theta characteristics {0, 1/l, ..., 1 - 1/l}^g in lexicographic
    order; this fixed order defines the coordinate order of the embeddings."""
    return tuple(
        tuple(Fraction(k, l) for k in digits)
        for digits in itertools.product(range(l), repeat=g)
    )


def _check_level(l: int) -> None:
    if l < 4 or l % 2:
        raise ValidationError("level l must be an even integer >= 4")
    root = math.isqrt(l)
    if not (l >= 16 and l % 8 == 0 and root * root == l):
        warnings.warn(
            "level l = %d is not >= 16, divisible by 8 and a perfect square; "
            "the embedding family assumes such levels" % l,
            stacklevel=3)


def _theta_coordinate(args):
    # worker for the parallel embedding path; mpmath matrices do not pickle,
    # so tau and z travel as plain mpc tuples
    a, g, prec, tau_rows, z_items, ctx = args
    point = SiegelPoint(g=g, prec=prec, tau=mpmath.matrix([list(r) for r in tau_rows]))
    return theta(a, None, point, z_items, ctx)


def embedding_phi(tau, z=None, l: int = 16, ctx: Optional[EvalContext] = None,
                  jobs: int = 1) -> ProjectivePoint:
    """The projective theta-null map: coordinates theta[a, 0](tau, z) for the
    l^g characteristics in fixed lexicographic order."""
    ctx = ctx or EvalContext()
    _check_level(l)
    point = tau if isinstance(tau, SiegelPoint) else siegel_point(tau)
    with mp.workprec(ctx.precision_bits + 30):
        zvec = (mparith.to_mp_vector(z, length=point.g) if z is not None
                else mpmath.matrix(point.g, 1))
    chars = characteristics(l, point.g)
    if jobs > 1:
        g = point.g
        tau_rows = tuple(tuple(point.tau[i, j] for j in range(g)) for i in range(g))
        z_items = tuple(zvec[i, 0] for i in range(g))
        payload = [(a, g, point.prec, tau_rows, z_items, ctx) for a in chars]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            coords = list(pool.map(_theta_coordinate, payload, chunksize=4))
    else:
        coords = [theta(a, None, point, zvec, ctx) for a in chars]
    return ProjectivePoint(tuple(coords))


def scale_point(tau, factor: int) -> SiegelPoint:
    """The Siegel point factor * tau (factor a positive integer)."""
    point = tau if isinstance(tau, SiegelPoint) else siegel_point(tau)
    if factor < 1:
        raise ValidationError("scale factor must be a positive integer")
    with mp.workprec(point.prec + 10):
        scaled = point.tau * mpf(factor)
    return SiegelPoint(g=point.g, prec=point.prec, tau=scaled)


def iota(tau, l: int = 16, ctx: Optional[EvalContext] = None,
         jobs: int = 1) -> ProjectivePoint:
    """Moduli embedding iota(tau) = phi(l tau, 0)."""
    point = tau if isinstance(tau, SiegelPoint) else siegel_point(tau)
    return embedding_phi(scale_point(point, l), None, l=l, ctx=ctx, jobs=jobs)


def exp_map(tau, z=None, l: int = 16, ctx: Optional[EvalContext] = None,
            jobs: int = 1) -> Tuple[ProjectivePoint, ProjectivePoint]:
    """Uniformization exp(tau, z) = (phi(l tau, 0), phi(l tau, l z)).

    The zero section is p -> (p, p): exp(tau, 0) has equal components."""
    ctx = ctx or EvalContext()
    point = tau if isinstance(tau, SiegelPoint) else siegel_point(tau)
    with mp.workprec(ctx.precision_bits + 30):
        zvec = (mparith.to_mp_vector(z, length=point.g) if z is not None
                else mpmath.matrix(point.g, 1))
        lz = zvec * mpf(l)
    scaled = scale_point(point, l)
    return (embedding_phi(scaled, None, l=l, ctx=ctx, jobs=jobs),
            embedding_phi(scaled, lz, l=l, ctx=ctx, jobs=jobs))


def automorphy_check(c, tau, z, m, n, l: int = 16,
                     ctx: Optional[EvalContext] = None) -> mpf:
    """Residual of the automorphy identity for lattice translations:

    theta_c(l tau, l(z + m + tau n))
        = exp(-pi i l n^t tau n - 2 pi i l n^t z) theta_c(l tau, l z).

    Returns |LHS - factor * RHS| / max(|LHS|, |RHS|, floor).
    """
    ctx = ctx or EvalContext()
    point = tau if isinstance(tau, SiegelPoint) else siegel_point(tau)
    g = point.g
    m = [int(x) for x in m]
    n = [int(x) for x in n]
    if len(m) != g or len(n) != g:
        raise ValidationError("m and n must be integer vectors of length g")
    scaled = scale_point(point, l)
    with mp.workprec(ctx.precision_bits + 30):
        zvec = mparith.to_mp_vector(z, length=g)
        nvec = mparith.to_mp_vector(n)
        mvec = mparith.to_mp_vector(m)
        shifted = zvec + mvec + point.tau * nvec
        quad = mp.fsum(nvec[i, 0] * point.tau[i, j] * nvec[j, 0]
                       for i in range(g) for j in range(g))
        lin = mp.fsum(nvec[i, 0] * zvec[i, 0] for i in range(g))
        factor = mpmath.expjpi(-mpf(l) * (quad + 2 * lin))
        lhs = theta(c, None, scaled, shifted * mpf(l), ctx)
        rhs = theta(c, None, scaled, zvec * mpf(l), ctx)
        floor = mpf(PROJECTIVE_FLOOR)
        denom = max(abs(lhs), abs(rhs), floor)
        return abs(lhs - factor * rhs) / denom
