"""The integer symplectic group, its congruence subgroups and the
semidirect product with Z^2g, plus the exact decomposition M = S * P of a
nonsingular integer matrix into a symplectic factor and an integer factor.

The standard alternating form is fixed once for the whole package as

    J = ( 0   E_g )
        (-E_g  0  )

with block convention M = (A B; C D) in g x g blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import exact
from .errors import ValidationError
from .exact import Matrix


def standard_form(g: int) -> Matrix:
    """The alternating form J = (0 E; -E 0) on Z^2g."""
    if g < 1:
        raise ValidationError("g must be positive")
    e = exact.eye(g)
    zero = exact.zeros(g, g)
    return exact.from_blocks(zero, e, exact.neg(e), zero)


def is_symplectic(m: Matrix) -> bool:
    """True iff M^t J M = J exactly.  Raises on odd dimension."""
    n, cols = exact.shape(m)
    if n != cols or n % 2:
        raise ValidationError("symplectic matrices must be square of even size")
    j = standard_form(n // 2)
    return exact.mul(exact.mul(exact.transpose(m), j), m) == j


@dataclass(frozen=True, eq=True)
class SymplecticElement:
    """An element of Sp_2g(Z), validated on construction."""

    matrix: Matrix

    def __post_init__(self):
        m = exact.matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if not is_symplectic(m):
            raise ValidationError("matrix is not symplectic")

    @property
    def g(self) -> int:
        return len(self.matrix) // 2

    def blocks(self) -> Tuple[Matrix, Matrix, Matrix, Matrix]:
        return exact.blocks(self.matrix)

    def inverse(self) -> "SymplecticElement":
        # M^-1 = -J M^t J, exactly integral for symplectic M.
        j = standard_form(self.g)
        inv = exact.neg(exact.mul(exact.mul(j, exact.transpose(self.matrix)), j))
        return SymplecticElement(inv)

    def __mul__(self, other: "SymplecticElement") -> "SymplecticElement":
        return SymplecticElement(exact.mul(self.matrix, other.matrix))

    @classmethod
    def identity(cls, g: int) -> "SymplecticElement":
        return cls(exact.eye(2 * g))


def in_congruence_group(m, l: int) -> bool:
    """Membership in G(l, 2l): M = E mod l and diag(A B^t), diag(C D^t) = 0 mod 2l."""
    if l < 1:
        raise ValidationError("level l must be positive")
    mat = m.matrix if isinstance(m, SymplecticElement) else exact.matrix(m)
    if not is_symplectic(mat):
        return False
    n = len(mat)
    e = exact.eye(n)
    if any((mat[i][j] - e[i][j]) % l for i in range(n) for j in range(n)):
        return False
    a, b, c, d = exact.blocks(mat)
    ab_t = exact.mul(a, exact.transpose(b))
    cd_t = exact.mul(c, exact.transpose(d))
    g = n // 2
    if any(ab_t[i][i] % (2 * l) for i in range(g)):
        return False
    if any(cd_t[i][i] % (2 * l) for i in range(g)):
        return False
    return True


# ---------------------------------------------------------------------------
# the semidirect product with Z^2g


@dataclass(frozen=True, eq=True)
class AffineElement:
    """A pair (M, z) in the semidirect product of Sp_2g with Z^2g.

    ``shift`` is a length-2g tuple; integer entries keep every group
    operation exact.
    """

    element: SymplecticElement
    shift: Tuple[Fraction, ...]

    def __post_init__(self):
        z = tuple(Fraction(x) if not isinstance(x, int) else x for x in self.shift)
        object.__setattr__(self, "shift", z)
        if len(z) != 2 * self.element.g:
            raise ValidationError("shift vector must have length 2g")

    @property
    def g(self) -> int:
        return self.element.g

    @classmethod
    def identity(cls, g: int) -> "AffineElement":
        return cls(SymplecticElement.identity(g), (0,) * (2 * g))


def semidirect_mul(x: AffineElement, y: AffineElement) -> AffineElement:
    """Group law (M', z') (M, z) = (M' M, z' + (M')^-t z)."""
    if x.g != y.g:
        raise ValidationError("affine elements have different genus")
    m_prime = x.element
    # (M')^-t = -J M' J for symplectic M', so the law stays exact over Z.
    j = standard_form(x.g)
    inv_t = exact.neg(exact.mul(exact.mul(j, m_prime.matrix), j))
    moved = exact.mat_vec(inv_t, y.shift)
    z = tuple(a + b for a, b in zip(x.shift, moved))
    return AffineElement(m_prime * y.element, z)


def semidirect_inverse(x: AffineElement) -> AffineElement:
    inv = x.element.inverse()
    j = standard_form(x.g)
    inv_t = exact.neg(exact.mul(exact.mul(j, inv.matrix), j))
    z = tuple(-v for v in exact.mat_vec(inv_t, x.shift))
    return AffineElement(inv, z)


def semidirect_act(x: AffineElement, tau, z, prec: Optional[int] = None):
    """Action ((A B; C D), (m, n)) . (tau, z) = (M[tau], (C tau + D)^-t z + M[tau] m + n).

    ``tau`` is a SiegelPoint and ``z`` an mpmath column vector (or sequence);
    returns the transformed pair at working precision.
    """
    from . import halfspace  # deferred: halfspace depends on this module

    return halfspace.affine_act(x, tau, z, prec=prec)


# ---------------------------------------------------------------------------
# symplectic basis of a unimodular alternating form


def _is_alternating(e: Matrix) -> bool:
    n, m = exact.shape(e)
    return n == m and exact.transpose(e) == exact.neg(e)


def symplectic_basis(e: Matrix) -> Matrix:
    """Unimodular P with P^t E P = J, for E alternating with det = +-1.

    Integral symplectic Gram-Schmidt: repeatedly extract a hyperbolic pair
    for the form, clearing the rest of the basis against it with Euclidean
    steps.  Unimodularity forces every pair pivot down to 1.
    """
    if not _is_alternating(e):
        raise ValidationError("form must be alternating (E^t = -E)")
    if abs(exact.exact_det(e)) != 1:
        raise ValidationError("form must be unimodular (det = +-1)")
    n = len(e)
    g = n // 2

    gram = [[int(x) for x in row] for row in e]
    basis = [[int(i == j) for j in range(n)] for i in range(n)]  # columns

    def add_multiple(k: int, m: int, c: int) -> None:
        # b_k <- b_k + c * b_m
        if c == 0 or k == m:
            return
        for idx in range(n):
            basis[idx][k] += c * basis[idx][m]
        for idx in range(n):
            if idx != k:
                gram[idx][k] += c * gram[idx][m]
                gram[k][idx] = -gram[idx][k]
        gram[k][k] = 0

    def find_min_entry(active: List[int]) -> Tuple[int, int]:
        best = None
        for ai, i in enumerate(active):
            for j in active[ai + 1:]:
                v = abs(gram[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 1:
                        return i, j
        if best is None:
            raise ValidationError("form is degenerate on the remaining lattice")
        return best[1], best[2]

    pairs: List[Tuple[int, int]] = []
    active = list(range(n))
    while active:
        i, j = find_min_entry(active)
        while True:
            if gram[i][j] < 0:
                i, j = j, i
            d = gram[i][j]
            for k in active:
                if k in (i, j):
                    continue
                # ops against b_i, b_j leave gram[i][j] fixed
                add_multiple(k, i, gram[j][k] // d)
                add_multiple(k, j, -(gram[i][k] // d))
            leftovers = [
                (v, k)
                for k in active if k not in (i, j)
                for v in (gram[i][k], gram[j][k]) if v
            ]
            if not leftovers:
                break
            # a residue smaller than d became available: pivot on it
            v, k = min(leftovers)
            i, j = (i, k) if gram[i][k] == v else (j, k)
        if gram[i][j] != 1:
            raise AssertionError("pair pivot %d != 1 on a unimodular form" % gram[i][j])
        pairs.append((i, j))
        active = [k for k in active if k not in (i, j)]

    order = [i for i, _ in pairs] + [j for _, j in pairs]
    p = tuple(tuple(basis[r][c] for c in order) for r in range(n))
    check = exact.mul(exact.mul(exact.transpose(p), e), p)
    if check != standard_form(g):
        raise AssertionError("symplectic Gram-Schmidt produced a non-standard form")
    return p


# ---------------------------------------------------------------------------
# decomposition M = S * P


@dataclass(frozen=True)
class Decomposition:
    """Result of the symplectic-times-integer factorization M = S * P.

    ``p_height`` is H(P) and ``gram_height`` is H(M^t J M); the pair is
    reported so callers can track the empirical exponent
    log H(P) / log H(M^t J M).
    """

    s: SymplecticElement
    p: Matrix
    p_height: int
    gram_height: int


def symplectic_decompose(m: Matrix) -> Decomposition:
    """Factor a nonsingular integer 2g x 2g matrix as M = S P, S symplectic.

    Pipeline: Hermite-style M = M1 P1 with M1 unimodular, then a symplectic
    basis P2 for the unimodular alternating form M1^t J M1, giving
    S = M1 P2 and P = P2^-1 P1 (always integral).
    """
    m = exact.matrix(m)
    n, cols = exact.shape(m)
    if n != cols or n % 2:
        raise ValidationError("decomposition needs a square matrix of even size")
    g = n // 2
    j = standard_form(g)

    m1, p1 = exact.hnf_decompose(m)
    e_form = exact.mul(exact.mul(exact.transpose(m1), j), m1)
    p2 = symplectic_basis(e_form)
    s = exact.mul(m1, p2)
    p2_inv = exact.to_int_matrix(exact.exact_inverse(p2))
    p = exact.mul(p2_inv, p1)

    if exact.mul(s, p) != m:
        raise AssertionError("decomposition lost exactness")
    element = SymplecticElement(s)

    gram = exact.mul(exact.mul(exact.transpose(m), j), m)
    return Decomposition(
        s=element,
        p=p,
        p_height=exact.mat_height(p),
        gram_height=exact.mat_height(gram),
    )
