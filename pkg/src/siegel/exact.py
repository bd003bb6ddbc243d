"""Exact integer and rational matrix algebra.

Matrices are immutable tuple-of-row-tuples with ``int`` or
``fractions.Fraction`` entries (row-major).  All operations are pure and
return fresh values, so they are safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from .errors import ValidationError

Entry = Union[int, Fraction]
Matrix = Tuple[Tuple[Entry, ...], ...]


def matrix(rows: Iterable[Sequence]) -> Matrix:
    """Canonicalize nested data into an immutable rectangular matrix."""
    out = tuple(tuple(entry for entry in row) for row in rows)
    if not out or not out[0]:
        raise ValidationError("matrix must have at least one row and column")
    width = len(out[0])
    if any(len(row) != width for row in out):
        raise ValidationError("matrix rows have inconsistent lengths")
    return out


def eye(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple(tuple(0 for _ in range(cols)) for _ in range(rows))


def shape(a: Matrix) -> Tuple[int, int]:
    return len(a), len(a[0])


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValidationError("matrix shapes differ: %s vs %s" % (shape(a), shape(b)))
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValidationError("matrix shapes differ: %s vs %s" % (shape(a), shape(b)))
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def scale(c: Entry, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mul(a: Matrix, b: Matrix) -> Matrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValidationError("matrix shapes not composable: %s @ %s" % (shape(a), shape(b)))
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Matrix, v: Sequence[Entry]) -> Tuple[Entry, ...]:
    if shape(a)[1] != len(v):
        raise ValidationError("matrix/vector shapes not composable")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def is_square(a: Matrix) -> bool:
    n, m = shape(a)
    return n == m


def blocks(a: Matrix) -> Tuple[Matrix, Matrix, Matrix, Matrix]:
    """Split a 2g x 2g matrix into its four g x g blocks (A, B; C, D)."""
    n, m = shape(a)
    if n != m or n % 2:
        raise ValidationError("block split needs a square matrix of even size")
    g = n // 2
    return (
        tuple(row[:g] for row in a[:g]),
        tuple(row[g:] for row in a[:g]),
        tuple(row[:g] for row in a[g:]),
        tuple(row[g:] for row in a[g:]),
    )


def from_blocks(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Matrix:
    top = tuple(ra + rb for ra, rb in zip(a, b))
    bottom = tuple(rc + rd for rc, rd in zip(c, d))
    return top + bottom


# ---------------------------------------------------------------------------
# heights and norms


def rat_height(alpha: Union[int, Fraction]) -> int:
    """Affine height of a rational number: max(|numerator|, denominator)."""
    alpha = Fraction(alpha)
    return max(abs(alpha.numerator), alpha.denominator)


def mat_height(a: Matrix) -> int:
    """Entrywise maximum of the affine heights."""
    if not a or not a[0]:
        raise ValidationError("height of an empty matrix is undefined")
    return max(rat_height(x) for row in a for x in row)


def rowsum_norm(a) -> Entry:
    """Maximum over rows of the sum of entry absolute values.

    This is the operator norm for the sup-norm on vectors.  Accepts nested
    sequences or an mpmath matrix, with real or complex entries of any type
    supporting ``abs``.
    """
    if hasattr(a, "rows") and hasattr(a, "cols"):  # mpmath matrix
        rows = [[a[i, j] for j in range(a.cols)] for i in range(a.rows)]
    else:
        rows = list(a)
    if not rows:
        return 0
    return max(sum(abs(x) for x in row) for row in rows)


# ---------------------------------------------------------------------------
# determinants, inverses, adjugates


def exact_det(a: Matrix) -> Entry:
    """Exact determinant via fraction-free Gaussian elimination."""
    if not is_square(a):
        raise ValidationError("determinant needs a square matrix")
    n = len(a)
    work = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot_row is None:
            return _as_entry(Fraction(0), a)
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        pivot = work[col][col]
        det *= pivot
        for r in range(col + 1, n):
            factor = work[r][col] / pivot
            if factor:
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return _as_entry(det, a)


def _as_entry(value: Fraction, reference: Matrix) -> Entry:
    if all(isinstance(x, int) for row in reference for x in row):
        assert value.denominator == 1
        return value.numerator
    return value


def exact_inverse(a: Matrix) -> Matrix:
    """Exact inverse with Fraction entries; raises on singular input."""
    if not is_square(a):
        raise ValidationError("inverse needs a square matrix")
    n = len(a)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot_row is None:
            raise ValidationError("matrix is singular")
        work[col], work[pivot_row] = work[pivot_row], work[col]
        pivot = work[col][col]
        work[col] = [x / pivot for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def to_int_matrix(a: Matrix) -> Matrix:
    """Cast a rational matrix with trivial denominators to int entries."""
    out = []
    for row in a:
        new_row = []
        for x in row:
            frac = Fraction(x)
            if frac.denominator != 1:
                raise ValidationError("matrix entry %s is not an integer" % (x,))
            new_row.append(frac.numerator)
        out.append(tuple(new_row))
    return tuple(out)


def adjugate(a: Matrix) -> Matrix:
    """Classical adjugate; satisfies a @ adj(a) = det(a) * identity exactly."""
    if not is_square(a):
        raise ValidationError("adjugate needs a square matrix")
    n = len(a)
    if n == 1:
        return ((1,),)
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = tuple(
                tuple(a[r][c] for c in range(n) if c != j)
                for r in range(n) if r != i
            )
            cof[i][j] = (-1) ** (i + j) * exact_det(minor)
    # adjugate = transpose of the cofactor matrix
    return tuple(tuple(cof[j][i] for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# Hermite-style decomposition M = U * T


def hnf_decompose(m: Matrix) -> Tuple[Matrix, Matrix]:
    """Decompose an integer matrix as M = U * T with U unimodular.

    T is upper triangular with positive diagonal, and every entry above a
    diagonal entry d is reduced into {0, ..., d-1}.  Euclidean elimination
    with smallest-absolute-value pivoting keeps coefficient growth down.
    Raises ``ValidationError`` on non-square or singular input.
    """
    if not is_square(m):
        raise ValidationError("decomposition needs a square matrix")
    n = len(m)
    t = [[int(x) for x in row] for row in m]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i: int, j: int, q: int) -> None:
        # T: row_i -= q * row_j;  U: col_j += q * col_i  (keeps M = U T)
        t[i] = [x - q * y for x, y in zip(t[i], t[j])]
        for r in range(n):
            u[r][j] += q * u[r][i]

    def row_swap(i: int, j: int) -> None:
        t[i], t[j] = t[j], t[i]
        for r in range(n):
            u[r][i], u[r][j] = u[r][j], u[r][i]

    for col in range(n):
        # Euclidean elimination below the diagonal.
        while True:
            live = [r for r in range(col, n) if t[r][col] != 0]
            if not live:
                raise ValidationError("matrix is singular")
            pivot = min(live, key=lambda r: abs(t[r][col]))
            others = [r for r in live if r != pivot]
            if not others:
                break
            for r in others:
                row_op(r, pivot, t[r][col] // t[pivot][col])
        if pivot != col:
            row_swap(col, pivot)
        if t[col][col] < 0:
            t[col] = [-x for x in t[col]]
            for r in range(n):
                u[r][col] = -u[r][col]
        # Reduce the entries above the diagonal into {0, ..., d-1}.
        d = t[col][col]
        for r in range(col):
            q = t[r][col] // d
            if q:
                row_op(r, col, q)

    return tuple(tuple(row) for row in u), tuple(tuple(row) for row in t)
