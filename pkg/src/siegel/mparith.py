"""Small helpers bridging exact matrices and mpmath multiprecision matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

import mpmath
from mpmath import mp, mpc, mpf

from .errors import ValidationError

DEFAULT_PREC = 128
DEFAULT_TOL = 1e-10


def to_mp_matrix(data, force_complex: bool = False) -> mpmath.matrix:
    """Copy nested data (or an mpmath matrix) into a fresh mpmath matrix."""
    if hasattr(data, "rows") and hasattr(data, "cols"):
        rows = [[data[i, j] for j in range(data.cols)] for i in range(data.rows)]
    else:
        rows = [list(r) for r in data]
    if not rows or not rows[0]:
        raise ValidationError("matrix must have at least one row and column")
    out = mpmath.matrix(len(rows), len(rows[0]))
    for i, row in enumerate(rows):
        if len(row) != len(rows[0]):
            raise ValidationError("matrix rows have inconsistent lengths")
        for j, x in enumerate(row):
            out[i, j] = _to_mp_scalar(x, force_complex)
    return out


def _to_mp_scalar(x, force_complex: bool = False):
    if isinstance(x, Fraction):
        value = mpf(x.numerator) / mpf(x.denominator)
    elif isinstance(x, complex):
        value = mpc(x.real, x.imag)
    else:
        value = mpmath.mpmathify(x)
    if force_complex and not isinstance(value, mpc):
        value = mpc(value)
    return value


def to_mp_vector(data, length: int = None) -> mpmath.matrix:
    """Column vector from a sequence (or pass an mpmath column through)."""
    if hasattr(data, "rows") and hasattr(data, "cols"):
        if data.cols != 1:
            raise ValidationError("expected a column vector")
        vec = mpmath.matrix(data.rows, 1)
        for i in range(data.rows):
            vec[i, 0] = _to_mp_scalar(data[i, 0])
    else:
        items = list(data)
        vec = mpmath.matrix(len(items), 1)
        for i, x in enumerate(items):
            vec[i, 0] = _to_mp_scalar(x)
    if length is not None and vec.rows != length:
        raise ValidationError("vector has length %d, expected %d" % (vec.rows, length))
    return vec


def mp_eye(n: int) -> mpmath.matrix:
    return mpmath.eye(n)


def real_part(a: mpmath.matrix) -> mpmath.matrix:
    out = mpmath.matrix(a.rows, a.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            out[i, j] = mpmath.re(a[i, j])
    return out


def imag_part(a: mpmath.matrix) -> mpmath.matrix:
    out = mpmath.matrix(a.rows, a.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            out[i, j] = mpmath.im(a[i, j])
    return out


def symmetrize(a: mpmath.matrix) -> mpmath.matrix:
    out = mpmath.matrix(a.rows, a.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            out[i, j] = (a[i, j] + a[j, i]) / 2
    return out


def max_abs(a: mpmath.matrix) -> mpf:
    return max(abs(a[i, j]) for i in range(a.rows) for j in range(a.cols))


def symmetry_residual(a: mpmath.matrix) -> mpf:
    return max(
        abs(a[i, j] - a[j, i]) for i in range(a.rows) for j in range(a.cols)
    )


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of an mpf (mpf values are dyadic rationals)."""
    x = mpf(x)
    sign, man, exp, _ = x._mpf_
    if man == 0 and exp != 0:
        raise ValidationError("cannot convert non-finite value to a rational")
    value = Fraction(int(man), 1) * (Fraction(2) ** exp)
    return -value if sign else value


def fraction_rows(a: mpmath.matrix) -> List[List[Fraction]]:
    return [[mpf_to_fraction(a[i, j]) for j in range(a.cols)] for i in range(a.rows)]


def ldl_pivots_positive(rows: Sequence[Sequence[Fraction]]) -> bool:
    """Exact test for positive definiteness of a symmetric rational matrix."""
    n = len(rows)
    work = [[Fraction(x) for x in row] for row in rows]
    for k in range(n):
        pivot = work[k][k]
        if pivot <= 0:
            return False
        for i in range(k + 1, n):
            factor = work[i][k] / pivot
            if factor:
                work[i] = [x - factor * y for x, y in zip(work[i], work[k])]
    return True


def min_eig_symmetric(a: mpmath.matrix) -> mpf:
    """Smallest eigenvalue of a real symmetric matrix (approximate)."""
    if a.rows == 1:
        return mpf(a[0, 0])
    eigvals, _ = mp.eigsy(symmetrize(a))
    return min(eigvals[i] for i in range(a.rows))


def nearest_int(x: Fraction) -> int:
    """Nearest integer, halves rounded up (deterministic)."""
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)
