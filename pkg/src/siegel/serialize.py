"""The shared structured-text format used by the CLI and file interfaces.

Payloads are JSON documents whose numeric leaves are strings: integers as
decimal strings ("42"), rationals as "p/q", reals as decimal strings, and
complex numbers as {"re": "...", "im": "..."} pairs.  Matrices are nested
arrays in row-major order.  Parsing is precision-aware: real/complex leaves
are read at a caller-supplied precision, exact leaves stay exact.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List

import mpmath
from mpmath import mp, mpc, mpf

from . import exact, torus
from .errors import ValidationError
from .exact import Matrix
from .halfspace import SiegelPoint, siegel_point


def _digits(prec_bits: int) -> int:
    return int(prec_bits * 0.30103) + 3


def dump_int(x: int) -> str:
    return str(int(x))


def parse_int(s) -> int:
    try:
        return int(str(s))
    except (TypeError, ValueError):
        raise ValidationError("expected an integer string, got %r" % (s,))


def dump_rational(x) -> str:
    frac = Fraction(x)
    if frac.denominator == 1:
        return str(frac.numerator)
    return "%d/%d" % (frac.numerator, frac.denominator)


def parse_rational(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValidationError("expected a rational string, got %r" % (s,))


def dump_real(x, prec_bits: int = 128) -> str:
    return mpmath.nstr(mpf(x), _digits(prec_bits), strip_zeros=True)


def parse_real(s, prec_bits: int = 128) -> mpf:
    with mp.workprec(prec_bits):
        try:
            return mpf(str(s))
        except ValueError:
            raise ValidationError("expected a real decimal string, got %r" % (s,))


def dump_complex(z, prec_bits: int = 128) -> Dict[str, str]:
    z = mpc(z)
    return {"re": dump_real(mpmath.re(z), prec_bits),
            "im": dump_real(mpmath.im(z), prec_bits)}


def parse_complex(obj, prec_bits: int = 128) -> mpc:
    if isinstance(obj, dict):
        if set(obj) - {"re", "im"}:
            raise ValidationError("complex values are {re, im} objects")
        return mpc(parse_real(obj.get("re", "0"), prec_bits),
                   parse_real(obj.get("im", "0"), prec_bits))
    return mpc(parse_real(obj, prec_bits))


def dump_int_matrix(m: Matrix) -> List[List[str]]:
    return [[dump_int(x) for x in row] for row in m]


def parse_int_matrix(data) -> Matrix:
    if not isinstance(data, list) or not data:
        raise ValidationError("expected a nested array for an integer matrix")
    return exact.matrix([[parse_int(x) for x in row] for row in data])


def parse_int_rows(data) -> tuple:
    """Like parse_int_matrix but tolerates zero-column rows (sublattices)."""
    if not isinstance(data, list):
        raise ValidationError("expected a nested array")
    return tuple(tuple(parse_int(x) for x in row) for row in data)


def dump_rational_vector(v) -> List[str]:
    return [dump_rational(x) for x in v]


def parse_rational_vector(data) -> tuple:
    if not isinstance(data, list):
        raise ValidationError("expected an array of rationals")
    return tuple(parse_rational(x) for x in data)


def dump_complex_matrix(m: mpmath.matrix, prec_bits: int = 128) -> List[List[Dict[str, str]]]:
    return [[dump_complex(m[i, j], prec_bits) for j in range(m.cols)]
            for i in range(m.rows)]


def parse_complex_matrix(data, prec_bits: int = 128) -> mpmath.matrix:
    if not isinstance(data, list) or not data or not isinstance(data[0], list):
        raise ValidationError("expected a nested array for a complex matrix")
    rows = len(data)
    cols = len(data[0])
    out = mpmath.matrix(rows, cols)
    for i, row in enumerate(data):
        if len(row) != cols:
            raise ValidationError("matrix rows have inconsistent lengths")
        for j, entry in enumerate(row):
            out[i, j] = parse_complex(entry, prec_bits)
    return out


def dump_complex_vector(v, prec_bits: int = 128) -> List[Dict[str, str]]:
    if hasattr(v, "rows"):
        return [dump_complex(v[i, 0], prec_bits) for i in range(v.rows)]
    return [dump_complex(x, prec_bits) for x in v]


def parse_complex_vector(data, prec_bits: int = 128) -> List[mpc]:
    if not isinstance(data, list):
        raise ValidationError("expected an array of complex values")
    return [parse_complex(x, prec_bits) for x in data]


def dump_siegel_point(point: SiegelPoint) -> Dict[str, Any]:
    return {"g": dump_int(point.g),
            "prec_bits": dump_int(point.prec),
            "tau": dump_complex_matrix(point.tau, point.prec)}


def parse_siegel_point(data, prec_bits: int = 128, tol: float = 1e-10) -> SiegelPoint:
    if isinstance(data, dict):
        prec_bits = parse_int(data.get("prec_bits", prec_bits))
        tau = data["tau"]
    else:
        tau = data
    return siegel_point(parse_complex_matrix(tau, prec_bits), prec=prec_bits, tol=tol)


# ---------------------------------------------------------------------------
# orbit witness files


def dump_witness(w: "torus.OrbitWitness", tau0: SiegelPoint) -> Dict[str, Any]:
    prec = w.target.prec
    return {
        "tau0": dump_complex_matrix(tau0.tau, tau0.prec),
        "tau": dump_complex_matrix(w.target.tau, prec),
        "beta": dump_int_matrix(w.rational_rep),
        "h": [list(map(dump_int, row)) for row in w.sublattice.entries],
        "alpha": dump_complex_matrix(w.tangent_map, prec),
        "x": dump_rational_vector(w.fiber_coords),
        "y": dump_rational_vector(w.sublattice_coords),
        "u": [dump_rational_vector(u) for u in w.generator_lifts],
        "a": [dump_int(v) for v in w.subgroup_coeffs],
        "n": dump_int(w.denominator),
        "r": [dump_int(v) for v in w.lattice_vector],
        "prec_bits": dump_int(prec),
    }


def parse_witness(data, prec_bits: int = 128, tol: float = 1e-10):
    if not isinstance(data, dict):
        raise ValidationError("witness files are JSON objects")
    try:
        prec = parse_int(data.get("prec_bits", prec_bits))
        tau0 = siegel_point(parse_complex_matrix(data["tau0"], prec),
                            prec=prec, tol=tol)
        target = siegel_point(parse_complex_matrix(data["tau"], prec),
                              prec=prec, tol=tol)
        h_rows = parse_int_rows(data.get("h", [[] for _ in range(2 * tau0.g)]))
        witness = torus.OrbitWitness(
            subgroup_coeffs=tuple(parse_int(v) for v in data.get("a", [])),
            denominator=parse_int(data.get("n", "1")),
            lattice_vector=tuple(parse_int(v) for v in data["r"]),
            rational_rep=parse_int_matrix(data["beta"]),
            sublattice=torus.SublatticeRep(rows=2 * tau0.g, entries=h_rows),
            tangent_map=parse_complex_matrix(data["alpha"], prec),
            sublattice_coords=parse_rational_vector(data.get("y", [])),
            target=target,
            fiber_coords=parse_rational_vector(data["x"]),
            generator_lifts=tuple(parse_rational_vector(u)
                                  for u in data.get("u", [])),
        )
    except KeyError as missing:
        raise ValidationError("witness file is missing field %s" % missing)
    return witness, tau0


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as err:
        raise ValidationError("cannot read %s: %s" % (path, err))
    except json.JSONDecodeError as err:
        raise ValidationError("%s is not valid JSON: %s" % (path, err))


def save_json(path: str, payload: Any) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")
