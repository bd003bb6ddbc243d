"""Command-line front end.

One binary, subcommand style:

    siegel reduce        --in FILE [--group sp|g_l2l --l L --reps FILE]
    siegel decompose     --in FILE
    siegel theta-eval    --in FILE [--prec-bits B --eps E]
    siegel embed         --in FILE [--l L --prec-bits B --eps E --jobs N]
    siegel isogeny       --in FILE
    siegel enumerate     --in FILE --D N [--jobs N]
    siegel witness-check --in FILE [--tol T]
    siegel selftest      [--suite NAME]

Input/output uses the shared structured-text format (JSON with decimal
strings; complex entries as {re, im} pairs).  Reports go to stdout, machine
readable behind ``--format json``; identical invocations at identical
precision produce byte-identical payloads apart from the ``timing`` block.

Exit codes: 0 pass; 1 validation or domain error (bad input, point outside
a partial action's domain); 2 numeric failure or a failed check; 3 result
is uncertified and ``--require-certified`` was given.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Dict

import mpmath
from mpmath import mp, mpf

from . import __version__, halfspace, selftest, serialize, symplectic, torus
from .theta import EvalContext, embedding_phi, theta
from .errors import DomainError, NumericError, SiegelError, ValidationError

EXIT_PASS = 0
EXIT_VALIDATION = 1
EXIT_NUMERIC = 2
EXIT_UNCERTIFIED = 3


def _report(command: str, args, payload_in, status: str,
            result: Dict[str, Any], started: float) -> Dict[str, Any]:
    return {
        "command": command,
        "status": status,
        "result": result,
        "provenance": {
            "version": __version__,
            "precision_bits": getattr(args, "prec_bits", None),
            "tolerance": getattr(args, "tol", None),
            "input": payload_in,
        },
        "timing": {"total_s": round(time.perf_counter() - started, 6)},
    }


def _emit(report: Dict[str, Any], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
        return
    print("command: %s" % report["command"])
    print("status: %s" % report["status"])
    _emit_tree(report["result"], prefix="  ")
    print("timing: %.6f s" % report["timing"]["total_s"])


def _emit_tree(node, prefix: str = "") -> None:
    if isinstance(node, dict):
        for key in sorted(node):
            value = node[key]
            if _is_nested(value):
                print("%s%s:" % (prefix, key))
                _emit_tree(value, prefix + "  ")
            else:
                print("%s%s: %s" % (prefix, key, _flat(value)))
    elif isinstance(node, list):
        for item in node:
            if _is_nested(item):
                print("%s-" % prefix)
                _emit_tree(item, prefix + "  ")
            else:
                print("%s- %s" % (prefix, _flat(item)))
    else:
        print("%s%s" % (prefix, node))


def _is_complex_leaf(value) -> bool:
    return isinstance(value, dict) and set(value) == {"re", "im"}


def _is_nested(value) -> bool:
    if isinstance(value, dict):
        return not _is_complex_leaf(value)
    if isinstance(value, list):
        return any(_is_nested(item) for item in value)
    return False


def _flat(value) -> str:
    if _is_complex_leaf(value):
        return "%s + %s i" % (value["re"], value["im"])
    if isinstance(value, list):
        return "[%s]" % ", ".join(_flat(v) for v in value)
    return str(value)


def _cmd_reduce(args, payload) -> Dict[str, Any]:
    point = serialize.parse_siegel_point(payload, args.prec_bits, args.tol)
    if args.g and point.g != args.g:
        raise ValidationError("input has g = %d, expected --g %d" % (point.g, args.g))
    reps = None
    if args.group == "g_l2l":
        if not args.reps:
            raise ValidationError("--group g_l2l needs --reps FILE")
        reps_payload = serialize.load_json(args.reps)
        reps = [serialize.parse_int_matrix(m) for m in reps_payload["reps"]]
    res = halfspace.siegel_reduce(point, group=args.group, l=args.l, reps=reps,
                                  tol=args.tol, prec=args.prec_bits)
    verdict = halfspace.is_in_siegel_domain(res.point, tol=args.tol) \
        if args.group == "sp" else None
    result = {
        "tau_reduced": serialize.dump_complex_matrix(res.point.tau, args.prec_bits),
        "transform": serialize.dump_int_matrix(res.transform),
        "certified": res.certified,
        "iterations": res.iterations,
        "group": args.group,
    }
    if verdict is not None:
        result["boundary"] = verdict.boundary
    status = "pass" if res.certified else "uncertified"
    return {"status": status, "result": result,
            "certified": res.certified}


def _cmd_decompose(args, payload) -> Dict[str, Any]:
    m = serialize.parse_int_matrix(payload["matrix"])
    dec = symplectic.symplectic_decompose(m)
    result = {
        "s": serialize.dump_int_matrix(dec.s.matrix),
        "p": serialize.dump_int_matrix(dec.p),
        "p_height": serialize.dump_int(dec.p_height),
        "gram_height": serialize.dump_int(dec.gram_height),
    }
    return {"status": "pass", "result": result, "certified": True}


def _cmd_theta_eval(args, payload) -> Dict[str, Any]:
    ctx = EvalContext(precision_bits=args.prec_bits, target_eps=args.eps)
    point = serialize.parse_siegel_point(payload, args.prec_bits, args.tol)
    a = serialize.parse_rational_vector(payload.get("a", ["0"] * point.g))
    b = serialize.parse_rational_vector(payload.get("b", ["0"] * point.g))
    z = serialize.parse_complex_vector(payload.get("z", [{"re": "0", "im": "0"}] * point.g),
                                       args.prec_bits)
    plan = ctx.truncation_plan(point, z, a, b)
    value = theta(a, b, point, z, ctx)
    result = {
        "value": serialize.dump_complex(value, args.prec_bits),
        "radius": plan.radius,
        "lambda_lower": serialize.dump_real(plan.lambda_lower, args.prec_bits),
        "working_prec": plan.working_prec,
        "precision_bits": args.prec_bits,
    }
    return {"status": "pass", "result": result, "certified": True}


def _cmd_embed(args, payload) -> Dict[str, Any]:
    ctx = EvalContext(precision_bits=args.prec_bits, target_eps=args.eps)
    point = serialize.parse_siegel_point(payload, args.prec_bits, args.tol)
    z = None
    if "z" in payload:
        z = serialize.parse_complex_vector(payload["z"], args.prec_bits)
    projective = embedding_phi(point, z, l=args.l, ctx=ctx, jobs=args.jobs)
    result = {
        "l": args.l,
        "dimension": projective.dimension,
        "coordinates": serialize.dump_complex_vector(projective.coordinates,
                                                     args.prec_bits),
        "precision_bits": args.prec_bits,
    }
    return {"status": "pass", "result": result, "certified": True}


def _cmd_isogeny(args, payload) -> Dict[str, Any]:
    point = serialize.parse_siegel_point({"tau": payload["tau0"]},
                                         args.prec_bits, args.tol)
    beta = serialize.parse_int_matrix(payload["beta"])
    iso = torus.isogeny_from_rational_rep(point, beta, prec=args.prec_bits,
                                          tol=args.tol)
    with mp.workprec(args.prec_bits + 10):
        lhs = abs(mpmath.det(iso.tangent_map)) ** 2 * mpmath.det(iso.source.point.imag)
        rhs = mpf(iso.degree) * mpmath.det(iso.target.point.imag)
        degree_residual = abs(lhs - rhs) / max(abs(rhs), mpf(1))
    m1, m3 = torus.pullback_polarization(iso)
    ampleness = torus.ampleness_bound(m1, m3,
                                      torus.real_polarization_form(iso.source.point),
                                      prec=args.prec_bits)
    result = {
        "tau": serialize.dump_complex_matrix(iso.target.point.tau, args.prec_bits),
        "alpha": serialize.dump_complex_matrix(iso.tangent_map, args.prec_bits),
        "degree": serialize.dump_int(iso.degree),
        "residual_compatibility": serialize.dump_real(iso.compatibility_residual(),
                                                      args.prec_bits),
        "residual_degree_identity": serialize.dump_real(degree_residual, args.prec_bits),
        "imaginary_form": serialize.dump_int_matrix(
            torus.polarization_imaginary_form(iso)),
        "ampleness_n": ampleness,
    }
    return {"status": "pass", "result": result, "certified": True}


def _cmd_enumerate(args, payload) -> Dict[str, Any]:
    point = serialize.parse_siegel_point({"tau": payload["tau0"]},
                                         args.prec_bits, args.tol)
    isos = torus.enumerate_isogenies_g1(point, args.D, prec=args.prec_bits,
                                        tol=args.tol, jobs=args.jobs)
    entries = []
    for iso in isos:
        entries.append({
            "tau": serialize.dump_complex_matrix(iso.target.point.tau, args.prec_bits),
            "beta": serialize.dump_int_matrix(iso.rational_rep),
            "alpha": serialize.dump_complex_matrix(iso.tangent_map, args.prec_bits),
        })
    result = {"degree": args.D, "count": len(isos), "isogenies": entries}
    return {"status": "pass", "result": result, "certified": True}


def _cmd_witness_check(args, payload) -> Dict[str, Any]:
    witness, tau0 = serialize.parse_witness(payload, args.prec_bits, args.tol)
    report = torus.check_orbit_witness(witness, tau0, tol=args.tol)
    result = {
        "ok": report.ok,
        "sublattice_rank": report.sublattice_rank,
        "residuals": {k: serialize.dump_real(v, args.prec_bits)
                      for k, v in sorted(report.residuals.items())},
        "flags": {k: bool(v) for k, v in sorted(report.flags.items())},
    }
    return {"status": "pass" if report.ok else "fail", "result": result,
            "certified": True}


def _cmd_selftest(args, payload) -> Dict[str, Any]:
    names = sorted(selftest.SUITES) if args.suite == "all" else [args.suite]
    suites = []
    all_ok = True
    for name in names:
        suite = selftest.run_suite(name)
        all_ok = all_ok and suite.passed
        for criterion in suite.criteria:
            line = "%s — %s" % ("PASS" if criterion.passed else "FAIL",
                                criterion.name)
            if criterion.details:
                line += " (%s)" % criterion.details
            print(line, file=sys.stderr)
        suites.append({
            "suite": suite.suite,
            "passed": suite.passed,
            "elapsed_s": round(suite.elapsed, 3),
            "criteria": [{"name": c.name, "passed": c.passed,
                          "details": c.details} for c in suite.criteria],
        })
    return {"status": "pass" if all_ok else "fail",
            "result": {"suites": suites}, "certified": True}


COMMANDS = {
    "reduce": _cmd_reduce,
    "decompose": _cmd_decompose,
    "theta-eval": _cmd_theta_eval,
    "embed": _cmd_embed,
    "isogeny": _cmd_isogeny,
    "enumerate": _cmd_enumerate,
    "witness-check": _cmd_witness_check,
    "selftest": _cmd_selftest,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegel",
        description="Exact and multiprecision computation on the Siegel "
                    "upper half space: symplectic reduction, theta "
                    "embeddings, isogenies of polarized tori.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--in", dest="infile", required=True,
                           help="input file in the shared JSON text format")
        p.add_argument("--prec-bits", type=int, default=128)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--require-certified", action="store_true")
        p.add_argument("--out", help="also write the JSON report to this path")

    p = sub.add_parser("reduce", help="Siegel-reduce a point of H_g")
    common(p)
    p.add_argument("--g", type=int, default=0, help="expected genus (validation)")
    p.add_argument("--group", choices=("sp", "g_l2l"), default="sp")
    p.add_argument("--l", type=int, default=16)
    p.add_argument("--reps", help="coset representative file for --group g_l2l")

    p = sub.add_parser("decompose",
                       help="factor an integer matrix as symplectic * integer")
    common(p)

    p = sub.add_parser("theta-eval", help="evaluate theta[a,b](tau, z)")
    common(p)
    p.add_argument("--eps", type=float, default=1e-20)

    p = sub.add_parser("embed", help="projective theta-null embedding")
    common(p)
    p.add_argument("--l", type=int, default=16)
    p.add_argument("--eps", type=float, default=1e-20)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("isogeny",
                       help="build an isogeny from its rational representation")
    common(p)

    p = sub.add_parser("enumerate", help="genus-1 isogeny enumeration")
    common(p)
    p.add_argument("--D", type=int, required=True, help="isogeny degree")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("witness-check",
                       help="check an orbit-witness membership file")
    common(p)

    p = sub.add_parser("selftest", help="run the acceptance suites")
    common(p, needs_input=False)
    p.add_argument("--suite", default="all",
                   choices=["all"] + sorted(selftest.SUITES))
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    payload = None
    try:
        if getattr(args, "infile", None):
            payload = serialize.load_json(args.infile)
        outcome = COMMANDS[args.command](args, payload)
    except (ValidationError, DomainError) as err:
        print("error (%s): %s" % (type(err).__name__, err), file=sys.stderr)
        return EXIT_VALIDATION
    except NumericError as err:
        print("error (NumericError): %s" % err, file=sys.stderr)
        return EXIT_NUMERIC
    except SiegelError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_NUMERIC

    report = _report(args.command, args, payload, outcome["status"],
                     outcome["result"], started)
    _emit(report, args.format)
    if args.out:
        serialize.save_json(args.out, report)
    if outcome["status"] == "fail":
        return EXIT_NUMERIC
    if args.require_certified and not outcome.get("certified", False):
        return EXIT_UNCERTIFIED
    if outcome["status"] == "uncertified" and args.require_certified:
        return EXIT_UNCERTIFIED
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
