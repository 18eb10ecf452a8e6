"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 domain error, 4 verification
failure, 5 degeneracy under --require-nondegenerate.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .algebra import pole_table, zeta_combine
from .checks import partition_independence_check, two_pole_identity_check
from .errors import PolySyntaxError, ZetaError
from .family import FamilyParams, check_instance, sweep, verify_cancellation, verify_jq_equivalence
from .nondeg import Verdict, is_nondegenerate
from .parse import parse_polynomial
from .polytope import build_polytope
from .zeta import zeta_from_polytope

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_VERIFY, EXIT_DEGENERATE = 0, 2, 3, 4, 5


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int_or_str(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else _frac(x)


def _poles_json(table):
    return [{"pole": _frac(p.value), "order": p.order} for p in table]


def _s_coefficients(p):
    """Coefficients of a numeric polynomial in s, ascending, as strings."""
    coeffs = p.coeffs_in("s")
    return [
        _frac(coeffs[e].constant_value()) if e in coeffs else "0"
        for e in range(p.degree("s") + 1)
    ]


def _emit(obj):
    print(json.dumps(obj, indent=2))


def _load(args):
    variables = args.vars.split(",") if args.vars else None
    return parse_polynomial(args.polynomial, variables)


def _analyze(f):
    polytope = build_polytope(f)
    z = zeta_from_polytope(polytope)
    report = is_nondegenerate(f, polytope)
    rf = zeta_combine(z)
    return z, report, rf, pole_table(rf)


def _warn_or_fail(report, args):
    if report.overall == Verdict.NONDEGENERATE:
        return EXIT_OK
    if args.require_nondegenerate:
        print(f"error: f is {report.overall} (Newton nondegeneracy required)", file=sys.stderr)
        return EXIT_DEGENERATE
    print(f"warning: f is {report.overall}; the Newton polyhedron formula may not apply",
          file=sys.stderr)
    return EXIT_OK


def cmd_zeta(args):
    f = _load(args)
    z, report, rf, table = _analyze(f)
    code = _warn_or_fail(report, args)
    if code:
        return code
    if args.json:
        _emit({
            "polynomial": str(f),
            "zeta_terms": [
                {
                    "coefficient": _frac(t.coefficient.constant_value()),
                    "s_power": t.s_power,
                    "denominator": [
                        [_int_or_str(g.N.constant_value()), _int_or_str(g.nu.constant_value())]
                        for g in t.denominator
                    ],
                }
                for t in z.terms
            ],
            "normalized": str(rf),
            "numerator": _s_coefficients(rf.numerator),
            "denominator_factors": [
                [_int_or_str(g.N.constant_value()), _int_or_str(g.nu.constant_value()), mult]
                for g, mult in rf.denominator
            ],
            "poles": _poles_json(table),
            "nondegenerate": report.certification,
        })
        return EXIT_OK
    print(f"f = {f}")
    print(f"Newton nondegenerate: {report.certification}")
    print(f"zeta terms: {z}")
    print(f"normalized: {rf}")
    _print_poles(table)
    return EXIT_OK


def _print_poles(table):
    print("poles:")
    if not table:
        print("  (none)")
    for p in table:
        print(f"  {_frac(p.value)}  order {p.order}")


def cmd_poles(args):
    f = _load(args)
    _, report, rf, table = _analyze(f)
    code = _warn_or_fail(report, args)
    if code:
        return code
    if args.json:
        _emit({"polynomial": str(f), "poles": _poles_json(table),
               "nondegenerate": report.certification})
    else:
        _print_poles(table)
    return EXIT_OK


def cmd_nondeg(args):
    f = _load(args)
    report = is_nondegenerate(f)
    if args.json:
        _emit({
            "polynomial": str(f),
            "faces": [
                {
                    "dim": fv.face.dim,
                    "vertices": [list(v) for v in fv.face.vertices],
                    "verdict": str(fv.verdict),
                    "witness": [_frac(c) for c in fv.witness] if fv.witness else None,
                }
                for fv in report.faces
            ],
            "overall": str(report.overall),
            "nondegenerate": report.certification,
        })
    else:
        print(report)
    if args.require_nondegenerate and report.overall != Verdict.NONDEGENERATE:
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_verify(args):
    checks = [
        ("cancellation of -3/d: (Z1+Z2+R)/(d*s+3) == Z", verify_cancellation),
        ("two fan triangulations of J_Q agree", verify_jq_equivalence),
        ("1/(s+a) - 1/(s+b) == (b-a)/((s+a)(s+b)) for 100 random pairs", two_pole_identity_check),
        ("vertex J-terms independent of the fan apex", partition_independence_check),
    ]
    results = [(name, bool(fn())) for name, fn in checks]
    if args.json:
        _emit([{"check": name, "pass": ok} for name, ok in results])
    else:
        for name, ok in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_OK if all(ok for _, ok in results) else EXIT_VERIFY


def _instance_lines(rep):
    p = rep.params
    pole = _frac(Fraction(-3, p.d))
    state = "CONFIRMED ABSENT" if rep.cancellation_ok else "PRESENT"
    lines = [
        f"instance {p}  d={p.d}",
        f"  facet table: {'ok' if rep.facets_ok else 'MISMATCH'}",
        f"  zeta vs closed form: {'ok' if rep.zeta_ok else 'MISMATCH'}",
        f"  singular points vs Z1, Z2: {'ok' if rep.charts_ok else 'MISMATCH'}",
        f"  poles of Z within poles of Z1, Z2 and -1: {'ok' if rep.theorem3_ok else 'NO'}",
        "  poles: " + ", ".join(f"{_frac(x.value)} (order {x.order})" for x in rep.poles),
        f"  cancellation at s={pole}: {state}",
    ]
    return lines


def _instance_json(rep):
    p = rep.params
    return {
        "params": {"a": p.a, "b": p.b, "i": p.i, "j": p.j, "k": p.k, "r": p.r,
                   "roots": [_frac(x) for x in p.roots]},
        "d": p.d,
        "facets_ok": rep.facets_ok,
        "zeta_ok": rep.zeta_ok,
        "charts_ok": rep.charts_ok,
        "theorem3_ok": rep.theorem3_ok,
        "minus_3_over_d_absent": rep.cancellation_ok,
        "poles": _poles_json(rep.poles),
        "ok": rep.ok,
    }


def cmd_family(args):
    if args.sweep:
        params = list(sweep(*args.sweep))
    else:
        roots = tuple(Fraction(x) for x in args.roots.split(",")) if args.roots else ()
        params = [FamilyParams(args.a, args.b, args.r, args.i, args.j, args.k, roots)]
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        reports = list(pool.map(check_instance, params))
    if args.json:
        _emit([_instance_json(rep) for rep in reports])
    else:
        for rep in reports:
            print("\n".join(_instance_lines(rep)))
        if len(reports) > 1:
            good = sum(rep.ok for rep in reports)
            print(f"{good}/{len(reports)} instances passed")
    return EXIT_OK if all(rep.ok for rep in reports) else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(
        prog="topzeta",
        description="Local topological zeta functions from Newton polyhedra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def poly_cmd(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("polynomial", help='e.g. "x^2*y^3 + z^5"')
        p.add_argument("--vars", help="comma-separated coordinate order, e.g. x,y or z,y,x")
        p.add_argument("--json", action="store_true")
        p.add_argument("--require-nondegenerate", action="store_true",
                       help="fail (exit 5) unless Newton nondegeneracy is certified")
        p.set_defaults(func=func)

    poly_cmd("zeta", cmd_zeta, "zeta function, normal form and poles")
    poly_cmd("poles", cmd_poles, "pole table only")
    poly_cmd("nondeg", cmd_nondeg, "per-face Newton nondegeneracy verdicts")

    p = sub.add_parser("verify-paper", help="machine-check the curve-family identities")
    p.add_argument("--symbolic", action="store_true", default=True,
                   help="verify over Q[a,b,i,j,k,r] (the default and only mode)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("family", help="end-to-end checks on curve-family instances")
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=3)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--roots", help="comma-separated distinct root ratios (default 1..r)")
    p.add_argument("--sweep", type=int, nargs=3, metavar=("AMAX", "BMAX", "RMAX"))
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_family)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PolySyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ZetaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
