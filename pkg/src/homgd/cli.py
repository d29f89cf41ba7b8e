"""Command line entry point ``homgd``.

Exit status: 0 when every check passes, 1 on axiom violations, 2 on usage
or document errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import constructions as cons
from .conformal import (
    ConformalAlgebra,
    check_hom_jacobi,
    check_jproduct_axioms,
    check_skew,
    current_algebra,
    degree_of,
    j_products,
    virasoro_like,
)
from .document import DocumentError, read, serialize
from .equivalence import EquivalenceError, affinization_check, conformal_to_gd, gd_to_conformal
from .exactpoly import MPoly, PolyError, format_scalar, scalar
from .finalg import PROFILES, AlgebraCarrier, AlgebraError, CheckProfile, CheckReport, check_axioms


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return format_scalar(x)
    if isinstance(x, MPoly):
        return str(x)
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], tuple):
        (i, p), c = x
        return f"{format_scalar(c)}*e{i}[{p}]"
    return str(x)


def format_report(report: CheckReport, title: str) -> str:
    lines = [f"{title}: {'PASS' if report.passed else 'FAIL'} ({len(report.violations)} violations)"]
    for v in report.violations:
        idx = ", ".join(str(i) for i in v.indices)
        res = ", ".join(_fmt(x) for x in v.residual)
        lines.append(f"  {v.identity} ({idx}): [{res}]")
    return "\n".join(lines)


def _load(path, kind):
    obj = read(path)
    if kind == "finite" and not isinstance(obj, AlgebraCarrier):
        raise UsageError(f"{path} is not a finite_algebra document")
    if kind == "conformal" and not isinstance(obj, ConformalAlgebra):
        raise UsageError(f"{path} is not a conformal_algebra document")
    return obj


def _emit(obj, out):
    text = serialize(obj)
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_check(args) -> int:
    A = _load(args.file, "finite")
    report = check_axioms(A, CheckProfile(args.profile))
    print(format_report(report, f"profile {args.profile}"))
    return 0 if report.passed else 1


def cmd_construct(args) -> int:
    A = _load(args.infile, "finite")
    w = scalar(args.weight)
    if args.construction == "commutator":
        out = cons.commutator_bracket(A)
    elif args.construction == "twist":
        out = cons.endomorphism_twist(A, args.kind)
    elif args.construction == "derivation":
        out = cons.derivation_product(A, w, args.mode)
    else:
        out = cons.poisson_derived_gd(A, w)
    for msg in out.metadata.get("warnings", []):
        print(f"warning: {msg}", file=sys.stderr)
    _emit(out, args.out)
    return 0


def cmd_example(args) -> int:
    name = args.name
    if name == "truncated_euler":
        obj = cons.truncated_euler(args.d, scalar(args.q), scalar(args.w))
    elif name == "virasoro":
        obj = virasoro_like(args.b) if args.f is None else virasoro_like(f=args.f)
    elif name == "nilpotent_exp":
        A = _load(args.infile, "finite") if args.infile else cons.nilpotent_truncated(args.d)
        obj = cons.nilpotent_exp(A, scalar(args.w))
    elif name in ("trivial_lie_gd", "current", "lie2"):
        L = _load(args.infile, "finite") if args.infile else cons.lie_2d()
        if name == "lie2":
            obj = L
        elif name == "trivial_lie_gd":
            obj = cons.trivial_lie_gd(L)
        else:
            if "alpha" not in L.maps:
                L = L.replace(maps={"alpha": cons.identity_matrix(L.dim)})
            obj = current_algebra(L)
    elif name == "trivial_novikov_gd":
        N = _load(args.infile, "finite") if args.infile else None
        obj = cons.make_example("trivial_novikov_gd", N=N, d=args.d, w=scalar(args.w))
    elif name == "truncated_algebra":
        obj = cons.truncated_algebra(args.d, scalar(args.q))
    else:
        raise UsageError(f"unknown example {name!r}")
    _emit(obj, args.out)
    return 0


def cmd_equiv(args) -> int:
    if args.direction == "to-conformal":
        A = _load(args.infile, "finite")
        out = gd_to_conformal(A)
    else:
        R = _load(args.infile, "conformal")
        out = conformal_to_gd(R)
    _emit(out, args.out)
    return 0


def cmd_affinize(args) -> int:
    A = _load(args.file, "finite")
    result = affinization_check(A, args.mode)
    report = result if isinstance(result, CheckReport) else result.report()
    print(format_report(report, f"affinization ({args.mode})"))
    if not isinstance(result, CheckReport) and not result.passed:
        print("  broken carrier identities: " + ", ".join(sorted(result.localize())))
    return 0 if report.passed else 1


def cmd_conf_check(args) -> int:
    R = _load(args.file, "conformal")
    skew = check_skew(R)
    jac = check_hom_jacobi(R)
    jp = check_jproduct_axioms(j_products(R))
    deg = degree_of(R)
    print(format_report(skew, "skew-symmetry"))
    print(format_report(jac, "hom-jacobi"))
    print(format_report(jp, "j-product axioms"))
    print(f"degree: {deg.value}" + (" (zero bracket)" if deg.zero_bracket else ""))
    return 0 if skew.passed and jac.passed and jp.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homgd", description="Hom-GD bialgebras and Hom-Lie conformal algebras")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="sweep the axioms of a profile")
    c.add_argument("--profile", required=True, choices=PROFILES)
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("construct", help="build a Hom-GD bialgebra from a precursor")
    c.add_argument("construction", choices=["commutator", "twist", "derivation", "poisson"])
    c.add_argument("--weight", default="0")
    c.add_argument("--mode", default="plain", choices=["plain", "twisted"])
    c.add_argument("--kind", default="novikov", choices=["novikov", "gd"])
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("example", help="write a named example")
    c.add_argument("name", choices=[
        "truncated_euler", "virasoro", "nilpotent_exp", "trivial_lie_gd",
        "trivial_novikov_gd", "current", "lie2", "truncated_algebra",
    ])
    c.add_argument("--d", type=int, default=3)
    c.add_argument("--q", default="2")
    c.add_argument("--w", default="0")
    c.add_argument("--b", default="1")
    c.add_argument("--f", default=None, help="twisting polynomial in d (virasoro)")
    c.add_argument("--in", dest="infile")
    c.add_argument("--out")
    c.set_defaults(func=cmd_example)

    c = sub.add_parser("equiv", help="convert between Hom-GD and degree-2 conformal form")
    c.add_argument("direction", choices=["to-conformal", "to-gd"])
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_equiv)

    c = sub.add_parser("affinize-check", help="Hom-Lie check of the affinization")
    c.add_argument("--mode", default="sampled", choices=["sampled", "symbolic"])
    c.add_argument("file")
    c.set_defaults(func=cmd_affinize)

    c = sub.add_parser("conf-check", help="all conformal axioms of a conformal document")
    c.add_argument("file")
    c.set_defaults(func=cmd_conf_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, UsageError, AlgebraError, PolyError, EquivalenceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
