"""Command line front end: ``catalog``, ``check``, ``scan``, ``solve``, ``verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import conditions as cond
from .frame import SPACE_ALIASES, AmbientSpace
from .models import (
    ABSTRACT_HOPF,
    EqBInconsistent,
    ModelDomainError,
    abstract_hopf,
    catalog_kinds,
    catalog_model,
    radius_domain,
)
from .scan import NeverAttained, scan, solve_vanishing_radius

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_FORMULAS = {
    ("ch2", "a0"): "horosphere: alpha=2, lambda=nu=1",
    ("ch2", "a11"): "geodesic sphere: alpha=2coth(2r), lambda=nu=coth(r)",
    ("ch2", "a12"): "tube over CH1: alpha=2coth(2r), lambda=nu=tanh(r)",
    ("ch2", "b"): "type B tube: alpha=2tanh(2r), lambda=tanh(r), nu=coth(r)",
    ("cp2", "a1"): "geodesic sphere: alpha=2cot(2r), lambda=cot(r), nu from Hopf relation",
    ("cp2", "a2"): "type A2: alpha=2cot(2r), lambda=cot(r), nu from Hopf relation",
    ("cp2", "b"): "type B tube: alpha=2cot(2r), lambda=cot(r-pi/4), nu from Hopf relation",
}


def fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _emit(payload: dict | list, fmt_name: str, table: str) -> None:
    if fmt_name == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(table)


def _space(args) -> AmbientSpace:
    return AmbientSpace.from_name(args.space)


def _model(args):
    space = _space(args)
    kind = args.kind.lower()
    if kind == ABSTRACT_HOPF:
        if args.alpha is None or args.lam is None:
            raise ModelDomainError("abstract-hopf needs --alpha and --lambda")
        return abstract_hopf(space, args.alpha, args.lam, args.nu, args.xi_d_lambda, args.xi_d_nu)
    return catalog_model(space, kind, args.radius)


def _report_table(rep: cond.ConditionReport) -> str:
    m = rep.model
    head = f"{m['space']} {m['kind']}"
    if m.get("radius") is not None:
        head += f" r={fmt(m['radius'])}"
    lines = [
        head,
        f"  alpha={fmt(m['alpha'])} lambda={fmt(m['lambda'])} nu={fmt(m['nu'])}",
        f"  {'condition':<16}{'holds':<7}{'residual':<22}L",
    ]
    for name in ("vanishing", "semi_parallel", "pseudo_parallel", "xi_parallel"):
        c = getattr(rep, name)
        L = fmt(c.L) if name == "pseudo_parallel" else ""
        if name == "pseudo_parallel" and c.degenerate:
            L = "undetermined (S* = 0)"
        lines.append(f"  {name:<16}{fmt(c.holds):<7}{fmt(c.residual):<22}{L}")
    lines.append(f"  branches: {', '.join(rep.branches) or '-'}")
    return "\n".join(lines)


def cmd_catalog(args) -> int:
    rows = []
    spaces = [AmbientSpace.from_name(args.space)] if args.space else [AmbientSpace.hyperbolic(), AmbientSpace.projective()]
    for space in spaces:
        for kind in catalog_kinds(space):
            dom = radius_domain(space, kind)
            rows.append(
                {
                    "space": space.name,
                    "kind": kind,
                    "c": space.c,
                    "radius_domain": None if dom is None else [dom[0], None if math.isinf(dom[1]) else dom[1]],
                    "curvatures": _FORMULAS[(space.name, kind)],
                }
            )
    table = "\n".join(
        f"{r['space']:<5}{r['kind']:<5}"
        f"{'no radius' if r['radius_domain'] is None else 'r in (%s, %s)' % (fmt(r['radius_domain'][0]), fmt(r['radius_domain'][1]) if r['radius_domain'][1] is not None else 'inf'):<28}"
        f"{r['curvatures']}"
        for r in rows
    )
    table += f"\n{'any':<5}{ABSTRACT_HOPF}  --alpha --lambda [--nu] [--xi-d-lambda --xi-d-nu]"
    _emit({"schema": 1, "kinds": rows}, args.format, table)
    return EXIT_OK


def cmd_check(args) -> int:
    rep = cond.classify_hopf(_model(args), args.epsilon, args.kappa)
    _emit(rep.to_dict(), args.format, _report_table(rep))
    return EXIT_OK


def cmd_scan(args) -> int:
    res = scan(_space(args), args.kind.lower(), args.start, args.stop, args.count, args.epsilon)
    if args.format == "json":
        _emit(res.to_dict(), "json", "")
        return EXIT_OK
    lines = [
        f"{res.space} {res.kind} r in [{fmt(res.start)}, {fmt(res.stop)}], {res.count} points",
        f"{'radius':<20}{'vanishing':<22}{'semi_parallel':<22}{'pseudo L':<22}{'xi_parallel':<22}",
    ]
    for r, rep in zip(res.radii, res.reports):
        L = "-" if rep.pseudo_parallel.L is None else fmt(rep.pseudo_parallel.L)
        lines.append(
            f"{fmt(r):<20}{fmt(rep.vanishing.residual):<22}{fmt(rep.semi_parallel.residual):<22}{L:<22}{fmt(rep.xi_parallel.residual):<22}"
        )
    for name, roots in res.roots.items():
        lines.append(f"{name} roots: {', '.join(fmt(x) for x in roots) or 'none'}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_solve(args) -> int:
    space = _space(args)
    kind = args.kind.lower()
    try:
        r = solve_vanishing_radius(space, kind)
    except NeverAttained as exc:
        payload = {"schema": 1, "space": space.name, "kind": kind, "radius": None, "error": str(exc)}
        _emit(payload, args.format, str(exc))
        return EXIT_USAGE
    m = catalog_model(space, kind, r)
    residual = space.c + m.lam * m.nu
    payload = {"schema": 1, "space": space.name, "kind": kind, "radius": float(fmt(r)), "residual": float(fmt(residual))}
    table = f"{space.name} {kind}: S* vanishes at r = {fmt(r)} (c + lambda nu = {fmt(residual)})"
    _emit(payload, args.format, table)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_all

    results = run_all()
    ok = all(r.passed for r in results)
    if args.format == "json":
        payload = {
            "schema": 1,
            "passed": ok,
            "suites": [
                {"name": r.name, "passed": r.passed, "max_residual": float(fmt(r.max_residual)), "tolerance": r.tolerance}
                for r in results
            ],
        }
        _emit(payload, "json", "")
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} suites passed")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--epsilon", type=float, default=cond.HOLDS_EPS, help="residual threshold (default 1e-8)")

    parser = argparse.ArgumentParser(
        prog="star-ricci",
        description="*-Ricci parallelism checks for real hypersurfaces in CP2 and CH2.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    spaces = sorted(SPACE_ALIASES)

    p = sub.add_parser("catalog", parents=[common], help="list model kinds")
    p.add_argument("--space", choices=spaces)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("check", parents=[common], help="classify one model")
    p.add_argument("--space", choices=spaces, default="chh2")
    p.add_argument("--kind", required=True)
    p.add_argument("--radius", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--xi-d-lambda", type=float, default=0.0)
    p.add_argument("--xi-d-nu", type=float, default=0.0)
    p.add_argument("--kappa", type=float, default=0.0, help="gauge of nabla_xi W along phi W")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", parents=[common], help="classify a kind over a radius grid")
    p.add_argument("--space", choices=spaces, default="chh2")
    p.add_argument("--kind", required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("-n", "--count", type=int, default=100)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("solve", parents=[common], help="radius where S* vanishes")
    p.add_argument("--space", choices=spaces, default="chh2")
    p.add_argument("--kind", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="run every invariant suite")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "scan" and args.count < 2:
        parser.error("scan needs -n >= 2")
    try:
        return args.func(args)
    except (ModelDomainError, EqBInconsistent, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
