"""Command-line surface: build, lift, check, decompose, verify, generate.

Every subcommand reads and writes the JSON formats of jsonio; output goes to
stdout unless --out is given. Exit codes for decompose: 0 decomposed and
verified, 2 precondition refused (witness printed), 3 internal-consistency
failure. The environment variable TAKIFF_SEED overrides any --seed flag.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import jsonio
from .decompose import (
    Decomposition,
    builtin_solver,
    takiff_decompose,
    verify_decomposition,
)
from .errors import DecompositionRefused, InternalConsistencyError, TakiffError
from .invariants import apply_killing, is_invariant, lift_invariant, tangency_check
from .lie import killing_form
from .poly import PolyMap
from .randgen import generate_instance
from .suites import RunConfig, run_suite, summary_lines
from .takiff_algebra import build_lift, build_takiff, verify_flip_identity


def _read(path: str) -> dict:
    return jsonio.loads(Path(path).read_text(encoding="utf-8"))


def _emit(payload, out: str | None) -> None:
    text = jsonio.dumps(payload)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_lines(lines, out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _seed(args) -> int:
    env = os.environ.get("TAKIFF_SEED")
    if env is not None:
        return int(env)
    return args.seed


def _gram_for(rep, choice: str):
    """Resolve --gram: identity, killing, or a bilinear-form JSON file."""
    if choice == "identity":
        return None
    if choice == "killing":
        return killing_form(rep.algebra).gram
    return jsonio.bilinear_from_json(_read(choice)).gram


def cmd_build(args) -> int:
    g = jsonio.algebra_from_json(_read(args.algebra))
    ctx = build_takiff(g, args.level)
    _emit(jsonio.algebra_to_json(ctx.algebra), args.out)
    return 0


def cmd_lift_rep(args) -> int:
    rep = jsonio.representation_from_json(_read(args.rep))
    lifted = build_lift(rep, args.level)
    _emit(jsonio.representation_to_json(lifted.rep), args.out)
    return 0


def cmd_lift_invariant(args) -> int:
    rep = jsonio.representation_from_json(_read(args.rep))
    phi = jsonio.polynomial_from_json(_read(args.phi))
    lifted = build_lift(rep, args.level)
    phis = lift_invariant(lifted, phi, allow_non_invariant=args.any)
    _emit([jsonio.polynomial_to_json(p) for p in phis], args.out)
    return 0


def cmd_check_invariant(args) -> int:
    rep = jsonio.representation_from_json(_read(args.rep))
    phi = jsonio.polynomial_from_json(_read(args.phi))
    if args.level:
        rep = build_lift(rep, args.level).rep
    failures = []
    for i in range(rep.algebra.dim):
        residual = apply_killing(rep, i, phi)
        if not residual.is_zero():
            failures.append({"basis": i,
                             "residual": jsonio.polynomial_to_json(residual)})
    payload = {"invariant": not failures, "failures": failures}
    if args.human:
        lines = ["invariant" if not failures else "not invariant"]
        lines += [f"  basis {f['basis']}: nonzero residual" for f in failures]
        _emit_lines(lines, args.out)
    else:
        _emit(payload, args.out)
    return 0 if not failures else 1


def cmd_tangency(args) -> int:
    rep = jsonio.representation_from_json(_read(args.rep))
    field = jsonio.field_from_json(_read(args.field))
    data = _read(args.points)
    points = [[Fraction(v) for v in row] for row in data["points"]]
    params = data.get("parameters")
    if params is not None:
        params = [[Fraction(v) for v in row] for row in params]
    fld = PolyMap(field.ring, field.components,
                  tuple((b.name, b.size) for b in field.state_blocks))
    results = tangency_check(rep, fld, points, params)
    payload = [{
        "point": [jsonio.scalar_to_str(v) for v in r.point],
        "member": r.member,
        "witness": None if r.witness is None
        else [jsonio.scalar_to_str(v) for v in r.witness],
    } for r in results]
    if args.human:
        lines = []
        for r in results:
            where = "(" + ", ".join(str(v) for v in r.point) + ")"
            lines.append(f"{'tangent' if r.member else 'outside'} at {where}")
        _emit_lines(lines, args.out)
    else:
        _emit(payload, args.out)
    return 0


def cmd_decompose(args) -> int:
    rep = jsonio.representation_from_json(_read(args.rep))
    field = jsonio.field_from_json(_read(args.field))
    if args.params is not None:
        have = sum(b.size for b in field.ring.parameter_blocks())
        if have != args.params:
            print(f"error: field has {have} parameter variables, expected {args.params}",
                  file=sys.stderr)
            return 1
    solver = builtin_solver(rep, _gram_for(rep, args.gram))
    lifted = build_lift(rep, args.level)
    try:
        dec = takiff_decompose(lifted, solver, field)
    except DecompositionRefused as exc:
        witness = (jsonio.polynomial_to_json(exc.witness)
                   if exc.witness is not None else None)
        if args.human:
            lines = [f"refused: {exc}"]
            if exc.witness is not None:
                lines.append(f"witness: {exc.witness}")
            _emit_lines(lines, args.out)
        else:
            _emit({"refused": str(exc), "witness": witness}, args.out)
        return 2
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3
    passed, residuals = verify_decomposition(lifted, field, dec)
    if not passed:
        print("internal consistency failure: reconstruction residual is nonzero",
              file=sys.stderr)
        return 3
    payload = {
        "decomposition": jsonio.decomposition_to_json(dec),
        "verification": {"passed": True,
                         "residuals_zero": all(p.is_zero() for p in residuals)},
    }
    if args.human:
        lines = ["decomposed and verified"]
        for r, level in enumerate(dec.coefficients):
            lines.append(f"b_{r} = (" + ", ".join(str(p) for p in level) + ")")
        _emit_lines(lines, args.out)
    else:
        _emit(payload, args.out)
    return 0


def cmd_verify(args) -> int:
    rep = jsonio.representation_from_json(_read(args.rep))
    field = jsonio.field_from_json(_read(args.field))
    dec = jsonio.decomposition_from_json(_read(args.dec))
    lifted = build_lift(rep, args.level)
    passed, residuals = verify_decomposition(lifted, field, dec)
    payload = {
        "passed": passed,
        "residuals": [jsonio.polynomial_to_json(p) for p in residuals
                      if not p.is_zero()],
    }
    if args.human:
        _emit_lines(["verified" if passed else "MISMATCH"], args.out)
    else:
        _emit(payload, args.out)
    return 0 if passed else 1


def cmd_verify_flip(args) -> int:
    g = jsonio.algebra_from_json(_read(args.algebra))
    report = verify_flip_identity(g, args.level)
    payload = {
        "level": report.level,
        "dim": report.dim,
        "passed": report.passed,
        "failing_basis": report.failing_basis,
    }
    if args.human:
        status = "flip identity holds" if report.passed else \
            f"flip identity FAILS at basis {report.failing_basis}"
        _emit_lines([f"level {report.level}, dim {report.dim}: {status}"], args.out)
    else:
        _emit(payload, args.out)
    return 0 if report.passed else 1


def cmd_suite(args) -> int:
    config = RunConfig(seed=_seed(args), suites=tuple(args.names))
    reports = run_suite(config)
    if args.human:
        _emit_lines(summary_lines(reports), args.out)
    else:
        _emit([r.to_json() for r in reports], args.out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_generate(args) -> int:
    kind_params = {}
    for key in ("n", "p", "q", "dim"):
        value = getattr(args, key)
        if value is not None:
            kind_params[key] = value
    inst = generate_instance(
        args.kind, args.level, _seed(args), max_degree=args.degree,
        num_terms=args.terms, parameters=args.parameters,
        coeff_bound=args.coeff_bound, **kind_params)
    payload = {
        "kind": inst.kind,
        "seed": inst.seed,
        "level": args.level,
        "algebra": jsonio.algebra_to_json(inst.algebra),
        "representation": jsonio.representation_to_json(inst.rep),
        "gram": None if inst.gram is None else jsonio.matrix_to_json(inst.gram),
        "coefficients": [[jsonio.polynomial_to_json(p) for p in level]
                         for level in inst.coefficients],
        "field": jsonio.field_to_json(inst.field),
    }
    _emit(payload, args.out)
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="takiff",
        description="Takiff algebras, lifted invariants, and Killing-field "
                    "decompositions, in exact rational arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--human", action="store_true",
                       help="plain-text summary instead of JSON")

    p = sub.add_parser("build", help="build the level-m Takiff algebra")
    p.add_argument("--algebra", required=True, help="base algebra JSON")
    p.add_argument("--level", type=int, required=True)
    common(p)
    p.set_defaults(handler=cmd_build)

    p = sub.add_parser("lift-rep", help="lift a representation to level m")
    p.add_argument("--rep", required=True, help="representation JSON")
    p.add_argument("--level", type=int, required=True)
    common(p)
    p.set_defaults(handler=cmd_lift_rep)

    p = sub.add_parser("lift-invariant", help="curve coefficients of an invariant")
    p.add_argument("--rep", required=True)
    p.add_argument("--phi", required=True, help="polynomial JSON over one block")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--any", action="store_true",
                   help="lift even when phi is not invariant")
    common(p)
    p.set_defaults(handler=cmd_lift_invariant)

    p = sub.add_parser("check-invariant", help="test invariance under every basis element")
    p.add_argument("--rep", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--level", type=int, default=0,
                   help="check under the level-m lift instead of the base")
    common(p)
    p.set_defaults(handler=cmd_check_invariant)

    p = sub.add_parser("tangency", help="pointwise orbit-tangency of a field")
    p.add_argument("--rep", required=True)
    p.add_argument("--field", required=True, help="vector field JSON")
    p.add_argument("--points", required=True,
                   help='JSON {"points": [[...]], "parameters": [[...]]}')
    common(p)
    p.set_defaults(handler=cmd_tangency)

    p = sub.add_parser("decompose", help="decompose a field into Killing coefficients")
    p.add_argument("--rep", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--params", type=int, default=None,
                   help="expected number of parameter variables (validation only)")
    p.add_argument("--gram", default="identity",
                   help="identity, killing, or a bilinear-form JSON path")
    common(p)
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("verify", help="check a decomposition against a field")
    p.add_argument("--rep", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--dec", required=True, help="decomposition JSON")
    common(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("verify-flip", help="block-reversal identity for the coadjoint lift")
    p.add_argument("--algebra", required=True)
    p.add_argument("--level", type=int, required=True)
    common(p)
    p.set_defaults(handler=cmd_verify_flip)

    p = sub.add_parser("suite", help="run named property suites")
    p.add_argument("names", nargs="*", help="suite names (default: all)")
    p.add_argument("--seed", type=int, default=2026)
    common(p)
    p.set_defaults(handler=cmd_suite)

    p = sub.add_parser("generate", help="deterministic decomposable instance")
    p.add_argument("--kind", required=True,
                   help="so_n, so_pq, sl2, sl2_adjoint, gl_n, abelian")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--terms", type=int, default=3)
    p.add_argument("--parameters", type=int, default=1)
    p.add_argument("--coeff-bound", type=int, default=3)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--dim", type=int, default=None)
    common(p)
    p.set_defaults(handler=cmd_generate)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.handler(args)
    except TakiffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
