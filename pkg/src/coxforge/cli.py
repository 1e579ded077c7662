"""Batch command-line front end.

One process, one verb, deterministic output: identical argv and seed
produce byte-identical JSON (sorted keys, fixed separators).  Exit codes
separate the failure families: 1 for violated preconditions, 2 for
exhausted search caps, 64 for unusable argv.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .blowup_divisors import (
    BlowupContext,
    classify_minimal_projection,
    decompose_degree1,
    eff_membership,
    effective_decompose,
    enumerate_minimal,
    project_class,
)
from .errors import CapExceeded, CoxforgeError, PreconditionError
from .multipoly import MultiPoly
from .nagata_invariants import NagataParams, build_F, divisor_class_of, is_invariant
from .picard_lattice import DivisorClass, LatticeContext, format_curve, format_divisor
from .root_system import (
    degree_one_divisors,
    dynkin_label,
    is_finite_type,
    simple_roots,
    weight_coords,
    weights_of_irrep,
    weyl_orbit,
    weyl_orbit_weights,
)
from .section_spaces import (
    PointConfig,
    form_space,
    generation_test,
    h0,
    mult_along_curve,
    mult_at_point,
    section_of,
)
from .verify import render_report, run_all

__all__ = ["build_parser", "main", "entry"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _csv(conv, what):
    def parse(text: str):
        try:
            return tuple(conv(part) for part in text.split(","))
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"expected comma-separated {what}: {text!r}")
    return parse


_int_list = _csv(int, "integers")
_fraction_list = _csv(Fraction, "rationals")


def _triple(text: str):
    values = _int_list(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected a,b,c: {text!r}")
    return values


def _emit(args, payload, table: str):
    if args.format == "table":
        print(table)
    else:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _class_lines(classes) -> str:
    return "\n".join(format_divisor(d) for d in classes)


def _ctx_of(args) -> LatticeContext:
    return LatticeContext(*args.ctx)


def _divisor(args, ctx: LatticeContext) -> DivisorClass:
    if getattr(args, "h", None) is not None:
        h = args.h
    elif getattr(args, "d", None) is not None:
        h = (args.d,)
    else:
        raise PreconditionError("class", "give the H coefficients (--h or --d)")
    if args.m is None:
        raise PreconditionError("class", "the multiplicity list --m is required")
    return DivisorClass(ctx, h, args.m)


def _blowup_divisor(args) -> tuple:
    ctx = LatticeContext(2, args.r - args.n - 1, args.n + 1)
    return DivisorClass(ctx, (args.d,), args.m), BlowupContext(args.n, args.r)


def _config(args) -> PointConfig:
    if args.params is not None:
        return PointConfig(args.n, args.r, args.params)
    return PointConfig.default(args.n, args.r)


def _cmd_classify(args) -> int:
    a, b, c = args.ctx
    label = dynkin_label(a, b, c)
    payload = {"a": a, "b": b, "c": c, "finite": is_finite_type(a, b, c),
               "label": label}
    _emit(args, payload, label)
    return 0


def _cmd_roots(args) -> int:
    rs = simple_roots(_ctx_of(args))
    payload = {"label": rs.dynkin_label,
               "roots": [alpha.to_json() for alpha in rs.simple_roots]}
    _emit(args, payload, _class_lines(rs.simple_roots))
    return 0


def _cmd_orbit(args) -> int:
    ctx = _ctx_of(args)
    if args.h is None and args.m is None:
        start = DivisorClass.exceptional(ctx, ctx.r)
    else:
        start = _divisor(args, ctx)
    orbit = weyl_orbit(start, simple_roots(ctx), cap=args.cap)
    payload = {"count": len(orbit), "orbit": [d.to_json() for d in orbit]}
    _emit(args, payload, f"{_class_lines(orbit)}\ncount: {len(orbit)}")
    return 0


def _cmd_degree_one(args) -> int:
    classes = degree_one_divisors(_ctx_of(args), cap=args.cap)
    payload = {"count": len(classes), "classes": [d.to_json() for d in classes]}
    _emit(args, payload, f"{_class_lines(classes)}\ncount: {len(classes)}")
    return 0


def _cmd_minuscule(args) -> int:
    ctx = _ctx_of(args)
    rs = simple_roots(ctx)
    lam = weight_coords(DivisorClass.exceptional(ctx, ctx.r))
    weights = len(weights_of_irrep(lam, rs, cap=args.cap))
    orbit = len(weyl_orbit_weights(lam, rs, cap=args.cap))
    payload = {"minuscule": weights == orbit, "orbit": orbit, "weights": weights}
    _emit(args, payload,
          f"minuscule: {str(weights == orbit).lower()} "
          f"({weights} weights, {orbit} in the orbit)")
    return 0


def _cmd_minimal(args) -> int:
    classes = enumerate_minimal(BlowupContext(args.n, args.r))
    payload = {"count": len(classes), "classes": [d.to_json() for d in classes]}
    _emit(args, payload, f"{_class_lines(classes)}\ncount: {len(classes)}")
    return 0


def _cmd_project(args) -> int:
    d, bc = _blowup_divisor(args)
    image = project_class(d, bc)
    payload = {"class": image.to_json(),
               "target": {"n": args.n - 1, "r": args.r - 1}}
    table = format_divisor(image)
    if args.classify:
        res = classify_minimal_projection(d, bc)
        payload["case"] = res.case
        payload["e_q_coefficient"] = res.e_q_coefficient
        table += f"\ncase: {res.case} (e_q coefficient {res.e_q_coefficient})"
    _emit(args, payload, table)
    return 0


def _cmd_decompose(args) -> int:
    if args.ctx is not None:
        ctx = _ctx_of(args)
        d = _divisor(args, ctx)
    else:
        if args.n is None:
            raise PreconditionError("ctx", "give either a context triple or n")
        if args.d is None:
            raise PreconditionError("d", "the degree --d is required with --n")
        ctx = LatticeContext(2, len(args.m) - args.n - 1, args.n + 1)
        d = DivisorClass(ctx, (args.d,), args.m)
    if args.degree_one:
        parts = decompose_degree1(d, cap=args.cap)
    else:
        parts = effective_decompose(d)
    if parts is None:
        _emit(args, {"parts": None}, "no decomposition")
    else:
        payload = {"parts": [p.to_json() for p in parts]}
        _emit(args, payload, _class_lines(parts))
    return 0


def _cmd_member(args) -> int:
    d = _divisor(args, _ctx_of(args))
    res = eff_membership(d, cap=args.cap)
    cert = None if res.certificate is None else res.certificate.to_json()
    payload = {"certificate": cert, "member": res.member}
    if res.member:
        table = "member"
    else:
        table = f"not a member; violated by the curve {format_curve(res.certificate)}"
    _emit(args, payload, table)
    return 0


def _cmd_h0(args) -> int:
    d, _ = _blowup_divisor(args)
    value = h0(d, _config(args))
    _emit(args, {"h0": value}, f"h0 = {value}")
    return 0


def _cmd_section(args) -> int:
    d, _ = _blowup_divisor(args)
    f = section_of(d, _config(args))
    _emit(args, f.to_json(), str(f))
    return 0


def _cmd_mult(args) -> int:
    d, _ = _blowup_divisor(args)
    cfg = _config(args)
    f = section_of(d, cfg)
    at_points = [mult_at_point(f, p) for p in cfg.points()]
    along = mult_along_curve(f, cfg)
    payload = {"along_curve": along, "at_points": at_points}
    _emit(args, payload,
          f"at points: {' '.join(str(v) for v in at_points)}\nalong curve: {along}")
    return 0


def _cmd_check_generation(args) -> int:
    d, _ = _blowup_divisor(args)
    rep = generation_test(d, _config(args), cap=args.cap)
    payload = {"generated": rep.generated, "h0": rep.h0, "span_dim": rep.span_dim}
    _emit(args, payload,
          f"h0 = {rep.h0}, span = {rep.span_dim}, generated: "
          f"{str(rep.generated).lower()}")
    return 0


def _nagata_params(args, smallest: int = 5) -> NagataParams:
    if args.r is not None:
        r = args.r
    elif args.n is not None:
        r = args.n + 3
    elif args.indices:
        r = max(smallest, max(args.indices))
    else:
        raise PreconditionError("r", "give r, n, or an index set")
    if args.params is not None:
        return NagataParams(r, args.params)
    return NagataParams.default(r)


def _cmd_invariant(args) -> int:
    np = _nagata_params(args)
    if args.action == "build":
        if not args.indices:
            raise PreconditionError("I", "an index set is required")
        f = build_F(args.indices, np)
        _emit(args, f.to_json(), str(f))
        return 0
    if args.action == "class":
        if not args.indices:
            raise PreconditionError("I", "an index set is required")
        n = args.n if args.n is not None else np.r - 3
        d = divisor_class_of(build_F(args.indices, np), n)
        _emit(args, d.to_json(), format_divisor(d))
        return 0
    if args.indices and not args.all:
        verdict = is_invariant(build_F(args.indices, np), np)
        _emit(args, {"checked": 1, "invariant": verdict},
              "invariant" if verdict else "NOT invariant")
        return 0
    from itertools import combinations
    checked = 0
    good = True
    for size in range(1, np.r + 1, 2):
        for idx in combinations(range(1, np.r + 1), size):
            good = good and is_invariant(build_F(idx, np), np)
            checked += 1
    _emit(args, {"checked": checked, "invariant": good},
          f"{checked} invariants verified" if good
          else f"FAILURE among the {checked} determinants")
    return 0


def _cmd_verify(args) -> int:
    report = run_all(profile=args.profile, seed=args.seed)
    _emit(args, report.to_json(), render_report(report))
    return 0 if report.passed else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="coxforge", description=__doc__)
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--cap", type=int, default=None)
    sub = parser.add_subparsers(dest="verb")

    def verb(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    for name in ("classify", "roots", "degree-one", "minuscule"):
        p = verb(name)
        p.add_argument("--ctx", type=_triple, required=True)

    p = verb("orbit")
    p.add_argument("--ctx", type=_triple, required=True)
    p.add_argument("--h", type=_int_list, default=None)
    p.add_argument("--m", type=_int_list, default=None)

    p = verb("minimal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = verb("project")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=_int_list, required=True)
    p.add_argument("--classify", action="store_true")

    p = verb("decompose")
    p.add_argument("--ctx", type=_triple, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--h", type=_int_list, default=None)
    p.add_argument("--m", type=_int_list, required=True)
    p.add_argument("--degree-one", dest="degree_one", action="store_true")

    p = verb("member")
    p.add_argument("--ctx", type=_triple, required=True)
    p.add_argument("--h", type=_int_list, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--m", type=_int_list, required=True)

    for name in ("h0", "section", "mult", "check-generation"):
        p = verb(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--m", type=_int_list, required=True)
        p.add_argument("--params", type=_fraction_list, default=None)

    p = verb("invariant")
    p.add_argument("action", choices=("build", "check", "class"))
    p.add_argument("-I", "--indices", type=_int_list, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--params", type=_fraction_list, default=None)
    p.add_argument("--all", action="store_true")

    p = verb("verify")
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=int, default=0)
    return parser


_HANDLERS = {
    "classify": _cmd_classify,
    "roots": _cmd_roots,
    "orbit": _cmd_orbit,
    "degree-one": _cmd_degree_one,
    "minuscule": _cmd_minuscule,
    "minimal": _cmd_minimal,
    "project": _cmd_project,
    "decompose": _cmd_decompose,
    "member": _cmd_member,
    "h0": _cmd_h0,
    "section": _cmd_section,
    "mult": _cmd_mult,
    "check-generation": _cmd_check_generation,
    "invariant": _cmd_invariant,
    "verify": _cmd_verify,
}


def _error_payload(exc) -> dict:
    if isinstance(exc, PreconditionError):
        return {"error": {"detail": exc.detail, "field": exc.field,
                          "type": "precondition"}}
    if isinstance(exc, CapExceeded):
        return {"error": {"cap": exc.cap, "type": "cap", "what": exc.what}}
    return {"error": {"message": str(exc), "type": "error"}}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as usage:
        print(f"usage error: {usage}", file=sys.stderr)
        return 64
    if args.verb is None:
        parser.print_usage(sys.stderr)
        return 64
    try:
        return _HANDLERS[args.verb](args)
    except CapExceeded as exc:
        print(json.dumps(_error_payload(exc), sort_keys=True,
                         separators=(",", ":")), file=sys.stderr)
        return 2
    except CoxforgeError as exc:
        print(json.dumps(_error_payload(exc), sort_keys=True,
                         separators=(",", ":")), file=sys.stderr)
        return 1


def entry():
    sys.exit(main())
