"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 precondition violation, 3 an
obstruction or contradiction verdict (the full report is still printed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import dividing, euler, plumbing, surfaces, torusbundle
from .frames import Slope, convert_slope, Neg, Pos, V, Product
from .pipeline import (
    Certificate,
    CertificateError,
    SurgerySpec,
    apply_legendrian_surgery,
    build_certificate,
    encode_presentation,
    lisca_check,
    verify,
)
from .seifert import (
    FIBER,
    MERIDIAN,
    GrammarError,
    equivalent,
    euler_number,
    m1,
    m2,
    normalize,
    orbifold_euler_characteristic,
    parse_invariants,
    wall_slope,
)

FORMAT_ENV = "TIGHTFILL_FORMAT"

OK, PARSE_ERROR, PRECONDITION, OBSTRUCTION = 0, 1, 2, 3


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse(fn, text, what):
    try:
        return fn(text)
    except (GrammarError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad {what}: {exc}") from None


def _manifold(args):
    if getattr(args, "manifold", None):
        return {"m1": m1, "m2": m2}[args.manifold]()
    return _parse(parse_invariants, args.invariants, "Seifert invariants")


def _diagram(text: str) -> dividing.DiskDiagram:
    """``canonical:n,r`` or a matching ``i0,i1,...`` with optional ``/sign``."""
    if text.startswith("canonical:"):
        n, r = (int(x) for x in text[len("canonical:"):].split(","))
        return dividing.canonical_disk_diagram(n, r)
    body, _, sign = text.partition("/")
    return dividing.DiskDiagram(tuple(int(x) for x in body.split(",")), int(sign or 1))


_FRAMES = {"v": V, "neg": Neg, "pos": Pos, "product": Product}


def _frame(text: str):
    kind, _, rest = text.strip().partition("(")
    kind = kind.strip().lower()
    if kind not in _FRAMES or not rest.endswith(")"):
        raise ValueError(f"frame must look like V(1), neg(2), pos(3) or product(3), got {text!r}")
    return _FRAMES[kind](int(rest[:-1]))


# -- verbs ---------------------------------------------------------------------
# Each returns (report dict, text, exit code).

def cmd_seifert(args):
    if args.action == "parse":
        p = _manifold(args)
        n = normalize(p)
        report = {
            "normalized": str(n),
            "invariants": [_fmt(x) for x in p.invariants],
            "euler_number": _fmt(euler_number(p)),
            "orbifold_euler_characteristic": _fmt(orbifold_euler_characteristic(p)),
        }
        return report, str(n), OK
    if args.action == "equivalent":
        a = _parse(parse_invariants, args.invariants, "Seifert invariants")
        b = _parse(parse_invariants, args.other, "Seifert invariants")
        same = equivalent(a, b)
        return {"equivalent": same, "normalized": [str(normalize(a)), str(normalize(b))]}, str(same).lower(), OK
    if args.action == "wall-slope":
        p = _manifold(args)
        frame = _parse(_frame, args.frame or f"V({args.wall})", "frame")
        which = {"fiber": FIBER, "meridian": MERIDIAN}[args.which]
        s = wall_slope(p, args.wall, which, frame)
        return {"slope": str(s)}, str(s), OK
    if args.action == "convert":
        p = _manifold(args)
        src = _parse(_frame, args.src, "frame")
        dst = _parse(_frame, args.dst, "frame")
        slope = _parse(Slope.of, args.slope, "slope")
        s = convert_slope(slope, src, dst, p.gluing_map(src.index))
        return {"slope": str(s)}, str(s), OK
    raise ParseError(f"unknown seifert action {args.action!r}")


def cmd_bundle(args):
    A = _parse(torusbundle.parse_monodromy, args.monodromy, "monodromy")
    if args.action == "to-seifert":
        p = torusbundle.mapping_torus_seifert(A)
        n = normalize(p)
        return {"normalized": str(n), "euler_number": _fmt(euler_number(p))}, str(n), OK
    if args.action == "orbits":
        orbs = torusbundle.periodic_orbits(A)
        rows = [
            {"point": [_fmt(x) for x in o.representative], "size": o.size,
             "multiplicity": o.multiplicity, "rotation": o.rotation}
            for o in orbs
        ]
        text = "\n".join(f"({r['point'][0]}, {r['point'][1]}) size {r['size']} multiplicity {r['multiplicity']}" for r in rows)
        return {"orbits": rows}, text or "no exceptional orbits", OK
    if args.action == "euler":
        # basic slice from slope 0 to slope ∞, pushed through the cover
        e, _ = euler.basic_slice_euler((1, 0), (0, 1))
        total = euler.cover_total_euler(A, e, args.cover)
        verdict = euler.obstruction_check(total, args.config)
        report = {"basic_slice": str(e), "pushforward": str(euler.pushforward(A, e)),
                  "total": str(total), "verdict": verdict.value}
        code = OBSTRUCTION if verdict == euler.Verdict.NOT_REALIZABLE_TIGHT else OK
        return report, f"total {total}: {verdict.value}", code
    raise ParseError(f"unknown bundle action {args.action!r}")


def cmd_plumb(args):
    g = _parse(plumbing.parse_graph, args.graph, "plumbing graph")
    p = plumbing.boundary_seifert(g, -1 if args.mirror else 1)
    n = normalize(p)
    return {"graph": str(g), "normalized": str(n), "lisca": lisca_check(p)}, str(n), OK


def cmd_surgery(args):
    p = _manifold(args)
    q = apply_legendrian_surgery(p, SurgerySpec(args.fiber, args.twist))
    report = {
        "before": encode_presentation(p),
        "after": encode_presentation(q),
        "matrix": str(q.fiber(args.fiber).matrix),
        "lisca": lisca_check(q),
    }
    return report, f"{q.fiber(args.fiber).matrix} -> {q}  {normalize(q)}", OK


def cmd_diagram(args):
    if args.action == "enumerate":
        ds = dividing.enumerate_disk_diagrams(args.n)
        rows = [{**d.to_json(), "rotation": dividing.rotation_number(d)} for d in ds]
        text = "\n".join(f"{','.join(map(str, r['matching']))}/{r['base_sign']}  r={r['rotation']}" for r in rows)
        return {"diagrams": rows}, text, OK
    if args.action == "canonical":
        d = dividing.canonical_disk_diagram(args.n, args.r)
        return d.to_json(), f"{','.join(map(str, d.matching))}/{d.base_sign}", OK
    if args.action == "rotation":
        d = _parse(_diagram, args.diagram, "diagram")
        r = dividing.rotation_number(d)
        return {"rotation": r}, str(r), OK
    if args.action == "patch":
        d1 = _parse(_diagram, args.d1, "diagram")
        d2 = _parse(_diagram, args.d2, "diagram")
        d3 = _parse(_diagram, args.d3, "diagram") if args.d3 else None
        t = surfaces.patch_punctured_torus(d1, d1, d2)
        verdict = surfaces.cap_and_check(t, d3)
        report = {"surface": t.summary(), "verdict": verdict.value}
        code = OBSTRUCTION if verdict == surfaces.PatchVerdict.CONTRADICTS_TIGHTNESS else OK
        return report, verdict.value, code
    raise ParseError(f"unknown diagram action {args.action!r}")


def cmd_certify(args):
    cert = build_certificate(args.manifold, variant=args.variant)
    return cert.to_json(), f"{args.manifold}: {cert.conclusion} ({len(cert.steps)} steps)", OK


def cmd_verify(args):
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
        data = json.loads(text)
        Certificate.from_json(data)
    except (OSError, json.JSONDecodeError, CertificateError, KeyError, TypeError) as exc:
        raise ParseError(f"cannot read certificate: {exc}") from None
    report = verify(data)
    out = {"steps": report.steps, "mismatches": report.mismatches, "ok": report.ok,
           "conclusion": data.get("conclusion") if report.ok else None}
    text = f"verified {report.steps} steps" if report.ok else "\n".join(report.mismatches)
    return out, text, OK if report.ok else PRECONDITION


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tightfill", description="Seifert spaces, dividing sets and non-fillability certificates.")
    parser.add_argument("--json", action="store_true", help="emit JSON")
    common = _Parser(add_help=False)
    common.add_argument("--json", dest="json_sub", action="store_true", help="emit JSON")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name):
        return sub.add_parser(name, parents=[common])

    def manifold_opts(p, positional=False):
        if positional:
            p.add_argument("invariants", nargs="?", help='e.g. "(0; -1, 1/2, 1/4, 1/4)" or "(-1/2, 1/4, 1/4)"')
        else:
            p.add_argument("--invariants")
        p.add_argument("--manifold", choices=("m1", "m2"))

    s = verb("seifert")
    s.add_argument("action", choices=("parse", "equivalent", "wall-slope", "convert"))
    manifold_opts(s, positional=True)
    s.add_argument("other", nargs="?")
    s.add_argument("--wall", type=int, default=1)
    s.add_argument("--which", choices=("fiber", "meridian"), default="fiber")
    s.add_argument("--frame", help="defaults to V(wall)")
    s.add_argument("--slope")
    s.add_argument("--src")
    s.add_argument("--dst")
    s.set_defaults(func=cmd_seifert)

    b = verb("bundle")
    b.add_argument("action", choices=("to-seifert", "orbits", "euler"))
    b.add_argument("--monodromy", required=True, help="a,b,c,d or [[a,b],[c,d]]")
    b.add_argument("--cover", type=int, default=2)
    b.add_argument("--config", default=euler.HALF_TURN.name)
    b.set_defaults(func=cmd_bundle)

    p = verb("plumb")
    p.add_argument("graph", help='"star(2; 2; 2,2; 2,2,2)", "e7+" or "e6+"')
    p.add_argument("--mirror", action="store_true")
    p.set_defaults(func=cmd_plumb)

    g = verb("surgery")
    manifold_opts(g)
    g.add_argument("--fiber", type=int, required=True)
    g.add_argument("--twist", type=int, default=0)
    g.set_defaults(func=cmd_surgery)

    d = verb("diagram")
    d.add_argument("action", choices=("enumerate", "canonical", "rotation", "patch"))
    d.add_argument("diagram", nargs="?")
    d.add_argument("--n", type=int, default=4)
    d.add_argument("--r", type=int, default=-1)
    d.add_argument("--d1", default="canonical:2,1")
    d.add_argument("--d2", default="canonical:4,-1")
    d.add_argument("--d3")
    d.set_defaults(func=cmd_diagram)

    c = verb("certify")
    c.add_argument("manifold_pos", nargs="?", choices=("m1", "m2"))
    c.add_argument("--manifold", choices=("m1", "m2"))
    c.add_argument("--variant", type=int, choices=(1, 2), default=1)
    c.set_defaults(func=cmd_certify)

    v = verb("verify")
    v.add_argument("file", help="certificate JSON file, or - for stdin")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    err = sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        return PARSE_ERROR
    as_json = args.json or args.json_sub or os.environ.get(FORMAT_ENV, "text").lower() == "json"
    if args.verb == "certify":
        args.manifold = args.manifold or args.manifold_pos
        if not args.manifold:
            print("error: certify needs a manifold (m1 or m2)", file=err)
            return PARSE_ERROR
    elif hasattr(args, "invariants") and args.verb in ("seifert", "surgery") and not (args.invariants or args.manifold):
        print("error: give Seifert invariants or --manifold", file=err)
        return PARSE_ERROR
    try:
        report, text, code = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        return PARSE_ERROR
    except (ValueError, ArithmeticError, IndexError, KeyError, OSError, torusbundle.InfiniteOrderError) as exc:
        print(f"error: {exc}", file=err)
        return PRECONDITION
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True), file=out)
    else:
        print(text, file=out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
