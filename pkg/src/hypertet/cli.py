"""Command-line interface: ``hypertet check|build|gram|slice|nonconvex|path``.

Angles are radians, comma-separated, in edge order e12,e13,e14,e23,e24,e34.
``check`` exits 0/1/2 for interior/boundary/exterior; usage errors exit 64
and geometric errors (e.g. building a non-member) exit 3.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import builder, gram
from .errors import GeometryError, InvalidSpec
from .explore import SliceSpec, boundary_path, midpoint_counterexample, slice as slice_grid
from .membership import EDGE_NAMES, TOL, VERTEX_NAMES, DihedralAngles, Kind, classify
from .minkowski import to_ball

EXIT_GEOMETRY = 3
EXIT_USAGE = 64
EXIT_BY_KIND = {Kind.INTERIOR: 0, Kind.BOUNDARY: 1, Kind.EXTERIOR: 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def dumps(obj, indent: int = 2) -> str:
    """JSON with every float written at 17 significant digits."""

    def enc(o, depth):
        pad = " " * (indent * (depth + 1))
        end = " " * (indent * depth)
        if isinstance(o, bool) or o is None or isinstance(o, (int, str)):
            return json.dumps(o)
        if isinstance(o, float):
            if not math.isfinite(o):
                return "null"
            return format(o, ".17g")
        if isinstance(o, dict):
            if not o:
                return "{}"
            body = ",\n".join(f"{pad}{json.dumps(str(k))}: {enc(v, depth + 1)}" for k, v in o.items())
            return "{\n" + body + "\n" + end + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            if all(isinstance(x, (int, float, str)) and not isinstance(x, bool) for x in o):
                return "[" + ", ".join(enc(x, depth) for x in o) + "]"
            return "[\n" + ",\n".join(pad + enc(x, depth + 1) for x in o) + "\n" + end + "]"
        if hasattr(o, "item"):  # numpy scalar
            return enc(o.item(), depth)
        raise TypeError(f"cannot encode {type(o).__name__}")

    return enc(obj, 0)


def parse_angles(text: str) -> DihedralAngles:
    try:
        return DihedralAngles.of(float(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--angles: {exc}") from None


def parse_fixed(text: str) -> dict[str, float]:
    out = {}
    for part in text.split(","):
        name, eq, val = part.partition("=")
        if not eq:
            raise UsageError(f"--fixed: expected EDGE=ANGLE, got {part!r}")
        if name.strip() in out:
            raise UsageError(f"--fixed: {name.strip()} given twice")
        try:
            out[name.strip()] = float(val)
        except ValueError:
            raise UsageError(f"--fixed: bad angle {val!r}") from None
    return out


def parse_range(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, n = text.split(":")
        return float(lo), float(hi), int(n)
    except ValueError:
        raise UsageError(f"--range: expected LO:HI:N, got {text!r}") from None


def verdict_dict(v) -> dict:
    def items(cond):
        return [{"label": it.label, "value": it.value, "status": it.status.value} for it in cond]

    fa = None
    if v.face_angles is not None:
        fa = {f"F{f}@p{''.join(map(str, vert))}": b for (f, vert), b in v.face_angles.items()}
    return {
        "kind": v.kind.value,
        "codes": v.codes(),
        "condition1": items(v.condition1),
        "condition2": items(v.condition2),
        "condition3": items(v.condition3),
        "face_angles": fa,
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    a = parse_angles(args.angles)
    v = classify(a, args.tol)
    if args.json:
        print(dumps(verdict_dict(v)))
    else:
        print(f"{v.kind.value}  ({v.codes()})")
        for n, it in v.items():
            val = "undefined" if it.value is None else f"{it.value:.12g}"
            print(f"  ({n}) {it.label:<5} {val:>16}  {it.status.value}")
    return EXIT_BY_KIND[v.kind]


def cmd_build(args) -> int:
    a = parse_angles(args.angles)
    T = builder.build(a)
    if args.format == "off":
        _emit(builder.export_off(T), args.out)
        return 0
    m = builder.measure(T)
    doc = {
        "vertex_labels": list(VERTEX_NAMES),
        "edge_labels": list(EDGE_NAMES),
        "normals": [list(v) for v in T.normals],
        "vertices_hyperboloid": [list(p) for p in T.vertices],
        "vertices_ball": [list(to_ball(p)) for p in T.vertices],
        "edge_lengths": list(m.edges),
        "measured_dihedrals": list(m.dihedrals),
    }
    _emit(dumps(doc) + "\n", args.out)
    return 0


def cmd_gram(args) -> int:
    a = parse_angles(args.angles)
    M = gram.gram_from_angles(a)
    r = gram.milnor_check(M, args.tol)
    if args.json:
        print(dumps({
            "matrix": M.m.tolist(),
            "det": r.det,
            "minors": [{"indices": list(k), "det": x.det, "leading": list(x.leading),
                        "positive_definite": x.positive_definite} for k, x in r.minors.items()],
            "valid": r.valid,
            "failures": r.failures(),
        }))
    else:
        for row in M.m:
            print("  " + "  ".join(f"{x: .12f}" for x in row))
        print(f"det = {r.det:.17g}")
        for k, x in r.minors.items():
            if len(k) == 3:
                print(f"  minor {''.join(map(str, k))}: det = {x.det:.12g}  "
                      f"{'positive definite' if x.positive_definite else 'NOT positive definite'}")
        print("valid" if r.valid else "invalid: " + "; ".join(r.failures()))
    return 0


def _spec(args) -> SliceSpec:
    free = [e.strip() for e in args.free.split(",")]
    if len(free) != 2:
        raise UsageError("--free: expected two edges, e.g. e12,e13")
    ry = parse_range(args.range_y) if args.range_y else None
    return SliceSpec.make(parse_fixed(args.fixed), tuple(free), parse_range(args.range), ry)


def cmd_slice(args) -> int:
    g = slice_grid(_spec(args), args.tol, workers=args.workers)
    _emit(g.to_csv(), args.out)
    if args.pgm:
        Path(args.pgm).write_bytes(g.to_pgm())
    return 0


def cmd_nonconvex(args) -> int:
    ce = midpoint_counterexample(_spec(args), args.tol)
    if ce is None:
        print("none")
        return 0
    print(dumps({
        "a": list(ce.a),
        "b": list(ce.b),
        "mid": list(ce.mid),
        "kinds": [v.kind.value for v in ce.verdicts],
        "mid_codes": ce.verdicts[2].codes(),
        "a_node": list(ce.a_node),
        "b_node": list(ce.b_node),
    }))
    return 0


def cmd_path(args) -> int:
    tr = boundary_path(parse_angles(args.angles), args.samples_per_stage, args.tol)
    if args.json:
        print(dumps({
            "stages": [{"edges": list(s.edges), "start": s.start, "end": s.end, "saturated": s.saturated}
                       for s in tr.stages],
            "samples": [{"stage": s.stage, "param": s.param, "angles": list(s.angles),
                         "kind": s.verdict.kind.value, "codes": s.verdict.codes()} for s in tr.samples],
            "end": list(tr.end),
        }))
    else:
        for n, s in enumerate(tr.stages, 1):
            print(f"stage {n}: scale {','.join(s.edges)} from {s.start:g} to {s.end:.12g}; {s.saturated} saturates")
        for s in tr.samples:
            print(f"  {s.stage} {s.param:.9f} " + " ".join(f"{x:.9f}" for x in s.angles) + f"  {s.verdict.kind.value}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypertet", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def angles(sp):
        sp.add_argument("--angles", required=True, help="six radians: e12,e13,e14,e23,e24,e34")

    def tol(sp):
        sp.add_argument("--tol", type=float, default=TOL)

    sp = sub.add_parser("check", help="classify an angle 6-tuple")
    angles(sp)
    tol(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("build", help="construct the realizing tetrahedron")
    angles(sp)
    sp.add_argument("--format", choices=("json", "off"), default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("gram", help="Gram matrix and Milnor criterion")
    angles(sp)
    tol(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gram)

    for name, func, hlp in (("slice", cmd_slice, "classify a 2-D grid slice"),
                            ("nonconvex", cmd_nonconvex, "search a slice for a midpoint counterexample")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("--fixed", required=True, help="e.g. e14=1.3,e23=1.3,e24=1.3,e34=1.3")
        sp.add_argument("--free", required=True, help="two edges, e.g. e12,e13")
        sp.add_argument("--range", required=True, help="LO:HI:N for both free axes")
        sp.add_argument("--range-y", help="separate LO:HI:N for the second free axis")
        tol(sp)
        if name == "slice":
            sp.add_argument("--out", help="CSV file (default: stdout)")
            sp.add_argument("--pgm", help="also write a PGM image")
            sp.add_argument("--workers", type=int, default=1)
        sp.set_defaults(func=func)

    sp = sub.add_parser("path", help="three-stage path to the boundary")
    angles(sp)
    tol(sp)
    sp.add_argument("--samples-per-stage", type=int, default=8)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_path)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidSpec) as exc:
        print(f"hypertet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GeometryError as exc:
        print(f"hypertet {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
