"""Command-line interface.

Exit codes: 0 affirmative/valid, 1 negative/invalid/unsatisfiable,
2 usage or budget errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import jsonio
from .assembler import MismatchedBlock, WangBlock, assemble
from .carpet import check_patch_nonoverlap, is_neat_within, validate
from .exactnum import PI, CycloNum, PiRational
from .prototiles import (
    LayoutOverflow,
    SideParams,
    angle_inventory,
    build_prototiles,
    expected_inventory,
    fill_options,
    is_clean,
    table_inventory,
)
from .render import svg_carpet, svg_polygon
from .search import BUDGET_EXCEEDED, FOUND, grow_neat_carpets
from .wang import SIGNED, BudgetExceeded, WangTileSet, bits_for, make_signed_free, solve_torus

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, report: dict, text: str) -> None:
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(text)


def _load_set(path: str) -> WangTileSet:
    try:
        return WangTileSet.from_json(jsonio.load(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not a Wang tile set ({exc})")


def _parse_angle(text: str) -> PiRational:
    """Accepts "p/q pi" or a bare "p/q" meaning that multiple of pi."""
    text = text.strip()
    try:
        if text.endswith("pi"):
            return PiRational.parse(text)
        return PiRational(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad angle {text!r}")


def _parse_length(text: str) -> Fraction | CycloNum:
    """A rational "p/q", or a CycloNum as inline JSON or a path to a JSON file."""
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        data = json.loads(text) if text.startswith("{") else jsonio.load(text)
        return jsonio.cyclo_from_json(data)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"bad length {text!r}: {exc}")


def _params(args) -> SideParams:
    try:
        return SideParams(Fraction(args.margin), Fraction(args.gap))
    except ValueError:
        raise UsageError("margin and gap must be rationals")


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------


def cmd_sign(args) -> int:
    s = _load_set(args.input)
    signed = make_signed_free(s)
    jsonio.dump(signed.to_json(), args.output)
    report = {"status": "ok", "output": args.output, "glueValues": len(signed.glue_values()),
              "bits": bits_for(signed), "tileset": signed.to_json()}
    _emit(args, report, f"wrote {args.output}: {len(signed)} tiles, {len(signed.glue_values())} glue values")
    return OK


def cmd_build(args) -> int:
    s = _load_set(args.input)
    if s.kind != SIGNED:
        raise UsageError("build expects a signed-free tile set (run `sign` first)")
    try:
        protos = build_prototiles(s, _params(args))
    except LayoutOverflow as exc:
        report = {"status": "layout_overflow", "message": str(exc)}
        _emit(args, report, f"layout overflow: {exc}")
        return NEGATIVE
    os.makedirs(args.output, exist_ok=True)
    files = []
    for poly in protos.as_list():
        base = os.path.join(args.output, poly.name)
        jsonio.dump(jsonio.polygon_to_json(poly), base + ".json")
        with open(base + ".svg", "w", encoding="utf-8") as fh:
            fh.write(svg_polygon(poly, args.bits))
        files += [base + ".json", base + ".svg"]
    meta_path = os.path.join(args.output, "meta.json")
    jsonio.dump({"wheel": jsonio.wheel_meta_to_json(protos.meta), "tileset": protos.tileset.to_json()}, meta_path)
    files.append(meta_path)
    report = {
        "status": "ok",
        "n": protos.meta.n,
        "b": protos.meta.b,
        "order": protos.meta.order,
        "vertexCounts": {p.name: len(p) for p in protos.as_list()},
        "wheelWidth": f"{float(protos.meta.width):.12g}",
        "files": files,
    }
    _emit(args, report, "\n".join(f"{p.name}: {len(p)} vertices" for p in protos.as_list()))
    return OK


def cmd_angles(args) -> int:
    poly = jsonio.polygon_from_json(jsonio.load(args.input))
    n = args.n or poly.meta.get("n")
    inv = angle_inventory(poly)

    def rows(counter):
        return [{"angle": str(a), "count": k, "clean": bool(n) and is_clean(a, n)}
                for a, k in sorted(counter.items())]

    matches: Optional[bool] = None
    if poly.name == "staple":  # its angles do not depend on n
        matches = inv.classes() == expected_inventory("staple", 5)
    elif n and poly.name in ("wheel", "shuriken"):
        matches = inv.classes() == expected_inventory(poly.name, n)
    closed, simple = poly.is_closed(), poly.is_simple()
    report = {"name": poly.name, "n": n, "closed": closed, "simple": simple,
              "convex": rows(inv.convex), "reflex": rows(inv.reflex), "matchesTable": matches}
    lines = [f"{poly.name}: closed={closed} simple={simple}"]
    lines += [f"  convex {r['angle']} x{r['count']}" for r in report["convex"]]
    lines += [f"  defect {r['angle']} x{r['count']}" for r in report["reflex"]]
    if matches is not None:
        lines.append(f"  matches expected classes: {matches}")
    _emit(args, report, "\n".join(lines))
    return OK if closed and simple and matches is not False else NEGATIVE


def cmd_fill(args) -> int:
    target = _parse_angle(args.target)
    inventory: dict[str, PiRational] = {}
    if args.table:
        inventory.update(table_inventory(args.table))
    for item in args.inventory or []:
        if "=" not in item:
            raise UsageError(f"inventory entries look like label=p/q, got {item!r}")
        label, value = item.split("=", 1)
        inventory[label] = _parse_angle(value)
    if not inventory and not args.flat:
        raise UsageError("empty inventory")
    if not (0 < target.frac < 2):
        raise UsageError("target must lie strictly between 0 and 2 pi")
    options = fill_options(target, inventory, allow_flat=args.flat)
    listed = sorted(sorted(opt) for opt in options)
    report = {"target": str(target),
              "options": [[{"label": lab, "count": k} for lab, k in opt] for opt in listed]}
    text = "\n".join(" + ".join(f"{k}*{lab}" for lab, k in opt) for opt in listed) or "no way to fill"
    _emit(args, report, text)
    return OK if options else NEGATIVE


def cmd_solve(args) -> int:
    s = _load_set(args.input)
    try:
        t = solve_torus(s, args.k1, args.k2, budget=args.budget)
    except BudgetExceeded as exc:
        _emit(args, {"status": "budget_exceeded", "tiling": None, "nodes": exc.nodes}, "budget exceeded")
        return USAGE
    if t is None:
        _emit(args, {"status": "unsatisfiable", "tiling": None}, "unsatisfiable")
        return NEGATIVE
    text = "\n".join(" ".join(str(x) for x in row) for row in t.assignment)
    _emit(args, {"status": "satisfiable", "tiling": t.to_json()}, text)
    return OK


def cmd_assemble(args) -> int:
    s = _load_set(args.tileset)
    if s.kind != SIGNED:
        raise UsageError("assemble expects a signed-free tile set")
    try:
        block = WangBlock.from_json(jsonio.load(args.block))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.block}: not a block ({exc})")
    protos = build_prototiles(s, _params(args))
    try:
        asm = assemble(block, protos, check=not args.no_check)
    except MismatchedBlock as exc:
        _emit(args, {"status": "mismatched_block", "message": str(exc)}, f"mismatched block: {exc}")
        return NEGATIVE
    except ValueError as exc:
        raise UsageError(str(exc))
    jsonio.dump(jsonio.gluing_to_json(asm.gluing), args.output)
    report = {"status": "ok", "output": args.output, "counts": asm.counts}
    _emit(args, report, f"wrote {args.output}: " + ", ".join(f"{v} {k}" for k, v in asm.counts.items()))
    return OK


def cmd_validate(args) -> int:
    g = jsonio.gluing_from_json(jsonio.load(args.input))
    v = validate(g)
    report: dict[str, Any] = {"status": v.status, "reason": v.reason, "neat": None, "nonoverlap": None}
    ok = v.valid
    if v.valid and args.neat_radius is not None:
        report["neat"] = is_neat_within(g, v.layout, _parse_length(args.neat_radius), topo=v.topology)
        ok = ok and report["neat"]
    if v.valid and args.nonoverlap:
        report["nonoverlap"] = check_patch_nonoverlap(g, v.layout)
        ok = ok and report["nonoverlap"]
    text = v.status if v.valid else f"invalid: {v.reason['code']}: {v.reason['message']}"
    if report["neat"] is not None:
        text += f"\nneat within radius: {report['neat']}"
    if report["nonoverlap"] is not None:
        text += f"\nno overlaps: {report['nonoverlap']}"
    _emit(args, report, text)
    return OK if ok else NEGATIVE


def cmd_search(args) -> int:
    protos = [jsonio.polygon_from_json(jsonio.load(p)) for p in args.prototiles]
    radius = _parse_length(args.radius)
    res = grow_neat_carpets(protos, args.max_tiles, radius, args.budget,
                            allow_reflections=not args.no_reflections, threads=args.threads)
    if args.output and res.witness is not None:
        jsonio.dump(jsonio.gluing_to_json(res.witness), args.output)
    report = res.to_json()
    _emit(args, report, f"{res.status} after {res.nodes} nodes")
    if res.status == FOUND:
        return OK
    return USAGE if res.status == BUDGET_EXCEEDED else NEGATIVE


def cmd_render(args) -> int:
    data = jsonio.load(args.input)
    if "instructions" in data:
        svg = svg_polygon(jsonio.polygon_from_json(data), args.bits)
        paths = 1
    elif "tiles" in data and "vertexClasses" in data:
        g = jsonio.gluing_from_json(data)
        v = validate(g)
        if v.layout is None:
            _emit(args, {"status": "invalid", "output": None, "paths": 0}, "cannot lay out an invalid carpet")
            return NEGATIVE
        svg = svg_carpet(g, v.layout, args.bits)
        paths = len(g.tiles)
    else:
        raise UsageError(f"{args.input}: neither a prototile nor a carpet")
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    _emit(args, {"status": "ok", "output": args.output, "paths": paths}, f"wrote {args.output}")
    return OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .search import default_threads

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    ap = argparse.ArgumentParser(prog="threetile", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sign", parents=[common], help="unsigned -> signed free Wang tiles")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_sign)

    def side_opts(q):
        q.add_argument("--margin", default="5")
        q.add_argument("--gap", default="4")

    p = sub.add_parser("build", parents=[common], help="build wheel, shuriken and staple")
    p.add_argument("input")
    side_opts(p)
    p.add_argument("--bits", type=int, default=24)
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("angles", parents=[common], help="angle inventory of a prototile")
    p.add_argument("input")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_angles)

    p = sub.add_parser("fill", parents=[common], help="ways to fill an angle exactly")
    p.add_argument("--target", required=True, help='"p/q" (times pi) or "p/q pi"')
    p.add_argument("--inventory", nargs="*", metavar="LABEL=P/Q")
    p.add_argument("--table", type=int, metavar="N", help="add every prototile angle for this n")
    p.add_argument("--flat", action="store_true", help="allow the flat angle pi")
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("solve-torus", parents=[common], help="periodic Wang tiling search")
    p.add_argument("input")
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--budget", type=int, default=1_000_000)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("assemble", parents=[common], help="intended carpet for a Wang block")
    p.add_argument("tileset")
    p.add_argument("block")
    side_opts(p)
    p.add_argument("--no-check", action="store_true", help="skip the glue-match check")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("validate", parents=[common], help="validate a carpet")
    p.add_argument("input")
    p.add_argument("--neat-radius", help='rational "p/q" or CycloNum JSON')
    p.add_argument("--nonoverlap", action="store_true", help="also check that tiles do not overlap")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("search", parents=[common], help="bounded search for a neat carpet")
    p.add_argument("prototiles", nargs="+")
    p.add_argument("--max-tiles", type=int, required=True)
    p.add_argument("--radius", required=True)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--threads", type=int, default=default_threads())
    p.add_argument("--no-reflections", action="store_true")
    p.add_argument("-o", "--output", help="write the witness carpet here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("render", parents=[common], help="SVG of a prototile or carpet")
    p.add_argument("input")
    p.add_argument("--bits", type=int, default=24)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_render)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"threetile: error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"threetile: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
