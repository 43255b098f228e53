"""Command line front end: ``fgap classify|verify|gap|systole|check-points``.

Exit codes: 0 when every applicable check passes, 1 when a check fails,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Dict, List, Optional

from .exceptions import FgapError, InsufficientPoints, NoHyperbolicElements
from .groups import elliptic_fixed_points, enumerate_elements, min_elliptic_gap, parse_preset, systole_estimate
from .moebius import (
    ElementClass,
    GroupElement,
    UhpPoint,
    axis,
    classify,
    elliptic_datum,
    translation_length,
)
from .report import RunConfig, VerifyReport, _csv_value, _flatten, analyze, analyze_points

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _json_float(v: float):
    return None if math.isinf(v) else v


def classify_record(g: GroupElement) -> Dict:
    cls = classify(g)
    rec = {"class": cls.value, "trace": g.trace, "matrix": [[g.a, g.b], [g.c, g.d]]}
    if cls is ElementClass.ELLIPTIC:
        datum = elliptic_datum(g)
        rec.update(fixed=[datum.fixed.x, datum.fixed.y], angle=datum.angle, order=datum.order)
    elif cls is ElementClass.HYPERBOLIC:
        attracting, repelling = axis(g)
        rec.update(
            axis={"attracting": _json_float(attracting), "repelling": _json_float(repelling)},
            translation_length=translation_length(g),
        )
    return rec


def _parse_tol(items: Optional[List[str]]) -> Dict[str, float]:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise FgapError(f"tolerance override must be KEY=VALUE, got {item!r}")
        out[key.strip()] = float(value)
    return out


def _run_config(args) -> RunConfig:
    return RunConfig(
        preset=args.preset,
        max_word_length=args.depth,
        ball_radius=args.radius,
        output_format=args.format,
        svg_path=getattr(args, "svg", None),
        tolerances=_parse_tol(args.tol),
    )


def _emit(report: VerifyReport, fmt: str, analysis, svg_path: Optional[str]) -> int:
    sys.stdout.write(report.render(fmt))
    if svg_path:
        from .svg import write_svg

        try:
            write_svg(analysis, svg_path)
        except OSError as exc:
            print(f"fgap: cannot write {svg_path}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    if report.warnings:
        for w in report.warnings:
            print(f"fgap: warning: {w}", file=sys.stderr)
    return EXIT_OK if report.overall_pass else EXIT_FAIL


def cmd_classify(args) -> int:
    g = GroupElement(args.a, args.b, args.c, args.d)
    rec = classify_record(g)
    if args.format == "json":
        print(json.dumps(rec, indent=2))
    else:
        for key, value in rec.items():
            print(f"{key}: {value}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _run_config(args)
    an = analyze(cfg)
    return _emit(VerifyReport.from_analysis(an), cfg.output_format, an, cfg.svg_path)


def cmd_gap(args) -> int:
    cfg = _run_config(args)
    ecfg = cfg.enum_config()
    eps = elliptic_fixed_points(enumerate_elements(parse_preset(cfg.preset), ecfg), ecfg)
    try:
        gap = min_elliptic_gap(eps)
    except InsufficientPoints as exc:
        rec = {"preset": cfg.preset, "d_min": None, "status": "not applicable", "reason": str(exc)}
    else:
        rec = {
            "preset": cfg.preset,
            "d_min": gap.d_min,
            "pair": [[p.x, p.y] for p in gap.points],
            "orders": list(gap.orders),
            "interior_certified": gap.interior_certified,
            "elliptic_point_count": len(eps),
        }
    _print_record(rec, cfg.output_format)
    return EXIT_OK


def cmd_systole(args) -> int:
    cfg = _run_config(args)
    elements = enumerate_elements(parse_preset(cfg.preset), cfg.enum_config())
    try:
        value = systole_estimate(elements)
    except NoHyperbolicElements as exc:
        rec = {"preset": cfg.preset, "systole_estimate": None, "status": "not applicable", "reason": str(exc)}
    else:
        rec = {
            "preset": cfg.preset,
            "systole_estimate": value,
            "systole_depth": cfg.max_word_length,
            "systole_caveat": f"estimate (upper bound at depth {cfg.max_word_length})",
        }
    _print_record(rec, cfg.output_format)
    return EXIT_OK


def cmd_check_points(args) -> int:
    """Closest-pair checks on a JSON point file ``{"points": [{"x", "y", "order"}], "l0"?}``."""
    try:
        with open(args.file, encoding="utf-8") as fh:
            data = json.load(fh)
        records = [(UhpPoint(float(p["x"]), float(p["y"])), int(p["order"])) for p in data["points"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise FgapError(f"cannot read point file {args.file!r}: {exc}") from exc
    l0 = args.l0 if args.l0 is not None else data.get("l0")
    an = analyze_points(records, l0=l0, ball_radius=data.get("ball_radius"))
    return _emit(VerifyReport.from_analysis(an), args.format, an, args.svg)


def _print_record(rec: Dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rec, indent=2))
    elif fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in _flatten(rec):
            writer.writerow([key, _csv_value(value)])
    else:
        for key, value in rec.items():
            print(f"{key}: {value}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fgap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a real 2x2 matrix of positive determinant")
    for name in "abcd":
        p.add_argument(name, type=float)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_classify)

    def preset_command(name, func, help_text, svg=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("preset", help="modular | hecke:q | triangle:p,q,r")
        p.add_argument("--depth", type=int, default=10, help="maximum word length (default 10)")
        p.add_argument("--radius", type=float, default=3.0, help="ball radius about i (default 3.0)")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--tol", action="append", metavar="KEY=VALUE",
                       help="override tol_report, dedup_tol or matrix_tol")
        if svg:
            p.add_argument("--svg", metavar="PATH", help="also write a Poincare-disk figure")
        p.set_defaults(func=func)

    preset_command("verify", cmd_verify, "run every bound check on a preset group", svg=True)
    preset_command("gap", cmd_gap, "minimal distance between elliptic fixed points")
    preset_command("systole", cmd_systole, "shortest translation length found")

    p = sub.add_parser("check-points", help="run the closest-pair checks on a JSON point set")
    p.add_argument("file")
    p.add_argument("--l0", type=float, default=None, help="systole length for the main theorem")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_check_points)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FgapError, ValueError) as exc:
        print(f"fgap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
