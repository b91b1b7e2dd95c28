"""Command line entry point: ``mirrorguard solve instance.json``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .corpus import corpus_names, named_polygon
from .errors import GeometryError, LineBudgetExceeded
from .mirror import reflected_region
from .pipeline import Instance, instance_to_dict, load_instance, run
from .svg import render_svg

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET = 2
EXIT_VERIFY = 3


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mirrorguard", description="Guard placement in mirror polygons.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="place guards for an instance file")
    s.add_argument("instance", type=Path)
    s.add_argument("--direct-only", action="store_true", help="ignore reflections")
    s.add_argument("--line-cap", type=int, help="maximum number of generating lines")
    s.add_argument("--level", choices=("auto", "full", "vertex", "edges"), help="decomposition level")
    s.add_argument("--exact-cover", action="store_true", help="also solve the set cover exactly")
    s.add_argument("--exact-cap", type=int, help="subset limit for the exact solver")
    s.add_argument("--mixed", choices=("auto", "on", "off"), help="combined direct+mirror regions")
    s.add_argument("--verify", type=int, metavar="N", help="check coverage on N sample points")
    s.add_argument("--seed", type=int)
    s.add_argument("--svg", type=Path, help="write an SVG drawing")
    s.add_argument("--svg-scr", type=int, help="cell whose guarding-regions are drawn")
    s.add_argument("--report", type=Path, help="write the JSON report here")
    s.add_argument("-q", "--quiet", action="store_true", help="do not print the report")

    c = sub.add_parser("corpus", help="write the bundled example instances")
    c.add_argument("outdir", type=Path)
    return ap


def _options(args) -> dict:
    opts = {}
    if args.direct_only:
        opts["mode"] = "direct-only"
    if args.line_cap is not None:
        opts["line_cap"] = args.line_cap
    if args.level:
        opts["level"] = args.level
    if args.exact_cover:
        opts["exact"] = True
    if args.exact_cap is not None:
        opts["exact_cap"] = args.exact_cap
    if args.mixed:
        opts["mixed"] = {"auto": "auto", "on": True, "off": False}[args.mixed]
    if args.verify is not None:
        opts["samples"] = args.verify
    if args.seed is not None:
        opts["seed"] = args.seed
    return opts


def cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    inst = inst.with_options(**_options(args))
    try:
        sol, report, art = run(inst)
    except LineBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    text = report.to_json()
    if args.report:
        args.report.write_text(text)
    if not args.quiet:
        sys.stdout.write(text)
    if args.svg:
        refl = []
        if sol.guards and inst.mode.value == "reflection":
            for e in sorted(inst.polygon.mirror_edges):
                refl.extend(reflected_region(inst.polygon, sol.guards[0], e))
        args.svg.write_text(render_svg(inst.polygon, art.scrs, art.regions, sol.guards,
                                       select_scr=args.svg_scr, reflected=refl))
    if report.verify is not None and not report.verify.passed:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_corpus(args) -> int:
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name in corpus_names():
        inst = Instance(named_polygon(name), {}, name)
        (args.outdir / f"{name}.json").write_text(json.dumps(instance_to_dict(inst), indent=2) + "\n")
        print(args.outdir / f"{name}.json")
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return cmd_solve(args)
        return cmd_corpus(args)
    except (GeometryError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
