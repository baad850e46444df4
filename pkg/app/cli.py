"""
Command line entry point:
  python -m app.cli cartan --type D2 --rank 3
  python -m app.cli trop "(c*x + y)/(x + y)"
  python -m app.cli verify verma --type C1 --rank 2 --mode sampled --trials 100 --out report.json
  python -m app.cli graph --type A2odd --rank 3 --radius 2
  python -m app.cli geom eval --type B1 --rank 3 --c 2 --point x1=1,x2=2,x3=3,xb2=4,xb1=5
  python -m app.cli geom sigma --type C1 --rank 2 --point 1,2,3,4
  python -m app.cli campaign --ranks min --check verma --type C1

Exit code is 0 iff every report passes (or the command has nothing to verify).
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from app.config import DEFAULT_SEED, LOG_LEVEL
from app.errors import CrystalError
from app.services import geom_crystal as gc
from app.services.b_infinity import B_INFINITY_FAMILIES, BInfinity
from app.services.cartan import FAMILIES, cartan_data, type_label
from app.services.charts import make_point
from app.services.crystal_core import graph_dot
from app.services.harness import CHECKS, run_campaign, run_check
from app.services.posrat import parse, to_text
from app.services.report import jsonable
from app.services.tropic import to_infix, tropicalize
from app.services.ud_tables import UDCrystal


def _add_type(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", required=True, help="A1, B1, C1, D1, A2odd, D2, A2even or A2dag")
    p.add_argument("--rank", required=True, type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="app.cli", description="Affine geometric crystals and their tropicalization.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cartan", help="print Cartan data as JSON")
    _add_type(p)

    p = sub.add_parser("trop", help="tropicalize a subtraction-free expression")
    p.add_argument("expression")

    p = sub.add_parser("verify", help="run one verification check")
    p.add_argument("check", choices=CHECKS)
    _add_type(p)
    p.add_argument("--mode", choices=("symbolic", "sampled"), default="symbolic")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--box", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None, help="write the Report JSON here")

    p = sub.add_parser("graph", help="DOT patch of a crystal graph")
    _add_type(p)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--crystal", choices=("binf", "ud"), default="binf")
    p.add_argument("--label", choices=("index", "color"), default="index")
    p.add_argument("--format", choices=("dot",), default="dot")

    geom = sub.add_parser("geom", help="evaluate the geometric crystal on a chart point")
    gsub = geom.add_subparsers(dest="geom_command", required=True)
    p = gsub.add_parser("eval", help="e_i^c(x), eps_i(x), gamma_i(x)")
    _add_type(p)
    p.add_argument("--point", required=True, help="comma separated values or name=value pairs")
    p.add_argument("--chart", type=int, default=1)
    p.add_argument("--index", type=int, default=None, help="one index; default every defined index")
    p.add_argument("--c", default="1")
    p = gsub.add_parser("sigma", help="sigma-bar of a chart-1 point")
    _add_type(p)
    p.add_argument("--point", required=True)

    p = sub.add_parser("campaign", help="run every check over every type")
    p.add_argument("--ranks", choices=("min", "both"), default="both")
    p.add_argument("--mode", choices=("symbolic", "sampled"), default="symbolic")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--check", action="append", choices=CHECKS, default=None)
    p.add_argument("--type", action="append", dest="families", choices=FAMILIES, default=None)
    return parser


def parse_point(text: str):
    parts = [s.strip() for s in text.split(",") if s.strip()]
    if parts and all("=" in s for s in parts):
        return {k.strip(): Fraction(v.strip()) for k, v in (s.split("=", 1) for s in parts)}
    return [Fraction(s) for s in parts]


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return to_text(value)


def cmd_cartan(args) -> int:
    print(json.dumps(cartan_data(type_label(args.type, args.rank)).to_dict(), indent=2))
    return 0


def cmd_trop(args) -> int:
    print(to_infix(tropicalize(parse(args.expression))))
    return 0


def cmd_verify(args) -> int:
    report = run_check(args.check, args.type, args.rank, mode=args.mode, trials=args.trials, box=args.box, seed=args.seed)
    print(report.summary())
    if args.out:
        Path(args.out).write_text(report.to_json())
        print(f"Wrote {args.out}")
    return 0 if report.passed else 1


def cmd_graph(args) -> int:
    t = type_label(args.type, args.rank)
    if args.crystal == "ud":
        crystal = UDCrystal(t)
        seed = tuple(0 for _ in crystal.names)
    else:
        if t.family not in B_INFINITY_FAMILIES:
            raise CrystalError(f"no limit crystal for {t.family}")
        crystal = BInfinity(t)
        seed = crystal.zero()
    sys.stdout.write(graph_dot(crystal, [seed], args.radius, label_mode=args.label))
    return 0


def _stats_block(point) -> dict:
    stats = gc.geom_stats(point)
    return {name: {str(i): _fmt(v) for i, v in values.items()} for name, values in stats.items()}


def cmd_geom(args) -> int:
    t = type_label(args.type, args.rank)
    if args.geom_command == "sigma":
        a, y = gc.sigma_bar(make_point(t, parse_point(args.point)))
        print(json.dumps({"a": str(a), "chart": y.chart, "y": jsonable(y.as_dict())}, indent=2))
        return 0
    point = make_point(t, parse_point(args.point), chart=args.chart)
    c = Fraction(args.c)
    indices = gc.defined_indices(point) if args.index is None else [args.index]
    out = {"v": {k: _fmt(v) for k, v in gc.v_closed(point).items()}}
    out["e"] = {str(i): {k: _fmt(v) for k, v in gc.geom_e(i, c, point).as_dict().items()} for i in indices}
    out.update(_stats_block(point))
    # A2dag: eps_0 and gamma_0 also live on chart 2, report that side too
    if t.family == "A2dag" and point.chart == 1:
        _, y = gc.sigma_bar(point)
        out["chart2"] = {"y": {k: _fmt(v) for k, v in y.as_dict().items()}, **_stats_block(y)}
    print(json.dumps(out, indent=2))
    return 0


def cmd_campaign(args) -> int:
    reports = run_campaign(ranks=args.ranks, checks=args.check or CHECKS, seed=args.seed, mode=args.mode,
                           families=args.families or FAMILIES)
    for r in reports:
        print(r.summary())
    failed = sum(1 for r in reports if not r.passed)
    print(f"\n{len(reports) - failed}/{len(reports)} reports passed")
    return 0 if failed == 0 else 1


COMMANDS = {
    "cartan": cmd_cartan,
    "trop": cmd_trop,
    "verify": cmd_verify,
    "graph": cmd_graph,
    "geom": cmd_geom,
    "campaign": cmd_campaign,
}


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
