"""
=============================================================================
NEFWALL CLI - Walls, types and moduli components from the command line
=============================================================================

SUBCOMMANDS:
============
- walls        wall-crossing timeline above t_min (default: first 10 walls)
- classify     divisor types with chi(D) >= chi
- snapshot     components of the moduli space at one polarization
- components   t* below which k components of dimension >= r exist
- convergents  convergents of sqrt(n)
- pell         positive solutions of x^2 - n y^2 = N
- cohomology   h^i of D, 2D and 2D-K for a type D

EXIT CODES:
===========
0 ok, 2 bad arguments, 3 unsupported n, 4 t on a wall, 5 missing assumption
flag. Results for 10 <= n <= 15 rest on a conjecture and need
--assume-shgh (moduli) or --assume-nagata (classification).

USAGE:
------
python cli.py walls --n 10 --assume-shgh
python cli.py snapshot --n 25 --chi 4 --t 26/5
python cli.py classify --n 13 --depth 2 --format json --assume-nagata
=============================================================================
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import config
from app.params import parse_exact_rational, parse_multiplicities, parse_t_min
from classification.classify import (
    SUPPORTED_N,
    UNCONDITIONAL_N,
    classify_n13,
    enumerate_types,
    n25_chi1_table,
)
from errors import ArgumentError, AssumptionRequiredError, NefwallError
from lattice.picard import Surface
from moduli.walls import (
    MAX_CHI,
    MODULI_SUPPORTED_N,
    components_at_least,
    first_wall_events,
    shgh_cohomology_report,
    snapshot,
    wall_events,
)
from numtheory.contfrac import convergents
from numtheory.diophantine import gen_pell_positive_solutions
from reports.generator import (
    FORMATS,
    Report,
    ReportGenerator,
    certificate_report,
    classify_report,
    cohomology_report,
    convergents_report,
    pell_report,
    snapshot_report,
    walls_report,
)

logger = logging.getLogger(__name__)

DEFAULT_FIRST = 10
DEFAULT_DEPTH = 4
DEFAULT_CONVERGENTS = 7


# =============================================================================
# COMMANDS (shared with the HTTP API)
# =============================================================================

def require_shgh(s: Surface) -> None:
    if s.n in MODULI_SUPPORTED_N and s.n not in UNCONDITIONAL_N and not s.assume_shgh:
        raise AssumptionRequiredError("SHGH", "--assume-shgh")


def require_nagata(s: Surface) -> None:
    if s.n in SUPPORTED_N and s.n not in UNCONDITIONAL_N and not s.assume_nagata:
        raise AssumptionRequiredError("Nagata", "--assume-nagata")


def default_chi(n: int) -> int:
    return MAX_CHI.get(n, 2)


def cmd_walls(s: Surface, chi_value: Optional[int] = None, t_min: str = None) -> Report:
    chi_value = default_chi(s.n) if chi_value is None else chi_value
    if s.moduli_empty_for_every_ample:
        return walls_report(s, chi_value, [])
    require_shgh(s)
    bound = parse_t_min(t_min or f"auto:{DEFAULT_FIRST}")
    if isinstance(bound, tuple):
        events = first_wall_events(s, chi_value, bound[1])
    else:
        events = wall_events(s, chi_value, bound)
    return walls_report(s, chi_value, events)


def cmd_classify(s: Surface, chi_target: int = 1, depth: int = DEFAULT_DEPTH) -> Report:
    limit = config.max_depth()
    if depth > limit:
        raise ArgumentError(f"depth {depth} exceeds NEFWALL_MAX_DEPTH={limit}")
    require_nagata(s)
    if s.n == 13 and chi_target == 1:
        orbits = classify_n13(depth)
    elif s.n == 25 and chi_target == 1:
        orbits = n25_chi1_table()
    else:
        orbits = enumerate_types(s, chi_target, depth)
    return classify_report(s, chi_target, orbits)


def cmd_snapshot(s: Surface, chi_value: Optional[int], t: str) -> Report:
    chi_value = default_chi(s.n) if chi_value is None else chi_value
    value = parse_exact_rational(t)
    if not s.moduli_empty_for_every_ample:
        require_shgh(s)
    return snapshot_report(snapshot(s, chi_value, value))


def cmd_components(s: Surface, chi_value: int, k: int, r: int) -> Report:
    return certificate_report(s, components_at_least(s, chi_value, k, r))


def cmd_convergents(n: int, count: int = DEFAULT_CONVERGENTS) -> Report:
    return convergents_report(n, convergents(n, count))


def cmd_pell(n: int, N: int, limit: int) -> Report:
    return pell_report(n, N, gen_pell_positive_solutions(n, N, limit))


def cmd_cohomology(s: Surface, d: int, m: str) -> Report:
    D = s.divisor(d, parse_multiplicities(m, s.n))
    return cohomology_report(shgh_cohomology_report(D, s))


# =============================================================================
# ARGUMENT PARSING
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="markdown")
    common.add_argument("--save", action="store_true", help="also write the output under OUTPUT_DIR")
    common.add_argument("--assume-shgh", action="store_true")
    common.add_argument("--assume-nagata", action="store_true")

    parser = argparse.ArgumentParser(prog="nefwall", description="Walls and types on blowups of P^2")
    parser.add_argument("--log-level", default=None, help="overrides NEFWALL_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    walls = sub.add_parser("walls", parents=[common], help="wall-crossing timeline")
    walls.add_argument("--n", type=int, required=True)
    walls.add_argument("--chi", type=int)
    bound = walls.add_mutually_exclusive_group()
    bound.add_argument("--t-min", help="exact rational or auto:K")
    bound.add_argument("--first", type=int, metavar="K", help="same as --t-min auto:K")

    classify = sub.add_parser("classify", parents=[common], help="divisor types")
    classify.add_argument("--n", type=int, required=True)
    classify.add_argument("--chi", type=int, default=1)
    classify.add_argument("--depth", type=int, default=DEFAULT_DEPTH)

    snap = sub.add_parser("snapshot", parents=[common], help="components at one polarization")
    snap.add_argument("--n", type=int, required=True)
    snap.add_argument("--chi", type=int)
    snap.add_argument("--t", required=True, help="exact rational, e.g. 26/5")

    comps = sub.add_parser("components", parents=[common], help="certify k components of dim >= r")
    comps.add_argument("--n", type=int, required=True)
    comps.add_argument("--chi", type=int, default=2)
    comps.add_argument("--k", type=int, required=True)
    comps.add_argument("--r", type=int, required=True)

    conv = sub.add_parser("convergents", parents=[common], help="convergents of sqrt(n)")
    conv.add_argument("--n", type=int, required=True)
    conv.add_argument("--count", type=int, default=DEFAULT_CONVERGENTS)

    pell = sub.add_parser("pell", parents=[common], help="solutions of x^2 - n y^2 = N")
    pell.add_argument("--n", type=int, required=True)
    pell.add_argument("--N", type=int, required=True)
    pell.add_argument("--limit", type=int, default=5)

    coh = sub.add_parser("cohomology", parents=[common], help="h^i of D, 2D, 2D-K")
    coh.add_argument("--n", type=int, required=True)
    coh.add_argument("--d", type=int, required=True)
    coh.add_argument("--m", required=True, help="comma list with v*c runs, e.g. 5,4*12")
    return parser


def _surface(args) -> Surface:
    return Surface(args.n, assume_shgh=args.assume_shgh, assume_nagata=args.assume_nagata)


def dispatch(args) -> Report:
    if args.command == "walls":
        t_min = f"auto:{args.first}" if args.first is not None else args.t_min
        return cmd_walls(_surface(args), args.chi, t_min)
    if args.command == "classify":
        return cmd_classify(_surface(args), args.chi, args.depth)
    if args.command == "snapshot":
        return cmd_snapshot(_surface(args), args.chi, args.t)
    if args.command == "components":
        return cmd_components(_surface(args), args.chi, args.k, args.r)
    if args.command == "convergents":
        return cmd_convergents(args.n, args.count)
    if args.command == "pell":
        return cmd_pell(args.n, args.N, args.limit)
    return cmd_cohomology(_surface(args), args.d, args.m)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config.setup_logging(args.log_level)
        logger.info("running %s", args.command)
        report = dispatch(args)
        generator = ReportGenerator()
        sys.stdout.write(generator.render(report, args.format))
        if args.save:
            path = generator.export(report, args.format)
            print(f"saved {path}", file=sys.stderr)
        logger.info("%s: %d rows", args.command, len(report.rows))
    except NefwallError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
