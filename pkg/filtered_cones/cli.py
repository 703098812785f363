"""
Command-line surface.

Exit codes: 0 success, 1 parse or validation error, 2 property violation
in a verify or demo run, 3 usage error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError as PydanticValidationError

from . import __version__
from .campaign import homotopy_diff_probe, run_campaign
from .complex import fmt, validate_complex, validate_map
from .config import CampaignConfig, TheoremDemoConfig
from .cones import mapping_cone, reassociate, tensor_product
from .demo import theorem_demo
from .exceptions import FilteredAlgebraError, ParseError, ValidationError
from .io import (
    load_document,
    parse_complex,
    parse_map,
    parse_reassoc,
    serialize_barcode,
    serialize_complex,
    serialize_profile,
    write_json,
)
from .invariants import profile
from .models import CampaignReport, ConeInput, FilteredComplex, Suite
from .persistence import barcode

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VIOLATION = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _invariants_line(C: FilteredComplex) -> str:
    p = profile(C)
    return f"sigma+ = {fmt(p.sigma_plus)}, sigma- = {fmt(p.sigma_minus)}, rho = {fmt(p.rho)}, beta = {fmt(p.beta)}"


def _bars_text(C: FilteredComplex) -> str:
    bars = barcode(C)
    if not bars.bars:
        return "(no bars)"
    return " ".join(f"[{fmt(b.birth)}, {fmt(b.death)})" for b in bars.bars)


def _describe_complex(C: FilteredComplex) -> None:
    print(f"{C.name}: {C.size} generators")
    print(f"bars: {_bars_text(C)}")
    print(_invariants_line(C))


def _complex_output(C: FilteredComplex, out: Optional[str]) -> None:
    if out is None:
        _describe_complex(C)
    else:
        write_json(
            {"complex": serialize_complex(C), "barcode": serialize_barcode(barcode(C)), "profile": serialize_profile(profile(C))},
            out,
        )


def cmd_validate(args) -> int:
    data = load_document(args.file)
    if "source" in data:
        f = parse_map(args.file)
        report, kind = validate_map(f), "map"
    else:
        report, kind = validate_complex(parse_complex(args.file)), "complex"
    if report.ok:
        print(f"{args.file}: valid {kind}")
        return EXIT_OK
    for violation in report.violations:
        print(f"{args.file}: {violation}", file=sys.stderr)
    return EXIT_INVALID


def cmd_barcode(args) -> int:
    C = parse_complex(args.file)
    bars = barcode(_require(C))
    if args.out is not None:
        write_json({"name": C.name, "bars": serialize_barcode(bars)}, args.out)
    else:
        print(_bars_text(C))
    return EXIT_OK


def cmd_invariants(args) -> int:
    C = _require(parse_complex(args.file))
    if args.out is not None:
        write_json(serialize_profile(profile(C)), args.out)
    else:
        print(_invariants_line(C))
    return EXIT_OK


def cmd_cone(args) -> int:
    f = parse_map(args.map)
    shift = f.shift if args.shift is None else args.shift
    _complex_output(mapping_cone(ConeInput(f, shift)), args.out)
    return EXIT_OK


def cmd_tensor(args) -> int:
    A, B = parse_complex(args.first), parse_complex(args.second)
    _complex_output(tensor_product(A, B), args.out)
    return EXIT_OK


def cmd_reassoc(args) -> int:
    E, inner, g, s_g = parse_reassoc(args.spec)
    _, _, report = reassociate(E, inner, g, s_g)
    if args.out is not None:
        write_json(report, args.out)
    else:
        for check in report.checks:
            mark = "ok" if check.holds else "VIOLATED"
            print(f"{check.name}: {fmt(check.lhs)} {check.relation} {fmt(check.rhs)} [{mark}]")
    return EXIT_OK if report.holds else EXIT_VIOLATION


def _print_campaign(report: CampaignReport, indent: str = "") -> None:
    print(
        f"{indent}{report.suite}: {report.total_instances} instances, {report.passed} passed, "
        f"{report.failed} failed, {report.vacuous} vacuous, {report.errors} errors [{report.status.value}]"
    )
    for record in ([] if report.children else report.failures()):
        print(f"{indent}  {record.label} seed={record.seed} {record.status.value}: "
              f"{record.error_message or ', '.join(c.name for c in record.checks if not c.holds)}")
    for child in report.children:
        _print_campaign(child, indent + "  ")


def cmd_verify(args) -> int:
    config = CampaignConfig(
        suite=args.suite, count=args.count, seed=args.seed, tolerance=args.tol, halt_on_failure=not args.keep_going
    )
    if config.suite == Suite.HOMOTOPY_DIFF:
        probe = homotopy_diff_probe(config.count_for(config.suite), config.seed, config.tolerance)
        report = probe.campaign
        output = probe
    else:
        report = output = run_campaign(config)

    if args.out is not None:
        write_json(output, args.out)
    else:
        _print_campaign(report)
        if config.suite == Suite.HOMOTOPY_DIFF:
            print(f"literal min-form violations: {probe.literal_violations} (informational)")
    return EXIT_OK if report.is_successful() else EXIT_VIOLATION


def cmd_demo(args) -> int:
    overrides = {"k": args.k, "trials": args.trials, "seed": args.seed, "tail_beta_cap": args.tail_cap}
    config = TheoremDemoConfig(**{k: v for k, v in overrides.items() if v is not None})
    report = theorem_demo(config)
    if args.out is not None:
        write_json(report, args.out)
    else:
        print(f"k = {config.k}, attachments = {report.r}, A = {fmt(report.A)}, B = {fmt(report.B)}")
        print(f"trials within the bound: {report.passed}/{len(report.trials)}")
        print(report.caveat)
    return EXIT_OK if report.is_successful() else EXIT_VIOLATION


def _require(C: FilteredComplex) -> FilteredComplex:
    report = validate_complex(C)
    if not report.ok:
        raise ValidationError(f"{C.name} is not a valid complex", report.violations)
    return C


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="INFO with -v, DEBUG with -vv")

    parser = _Parser(prog="filtered_cones", description="Filtered complexes, barcodes and cone estimates over F2")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="Check a complex or map document")
    p.add_argument("file")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("barcode", parents=[common], help="Print the barcode of a complex")
    p.add_argument("file")
    p.add_argument("--out", help="Write JSON to a file, '-' for standard output")
    p.set_defaults(handler=cmd_barcode)

    p = sub.add_parser("invariants", parents=[common], help="Print sigma+, sigma-, rho and beta")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_invariants)

    p = sub.add_parser("cone", parents=[common], help="Build the mapping cone of a map")
    p.add_argument("--map", required=True)
    p.add_argument("--shift", type=float, help="Cone shift; defaults to the map's declared shift")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_cone)

    p = sub.add_parser("tensor", parents=[common], help="Tensor product of two complexes")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_tensor)

    p = sub.add_parser("reassoc", parents=[common], help="Compare the two bracketings of a double cone")
    p.add_argument("spec")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_reassoc)

    p = sub.add_parser("verify", parents=[common], help="Run a randomized verification campaign")
    p.add_argument("--suite", required=True, choices=[s.value for s in Suite])
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--keep-going", action="store_true", help="Record failures without halting the suite")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("demo", parents=[common], help="Run the synthetic spectral-range demo")
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tail-cap", dest="tail_cap", type=float)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_demo)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        return args.handler(args)
    except PydanticValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        for violation in e.violations:
            print(f"  {violation}", file=sys.stderr)
        return EXIT_INVALID
    except (ParseError, FilteredAlgebraError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
