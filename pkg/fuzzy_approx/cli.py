"""
Command line: thin wrappers around the library calls.

Results go to stdout as ``key: value`` lines (floats in repr form) and
per-point CSV reports; logs and the error line go to stderr.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd

from fuzzy_approx import documents
from fuzzy_approx.best_approx import construct_approximant, oracle_report
from fuzzy_approx.conv_multiplier import FunctionClass, check_conv_membership, separates_points
from fuzzy_approx.errors import FuzzyApproxError, ParseError, ValidationError
from fuzzy_approx.function_space import D_metric, FuzzyFunction, ScalarFunction
from fuzzy_approx.omniconf import config, logger
from fuzzy_approx.real_approx import (
    CORE,
    SUPPORT,
    dist_to_real_level,
    midpoint_selector,
    radius,
    radius_profile,
)
from fuzzy_approx.samples import FIXTURES


def _emit(key: str, value) -> None:
    print(f"{key}: {float(value)!r}" if isinstance(value, float) else f"{key}: {value}")


def _csv(frame: pd.DataFrame, path: Optional[str] = None) -> None:
    kwargs = dict(index=False, lineterminator="\n", float_format=config.csv_float_format or None)
    if path is None:
        sys.stdout.write(frame.to_csv(**kwargs))
        return
    Path(path).parent.mkdir(exist_ok=True, parents=True)
    frame.to_csv(path, **kwargs)
    logger.info(f"📝 report written to {path}")


def _load_as(path: str, kind: type, label: str):
    obj = documents.load(path)
    if not isinstance(obj, kind):
        raise ValidationError(f"{label} must be a {kind.__name__} document, got {type(obj).__name__}")
    return obj


def _level(args) -> float:
    if args.support:
        return SUPPORT
    return CORE if args.level is None else args.level


# --- COMMANDS ---


def cmd_dist(args) -> None:
    f = _load_as(args.f, FuzzyFunction, "f")
    g = _load_as(args.g, FuzzyFunction, "g")
    _emit("D", D_metric(f, g))


def cmd_dist_real(args) -> None:
    f = _load_as(args.f, FuzzyFunction, "f")
    F = _load_as(args.F, ScalarFunction, "F")
    level = _level(args)
    _emit("level", level)
    _emit("D", dist_to_real_level(f, F, level))


def cmd_radius(args) -> None:
    f = _load_as(args.f, FuzzyFunction, "f")
    level = _level(args)
    profile = radius_profile(f, level)
    _csv(pd.DataFrame({"x": f.domain.points, "rad": profile.values}))
    _emit("level", level)
    _emit("rad", radius(f, level))


def cmd_best_real(args) -> None:
    f = _load_as(args.f, FuzzyFunction, "f")
    report = midpoint_selector(f, _level(args))
    _emit("level", report.level)
    _emit("radius", report.radius)
    _emit("achieved", report.achieved)
    _emit("selection_valid", report.selection_valid)
    _emit("attains_radius", report.attains_radius)
    if args.out:
        documents.save(report.F0, args.out)
    if args.report:
        lo, hi = f.level_endpoints(report.level)
        _csv(
            pd.DataFrame(
                {
                    "x": f.domain.points,
                    "core_lo": lo,
                    "core_hi": hi,
                    "F0": report.F0.values,
                    "G_lo": [g.lo for g in report.g_intervals],
                    "G_hi": [g.hi for g in report.g_intervals],
                }
            ),
            args.report,
        )


def cmd_approx(args) -> None:
    f = _load_as(args.f, FuzzyFunction, "f")
    W = _load_as(args.W, FunctionClass, "W")
    report = construct_approximant(f, W, args.epsilon)
    _emit("target", report.target)
    _emit("achieved", report.achieved)
    _emit("bound", report.bound)
    _emit("cover_size", report.cover_size)
    _emit("delta", report.delta)
    if args.out:
        documents.save(report.h, args.out)
    if args.report:
        centers = {patch.center for patch in report.cover}
        _csv(
            pd.DataFrame(
                {
                    "x": f.domain.points,
                    "gamma": report.gamma.values,
                    "center": [int(p in centers) for p in range(len(f.domain))],
                }
            ),
            args.report,
        )


def cmd_oracle(args) -> None:
    f = _load_as(args.f, FuzzyFunction, "f")
    W = _load_as(args.W, FunctionClass, "W")
    report = oracle_report(f, W)
    _emit("global_distance", report.global_distance)
    _emit("max_pointwise", report.max_pointwise)
    _emit("attainment_point", report.attainment_point)
    _emit("gap", report.gap)
    _emit("separates", report.separates)


def cmd_check(args) -> None:
    obj = documents.load(args.doc)
    if isinstance(obj, FuzzyFunction):
        _emit("kind", "fuzzy")
        _emit("points", len(obj.domain))
        _emit("levels", len(obj.grid))
        _emit("rad", radius(obj))
    elif isinstance(obj, ScalarFunction):
        _emit("kind", "scalar")
        _emit("points", len(obj.domain))
        _emit("unit_range", obj.unit_range)
    else:
        _emit("kind", "class")
        _emit("name", obj.name)
        _emit("rule", obj.membership.rule)
        _emit("enumeration", len(obj))
        _emit("multipliers", len(obj.multipliers))
        _emit("separates", separates_points(obj.multipliers, obj.domain))
        for k, phi in enumerate(obj.multipliers):
            _emit(f"multiplier[{k}].in_conv", check_conv_membership(phi, obj))
    _emit("valid", True)


def cmd_fixtures(args) -> None:
    out = Path(args.out or config.fixtures_output_dir)
    for name, build in FIXTURES.items():
        print(documents.save(build(), out / f"{name}.json").as_posix())


# --- PARSER ---


class _Parser(argparse.ArgumentParser):
    """Usage errors surface as ParseError, like every other failure."""

    def error(self, message: str):
        raise ParseError(f"{self.prog}: {message}")


def _add_level_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--level", type=float, default=None, help="λ-level (default 1, the core)")
    group.add_argument("--support", action="store_true", help="use level 0")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="fuzzy-approx",
        description="Best approximation of fuzzy-number-valued functions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="D(f, g)")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("dist-real", help="D(f, F) against a real-valued F")
    p.add_argument("f")
    p.add_argument("F")
    _add_level_flags(p)
    p.set_defaults(func=cmd_dist_real)

    p = sub.add_parser("radius", help="rad(x, f) profile and rad(f)")
    p.add_argument("f")
    _add_level_flags(p)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("best-real", help="midpoint selector F0")
    p.add_argument("f")
    p.add_argument("--out")
    p.add_argument("--report")
    _add_level_flags(p)
    p.set_defaults(func=cmd_best_real)

    p = sub.add_parser("approx", help="glued approximant h in W")
    p.add_argument("f")
    p.add_argument("W")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--out")
    p.add_argument("--report")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("oracle", help="brute-force d(f, W) against max_x d_x(f, W)")
    p.add_argument("f")
    p.add_argument("W")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check", help="validate a document")
    p.add_argument("doc")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fixtures", help="write the shipped fixtures as documents")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except FuzzyApproxError as e:
        sys.stderr.write(f"error {type(e).__name__} {e.exit_code}: {e}\n")
        return e.exit_code
    except OSError as e:
        sys.stderr.write(f"error {ParseError.__name__} {ParseError.exit_code}: {e}\n")
        return ParseError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
