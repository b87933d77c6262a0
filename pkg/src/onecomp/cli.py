"""Command-line front end.

Commands: eval, classify, levelset, construct, measure, seed-examples.
Outputs are deterministic for identical inputs (fixed iteration orders, all
reals printed as 17-digit decimals); the only run-dependent content is the
isolated metadata.generated_at field.  Exit codes: 0 success, 2 on domain or
input errors, 3 when a tolerance is unattainable (precision exhausted).
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

from .classify import ScanBudget, classify
from .companion import construct_companion
from .errors import (BlaschkeConditionError, CurveExhausted, DomainError,
                     HorizonExceeded, HypothesisViolated, PrecisionExhausted,
                     RadiusSearchExhausted)
from .families import SEEDED_FAMILY_BUILDERS
from .geometry import BoundaryArc
from .inner import dump_zeros_csv
from .levelset import level_set_components
from .serialize import dumps, inner_from_json, inner_to_json, measure_from_json

_INPUT_ERRORS = (DomainError, HypothesisViolated, BlaschkeConditionError,
                 HorizonExceeded, RadiusSearchExhausted, CurveExhausted)


def _metadata(args) -> dict:
    return {"generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "threads": args.threads}


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DomainError("%s: malformed JSON at line %d column %d: %s"
                          % (path, exc.lineno, exc.colno, exc.msg)) from exc
    except OSError as exc:
        raise DomainError("%s: %s" % (path, exc)) from exc


def _load_inner(path: str):
    return inner_from_json(_load_json(path), base_dir=os.path.dirname(path) or ".")


def _write(out_dir: str, name: str, text: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path


def _parse_point(spec: str) -> complex:
    parts = spec.split(",")
    if len(parts) != 2:
        raise DomainError("point must be 're,im', got %r" % (spec,))
    return complex(float(parts[0]), float(parts[1]))


def cmd_eval(args) -> int:
    theta = _load_inner(args.inner)
    z = _parse_point(args.at)
    value = theta.evaluate(z, args.tol)
    lm = theta.log_modulus(z, args.tol)
    mb = theta.modulus_bounds(z, args.tol)
    doc = {"value": value,
           "log_modulus": {"lo": lm.lo, "hi": lm.hi},
           "modulus": {"lo": mb.lo, "hi": mb.hi},
           "metadata": _metadata(args)}
    text = dumps(doc)
    if args.out:
        _write(args.out, "eval.json", text)
    sys.stdout.write(text)
    return 0


def cmd_classify(args) -> int:
    theta = _load_inner(args.inner)
    budget = ScanBudget(depth=args.depth, tol=args.tol)
    report = classify(theta, budget)
    doc = report.to_json_dict()
    doc["metadata"] = _metadata(args)
    text = dumps(doc)
    if args.out:
        _write(args.out, "report.json", text)
    sys.stdout.write(text)
    return 0


def cmd_levelset(args) -> int:
    theta = _load_inner(args.inner)
    analysis = level_set_components(theta, args.epsilon, args.depth)
    doc = {"epsilon": analysis.epsilon, "depth": analysis.depth,
           "component_count": analysis.component_count,
           "previous_depth_count": analysis.previous_depth_count,
           "stabilized": analysis.stabilized,
           "marked_cells": len(analysis.cells),
           "metadata": _metadata(args)}
    text = dumps(doc)
    if args.out:
        _write(args.out, "levelset.json", text)
        _write(args.out, "levelset.csv", analysis.to_csv())
        if args.pgm:
            os.makedirs(args.out, exist_ok=True)
            with open(os.path.join(args.out, "levelset.pgm"), "wb") as fh:
                fh.write(analysis.to_pgm())
    sys.stdout.write(text)
    return 0


def cmd_construct(args) -> int:
    theta = _load_inner(args.inner)
    result = construct_companion(theta, horizon=args.horizon, depth=args.depth)
    doc = {
        "zeros_csv": dump_zeros_csv(result.zeros.zeros),
        "separation_delta": result.separation_delta,
        "box_constant": result.box_constant,
        "max_step_error": result.max_step_error,
        "tail_blaschke_estimate": result.tail_blaschke_estimate,
        "report_b": result.report_b.to_json_dict(),
        "report_btheta": result.report_btheta.to_json_dict(),
        "spot_check": {"points_checked": result.spot_check.points_checked,
                       "points_above_threshold": result.spot_check.points_above_threshold,
                       "violations": [{"re": v.real, "im": v.imag}
                                      for v in result.spot_check.violations]},
        "verified": result.verified,
        "construction": result.metadata,
        "metadata": _metadata(args),
    }
    text = dumps(doc)
    if args.out:
        _write(args.out, "companion.json", text)
        _write(args.out, "gamma.csv", result.gamma.to_polyline_csv())
    sys.stdout.write(text)
    return 0


def cmd_measure(args) -> int:
    sigma = measure_from_json(_load_json(args.measure))
    doc = {"total_mass": sigma.total_mass(), "metadata": _metadata(args)}
    if args.arc:
        parts = args.arc.split(",")
        if len(parts) != 2:
            raise DomainError("--arc must be 'center,half_width'")
        arc = BoundaryArc(float(parts[0]), float(parts[1]))
        doc["arc_mass"] = sigma.mass_of_arc(arc, closed_ends=True, tol=args.tol)
    if args.at:
        z = _parse_point(args.at)
        doc["poisson"] = sigma.poisson_integral(z, args.tol)
        h = sigma.herglotz_integral(z, args.tol)
        doc["herglotz"] = h
    text = dumps(doc)
    if args.out:
        _write(args.out, "measure.json", text)
    sys.stdout.write(text)
    return 0


def cmd_seed_examples(args) -> int:
    out = args.out or "."
    for name, builder in SEEDED_FAMILY_BUILDERS.items():
        theta = builder()
        if theta.blaschke is not None:
            # materialize a regression-sized prefix; the remainder stays a tail
            theta.blaschke.zeros.materialize_count(48)
        if theta.singular is not None:
            sigma = theta.singular.sigma
            if hasattr(sigma, "materialize_until_tail"):
                sigma.materialize_until_tail(8.0 ** -64)
        _write(out, "%s.json" % name, dumps(inner_to_json(theta)))
    sys.stdout.write("seeded %d example inputs into %s\n"
                     % (len(SEEDED_FAMILY_BUILDERS), out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onecomp",
        description="construct, evaluate, and classify inner functions on "
                    "the unit disc")
    parser.add_argument("--threads", type=int, default=1,
                        help="cap on internal workers (outputs never depend on it)")
    parser.add_argument("--seed-examples", action="store_true",
                        help="write the example families as input files and exit "
                             "(same as the seed-examples command)")
    parser.add_argument("--out", dest="top_out", default=".",
                        help="output directory for --seed-examples")
    sub = parser.add_subparsers(dest="command", required=False)

    p = sub.add_parser("eval", help="evaluate an inner function at a point")
    p.add_argument("--inner", required=True)
    p.add_argument("--at", required=True, help="interior point as 're,im'")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("classify", help="run the one-component criterion scan")
    p.add_argument("--inner", required=True)
    p.add_argument("--depth", type=int, default=14)
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("levelset", help="count components of {|Theta| < eps}")
    p.add_argument("--inner", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--pgm", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_levelset)

    p = sub.add_parser("construct", help="build the companion Blaschke product")
    p.add_argument("--inner", required=True)
    p.add_argument("--horizon", type=int, default=2000)
    p.add_argument("--depth", type=int, default=14)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("measure", help="query a singular measure")
    p.add_argument("--measure", required=True)
    p.add_argument("--arc", default=None, help="'center,half_width' in radians")
    p.add_argument("--at", default=None, help="interior point as 're,im'")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("seed-examples",
                       help="write the example families as input files")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_seed_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    if args.seed_examples:
        args.out = args.top_out
        args.func = cmd_seed_examples
    elif args.command is None:
        parser.error("a command is required (or --seed-examples)")
    try:
        return args.func(args)
    except PrecisionExhausted as exc:
        sys.stderr.write("precision exhausted: %s\n" % (exc,))
        return 3
    except _INPUT_ERRORS as exc:
        sys.stderr.write("error: %s\n" % (exc,))
        return 2


if __name__ == "__main__":
    sys.exit(main())
