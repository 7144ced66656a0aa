"""Command-line front end.

Every subcommand writes one document to stdout (JSON by default, CSV with
``--format csv``).  Exit status: 0 on success, 1 when a verification fails,
2 on usage or domain errors, which are reported as JSON on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import cantor_core, extensions, image_engine, theorem_suite
from .exact_arith import Interval, IntervalSet, truncate_decimal

DECIMAL_DIGITS = 12
SCHEMA_VERSION = 1

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")

VARIANT_NAMES = {"c": cantor_core.STANDARD, "ctilde": cantor_core.UPPER, "selfsim": cantor_core.SELFSIM}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1/3" through as a value rather than an option
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        raise UsageError(message)


def parse_rational(text: str) -> Fraction:
    """``"p/q"`` or an integer; decimal input is refused to keep the boundary exact."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise argparse.ArgumentTypeError(f"expected a rational 'p/q', got {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"zero denominator in {text!r}")


# ---------------------------------------------------------------- encoding


def rational_doc(q: Fraction, digits: int = DECIMAL_DIGITS) -> Dict[str, Any]:
    return {
        "value": f"{q.numerator}/{q.denominator}",
        "decimal": truncate_decimal(q, digits),
        "decimal_digits": digits,
        "decimal_mode": "truncated",
    }


def pair_row(lo: Fraction, hi: Fraction) -> List[int]:
    return [lo.numerator, lo.denominator, hi.numerator, hi.denominator]


def interval_set_doc(s: IntervalSet) -> Dict[str, Any]:
    return {
        "intervals": [pair_row(iv.lo, iv.hi) for iv in s],
        "count": len(s),
        "measure": rational_doc(s.measure()),
    }


def gaps_doc(gaps) -> List[List[int]]:
    return [pair_row(lo, hi) for lo, hi in gaps]


def parse_rational_doc(doc: Dict[str, Any]) -> Fraction:
    return Fraction(doc["value"])


def parse_interval_set_doc(doc: Dict[str, Any]) -> IntervalSet:
    return IntervalSet(
        Interval(Fraction(a, b), Fraction(c, d)) for a, b, c, d in doc["intervals"]
    )


def _plain(value):
    """Encode report details: rationals, intervals, gap lists, sets."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return rational_doc(value)
    if isinstance(value, IntervalSet):
        return interval_set_doc(value)
    if isinstance(value, Interval):
        return pair_row(value.lo, value.hi)
    if isinstance(value, tuple) and len(value) == 2 and all(isinstance(v, Fraction) for v in value):
        return pair_row(*value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    raise TypeError(f"cannot encode {type(value).__name__}")


def report_doc(r: theorem_suite.VerificationReport) -> Dict[str, Any]:
    return {
        "claim_id": r.claim_id,
        "depth": r.depth,
        "pass": r.passed,
        "computed": _plain(r.computed),
        "expected": _plain(r.expected),
        "discrepancy": gaps_doc(r.discrepancy),
        "details": _plain(r.details),
    }


def sandwich_doc(s: theorem_suite.MeasureSandwich) -> Dict[str, Any]:
    return {
        "depth": s.depth,
        "upper_tilde": rational_doc(s.upper_tilde),
        "tail": rational_doc(s.tail),
        "lower_tilde": rational_doc(s.lower_tilde),
        "lower": rational_doc(s.lower),
        "upper": rational_doc(s.upper),
        "width": rational_doc(s.width),
        "certified_prefix": s.certified_digits(8),
    }


# ---------------------------------------------------------------- commands
# Each handler returns (result payload, passed flag or None, csv header, csv rows).


def _level(args) -> IntervalSet:
    variant = VARIANT_NAMES[args.variant]
    t = args.t if variant == cantor_core.SELFSIM else None
    return cantor_core.generate(cantor_core.CantorSpec(variant, args.depth, t))


def _interval_rows(s: IntervalSet):
    return ["lo_num", "lo_den", "hi_num", "hi_den"], [pair_row(iv.lo, iv.hi) for iv in s]


def cmd_gen(args):
    s = _level(args)
    return {"set": interval_set_doc(s)}, None, *_interval_rows(s)


def parse_map(text: str) -> image_engine.MapDescriptor:
    name, _, arg = text.partition(":")
    simple = {
        "product": image_engine.product,
        "quotient": image_engine.quotient,
        "squarecube": image_engine.square_cube,
        "square": image_engine.square,
    }
    if name in simple and not arg:
        return simple[name]()
    if name == "sum" and arg:
        return image_engine.sum_lambda(parse_rational(arg))
    if name == "power" and arg:
        return image_engine.power_t(parse_rational(arg))
    raise argparse.ArgumentTypeError(f"unknown map {text!r}")


def cmd_image(args):
    f = args.map
    s = _level(args)
    report = image_engine.set_image(f, [s] * f.arity)
    payload = {
        "map": f.label,
        "image": interval_set_doc(report.image),
        "box_count": report.box_count,
        "gap_list": gaps_doc(report.gap_list),
        "approximate": report.approximate,
    }
    return payload, None, *_interval_rows(report.image)


def cmd_measure_product(args):
    depths = range(1, args.depth + 1) if args.sequence else [args.depth]
    sandwiches = [theorem_suite.product_measure_sandwich(m) for m in depths]
    final = sandwiches[-1]
    payload = {"sandwich": sandwich_doc(final)}
    if args.sequence:
        payload["sequence"] = [sandwich_doc(s) for s in sandwiches]
    header = ["depth", "upper", "lower", "upper_decimal", "lower_decimal"]
    rows = [
        [
            s.depth,
            f"{s.upper.numerator}/{s.upper.denominator}",
            f"{s.lower.numerator}/{s.lower.denominator}",
            truncate_decimal(s.upper, DECIMAL_DIGITS),
            truncate_decimal(s.lower, DECIMAL_DIGITS),
        ]
        for s in sandwiches
    ]
    return payload, None, header, rows


VERIFY_DEFAULT_DEPTH = {"utz": 6, "squarecube": 8, "quotient": 8, "multiples": 8, "foursquares": 6}


def cmd_verify(args):
    claim = args.claim
    depth = args.depth if args.depth is not None else VERIFY_DEFAULT_DEPTH.get(claim, 1)
    if claim == "utz":
        if args.lam is None:
            raise UsageError("verify utz needs --lambda p/q")
        r = theorem_suite.verify_utz(args.lam, depth)
    elif claim == "squarecube":
        r = theorem_suite.verify_square_cube(depth)
    elif claim == "quotient":
        r = theorem_suite.verify_quotient(depth)
    elif claim == "gapcover":
        r = theorem_suite.gap_cover_demo()
    elif claim == "powerthreshold":
        if args.t is None:
            raise UsageError("verify powerthreshold needs --t p/q")
        r = theorem_suite.power_threshold_demo(args.t)
    elif claim == "multiples":
        if args.q is None:
            raise UsageError("verify multiples needs --q p/q")
        m = extensions.multiple_solutions(args.q, depth)
        r = theorem_suite.VerificationReport(
            "multiples",
            depth,
            m.passed,
            computed=m.solution_set,
            discrepancy=[(p, p) for p in m.uncovered_points],
            details={
                "q": m.q,
                "claimed_points": m.claimed_points,
                "residual_measure": m.residual_measure,
                "point_certified": m.point_certified,
                "interval_only": m.interval_only,
                "zero_is_solution": m.zero_is_solution,
            },
        )
    else:  # foursquares
        r = extensions.four_squares_evidence(depth)
    header = ["claim_id", "depth", "pass", "discrepancy_count"]
    return {"report": report_doc(r)}, r.passed, header, [[r.claim_id, r.depth, r.passed, len(r.discrepancy)]]


DECOMPOSERS = {
    "sum": cantor_core.decompose_sum,
    "diff": cantor_core.decompose_diff,
    "third": cantor_core.decompose_third,
}


def cmd_decompose(args):
    x, y = DECOMPOSERS[args.kind](args.u)
    xin, yin = cantor_core.in_cantor(x), cantor_core.in_cantor(y)
    payload = {
        "kind": args.kind,
        "u": rational_doc(args.u),
        "x": rational_doc(x),
        "y": rational_doc(y),
        "x_in_cantor": xin,
        "y_in_cantor": yin,
    }
    header = ["u", "x", "y", "x_in_cantor", "y_in_cantor"]
    row = [str(args.u), f"{x.numerator}/{x.denominator}", f"{y.numerator}/{y.denominator}", xin, yin]
    return payload, None, header, [row]


def cmd_quotient_test(args):
    member, m = cantor_core.in_quotient_set(args.u)
    payload = {"u": rational_doc(args.u), "member": member, "witness": m}
    return payload, None, ["u", "member", "witness"], [[str(args.u), member, "" if m is None else m]]


def cmd_roots(args):
    b = extensions.solve_tm(args.m, args.tol)
    payload = {
        "m": b.m,
        "lo": rational_doc(b.lo),
        "hi": rational_doc(b.hi),
        "width": rational_doc(b.width),
        "residual_lo_positive": extensions.tm_residual(b.lo, b.m) > 0,
        "residual_hi_negative": extensions.tm_residual(b.hi, b.m) < 0,
    }
    if b.m == 2:
        payload["golden_root_bracketed"] = extensions.golden_root_in(b)
    header = ["m", "lo", "hi", "lo_decimal", "hi_decimal"]
    row = [b.m, str(b.lo), str(b.hi), truncate_decimal(b.lo, DECIMAL_DIGITS), truncate_decimal(b.hi, DECIMAL_DIGITS)]
    return payload, None, header, [row]


# ---------------------------------------------------------------- driver


def _depth(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"depth must be an integer, got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError("depth must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0, help="recorded in the output; no command is randomized (default 0)")
    common.add_argument("--out", type=Path, help="also write the document to this file")

    parser = _Parser(prog="cantor-arith", description="Exact arithmetic on Cantor sets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def level_args(p):
        p.add_argument("--variant", choices=tuple(VARIANT_NAMES), default="c")
        p.add_argument("--t", type=parse_rational)
        p.add_argument("--depth", type=_depth, required=True)

    p = sub.add_parser("gen", parents=[common], help="interval set of a Cantor level")
    level_args(p)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("image", parents=[common], help="image of a level under a map")
    p.add_argument("--map", type=parse_map, required=True, help="sum:p/q|product|quotient|squarecube|power:p/q|square")
    level_args(p)
    p.set_defaults(handler=cmd_image)

    p = sub.add_parser("measure-product", parents=[common], help="measure bracket for the product set")
    p.add_argument("--depth", type=_depth, required=True)
    p.add_argument("--sequence", action="store_true", help="emit every depth from 1 up")
    p.set_defaults(handler=cmd_measure_product)

    p = sub.add_parser("verify", parents=[common], help="finite-depth theorem checks")
    p.add_argument("claim", choices=("utz", "squarecube", "quotient", "gapcover", "powerthreshold", "multiples", "foursquares"))
    p.add_argument("--lambda", dest="lam", type=parse_rational)
    p.add_argument("--t", type=parse_rational)
    p.add_argument("--q", type=parse_rational)
    p.add_argument("--depth", type=_depth)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("decompose", parents=[common], help="digit decompositions")
    p.add_argument("kind", choices=tuple(DECOMPOSERS))
    p.add_argument("--u", type=parse_rational, required=True)
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("quotient-test", parents=[common], help="is u a quotient of Cantor elements")
    p.add_argument("--u", type=parse_rational, required=True)
    p.set_defaults(handler=cmd_quotient_test)

    p = sub.add_parser("roots", parents=[common], help="bracket the root of (1-t)^m = t")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--tol", type=parse_rational, required=True)
    p.set_defaults(handler=cmd_roots)
    return parser


def _parameters(args) -> Dict[str, Any]:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in ("handler", "command", "out"):
            continue
        if isinstance(value, Fraction):
            value = f"{value.numerator}/{value.denominator}"
        elif isinstance(value, image_engine.MapDescriptor):
            value = value.label
        out[key] = value
    return out


def render(doc: Dict[str, Any], fmt: str, header, rows) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _error(kind: str, message: str, argv) -> int:
    doc = {"schema_version": SCHEMA_VERSION, "error": {"kind": kind, "message": message}, "argv": list(argv)}
    sys.stderr.write(json.dumps(doc, sort_keys=True) + "\n")
    return 2


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _error("usage", str(exc), argv)
    try:
        payload, passed, header, rows = args.handler(args)
    except UsageError as exc:
        return _error("usage", str(exc), argv)
    except (ValueError, ZeroDivisionError, argparse.ArgumentTypeError) as exc:
        return _error("domain", str(exc), argv)

    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "argv": argv,
        "parameters": _parameters(args),
        "result": payload,
        "pass": passed,
    }
    text = render(doc, args.format, header, rows)
    sys.stdout.write(text)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    return 1 if passed is False else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
