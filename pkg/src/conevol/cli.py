"""Command-line interface: ``conevol {info,volume,length,sweep,table,verify}``.

Exit status: 0 success, 1 bad input, 2 angle outside the asserted window
(without ``--force``), 3 verification failures.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .exact import PiScalar, render, render_unicode, to_float
from .invariants import (
    NotAssertedError,
    asserted_window,
    existence_interval,
    float_json,
    invariant_report,
    scalar_json,
    strand_length,
    volume,
)
from .torus_link import TorusLinkParams, params_new
from .verify import VerificationConfig, run_identity_suite

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_ASSERTED = 2
EXIT_VERIFY_FAILED = 3

FORMAT_ENV = "CONEVOL_FORMAT"
MAX_APPROX_DENOMINATOR = 10**6

SWEEP_HEADER = ["alpha_exact", "alpha_rad", "volume_exact", "volume", "length_exact",
                "length_per_component"]


def fmt(x: float) -> str:
    return f"{x:.12g}"


# -- angle parsing ---------------------------------------------------------

class AngleParseError(ValueError):
    def __init__(self, text: str, pos: int, reason: str):
        self.text = text
        self.pos = pos
        super().__init__(f"cannot parse angle {text!r} at position {pos}: {reason}")


@dataclass(frozen=True)
class AngleExpr:
    raw: str
    parsed: PiScalar
    mode: str  # "pi-rational" or "radians-float"
    radians: float | None = None

    @property
    def note(self) -> str | None:
        if self.mode != "radians-float":
            return None
        err = to_float(self.parsed) - self.radians
        return (f"{self.radians!r} rad approximated by {render(self.parsed)} "
                f"(denominator <= {MAX_APPROX_DENOMINATOR}, error {err:.3g} rad)")


_FLOAT_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")


class _Cursor:
    """Scans ``text`` skipping whitespace; positions refer to the raw text."""

    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def take(self, s: str) -> bool:
        self.skip()
        if self.text[self.i:self.i + len(s)].lower() == s:
            self.i += len(s)
            return True
        return False

    def integer(self) -> int | None:
        self.skip()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            return None
        value, self.i = int(self.text[self.i:j]), j
        return value

    def error(self, reason: str) -> AngleParseError:
        self.skip()
        return AngleParseError(self.text, self.i, reason)


def _parse_pi(text: str) -> PiScalar:
    cur = _Cursor(text)
    sign = 1
    ch = cur.peek()
    if ch and ch in "+-":
        sign = -1 if ch == "-" else 1
        cur.i += 1
    coeff = Fraction(1)
    num = cur.integer()
    if num is not None:
        coeff = Fraction(num)
        if cur.take("/"):
            cur.skip()
            den_pos = cur.i
            den = cur.integer()
            if den is None:
                raise cur.error("expected a denominator after '/'")
            if den == 0:
                raise AngleParseError(text, den_pos, "zero denominator")
            coeff = Fraction(num, den)
    cur.take("*")
    if not cur.take("pi"):
        raise cur.error("expected 'pi'")
    if cur.peek():
        raise cur.error("unexpected trailing text")
    return PiScalar(sign * coeff, 1)


def parse_angle(text: str) -> AngleExpr:
    """Parse ``[sign][INT[/INT]][*]pi`` exactly, or a bare float in radians.

    A float is replaced by the closest rational multiple of pi with
    denominator at most 10**6.
    """
    if "pi" in text.lower():
        return AngleExpr(text, _parse_pi(text), "pi-rational")
    stripped = "".join(text.split())
    if not stripped:
        raise AngleParseError(text, 0, "empty angle")
    m = _FLOAT_RE.match(stripped)
    if not m or m.end() != len(stripped):
        pos = m.end() if m else 0
        raise AngleParseError(text, pos, "expected a multiple of pi or a float in radians")
    value = float(stripped)
    if not math.isfinite(value):
        raise AngleParseError(text, 0, "angle must be finite")
    ratio = (Fraction(value) / Fraction(math.pi)).limit_denominator(MAX_APPROX_DENOMINATOR)
    return AngleExpr(text, PiScalar(ratio, 1), "radians-float", value)


# -- sweeps and tables -----------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    alpha: PiScalar
    volume: PiScalar
    length_per_component: PiScalar

    @property
    def floats(self) -> tuple[float, float, float]:
        return to_float(self.alpha), to_float(self.volume), to_float(self.length_per_component)

    def cells(self) -> list[str]:
        a, v, l = self.floats
        return [render(self.alpha), fmt(a), render(self.volume), fmt(v),
                render(self.length_per_component), fmt(l)]

    def to_json(self) -> dict:
        a, v, l = self.floats
        return dict(zip(SWEEP_HEADER, [render(self.alpha), float_json(a), render(self.volume),
                                       float_json(v), render(self.length_per_component),
                                       float_json(l)]))


def run_sweep(params: TorusLinkParams, samples: int) -> list[SweepRow]:
    """Evenly spaced exact angles strictly inside the asserted window."""
    if samples < 2:
        raise ValueError(f"a sweep needs at least 2 samples, got {samples}")
    window = asserted_window(params)
    step = window.width / (samples + 1)
    rows = []
    for i in range(1, samples + 1):
        alpha = window.lower + step * i
        rows.append(SweepRow(alpha, volume(params, alpha), strand_length(params, alpha)))
    return rows


def volume_table(p_max: int, q_max: int, alpha: PiScalar) -> list[list[PiScalar | None]]:
    """``grid[p-1][q-1]`` is the volume, or None where nothing is asserted."""
    grid = []
    for p in range(1, p_max + 1):
        row = []
        for q in range(1, q_max + 1):
            params = params_new(p, q)
            try:
                row.append(volume(params, alpha))
            except NotAssertedError:
                row.append(None)
        grid.append(row)
    return grid


# -- rendering -------------------------------------------------------------

def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _kv_table(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in pairs)


def _exact_and_float(x: PiScalar | None) -> str:
    if x is None:
        return "-"
    return f"{render_unicode(x):<20} {fmt(to_float(x))}"


def _link_kind(params: TorusLinkParams) -> str:
    if params.is_unknot:
        return "unknot (degenerate singular set)"
    if params.is_knot:
        return "knot"
    return f"link with {params.components} components"


def info_json(params: TorusLinkParams) -> dict:
    iv = existence_interval(params)
    window = asserted_window(params)
    return {
        "params": params.to_json(),
        "knot": params.is_knot,
        "unknot": params.is_unknot,
        "interval": iv.to_json(),
        "asserted_window": window.to_json(),
        "interval_width": scalar_json(iv.width),
    }


def _info_text(params: TorusLinkParams) -> str:
    iv = existence_interval(params)
    window = asserted_window(params)
    pairs = [
        ("torus link", f"t({params.p},{params.q})"
                       + ("  (input swapped to p <= q)" if params.normalized_swap else "")),
        ("kind", _link_kind(params)),
        ("gcd / lcm", f"{params.gcd} / {params.lcm}"),
        ("components", str(params.components)),
        ("interval", f"({render_unicode(iv.lower)}, {render_unicode(iv.upper)})  "
                     f"= ({fmt(to_float(iv.lower))}, {fmt(to_float(iv.upper))}) rad"),
    ]
    if window != iv:
        pairs.append(("asserted window", f"({render_unicode(window.lower)}, "
                                          f"{render_unicode(window.upper)})"))
    return _kv_table(pairs)


def _report_text(report, focus: str) -> str:
    iv = report.interval
    pairs = [
        ("torus link", f"t({report.params.p},{report.params.q})  {_link_kind(report.params)}"),
        ("alpha", _exact_and_float(report.alpha)),
        ("interval", f"({render_unicode(iv.lower)}, {render_unicode(iv.upper)})"),
        ("asserted", "yes" if report.in_interval else "no"),
    ]
    if report.forced:
        pairs.append(("forced", "yes"))
    if focus == "volume":
        pairs.append(("volume", _exact_and_float(report.volume)))
        pairs.append(("dV/dalpha", _exact_and_float(report.volume_derivative)))
    else:
        pairs.append(("length/component", _exact_and_float(report.length)))
        pairs.append(("length total", _exact_and_float(report.length_total)))
    pairs.append(("covering residual", render(report.covering_residual)))
    for note in report.notes:
        pairs.append(("note", note))
    return _kv_table(pairs)


# -- argument handling -----------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conevol",
                     description="Spherical volumes and singular lengths of torus "
                                 "knot and link cone-manifolds, in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt_opt(p, choices):
        p.add_argument("--format", choices=choices, default=None,
                       help=f"output format (default: ${FORMAT_ENV} or table)")

    def pq(p):
        p.add_argument("p", type=int)
        p.add_argument("q", type=int)

    p_info = sub.add_parser("info", help="parameters and existence interval")
    pq(p_info)
    fmt_opt(p_info, ["table", "json"])

    for name, what in (("volume", "volume"), ("length", "singular strand length")):
        p = sub.add_parser(name, help=f"exact {what} at one cone angle")
        pq(p)
        p.add_argument("--alpha", required=True, help="cone angle, e.g. 2/3*pi or 2.1")
        p.add_argument("--force", action="store_true",
                       help="evaluate the formula outside the asserted window")
        fmt_opt(p, ["table", "json"])

    p_sweep = sub.add_parser("sweep", help="tabulate across the existence interval")
    pq(p_sweep)
    p_sweep.add_argument("--samples", type=int, default=20)
    fmt_opt(p_sweep, ["table", "json", "csv"])

    p_table = sub.add_parser("table", help="grid of volumes over p and q")
    p_table.add_argument("--p-max", type=_positive_int, required=True)
    p_table.add_argument("--q-max", type=_positive_int, required=True)
    p_table.add_argument("--alpha", required=True)
    fmt_opt(p_table, ["table", "json", "csv"])

    p_verify = sub.add_parser("verify", help="run the randomized identity suite")
    p_verify.add_argument("--trials", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--p-max", type=_positive_int, default=50)
    p_verify.add_argument("--q-max", type=_positive_int, default=50)
    p_verify.add_argument("--fd-step", type=float, default=1e-6)
    p_verify.add_argument("--rel-tol", type=float, default=1e-9)
    fmt_opt(p_verify, ["table", "json"])
    return parser


def _resolve_format(args) -> str:
    if args.format:
        return args.format
    env = os.environ.get(FORMAT_ENV, "").strip().lower()
    allowed = {"table", "json"} | ({"csv"} if args.command in ("sweep", "table") else set())
    return env if env in allowed else "table"


def _cmd_info(args, out):
    params = params_new(args.p, args.q)
    if args.format == "json":
        out.write(_dump_json(info_json(params)))
    else:
        out.write(_info_text(params))
    return EXIT_OK


def _cmd_report(args, out):
    params = params_new(args.p, args.q)
    angle = parse_angle(args.alpha)
    notes = [angle.note] if angle.note else []
    report = invariant_report(params, angle.parsed, force=args.force, notes=notes)
    if not report.in_interval and not args.force:
        window = asserted_window(params)
        raise NotAssertedError(
            f"no spherical structure asserted for t({params.p},{params.q}) at alpha = "
            f"{render(angle.parsed)}; asserted window is ({render(window.lower)}, "
            f"{render(window.upper)}). Use --force to evaluate the formula anyway."
        )
    if args.format == "json":
        out.write(_dump_json(report.to_json()))
    else:
        out.write(_report_text(report, args.command))
    return EXIT_OK


def _cmd_sweep(args, out):
    params = params_new(args.p, args.q)
    rows = run_sweep(params, args.samples)
    if args.format == "csv":
        out.write(_csv([SWEEP_HEADER] + [r.cells() for r in rows]))
    elif args.format == "json":
        out.write(_dump_json({
            "params": params.to_json(),
            "interval": existence_interval(params).to_json(),
            "samples": args.samples,
            "rows": [r.to_json() for r in rows],
        }))
    else:
        widths = [16, 16, 22, 16, 18, 16]
        lines = ["".join(f"{h:<{w}}" for h, w in zip(SWEEP_HEADER, widths)).rstrip()]
        for r in rows:
            lines.append("".join(f"{c:<{w}}" for c, w in zip(r.cells(), widths)).rstrip())
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_table(args, out):
    angle = parse_angle(args.alpha)
    grid = volume_table(args.p_max, args.q_max, angle.parsed)
    qs = list(range(1, args.q_max + 1))
    if args.format == "json":
        out.write(_dump_json({
            "alpha": scalar_json(angle.parsed),
            "p_max": args.p_max,
            "q_max": args.q_max,
            "volumes": [
                {"p": p, "q": q, "volume": None if v is None else scalar_json(v)}
                for p, row in enumerate(grid, 1) for q, v in zip(qs, row)
            ],
        }))
        return EXIT_OK
    body = [[str(p)] + ["" if v is None else fmt(to_float(v)) for v in row]
            for p, row in enumerate(grid, 1)]
    if args.format == "csv":
        out.write(_csv([["p"] + [f"q={q}" for q in qs]] + body))
        return EXIT_OK
    head = ["p\\q"] + [str(q) for q in qs]
    width = max(len(c) for row in body + [head] for c in row) + 2
    out.write(f"volume at alpha = {render_unicode(angle.parsed)}"
              f" ({fmt(to_float(angle.parsed))} rad); blank = not asserted\n")
    if angle.note:
        out.write(f"note: {angle.note}\n")
    for row in [head] + body:
        out.write("".join(f"{c:>{width}}" for c in row).rstrip() + "\n")
    return EXIT_OK


def _cmd_verify(args, out):
    config = VerificationConfig(trials=args.trials, p_max=args.p_max, q_max=args.q_max,
                                seed=args.seed, fd_step=args.fd_step, rel_tol=args.rel_tol)
    report = run_identity_suite(config)
    out.write(report.dumps() if args.format == "json" else report.summary())
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


_COMMANDS = {
    "info": _cmd_info,
    "volume": _cmd_report,
    "length": _cmd_report,
    "sweep": _cmd_sweep,
    "table": _cmd_table,
    "verify": _cmd_verify,
}


def main(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format = _resolve_format(args)
    out = out or sys.stdout
    try:
        return _COMMANDS[args.command](args, out)
    except NotAssertedError as exc:
        print(f"conevol: {exc}", file=sys.stderr)
        return EXIT_NOT_ASSERTED
    except (ValueError, TypeError, OverflowError, ZeroDivisionError) as exc:
        print(f"conevol: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
