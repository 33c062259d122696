"""Command-line front end: ``qdirac verify`` and ``qdirac spectrum``."""

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .field import FieldElem, parse_rational
from .irreps import HalfInt
from .report import VerificationReport

SUITES = ("constants", "irreps", "dirac", "ncpoly", "regular")
FORMATS = ("json", "csv", "text")
FORMAT_ENV = "QDIRAC_FORMAT"
CSV_COLUMNS = ("check_id", "anchor", "status", "elapsed_ms")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    lmax: HalfInt = field(default_factory=lambda: HalfInt(6))
    degree_cap: int = 3
    sample_q: List[Fraction] = field(default_factory=lambda: [Fraction(2), Fraction(3, 2)])
    output_format: str = "text"
    suites: List[str] = field(default_factory=lambda: list(SUITES))

    def validate(self):
        if self.lmax.twice < 1:
            raise ConfigError("lmax must be at least 1/2")
        if self.degree_cap < 1:
            raise ConfigError("degree cap must be at least 1")
        if any(q <= 0 for q in self.sample_q):
            raise ConfigError("sample q values must be positive")
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown format {self.output_format!r}")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suite(s): {', '.join(unknown)}")
        return self


def degree_caps(n):
    return tuple(sorted({min(2, n), n}))


def run_suite(name, config):
    if name == "constants":
        from .constants import verify_constants

        return verify_constants()
    if name == "irreps":
        from .irreps import verify_irreps

        return verify_irreps(str(config.lmax), tuple(config.sample_q))
    if name == "dirac":
        from .dirac import verify_dirac

        return verify_dirac(str(config.lmax))
    if name == "ncpoly":
        from .presentations import verify_ncpoly

        return verify_ncpoly()
    if name == "regular":
        from .regular import verify_regular

        return verify_regular(degree_caps(config.degree_cap))
    raise ConfigError(f"unknown suite {name!r}")


_TAG = re.compile(r"\[(?:l|N)=([^\],]+)")


def _order_key(report):
    m = _TAG.search(report.check_id)
    tag = Fraction(m.group(1)) if m else Fraction(-1)
    return (tag, report.check_id)


def cmd_verify(config):
    """Reports in suite order, then l (or N) ascending, then check_id."""
    config.validate()
    out = []
    for name in SUITES:
        if name in config.suites:
            out.extend(sorted(run_suite(name, config), key=_order_key))
    return out


def format_reports(reports, fmt):
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(CSV_COLUMNS)
        for r in reports:
            w.writerow([getattr(r, c) for c in CSV_COLUMNS])
        return buf.getvalue()
    lines = []
    for r in reports:
        mark = {"pass": "✓", "fail": "✗"}.get(r.status, "-")
        line = f"{mark} {r.check_id}  [{r.anchor}]  {r.elapsed_ms} ms"
        if r.witness:
            line += f"\n    witness: {r.witness}"
        lines.append(line)
    npass = sum(r.passed for r in reports)
    lines.append(f"{npass}/{len(reports)} checks passed")
    return "\n".join(lines) + "\n"


def parse_reports(text):
    """Inverse of the JSON emitter."""
    return [VerificationReport.from_dict(d) for d in json.loads(text)]


# -- spectrum ---------------------------------------------------------------------------------


def eval_at_q(x, q0):
    """Evaluate a FieldElem at q = q0 exactly; needs only even powers of s unless q0 is a square."""
    x = FieldElem.coerce(x)
    q0 = Fraction(q0)
    if all(c == 0 for c in x.num[1::2]) and all(c == 0 for c in x.den[1::2]):
        num = sum(Fraction(c) * q0**i for i, c in enumerate(x.num[::2]))
        den = sum(Fraction(c) * q0**i for i, c in enumerate(x.den[::2]))
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes at q = {q0}")
        return num / den
    from .dirac import rational_sqrt

    return x.eval(rational_sqrt(q0))


def render_eigenvalue(x):
    """q-notation, with an overall minus sign pulled out of multi-term sums."""
    text = x.to_q_string()
    if text.startswith("-") and (" + " in text or " - " in text):
        return f"-({(-x).to_q_string()})"
    return text


def _fmt_fraction(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_spectrum(l, q0=None, lmax=None):
    """Rows (tower, symbolic eigenvalue, value at q0 or None, multiplicity) from exact kernels."""
    from .dirac import build_total_rep, dirac_direct, spectrum

    l = HalfInt.parse(l)
    if lmax is not None and l.twice > HalfInt.parse(lmax).twice:
        raise ConfigError(f"l = {l} exceeds lmax = {lmax}")
    if q0 is not None and Fraction(q0) <= 0:
        raise ConfigError("q must be positive")
    t = build_total_rep(l)
    table = spectrum(dirac_direct(t), t)
    rows = []
    for e in table.entries:
        value = None if q0 is None else eval_at_q(e.eigenvalue, q0)
        rows.append((e.tower, render_eigenvalue(e.eigenvalue), value, e.multiplicity))
    return rows


def format_spectrum(l, rows, fmt):
    if fmt == "json":
        data = [
            {
                "l": str(l),
                "tower": t,
                "eigenvalue": sym,
                "value": None if v is None else _fmt_fraction(v),
                "multiplicity": m,
            }
            for t, sym, v, m in rows
        ]
        return json.dumps(data, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(("l", "tower", "eigenvalue", "value", "multiplicity"))
        for t, sym, v, m in rows:
            w.writerow((str(l), t, sym, "" if v is None else _fmt_fraction(v), m))
        return buf.getvalue()
    lines = [f"spectrum of D_q on C^2 (x) V_{l}"]
    for t, sym, v, m in rows:
        val = "" if v is None else f" = {_fmt_fraction(v)}"
        lines.append(f"  {t:<5}  {sym}{val}  (multiplicity {m})")
    return "\n".join(lines) + "\n"


# -- argument parsing -------------------------------------------------------------------------


def _halfint(text):
    try:
        h = HalfInt.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a nonnegative half-integer: {text!r}") from exc
    return h


def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser():
    default_fmt = os.environ.get(FORMAT_ENV, "text")
    p = _Parser(prog="qdirac", description="Exact verification of the q-deformed Dirac operator on the quantum sphere.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--lmax", type=_halfint, default=HalfInt(6), help="largest spin (default 3)")
    v.add_argument("--degree", type=int, default=3, help="word-length cap for the regular action (default 3)")
    v.add_argument("--q", action="append", type=_rational, dest="q", help="sample q for numeric checks (repeatable)")
    v.add_argument("--format", default=default_fmt, help="json, csv or text")
    v.add_argument("--suites", default=",".join(SUITES), help="comma-separated subset of " + ",".join(SUITES))
    v.add_argument("--out", help="write output to FILE")

    s = sub.add_parser("spectrum", help="print the spectrum of D_q for one spin")
    s.add_argument("l", type=_halfint, help="spin l")
    s.add_argument("--q", type=_rational, help="also evaluate the eigenvalues at this q")
    s.add_argument("--lmax", type=_halfint, default=HalfInt(20), help="refuse spins above this (default 10)")
    s.add_argument("--format", default=default_fmt, help="json, csv or text")
    s.add_argument("--out", help="write output to FILE")
    return p


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[list] = None):
    try:
        args = build_parser().parse_args(argv)
        if args.format not in FORMATS:
            raise ConfigError(f"unknown format {args.format!r}")
        if args.command == "verify":
            config = RunConfig(
                lmax=args.lmax,
                degree_cap=args.degree,
                sample_q=args.q or [Fraction(2), Fraction(3, 2)],
                output_format=args.format,
                suites=[x.strip() for x in args.suites.split(",") if x.strip()],
            ).validate()
            reports = cmd_verify(config)
            _emit(format_reports(reports, config.output_format), args.out)
            return 0 if all(r.passed for r in reports) else 1
        rows = cmd_spectrum(args.l, args.q, args.lmax)
        _emit(format_spectrum(args.l, rows, args.format), args.out)
        return 0
    except ConfigError as exc:
        print(f"qdirac: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
