"""Command line front end.

    podles verify {algebra,symmetries,calculus,spectral,all} [options]
    podles spectrum --q 0.5 --jmax 10.5
    podles decay --op commutant --i 0 --k 0
    podles eval "a*c - q*c*a"

`verify` exits 0 iff no check failed; configuration errors exit 2.
"""

import argparse
import csv
import io
import sys
from fractions import Fraction

from .report import Report
from .parser import parse, render, ParseError

DEFAULT_QS = (0.3, 0.5, 0.8)
DEFAULT_JMAX = "20.5"


class ConfigError(ValueError):
    pass


def _parse_q(text):
    try:
        q = float(text)
    except ValueError:
        raise ConfigError(f"--q expects a number, got {text!r}")
    if not 0.0 < q < 1.0:
        raise ConfigError(f"--q must lie in (0, 1), got {text}")
    return q


def _parse_jmax(text):
    try:
        two = Fraction(text) * 2
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"--jmax expects a decimal such as 20.5, got "
                          f"{text!r}")
    if two.denominator != 1 or two.numerator % 2 != 1 or two <= 0:
        raise ConfigError(f"--jmax must be a positive half-odd integer, got "
                          f"{text}")
    return int(two)


def _configs(args):
    from .spectral import SpectralConfig
    qs = [_parse_q(x) for x in (args.q or DEFAULT_QS)]
    twoJ = _parse_jmax(args.jmax or DEFAULT_JMAX)
    return [SpectralConfig(q, twoJ, tol=args.tol) for q in qs]


def _prefixed(rep, prefix):
    for c in rep.checks:
        c.id = f"{prefix}.{c.id}"
    return rep


def run_suite(target, args):
    rep = Report(target, {})
    deg = args.deg
    if target in ("algebra", "all"):
        from .qalgebra import verify_algebra
        rep.merge(verify_algebra(max_total=deg or 4, seed=args.seed))
    if target in ("symmetries", "all"):
        from .symmetries import verify_symmetries
        rep.merge(verify_symmetries(max_deg=deg or 4, seed=args.seed))
    if target in ("calculus", "all"):
        from .calculus import verify_calculus
        rep.merge(verify_calculus(deg_bound=deg or 6, seed=args.seed))
    if target in ("spectral", "all"):
        from .spectral import verify_spectral
        configs = _configs(args)
        for cfg in configs:
            sub = verify_spectral(cfg)
            if len(configs) > 1:
                _prefixed(sub, f"q{cfg.q}")
                sub.extras = {f"q{cfg.q}": sub.extras}
            rep.merge(sub)
        rep.config["spectral"] = [c.to_dict() for c in configs]
    rep.config.update({"target": target, "deg": deg, "seed": args.seed})
    return rep.finish()


def report_csv(rep):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("id", "status", "residual", "exact_zero", "witness",
                "erratum"))
    for c in rep.checks:
        w.writerow((c.id, c.status,
                    "" if c.residual is None else repr(float(c.residual)),
                    "" if c.exact_zero is None else str(c.exact_zero).lower(),
                    c.witness or "", c.erratum or ""))
    return buf.getvalue()


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_verify(args):
    rep = run_suite(args.target, args)
    if args.format == "json":
        text = rep.to_json(with_timing=not args.no_timing)
    elif args.format == "csv":
        text = report_csv(rep)
    else:
        text = rep.to_text()
    _emit(text, args.out)
    return rep.exit_code()


def cmd_spectrum(args):
    from .spectral import SPECTRUM_COLUMNS, spectrum_rows, to_csv
    rows = []
    configs = _configs(args)
    for cfg in configs:
        rows.extend(spectrum_rows(cfg))
        if len(configs) > 1:
            raise ConfigError("spectrum takes a single --q")
    _emit(to_csv(SPECTRUM_COLUMNS, rows), args.out)
    return 0


def cmd_decay(args):
    from .spectral import DECAY_COLUMNS, decay_rows, to_csv
    configs = _configs(args)
    if len(configs) > 1:
        raise ConfigError("decay takes a single --q")
    rows = decay_rows(configs[0], args.op, args.i, args.k)
    _emit(to_csv(DECAY_COLUMNS, rows), args.out)
    return 0


def cmd_eval(args):
    from . import qalgebra as qa
    value = parse(args.expr)
    lines = [render(value)]
    if args.star:
        lines.append("star: " + render(qa.star(value)))
    if args.coproduct:
        lines.append("coproduct: " + qa.render_tensor(qa.coproduct(value)))
    if args.degree:
        lines.append("degrees: " + str(sorted(value.degrees())))
    _emit("\n".join(lines), None)
    return 0


def build_parser():
    from .spectral import DECAY_OPS
    p = argparse.ArgumentParser(prog="podles", description=(
        "Exact and numeric verification of the quantum sphere calculus "
        "and spectral triple."))
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spectral=True):
        if spectral:
            sp.add_argument("--q", action="append", help=(
                "deformation parameter in (0, 1); repeatable "
                "(default 0.3, 0.5, 0.8)"))
            sp.add_argument("--jmax", help="truncation, a half-odd integer "
                            "such as 20.5")
            sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--out", help="write output to this file")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("target", choices=("algebra", "symmetries", "calculus",
                                      "spectral", "all"))
    common(v)
    v.add_argument("--deg", type=int, help="degree bound for the exact "
                   "suites")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=("json", "csv", "text"),
                   default="text")
    v.add_argument("--no-timing", action="store_true",
                   help="omit timings from JSON output")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("spectrum", help="CSV table of Dirac eigenvalues")
    common(s)
    s.set_defaults(func=cmd_spectrum)

    d = sub.add_parser("decay", help="CSV table of per-j block norms")
    common(d)
    d.add_argument("--op", choices=DECAY_OPS, default="commutant")
    d.add_argument("--i", type=int, choices=(-1, 0, 1), default=0)
    d.add_argument("--k", type=int, choices=(-1, 0, 1), default=0)
    d.set_defaults(func=cmd_decay)

    e = sub.add_parser("eval", help="normal form of an expression")
    e.add_argument("expr")
    e.add_argument("--star", action="store_true")
    e.add_argument("--coproduct", action="store_true")
    e.add_argument("--degree", action="store_true")
    e.set_defaults(func=cmd_eval)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "q", None) is None and args.command in ("spectrum",
                                                              "decay"):
        args.q = ["0.5"]
    try:
        return args.func(args)
    except (ConfigError, ParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
