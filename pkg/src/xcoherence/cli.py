"""Command line front end: ``xcoherence {sample,family,verify,plot,figures}``.

Exit status is 0 on success, 1 when ``verify`` finds a failing claim and 2
on usage, input or I/O errors.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import ensemble, svg
from .verify import CLAIMS, verify
from .xstates import FamilyKind

log = logging.getLogger("xcoherence")

EXIT_OK, EXIT_CLAIM_FAILED, EXIT_USAGE = 0, 1, 2


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits: {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _families(text: str) -> list[FamilyKind]:
    try:
        return [FamilyKind(t.strip().lower()) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _claims(text: str) -> list[str]:
    ids = [t.strip().upper() for t in text.split(",") if t.strip()]
    unknown = [c for c in ids if c not in CLAIMS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown claims: {', '.join(unknown)}")
    return ids


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="xcoherence", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", help="sample and measure random X states")
    s.add_argument("--n", type=_positive, default=ensemble.DESK_SCALE_N)
    s.add_argument("--full-scale", action="store_true",
                   help=f"sample {ensemble.FULL_SCALE_N} states (overrides --n)")
    s.add_argument("--seed", type=_u64, required=True)
    s.add_argument("--phases", action="store_true", help="draw random coherence phases")
    s.add_argument("--workers", type=_positive, default=1)
    s.add_argument("--out", required=True)

    f = sub.add_parser("family", help="tabulate a named family on an epsilon grid")
    f.add_argument("--name", type=FamilyKind, choices=list(FamilyKind),
                   metavar="{" + ",".join(k.value for k in FamilyKind) + "}", required=True)
    f.add_argument("--steps", type=int, default=101)
    f.add_argument("--out", required=True)

    v = sub.add_parser("verify", help="check every claim against an ensemble CSV")
    v.add_argument("--in", dest="inp", required=True)
    v.add_argument("--report", required=True, help="claim table (CSV)")
    v.add_argument("--claims", type=_claims, default=None, help="comma separated claim ids")
    v.add_argument("--figures", default=None, metavar="DIR",
                   help="also render the seven scatter figures into DIR")
    v.add_argument("--figure-format", default="png")

    pl = sub.add_parser("plot", help="standalone SVG scatter of two columns")
    pl.add_argument("--x", required=True, choices=ensemble.HEADER, metavar="COL")
    pl.add_argument("--y", required=True, choices=ensemble.HEADER, metavar="COL")
    pl.add_argument("--in", dest="inp", required=True)
    pl.add_argument("--families", type=_families, default=[])
    pl.add_argument("--out", required=True)

    fg = sub.add_parser("figures", help="render the seven scatter figures with matplotlib")
    fg.add_argument("--in", dest="inp", required=True)
    fg.add_argument("--out-dir", required=True)
    fg.add_argument("--format", default="png")
    return p


def _run(args) -> int:
    if args.command == "sample":
        n = ensemble.FULL_SCALE_N if args.full_scale else args.n
        records = ensemble.run_ensemble(args.seed, n, phases=args.phases, workers=args.workers)
        ensemble.write_csv(records, args.out)
        log.info("wrote %d records to %s", n, args.out)
        return EXIT_OK
    if args.command == "family":
        ensemble.write_csv(ensemble.family_records(args.name, args.steps), args.out)
        return EXIT_OK
    if args.command == "plot":
        records = ensemble.read_csv(args.inp)
        spec = svg.FigureSpec(args.x, args.y, tuple(args.families), args.out)
        svg.emit_svg_scatter(spec, records)
        return EXIT_OK
    if args.command == "figures":
        from .figures import render_figures

        render_figures(ensemble.read_csv(args.inp), args.out_dir, args.format)
        return EXIT_OK
    if args.command == "verify":
        records = ensemble.read_csv(args.inp)
        report = verify(records, args.claims)
        report.write_csv(args.report)
        for line in report.lines():
            print(line)
        if args.figures:
            from .figures import render_figures

            render_figures(records, args.figures, args.figure_format)
        return EXIT_OK if report.passed else EXIT_CLAIM_FAILED
    raise AssertionError(args.command)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return _run(args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"xcoherence {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
