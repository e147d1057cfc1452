"""``itknot`` command line: analyze, tori, slice, cablings, verify."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__, oracle
from .errors import ItkError, ParseError
from .knots import Frame, IteratedTorusKnot, parse_knot, to_frame
from .legendrian import (
    enumerate_nonsimple_cablings,
    mountain_range_slice,
    points_to_tsv,
    stabilization_chains,
)
from .report import (
    _cabling_to_dict,
    _point_to_dict,
    analyze,
    cablings_text,
    cap_digits,
    default_cabling_kmax,
    points_text,
    report_text,
    report_to_json,
    tori_text,
)
from .solid_tori import catalog, row_fields, rows_to_tsv


class _Parser(argparse.ArgumentParser):
    # Usage errors go through main like every other error instead of sys.exit.
    def error(self, message):
        raise ParseError(message)


def _frame(text: str) -> Frame:
    try:
        return Frame.parse(text)
    except ItkError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="itknot", description="Exact invariants of iterated torus knots.")
    ap.add_argument("--version", action="version", version=f"itknot {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def knot_cmd(name, help, formats, default_format):
        p = sub.add_parser(name, help=help)
        p.add_argument("knot", help='e.g. "C:(2,3),(7,2)" or "C\':(2,3),(-5,2)"')
        p.add_argument("--frame", type=_frame, default=Frame.C, help="display frame: C or Cprime")
        p.add_argument("--format", choices=formats, default=default_format)
        return p

    p = knot_cmd("analyze", "full report", ["json", "text"], "text")
    p.add_argument("--kmax", type=_nonneg, default=None)

    p = knot_cmd("tori", "solid torus catalog N_i^k, k = 0..kmax", ["json", "text", "tsv"], "text")
    p.add_argument("--kmax", type=_nonneg, default=10)
    p.add_argument("--prefix", type=int, default=None, help="cabling index i (default r)")

    p = knot_cmd("slice", "known mountain range points", ["json", "text", "tsv"], "tsv")
    p.add_argument("--chain", action="store_true", help="include stabilization chains")

    p = knot_cmd("cablings", "certified non-simple cables", ["json", "text", "tsv"], "text")
    p.add_argument("--kmax", type=_nonneg, default=None)

    p = sub.add_parser("verify", help="run the brute-force oracle suite")
    p.add_argument("--ranges", default=None, help="e.g. r<=5,q<=4,p<=9,k<=100,samples=300,seed=0")
    p.add_argument("--format", choices=["json", "text"], default="text")
    return ap


def _emit(text: str, out) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _knot(args) -> IteratedTorusKnot:
    return to_frame(parse_knot(args.knot), Frame.C)


def cmd_analyze(args, out) -> int:
    k = _knot(args)
    rep = analyze(k, kmax=args.kmax, frame=args.frame)
    _emit(report_to_json(rep) if args.format == "json" else report_text(rep), out)
    return 0


def cmd_tori(args, out) -> int:
    k = _knot(args)
    i = k.r if args.prefix is None else args.prefix
    rows = catalog(k, i, args.kmax)
    if args.format == "json":
        _emit(json.dumps([row_fields(t) for t in rows], indent=2), out)
    elif args.format == "tsv":
        _emit(cap_digits(rows_to_tsv(rows)), out)
    else:
        _emit(cap_digits(tori_text(rows)), out)
    return 0


def cmd_slice(args, out) -> int:
    k = _knot(args)
    pts = mountain_range_slice(k)
    if args.chain:
        pts = sorted(pts + stabilization_chains(k), key=lambda L: (-L.tb, L.rot))
    if args.format == "json":
        _emit(json.dumps([_point_to_dict(L) for L in pts], indent=2), out)
    elif args.format == "tsv":
        _emit(cap_digits(points_to_tsv(pts)), out)
    else:
        _emit(cap_digits(points_text(pts)), out)
    return 0


def cmd_cablings(args, out) -> int:
    k = _knot(args)
    if not k.all_positive:
        # Raise the same unsupported-regime error the enumerator would.
        enumerate_nonsimple_cablings(k, 1)
    kmax = args.kmax if args.kmax is not None else default_cabling_kmax(k)
    cabs = enumerate_nonsimple_cablings(k, max(kmax, 1))
    if args.format == "json":
        _emit(json.dumps([_cabling_to_dict(c) for c in cabs], indent=2), out)
    elif args.format == "tsv":
        lines = ["k\tcable_first\tcable_q\ttbbar\trot\tslbar\tchi"]
        for c in cabs:
            pair = c.cable_c if args.frame is Frame.C else c.cable_cprime
            lines.append(
                "\t".join(map(str, (c.k, pair.first, pair.q, c.tbbar, c.rot, c.slbar, c.chi_cable)))
            )
        _emit(cap_digits("\n".join(lines)), out)
    else:
        _emit(cap_digits(cablings_text(cabs, args.frame)) if cabs else "(none in range)", out)
    return 0


def cmd_verify(args, out, err) -> int:
    rg = oracle.parse_ranges(args.ranges)
    res = oracle.run_verify(rg)
    summary = res.summary()
    if args.format == "json":
        doc = {
            "ok": res.ok,
            "metadata": {
                "tool": "itknot",
                "version": __version__,
                "ranges": {k: str(v) for k, v in rg.as_dict().items()},
            },
            "checks": {name: {s: str(n) for s, n in c.items()} for name, c in summary.items()},
            "failures": [r.to_dict() for r in res.failures()],
        }
        _emit(json.dumps(doc, indent=2), out)
    else:
        lines = ["ranges  " + ",".join(f"{k}={v}" for k, v in rg.as_dict().items())]
        for name, c in summary.items():
            tag = "PASS" if not c["fail"] else "FAIL"
            lines.append(f"{tag}  {name}  pass={c['pass']} fail={c['fail']}")
        for r in res.failures()[:20]:
            d = r.to_dict()
            lines.append(f"  failing {d['check']} {d['inputs']}: expected {d['expected']} got {d['actual']}")
        _emit("\n".join(lines), out)
    if not res.ok:
        failed = sorted({r.check for r in res.failures()})
        err.write(f"itknot: verify failed: {', '.join(failed)}\n")
        return 3
    return 0


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.verb == "verify":
            return cmd_verify(args, out, err)
        return {
            "analyze": cmd_analyze,
            "tori": cmd_tori,
            "slice": cmd_slice,
            "cablings": cmd_cablings,
        }[args.verb](args, out)
    except ItkError as e:
        err.write(f"itknot: {e}\n")
        return e.exit_code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
