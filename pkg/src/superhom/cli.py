"""Command line interface.

Data goes to standard output and diagnostics to standard error.  Exit codes:
0 success or a passing check, 1 a failing check, 2 a usage or parse error.
"""

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .algebra import bracket
from .chains import complex_slice, enumerate_basis
from .homology import betti, boundary
from .notation import ParseError, format_chain, format_element, format_word, parse_chain, parse_element
from . import verify

log = logging.getLogger("superhom")

LEVELS = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}

CLAIMS = ("d2", "acyclic", "prop1", "jacobi", "thm2", "thm5", "lemma-ranks", "oracle")


class UsageError(Exception):
    pass


def parse_range(text):
    """``"a:b"`` (inclusive) or a single integer, as a list."""
    try:
        if ":" in text:
            lo, hi = text.split(":")
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use a or a:b") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def build_parser():
    p = argparse.ArgumentParser(prog="superhom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, w_default=None, h=True):
        sp.add_argument("--n", type=int, default=1, help="ambient dimension")
        sp.add_argument("--w", type=parse_range, default=w_default, help="primary weight, a or a:b")
        if h:
            sp.add_argument("--h", type=parse_range, help="secondary weight, a or a:b")
            sp.add_argument("--diag", action="store_true", help="use h = -w")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true")
        fmt.add_argument("--csv", action="store_true")

    sp = sub.add_parser("basis", help="list the basis words of one chain space")
    common(sp)
    sp.add_argument("--m", type=int, required=True, help="number of wedge factors")

    sp = sub.add_parser("betti", help="dimensions, ranks and Betti numbers of one slice")
    common(sp)

    sp = sub.add_parser("sweep", help="Betti tables over a range of weights")
    common(sp)
    sp.add_argument("--jobs", type=int, default=1)

    for name, helptext in (("bracket", "bracket of two elements"),):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("left")
        sp.add_argument("right")
        sp.add_argument("--n", type=int, default=1)

    sp = sub.add_parser("boundary", help="boundary of a chain")
    sp.add_argument("chain")
    sp.add_argument("--n", type=int, default=1)

    sp = sub.add_parser("verify", help="check one of the structural claims")
    sp.add_argument("claim", choices=CLAIMS)
    common(sp)
    sp.add_argument("--cap", type=int, help="degree cap for generator checks")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--corrected", action="store_true",
                    help="thm5: weight the correction term by w - 2")
    return p


def _weights(args):
    """List of (w, h) cells from --w and either --h or --diag."""
    if args.w is None:
        raise UsageError("--w is required")
    if args.diag and args.h is not None:
        raise UsageError("--diag and --h are mutually exclusive")
    if args.diag:
        return [(w, -w) for w in args.w]
    if args.h is None:
        raise UsageError("give --h or --diag")
    return [(w, h) for w in args.w for h in args.h]


# -- output -----------------------------------------------------------------------

def table(report):
    lines = [f"n={report.n} w={report.w} h={report.h}"]
    lines.append(f"{'m':>4} {'dim':>8} {'rank':>8} {'betti':>6}")
    for r in report.rows:
        lines.append(f"{r.m:>4} {r.dim:>8} {r.rank:>8} {r.betti:>6}")
    if not report.rows:
        lines.append("(empty complex)")
    return "\n".join(lines) + "\n"


def emit_reports(reports, args, out):
    if args.json:
        if len(reports) == 1 and args.command == "betti":
            out.write(reports[0].to_json() + "\n")
        else:
            out.write(json.dumps([r.to_dict() for r in reports]) + "\n")
    elif args.csv:
        out.write("n,w,h,m,dim,rank,betti\n")
        for r in reports:
            out.write(r.to_csv(header=False, prefix=True))
    else:
        out.write("\n".join(table(r) for r in reports))


# -- commands ---------------------------------------------------------------------

def cmd_basis(args, out):
    (w, h), = _cells_single(args)
    basis = enumerate_basis(args.n, w, h, args.m)
    words = [format_word(x) for x in basis.words]
    if args.json:
        out.write(json.dumps({"n": args.n, "w": w, "h": h, "m": args.m, "words": words}) + "\n")
    elif args.csv:
        out.write("index,word\n")
        for i, t in enumerate(words):
            out.write(f"{i},{t}\n")
    else:
        for t in words:
            out.write(t + "\n")
    return 0


def _cells_single(args):
    cells = _weights(args)
    if len(cells) != 1:
        raise UsageError("this command takes a single (w, h)")
    return cells


def _slice_report(cell):
    n, w, h = cell
    log.info("computing n=%d w=%d h=%d", n, w, h)
    return betti(complex_slice(n, w, h))


def cmd_betti(args, out):
    (w, h), = _cells_single(args)
    emit_reports([_slice_report((args.n, w, h))], args, out)
    return 0


def _map(fn, cells, jobs):
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, cells))
    return [fn(c) for c in cells]


def cmd_sweep(args, out):
    cells = [(args.n, w, h) for w, h in _weights(args)]
    reports = _map(_slice_report, cells, args.jobs)
    reports.sort(key=lambda r: (r.w, r.h))
    emit_reports(reports, args, out)
    return 0


def cmd_bracket(args, out):
    left = parse_element(args.left, args.n)
    right = parse_element(args.right, args.n)
    out.write(format_element(bracket(left, right)) + "\n")
    return 0


def cmd_boundary(args, out):
    out.write(format_chain(boundary(parse_chain(args.chain, args.n))) + "\n")
    return 0


def _d2_cell(cell):
    n, w, h = cell
    log.info("d2 on n=%d w=%d h=%d", n, w, h)
    return verify.verify_d_squared(complex_slice(n, w, h))


def _acyclic_cell(cell):
    n, w, h, diag = cell
    return verify.verify_acyclicity(n, w, h, allow_diagonal=diag)


def run_claim(args):
    claim = args.claim
    if claim == "d2":
        if args.w is None:
            args.w = list(range(0, 11))
            if args.h is None:
                args.diag = True
        cells = [(args.n, w, h) for w, h in _weights(args)]
        grid = {"n": args.n, "cells": [[w, h] for _, w, h in cells]}
        return verify.combine("d2", grid, _map(_d2_cell, cells, args.jobs))
    if claim == "acyclic":
        cells = _weights(args)
        if not args.diag:
            skipped = [c for c in cells if c[1] == -c[0]]
            if skipped:
                log.info("skipping %d diagonal cells", len(skipped))
            cells = [c for c in cells if c[1] != -c[0]]
        if not cells:
            raise UsageError("no off-diagonal cells to check")
        grid = {"n": args.n, "cells": [list(c) for c in cells], "diag": args.diag}
        return verify.combine("acyclic", grid,
                              _map(_acyclic_cell, [(args.n, w, h, args.diag) for w, h in cells],
                                   args.jobs))
    if claim == "prop1":
        return verify.verify_prop1(args.n, 4 if args.cap is None else args.cap)
    if claim == "jacobi":
        return verify.verify_jacobi(args.n, 3 if args.cap is None else args.cap)
    if claim == "thm2":
        return verify.verify_theorem2(args.w or range(3, 11))
    if claim == "thm5":
        return verify.verify_theorem5(args.w or range(3, 9), corrected=args.corrected)
    if claim == "lemma-ranks":
        return verify.verify_lemma_ranks(args.w or range(3, 11))
    if claim == "oracle":
        ws = args.w or list(range(0, 9))
        hs = args.h or list(range(-8, 5))
        return verify.verify_oracle(args.n, ws, hs)
    raise UsageError(f"unknown claim {claim}")


def cmd_verify(args, out):
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    report = run_claim(args)
    if args.json:
        out.write(report.to_json() + "\n")
    else:
        status = "PASS" if report.passed else "FAIL"
        out.write(f"{status} {report.claim} {json.dumps(report.grid)}\n")
        if report.details:
            out.write(f"details {json.dumps(report.details)}\n")
        if not report.passed:
            out.write(json.dumps(report.counterexample) + "\n")
    return 0 if report.passed else 1


COMMANDS = {
    "basis": cmd_basis, "betti": cmd_betti, "sweep": cmd_sweep,
    "bracket": cmd_bracket, "boundary": cmd_boundary, "verify": cmd_verify,
}


def _join_values(argv):
    """Turn ``--h -3:3`` into ``--h=-3:3`` so negative ranges are not read as flags."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--w", "--h", "--m", "--n") and i + 1 < len(argv) and argv[i + 1][:1] == "-" \
                and argv[i + 1][1:2].isdigit():
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None, out=None):
    out = out or sys.stdout
    argv = _join_values(sys.argv[1:] if argv is None else list(argv))
    level = os.environ.get("LOGLEVEL", "quiet").lower()
    logging.basicConfig(level=LEVELS.get(level, logging.ERROR), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"superhom {args.command}: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
