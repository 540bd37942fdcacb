"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
errors, 3 for internal errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import classify as cl
from . import coxring as cx
from . import varieties as va
from . import verify as vf
from .report import CheckRecord, Report, Status

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _vtype(text: str) -> va.VarietyType:
    try:
        return va.VarietyType.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _n(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 3:
        raise argparse.ArgumentTypeError("n must be at least 3")
    return n


def _seed(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return s


def _degree(text: str) -> tuple[int, ...]:
    try:
        d = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"degree must be four comma-separated integers, got {text!r}")
    if len(d) != 4:
        raise argparse.ArgumentTypeError(f"degree must have four entries, got {len(d)}")
    return d


def cmd_catalog(args) -> Report:
    rep = Report("catalog")
    for t in va.VarietyType:
        rep.add(CheckRecord.compare(
            f"{t.symbol} Mordell-Weil group", str(va.printed_mordell_weil(t)), str(va.mordell_weil(t)),
            vf.anchor("Mordell-Weil group table", t),
        ))
    return rep


def cmd_mw(args) -> Report:
    return vf.check_mordell_weil(args.type)


def cmd_cones(args) -> Report:
    rep = vf.check_cones(args.type)
    if args.type.is_extremal:
        rep.data["moving_cone_chambers"] = [c.rays for c in va.moving_cone(args.type)]
    return rep


def cmd_coxring(args) -> Report:
    if not args.type.is_extremal:
        raise UsageError(f"{args.type.symbol} is not extremal; only X3, XS, XS2 and XSSS have a presentation")
    rep, p = vf.check_coxring(args.type, args.n, args.seed)
    rep.data["generator_degrees"] = p.generator_degrees
    return rep


def cmd_hilbert(args) -> Report:
    if not args.type.is_extremal:
        raise UsageError(f"{args.type.symbol} has no grading matrix")
    p = cx.build_presentation(args.type, args.n, args.seed)
    rep = Report("hilbert", {"type": args.type.value, "n": args.n, "seed": args.seed, "degree": list(args.degree)})
    rep.data["ambient_count"] = cx.hilbert_dim(p.Q, args.degree)
    rep.data["quotient_dim"] = cx.koszul_quotient_dim(p, args.degree)
    return rep


def cmd_classify(args) -> Report:
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    try:
        Y, L = cl.parse_classifier_input(text)
    except cl.ClassifierInputError as exc:
        raise UsageError(f"{path}: {exc}")
    rep = Report("classify", {"input": path.name, "n": Y.n})
    try:
        res = cl.analyze(Y, L)
    except (cl.LineContainedInY, cl.IrrationalIntersection, cl.SingularPoint, cl.InconsistentStarPattern) as exc:
        rep.add(CheckRecord(type(exc).__name__, Status.FAIL, None, str(exc)))
        return rep
    rep.data["type"] = res.type.value
    rep.data["intersection"] = [
        {"point": list(r.point), "multiplicity": r.multiplicity, "star": r.is_star, "smooth": r.smooth}
        for r in res.records
    ]
    rep.repair_notes.extend(res.notes)
    return rep


def cmd_verify(args) -> Report:
    if args.target == "all":
        return vf.verify_all(args.n, args.seed)
    return vf.verify(_vtype(args.target), args.n, args.seed)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    sized = argparse.ArgumentParser(add_help=False)
    sized.add_argument("--n", type=_n, default=3)
    sized.add_argument("--seed", type=_seed, default=0)

    ap = argparse.ArgumentParser(prog="cubic-elliptic", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("catalog", parents=[common], help="the seven types and their Mordell-Weil groups")
    p.set_defaults(func=cmd_catalog)
    p = sub.add_parser("mw", parents=[common], help="Mordell-Weil group of one type")
    p.add_argument("type", type=_vtype)
    p.set_defaults(func=cmd_mw)
    p = sub.add_parser("cones", parents=[common], help="Mori, nef and moving cones")
    p.add_argument("type", type=_vtype)
    p.set_defaults(func=cmd_cones)
    p = sub.add_parser("coxring", parents=[common, sized], help="Cox ring presentation")
    p.add_argument("type", type=_vtype)
    p.set_defaults(func=cmd_coxring)
    p = sub.add_parser("hilbert", parents=[common, sized], help="dimension of one graded piece")
    p.add_argument("type", type=_vtype)
    p.add_argument("--degree", type=_degree, required=True)
    p.set_defaults(func=cmd_hilbert)
    p = sub.add_parser("classify", parents=[common], help="classify a cubic and a line from a file")
    p.add_argument("input")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("verify", parents=[common, sized], help="run every check for a type or for all")
    p.add_argument("target", help="a type name or 'all'")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "verify" and args.target != "all":
            try:
                va.VarietyType.parse(args.target)
            except ValueError as exc:
                raise UsageError(str(exc))
        rep = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # anything else is a bug
        logging.getLogger(__name__).exception("internal error")
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    out = rep.to_json() if args.format == "json" else rep.to_text()
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_FAIL if rep.status is Status.FAIL else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
