"""Command line interface.

Exit codes: 0 success, 1 internal failure, 2 invalid input, 3 the sequence
died, 4 a verification or case-pattern mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .construct import build, construction_from_json
from .formats import FORMATS, format_sequence, meta_from_json, read_sequence
from .linrec import LinearRecurrence
from .metafib import SequenceDied, eval_prefix, extract_subsequence
from .verify import check_theorem, trace_case

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_DEATH = 3
EXIT_MISMATCH = 4


class UsageError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_construct(args) -> int:
    if args.input is not None:
        if args.coeffs is not None or args.initial is not None:
            raise UsageError("give either an input file or --coeffs/--initial, not both")
        rec = LinearRecurrence.from_json(_read_json(args.input))
    else:
        if args.coeffs is None or args.initial is None:
            raise UsageError("--coeffs and --initial are required without an input file")
        k = args.k if args.k is not None else len(args.coeffs)
        rec = LinearRecurrence(k, tuple(args.coeffs), tuple(args.initial))
    c = build(rec, args.h)
    _write(json.dumps(c.to_json()) + "\n", args.output)
    if args.terms is not None:
        if args.terms < 0:
            raise UsageError("--terms must be >= 0")
        _write(format_sequence(c.q_prefix(args.terms), 0, args.format), args.terms_output)
    return EXIT_OK


def cmd_eval(args) -> int:
    rec, init = meta_from_json(_read_json(args.input))
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    try:
        values = eval_prefix(rec, init, args.n)
    except SequenceDied as exc:
        print(json.dumps({"death": exc.death.to_json()}), file=sys.stderr)
        return EXIT_DEATH
    _write(format_sequence(values, rec.n0, args.format), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    c = construction_from_json(_read_json(args.bundle))
    if args.n <= c.h:
        raise UsageError(f"--n must exceed h={c.h}")
    report = check_theorem(c, args.n)
    print(json.dumps(report.to_json()))
    if report.death is not None:
        return EXIT_DEATH
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_trace(args) -> int:
    c = construction_from_json(_read_json(args.bundle))
    if args.at <= c.h:
        raise UsageError(f"--at must exceed h={c.h}")
    try:
        trace = trace_case(c, args.at, strict=False)
    except SequenceDied as exc:
        print(json.dumps({"death": exc.death.to_json()}), file=sys.stderr)
        return EXIT_DEATH
    if args.json:
        print(json.dumps(trace.to_json()))
    else:
        print(trace.format())
    return EXIT_MISMATCH if trace.violations else EXIT_OK


def cmd_extract(args) -> int:
    try:
        _, values = read_sequence(_read_text(args.sequence))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.sequence}: invalid JSON: {exc}") from None
    sub = extract_subsequence(values, args.stride, args.offset)
    _write(format_sequence(sub, 0, args.format), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metafib-embed",
        description="Embed linear recurrent sequences in meta-Fibonacci sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build the meta-Fibonacci construction")
    p.add_argument("input", nargs="?", help="LinearRecurrence JSON file ('-' for stdin)")
    p.add_argument("--k", type=int)
    p.add_argument("--coeffs", type=_int_list, help="b1,...,bk")
    p.add_argument("--initial", type=_int_list, help="a0,...,a(k-1)")
    p.add_argument("--h", type=int, help="explicit seed bound instead of the minimal one")
    p.add_argument("-o", "--output", help="bundle destination (default stdout)")
    p.add_argument("--terms", type=int, help="also write the first N terms of q")
    p.add_argument("--terms-output", help="terms destination (default stdout)")
    p.add_argument("--format", choices=FORMATS, default="bfile")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("eval", help="evaluate a nested recurrence")
    p.add_argument("input", help="recurrence JSON {n0, coeffs, initial} or a bundle")
    p.add_argument("--n", type=int, required=True, help="number of terms")
    p.add_argument("--format", choices=FORMATS, default="bfile")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="check a construction bundle numerically")
    p.add_argument("bundle")
    p.add_argument("--n", type=int, default=2000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trace", help="break one term into its recurrence terms")
    p.add_argument("bundle")
    p.add_argument("--at", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("extract", help="take an equally spaced subsequence")
    p.add_argument("sequence", help="b-file, CSV or JSON sequence")
    p.add_argument("--stride", type=int, required=True)
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--format", choices=FORMATS, default="bfile")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
