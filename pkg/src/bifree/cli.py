"""Command-line interface: ``python -m bifree <subcommand> ...``.

Output is JSON (one object per line for enumerations) with rationals as
strings.  Exit status: 0 on success, 1 when a verification fails, 2 on
bad usage, malformed input or a size limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import bnc, cumulants as cm, fock, incidence as ia, partitions as pt, polynomials as poly, verify
from .errors import BifreeError, SizeLimitError


class UsageError(Exception):
    pass


def _emit(out: TextIO, obj) -> None:
    out.write(json.dumps(obj, sort_keys=False) + "\n")


def _need(args, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.command} needs --{name.replace('_', '-')}")


def _load(path: str, kind):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return kind.from_json(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _word(text: str) -> cm.Word:
    word = cm.parse_word(text)
    if not word:
        raise UsageError("--word must name at least one index")
    return word


# ---------------------------------------------------------------------------
# subcommands


def cmd_enum(args, out: TextIO) -> int:
    kind = args.kind or "bnc"
    if kind == "nc":
        if args.degree is None and args.chi is None:
            raise UsageError("enum --kind nc needs --degree or --chi")
        n = args.degree if args.degree is not None else len(args.chi)
        for p in pt.enumerate_nc(n):
            _emit(out, {"n": n, "partition": str(p)})
        return 0
    _need(args, "chi")
    if kind == "bnc":
        for p in bnc.enumerate_bnc(args.chi):
            _emit(out, p.to_json())
        return 0
    if kind == "shaded":
        _need(args, "shading")
        for p in bnc.shaded_bnc(args.chi, args.shading):
            _emit(out, {**p.to_json(), "shading": args.shading})
        return 0
    raise UsageError(f"enum supports --kind nc, bnc or shaded, not {kind!r}")


def cmd_mobius(args, out: TextIO) -> int:
    _need(args, "chi", "pi", "sigma")
    p = bnc.BncPartition.parse(args.chi, args.pi)
    q = bnc.BncPartition.parse(args.chi, args.sigma)
    _emit(out, ia.format_rational(ia.mobius_bnc(p, q)))
    return 0


def cmd_kreweras(args, out: TextIO) -> int:
    _need(args, "chi", "pi")
    _emit(out, bnc.kreweras_bnc(bnc.BncPartition.parse(args.chi, args.pi)).to_json())
    return 0


def cmd_lr(args, out: TextIO) -> int:
    _need(args, "chi", "shading")
    diagrams = bnc.enumerate_lr(args.chi, args.shading)
    if args.format == "text":
        for d in diagrams:
            out.write(d.dump() + "\n\n")
        return 0
    by_open: dict[str, int] = {}
    for d in diagrams:
        by_open[str(d.open_chords)] = by_open.get(str(d.open_chords), 0) + 1
    _emit(
        out,
        {
            "chi": args.chi,
            "shading": args.shading,
            "total": len(diagrams),
            "by_open_chords": dict(sorted(by_open.items(), key=lambda kv: int(kv[0]))),
            "lr0": [str(p) for p in bnc.shaded_bnc(args.chi, args.shading)],
        },
    )
    return 0


def cmd_m2c(args, out: TextIO) -> int:
    _need(args, "dist")
    _emit(out, cm.moments_to_cumulants(_load(args.dist, cm.Distribution)).to_json())
    return 0


def cmd_c2m(args, out: TextIO) -> int:
    _need(args, "dist")
    _emit(out, cm.cumulants_to_moments(_load(args.dist, cm.CumulantTable)).to_json())
    return 0


def cmd_join(args, out: TextIO) -> int:
    _need(args, "left", "right")
    d1, d2 = _load(args.left, cm.Distribution), _load(args.right, cm.Distribution)
    _emit(out, cm.bifree_join(d1, d2).to_json())
    return 0


def cmd_mixed_moment(args, out: TextIO) -> int:
    _need(args, "left", "right", "word", "shading")
    d1, d2 = _load(args.left, cm.Distribution), _load(args.right, cm.Distribution)
    word = _word(args.word)
    if len(args.shading) != len(word):
        raise UsageError("--shading must have one letter per index of --word")
    lat = cm.mixed_moment_lat(d1, d2, word, args.shading, verify=True)
    direct = cm.joint_moment(d1, d2, word, args.shading)
    _emit(
        out,
        {
            "word": cm.format_word(word),
            "shading": args.shading,
            "lateral": ia.format_rational(lat),
            "join": ia.format_rational(direct),
            "equal": lat == direct,
        },
    )
    return 0 if lat == direct else 1


def cmd_multconv(args, out: TextIO) -> int:
    _need(args, "left", "right")
    d1, d2 = _load(args.left, cm.Distribution), _load(args.right, cm.Distribution)
    degree = args.degree if args.degree is not None else min(d1.degree, d2.degree, cm.MAX_MULTCONV)
    _emit(out, cm.multconv_cumulants(d1, d2, degree).to_json())
    return 0


def cmd_poly(args, out: TextIO) -> int:
    _need(args, "kind", "chi")
    if args.kind not in ("P", "Q", "R"):
        raise UsageError("poly needs --kind P, Q or R")
    u = poly.universal_poly(args.kind, args.chi, args.shading)
    if args.format == "latex":
        out.write(u.to_latex() + "\n")
    else:
        _emit(out, u.to_json())
    return 0


def cmd_fock(args, out: TextIO) -> int:
    _need(args, "dist", "word")
    d = _load(args.dist, cm.Distribution)
    word = _word(args.word)
    value = fock.fock_moment(d, word)
    target = d[word]
    _emit(
        out,
        {
            "word": cm.format_word(word),
            "fock": ia.format_rational(value),
            "moment": ia.format_rational(target),
            "equal": value == target,
        },
    )
    return 0 if value == target else 1


def cmd_verify(args, out: TextIO) -> int:
    suite = args.suite or "all"
    max_n = args.max_n if args.max_n is not None else 4
    try:
        results = verify.run_suite(suite, max_n)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    status = 0
    for name, failure in results:
        _emit(out, {"suite": name, "max_n": max_n, "ok": failure is None, "counterexample": failure})
        if failure is not None:
            status = 1
    return status


COMMANDS = {
    "enum": cmd_enum,
    "mobius": cmd_mobius,
    "kreweras": cmd_kreweras,
    "lr": cmd_lr,
    "m2c": cmd_m2c,
    "c2m": cmd_c2m,
    "join": cmd_join,
    "mixed-moment": cmd_mixed_moment,
    "multconv": cmd_multconv,
    "poly": cmd_poly,
    "fock": cmd_fock,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bifree", description="Exact bi-free combinatorics.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--chi", help="side pattern over L and R")
    parser.add_argument("--shading", help="shading over A and B")
    parser.add_argument("--pi", help='partition such as "1,3|2"')
    parser.add_argument("--sigma", help="second partition")
    parser.add_argument("--dist", help="distribution or cumulant table (JSON file)")
    parser.add_argument("--left", help="first family (JSON file)")
    parser.add_argument("--right", help="second family (JSON file)")
    parser.add_argument("--word", help='space separated index names, e.g. "a x a"')
    parser.add_argument("--degree", type=int)
    parser.add_argument("--kind", help="nc, bnc or shaded for enum; P, Q or R for poly")
    parser.add_argument("--max-n", type=int, dest="max_n")
    parser.add_argument("--suite", help="suite name for verify, or all")
    parser.add_argument("--format", choices=["json", "latex", "text"], default="json")
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, SizeLimitError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (BifreeError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        err.write(f"error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
