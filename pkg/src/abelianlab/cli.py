"""Command-line front end: ``abelianlab {word,complexity,guess,verify,conjecture}``."""
from __future__ import annotations

import argparse
import json
import sys

from . import theorems
from .catalog import WORD_IDS, get_word
from .complexity import KINDS, StatisticKind, series
from .errors import AbelianLabError, NotClosed, NotStabilized, VerificationFailed
from .kernel import guess_relations, to_linear_representation
from .sequences import named_sequence
from .words import Morphism, format_word, iterate_fixed_point, literal, parse_word

EXIT_OK, EXIT_USAGE, EXIT_NOT_CLOSED, EXIT_FAILED, EXIT_NOT_STABILIZED = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _letters(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.replace(" ", "").split(",") if p != "")
    except ValueError:
        raise argparse.ArgumentTypeError("letters are comma-separated integers") from None


def _add_word_args(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--id", choices=WORD_IDS, help="catalog word")
    g.add_argument("--morphism", help='letter images separated by slashes, e.g. "01/10"')
    g.add_argument("--literal", help="finite word, digits or comma-separated letters")
    p.add_argument("--seed", type=_nonneg, default=0, help="seed letter for --morphism")


def _resolve_word(args, length: int = 1024):
    if args.morphism:
        m = Morphism.parse(args.morphism)
        return iterate_fixed_point(m, args.seed, max(length, 1))
    if args.literal is not None:
        return literal(parse_word(args.literal))
    return get_word(args.id or "tm", max(length, 1))


def cmd_word(args) -> int:
    w = _resolve_word(args, args.len)
    if w.is_finite and len(w) < args.len:
        raise UsageError(f"literal word has only {len(w)} letters")
    _emit(format_word(w.word[:args.len], w.alphabet.size), args.output)
    return EXIT_OK


def cmd_complexity(args) -> int:
    if args.stat == "labelian":
        kind = StatisticKind.labelian(args.level)
    elif args.stat == "factor":
        kind = StatisticKind.factor()
    else:
        if not args.letters:
            raise UsageError(f"--stat {args.stat} needs --letters")
        kind = StatisticKind(args.stat, None, args.letters)
    if args.start > args.max:
        raise UsageError("--from exceeds --max")
    w = _resolve_word(args)
    s = series(w, kind, args.max, args.start, method=args.method)
    if args.format == "csv":
        out = s.to_csv()
    elif args.format == "json":
        out = s.to_json()
    else:
        out = "\n".join(f"{n:>6} {v}" for n, v in s.items())
    _emit(out.rstrip("\n"), args.output)
    return EXIT_OK


def cmd_guess(args) -> int:
    s = named_sequence(args.series)
    rs = guess_relations(s, args.k, args.T, args.N, args.rank_cap)
    if args.format == "json":
        doc = json.loads(rs.to_json())
        if args.representation:
            doc["representation"] = json.loads(to_linear_representation(rs).to_json())
        out = json.dumps(doc, indent=2)
    else:
        lines = [f"series {args.series}: rank {rs.rank}, verified up to n = {rs.verified_horizon}"]
        lines += rs.describe()
        bad = rs.non_integer()
        if bad:
            lines.append(f"non-integer coefficients in {len(bad)} relations")
        out = "\n".join(lines)
    _emit(out, args.output)
    return EXIT_OK


def _suite_reports(args) -> list:
    suites = ["A", "reflection", "pd", "tm", "cross"] if args.suite == "all" else [args.suite]
    reps = []
    for s in suites:
        if s == "A":
            reps.append(theorems.verify_A_relations(args.max))
        elif s == "reflection":
            reps.append(theorems.verify_reflection_solver(args.fuzz, args.fuzz_max, args.seed))
        elif s == "pd":
            reps += theorems.verify_pd_suite(args.max, method=args.method)
        elif s == "tm":
            reps += theorems.verify_tm_suite(args.max, method=args.method)
        elif s == "cross":
            reps.append(theorems.verify_cross_word(args.max, method=args.method))
    return reps


def cmd_verify(args) -> int:
    reps = _suite_reports(args)
    out = theorems.reports_to_json(reps) if args.format == "json" else theorems.reports_text(reps)
    _emit(out, args.output)
    return EXIT_OK if all(r.passed for r in reps) else EXIT_FAILED


def cmd_conjecture(args) -> int:
    w = _resolve_word(args, args.max + args.block + 1)
    rep = theorems.conjecture_blocks(w, args.block, args.max, args.min_exponent, args.constants)
    _emit(rep.to_json() if args.format == "json" else rep.summary(), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="abelianlab",
                                 description="Abelian-type complexities of morphic words and k-regularity checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("word", help="print a prefix of a word")
    _add_word_args(p)
    p.add_argument("--len", type=_nonneg, default=64)
    p.add_argument("--output")
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("complexity", help="complexity series of a word")
    _add_word_args(p)
    p.add_argument("--stat", choices=KINDS, default="labelian")
    p.add_argument("--level", type=int, default=1, help="l for l-abelian complexity")
    p.add_argument("--letters", type=_letters, help="letter set for max/min/delta/jmax/jmin")
    p.add_argument("--max", type=_nonneg, default=32)
    p.add_argument("--from", dest="start", type=_nonneg, default=0)
    p.add_argument("--method", choices=("enumerate", "profile", "auto"), default="enumerate")
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.add_argument("--output")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("guess", help="guess and verify linear relations in the k-kernel")
    p.add_argument("--series", required=True, help="A, const1, p2-tm, delta0-pd2, m12-tm2-mod2, ...")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--T", type=int, default=512)
    p.add_argument("--N", type=int, default=1 << 14)
    p.add_argument("--rank-cap", type=int, default=64)
    p.add_argument("--representation", action="store_true", help="include the linear representation")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=cmd_guess)

    p = sub.add_parser("verify", help="check the stated identities against computed values")
    p.add_argument("--suite", choices=("A", "reflection", "pd", "tm", "cross", "all"), default="all")
    p.add_argument("--max", type=_nonneg, default=512)
    p.add_argument("--fuzz", type=_nonneg, default=100, help="random specs for the reflection suite")
    p.add_argument("--fuzz-max", type=_nonneg, default=1 << 12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("enumerate", "profile"), default="enumerate")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="test the block-coding reflection relation empirically")
    _add_word_args(p)
    p.add_argument("--block", type=int, default=3)
    p.add_argument("--max", type=_nonneg, default=2047)
    p.add_argument("--min-exponent", type=int, default=4)
    p.add_argument("--constants", type=_letters, help="even,odd increments; inferred when omitted")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_conjecture)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "word" and args.id is None and args.morphism is None and args.literal is None:
        args.id = "tm"
    try:
        return args.func(args)
    except NotStabilized as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_STABILIZED
    except NotClosed as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_CLOSED
    except VerificationFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (UsageError, AbelianLabError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
