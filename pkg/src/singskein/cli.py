"""Command-line front end.

Reads one braid word, runs the full pipeline, and prints a report as text
or JSON.  Exit codes: 0 success, 2 parse/validation error, 3 internal
theory violation (singular pairing matrix, or a verification check that
came back false), 4 size caps exceeded.

stdout is byte-identical for identical (input, flags, seed); wall-clock
timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from .braid import (
    BraidSyntaxError,
    InapplicableMoveError,
    SingularBraidWord,
    StrandIndexError,
    exponent_sum,
    parse,
    random_move_sequence,
    underlying_permutation,
)
from .linalg import SingularMatrixError
from .markov import (
    HARD_MAX_DEGREE,
    HARD_MAX_STRANDS,
    CapExceededError,
    MarkovClass,
    markov_class,
)
from .skein import SkeinClass, skein_class, skein_triple_check

__all__ = ["main", "run", "RunReport"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_THEORY = 3
EXIT_CAPS = 4


@dataclass
class RunReport:
    word: SingularBraidWord
    strands: int
    degree: int
    writhe: int
    components: int
    markov: MarkovClass
    skein: SkeinClass
    elapsed_seconds: float
    verify: dict | None = None


def _positive_cap(limit: int, label: str):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"{label} must be an integer") from exc
        if not 1 <= value <= limit:
            raise argparse.ArgumentTypeError(
                f"{label} must lie in 1..{limit} (hard cap)"
            )
        return value

    return convert


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singskein",
        description=(
            "Map a singular braid word to the skein-module class of its "
            "closure, with optional self-verification."
        ),
    )
    parser.add_argument(
        "--word",
        required=True,
        help='whitespace-separated letters: s<i> crossing, S<i> inverse, t<i> double point (e.g. "s1 S2 t1")',
    )
    parser.add_argument(
        "--strands",
        type=int,
        default=None,
        help="strand count (default: 1 + largest index used)",
    )
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    parser.add_argument(
        "--verify",
        action="store_true",
        help="fuzz closure-preserving moves and check the class is unchanged",
    )
    parser.add_argument(
        "--moves", type=int, default=25, help="number of verification moves"
    )
    parser.add_argument("--seed", type=int, default=0, help="verification seed")
    parser.add_argument(
        "--skein-check",
        type=int,
        default=None,
        metavar="I",
        help="also check the skein relation at crossing index I",
    )
    parser.add_argument(
        "--max-degree",
        type=_positive_cap(HARD_MAX_DEGREE, "--max-degree"),
        default=None,
        help=f"lower the double-point cap (hard cap {HARD_MAX_DEGREE})",
    )
    parser.add_argument(
        "--max-strands",
        type=_positive_cap(HARD_MAX_STRANDS, "--max-strands"),
        default=None,
        help=f"lower the strand cap (hard cap {HARD_MAX_STRANDS})",
    )
    return parser


def run(args: argparse.Namespace) -> RunReport:
    word = parse(args.word, args.strands)
    start = time.perf_counter()
    markov = markov_class(word, args.max_degree, args.max_strands)
    skein = skein_class(word, args.max_degree, args.max_strands, coords=markov)
    verify: dict | None = None
    if args.verify or args.skein_check is not None:
        verify = {}
        if args.verify:
            verify.update(_verify_moves(word, skein, args))
        if args.skein_check is not None:
            result = skein_triple_check(
                word,
                args.skein_check,
                max_degree=args.max_degree,
                max_strands=args.max_strands,
            )
            verify["skein_check"] = {
                "index": args.skein_check,
                "holds": result.holds,
                "lhs": str(result.lhs),
                "rhs": str(result.rhs),
            }
    elapsed = time.perf_counter() - start
    return RunReport(
        word=word,
        strands=word.strands,
        degree=word.degree,
        writhe=exponent_sum(word),
        components=underlying_permutation(word).cycle_count(),
        markov=markov,
        skein=skein,
        elapsed_seconds=elapsed,
        verify=verify,
    )


def _verify_moves(word: SingularBraidWord, reference, args: argparse.Namespace) -> dict:
    if args.moves < 0:
        raise ValueError("--moves must be >= 0")
    strand_cap = args.max_strands if args.max_strands else HARD_MAX_STRANDS
    passed = 0
    failures: list[str] = []
    steps = random_move_sequence(
        word, args.moves, seed=args.seed, max_strands=strand_cap
    )
    for step_number, (move, step_word) in enumerate(steps, start=1):
        if skein_class(step_word, args.max_degree, args.max_strands) == reference:
            passed += 1
        else:
            failures.append(f"step {step_number}: {move!r} changed the class")
    return {
        "moves": args.moves,
        "seed": args.seed,
        "passed": passed,
        "failed": len(failures),
        "failures": failures,
    }


def _class_terms(cls, key_a: str, key_b: str) -> list[dict]:
    return [
        {key_a: a, key_b: b, "coeff": str(coeff)}
        for (a, b), coeff in cls.sorted_terms()
    ]


def render_json(report: RunReport) -> str:
    payload: dict = {
        "strands": report.strands,
        "degree": report.degree,
        "writhe": report.writhe,
        "components": report.components,
        "markov_class": _class_terms(report.markov, "x", "y"),
        "skein_class": _class_terms(report.skein, "xhat", "yhat"),
    }
    if report.verify is not None:
        payload["verify"] = report.verify
    return json.dumps(payload, indent=2)


def render_text(report: RunReport) -> str:
    lines = [
        f"word:         {report.word.display() or '(empty)'}",
        f"strands:      {report.strands}",
        f"degree:       {report.degree}",
        f"writhe:       {report.writhe}",
        f"components:   {report.components}",
        f"markov_class: {report.markov}",
        f"skein_class:  {report.skein}",
    ]
    verify = report.verify or {}
    if "moves" in verify:
        lines.append(
            "verify:       {moves} moves, seed {seed}, {passed} passed, {failed} failed".format(
                **verify
            )
        )
        lines.extend(f"  {failure}" for failure in verify["failures"])
    if "skein_check" in verify:
        check = verify["skein_check"]
        state = "holds" if check["holds"] else "FAILS"
        lines.append(f"skein_check:  index {check['index']}, {state}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPS
    except SingularMatrixError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_THEORY
    except (BraidSyntaxError, StrandIndexError, InapplicableMoveError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    print(render_json(report) if args.format == "json" else render_text(report))
    print(f"elapsed: {report.elapsed_seconds:.3f}s", file=sys.stderr)

    verify = report.verify or {}
    if verify.get("failed"):
        return EXIT_THEORY
    check = verify.get("skein_check")
    if check is not None and not check["holds"]:
        return EXIT_THEORY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
