import argparse
import os
import sys
from typing import Any, Callable, Optional, Sequence

import orjson

from braidjohnson.artin import apply_artin
from braidjohnson.braid_core import (
    BraidError,
    BraidWord,
    WordParseError,
    parse_braid_word,
    underlying_permutation,
)
from braidjohnson.config import CONFIG_ENV_VAR, ConfigError, ConfigSection, global_config
from braidjohnson.crossing import ConventionError, CrossingMatrix, HVector, crossing_matrix, lift_C
from braidjohnson.free_group import parse_free_word
from braidjohnson.logging_config import get_lazy_logger
from braidjohnson.magnus_johnson import lift_tau
from braidjohnson.matrix_sets import (
    is_in_image_C,
    is_perm_braid_matrix,
    satisfies_ppb_conjecture_conditions,
    search_positive_pure_realizations,
)
from braidjohnson.simple_braids import (
    SimpleBraid,
    apply_hurwitz_moves,
    as_word,
    construct_from_invariant,
    v_invariant,
)
from braidjohnson.utils import LOG_LEVELS, setup_logging
from braidjohnson.verify import CHECKS, format_table, run_suite

logger = get_lazy_logger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _write(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _emit(data: Any, pretty: bool) -> None:
    option = orjson.OPT_INDENT_2 if pretty else 0
    _write(orjson.dumps(data, option=option).decode())


def _format_rows(rows: list[list[int]]) -> str:
    width = max((len(str(x)) for row in rows for x in row), default=1)
    return "\n".join(" ".join(f"{x:>{width}}" for x in row) for row in rows)


def _read_matrix(text: str) -> CrossingMatrix:
    if text == "-":
        text = sys.stdin.read()
    try:
        data = orjson.loads(text)
    except orjson.JSONDecodeError as e:
        raise UsageError(f"matrix is not valid JSON: {e}") from e
    return CrossingMatrix.from_json(data)


def _int_list(text: str, what: str) -> list[int]:
    values = []
    for position, token in enumerate(text.replace(",", " ").split(), start=1):
        try:
            values.append(int(token))
        except ValueError:
            raise WordParseError(f"{what} must be integers", position, token) from None
    return values


def _cmd_crossing(args: argparse.Namespace) -> int:
    C = crossing_matrix(parse_braid_word(args.word, args.m))
    if args.pretty:
        _write(_format_rows(C.rows()))
    else:
        _emit(C.to_json(), False)
    return EXIT_OK


def _cmd_perm(args: argparse.Namespace) -> int:
    perm = underlying_permutation(parse_braid_word(args.word, args.m))
    _emit({"m": perm.m, "perm": perm.to_json(), "cycles": str(perm)}, args.pretty)
    return EXIT_OK


def _cmd_johnson(args: argparse.Namespace) -> int:
    _emit(lift_tau(parse_braid_word(args.word, args.m)).to_json(), args.pretty)
    return EXIT_OK


def _cmd_artin(args: argparse.Namespace) -> int:
    b = parse_braid_word(args.word, args.m)
    w = parse_free_word(args.free_word, args.m)
    image = apply_artin(b, w)
    logger.debug(f"Φ([{b}]) maps {w} ({len(w)} syllables) to {len(image)} syllables")
    _write(str(image))
    return EXIT_OK


def _cmd_simple(args: argparse.Namespace) -> int:
    conjugator = parse_braid_word(args.conjugator, args.m)
    cord = v_invariant(SimpleBraid(args.m, args.base, args.sign, conjugator))
    _emit(cord.to_json(), args.pretty)
    return EXIT_OK


def _cmd_realize_cord(args: argparse.Namespace) -> int:
    coeffs = _int_list(args.homology, "homology coefficients")
    if len(coeffs) != args.m:
        raise UsageError(f"homology needs {args.m} coefficients, got {len(coeffs)}")
    s = construct_from_invariant(args.m, args.i, args.j, args.sign, HVector(coeffs))
    _emit({
        "base": s.base_index,
        "sign": s.sign,
        "conjugator": s.conjugator.to_ints(),
        "word": as_word(s).to_ints(),
        "cord": v_invariant(s).to_json(),
    }, args.pretty)
    return EXIT_OK


def _invariant_entry(word: BraidWord) -> dict:
    lifted = lift_C(word)
    return {
        "word": word.to_ints(),
        "perm": lifted.perm.to_json(),
        "crossing": lifted.matrix.rows(),
        "tau1": lift_tau(word).wedge.to_json(),
    }


def _cmd_hurwitz(args: argparse.Namespace) -> int:
    words = tuple(parse_braid_word(text, args.m) for text in args.words)
    moves = _int_list(args.moves, "Hurwitz moves")
    moved = apply_hurwitz_moves(words, moves)
    _emit({
        "moves": moves,
        "before": [_invariant_entry(w) for w in words],
        "after": [_invariant_entry(w) for w in moved],
    }, args.pretty)
    return EXIT_OK


def _cmd_check_matrix(args: argparse.Namespace) -> int:
    M = _read_matrix(args.matrix)
    _emit({
        "perm_braid": is_perm_braid_matrix(M),
        "image_of_C": is_in_image_C(M),
        "ppb_conditions": satisfies_ppb_conjecture_conditions(M),
    }, args.pretty)
    return EXIT_OK


def _cmd_search_ppb(args: argparse.Namespace) -> int:
    if args.limit is not None and args.limit < 1:
        raise UsageError("--limit must be at least 1; use --all for every realization")
    global_config.update_config(ConfigSection.SEARCH, {"limit": args.limit, "workers": args.workers})
    if args.all:
        limit = None
    else:
        # a configured limit of 0 lists everything
        limit = global_config.search.limit or None
    M = _read_matrix(args.matrix)
    words = search_positive_pure_realizations(
        M, limit=limit, workers=global_config.search.workers, canonical=global_config.search.canonical,
    )
    if not words:
        logger.info("no positive braid has this crossing matrix")
    for word in words:
        _write(str(word))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    global_config.update_config(ConfigSection.VERIFY, {
        "seed": args.seed, "cases": args.cases, "max_length": args.max_length, "workers": args.workers,
    })
    settings = global_config.verify
    results = run_suite(settings.seed, settings.cases, settings.max_length, settings.workers, args.check)
    if args.json:
        _emit({"seed": settings.seed, "cases": settings.cases,
               "results": [r.to_json() for r in results]}, args.pretty)
    else:
        _write(format_table(results, timings=args.pretty))
    return EXIT_OK if all(r.passed for r in results) else EXIT_DOMAIN


def _sign(text: str) -> int:
    if text in ("+1", "1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise argparse.ArgumentTypeError(f"sign must be +1 or -1, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="Human-readable output")
    common.add_argument("--config", help="TOML settings file (default: $BRAIDJOHNSON_CONFIG)")
    common.add_argument("--log-level", choices=LOG_LEVELS, type=str.upper, help="Log level for stderr")

    strands = argparse.ArgumentParser(add_help=False)
    strands.add_argument("-m", type=int, required=True, help="Number of strands")

    parser = argparse.ArgumentParser(
        prog="braidjohnson",
        description="Crossing matrices, the Artin action and the first Johnson map on braid groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], int], help_text: str,
            with_m: bool = True) -> argparse.ArgumentParser:
        parents = [common, strands] if with_m else [common]
        p = sub.add_parser(name, parents=parents, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("crossing", _cmd_crossing, "Crossing matrix C(β)")
    p.add_argument("word", help='Braid word, e.g. "-2 1 1 2" or "s2^-1 s1^2"')

    p = add("perm", _cmd_perm, "Underlying permutation |β|")
    p.add_argument("word")

    p = add("johnson", _cmd_johnson, "Extended first Johnson map τ₁θ(β) and |β|")
    p.add_argument("word")

    p = add("artin", _cmd_artin, "Artin action Φ(β)(w) on a free word")
    p.add_argument("word")
    p.add_argument("free_word", help='Free word, e.g. "x1 x2^-1"')

    p = add("simple", _cmd_simple, "Cord invariant v of σ_base^sign * conjugator")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--sign", type=_sign, required=True)
    p.add_argument("--conjugator", default="")

    p = add("realize-cord", _cmd_realize_cord, "Simple braid with a prescribed cord invariant")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--sign", type=_sign, required=True)
    p.add_argument("--homology", required=True, help="m integer coefficients, zero at i and j")

    p = add("hurwitz", _cmd_hurwitz, "Hurwitz moves on a tuple of braids")
    p.add_argument("words", nargs="+")
    p.add_argument("--moves", default="", help='Signed move indices, e.g. "1 -2"')

    p = add("check-matrix", _cmd_check_matrix, "Membership tests for a matrix", with_m=False)
    p.add_argument("matrix", help='JSON matrix or "-" for stdin')

    p = add("search-ppb", _cmd_search_ppb, "Positive pure braids with a given crossing matrix", with_m=False)
    p.add_argument("matrix", help='JSON matrix or "-" for stdin')
    p.add_argument("--limit", type=int, help="Maximum number of words (default from config)")
    p.add_argument("--all", action="store_true", help="List every realization")
    p.add_argument("--workers", type=int)

    p = add("verify", _cmd_verify, "Run the property suite", with_m=False)
    p.add_argument("--seed", type=int)
    p.add_argument("--cases", type=int)
    p.add_argument("--max-length", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--check", action="append", choices=sorted(CHECKS), help="Run only this check")
    p.add_argument("--json", action="store_true", help="Emit results as JSON")

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    config_path = args.config or os.getenv(CONFIG_ENV_VAR)
    try:
        if config_path:
            global_config.reload(config_path)
    except ConfigError as e:
        setup_logging(args.log_level)
        logger.error(str(e))
        return EXIT_USAGE
    setup_logging(args.log_level)

    try:
        return args.handler(args)
    except (WordParseError, UsageError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except (BraidError, OverflowError) as e:
        logger.error(str(e))
        return EXIT_DOMAIN
    except ConventionError as e:
        logger.error(f"internal convention check failed: {e}")
        return EXIT_DOMAIN


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
