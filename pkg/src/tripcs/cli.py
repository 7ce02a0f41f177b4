"""Command-line surface.

Subcommands: verify, solve, analyze, sweep, serve.  Exit codes: 0 success,
1 usage error (bad flags, bad indices), 2 instance error (unreadable,
unparseable, or invalid instance file).  `--format records` switches the
output to line-delimited JSON records with the stable field names from
docs/records.md.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .analyzer import DecidedNo, DecidedYes, analyze, sweep
from .core import (
    EmptyIndexSequence,
    Game,
    IndexOutOfRange,
    InvalidCut,
    InvalidSystem,
    TriSystem,
    concat_row,
    project,
    verify_match,
)
from .filters import ClosedStateGraph, certificate_kind
from .formats import InstanceFormatError, parse_instance
from .generator import EnumParams, enumerate_systems, random_instance
from .records import (
    bounds_to_obj,
    dumps_record,
    outcome_to_obj,
    report_to_obj,
    status_to_obj,
    summary_to_obj,
    sweep_record_to_obj,
)
from .search import CertifiedNo, Found, SearchBounds, search_pair, search_triple
from .service import SessionStore, make_server

GAME_CODES = ("tmb", "tm", "tb", "mb")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract reserves 2
    # for instance errors, so route usage problems through our own path.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _add_bounds(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-depth", type=int, default=64, help="maximum list length")
    parser.add_argument("--max-overhang", type=int, default=64, help="maximum overhang length")
    parser.add_argument("--max-states", type=int, default=1_000_000, help="maximum stored configurations")


def _bounds(args: argparse.Namespace) -> SearchBounds:
    try:
        return SearchBounds(args.max_depth, args.max_overhang, args.max_states)
    except ValueError as e:
        raise _UsageError(str(e)) from None


def _load(path: str) -> TriSystem:
    with open(path, "r", encoding="utf-8") as f:
        return parse_instance(f.read())


def _parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise _UsageError(f"indices must be comma-separated integers, got {text!r}") from None


def _parse_int_list(text: str, count: int, what: str) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != count:
        raise _UsageError(f"{what} needs {count} comma-separated integers, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise _UsageError(f"{what} needs {count} comma-separated integers, got {text!r}") from None


def build_parser() -> _Parser:
    parser = _Parser(prog="tripcs", description="Threefold Post correspondence workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check an index sequence against a game")
    p.add_argument("file")
    p.add_argument("--indices", required=True, help="comma-separated 1-based indices")
    p.add_argument("--game", required=True, choices=GAME_CODES)
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("solve", help="search for a match of one game")
    p.add_argument("file")
    p.add_argument("--game", required=True, choices=GAME_CODES)
    p.add_argument("--format", choices=("text", "records"), default="text")
    _add_bounds(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("analyze", help="answer all four game questions")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "records"), default="text")
    _add_bounds(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("sweep", help="analyze a stream of instances")
    p.add_argument("--enumerate", dest="enumerate_params", metavar="N,LEN,K",
                   help="exhaustive canonical enumeration: maxDominoes,maxWordLen,alphabetSize")
    p.add_argument("--random", dest="random_params", metavar="COUNT,SEED,N,LEN,K",
                   help="random instances: count,seed,maxDominoes,maxWordLen,alphabetSize")
    p.add_argument("--out", required=True, help="path for the line-delimited record file")
    _add_bounds(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("serve", help="host the session service")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--session-ttl", type=float, default=3600.0, help="idle expiry in seconds")
    p.add_argument("--move-limit", type=int, default=10_000)
    _add_bounds(p)
    p.set_defaults(func=_cmd_serve)

    return parser


def _cmd_verify(args: argparse.Namespace) -> int:
    system = _load(args.file)
    indices = _parse_indices(args.indices)
    game = Game.from_code(args.game)
    equal = verify_match(system, indices, game)
    words = [concat_row(system, row, indices) for row in game.rows]
    if args.format == "records":
        record = {
            "type": "verify",
            "game": game.code,
            "indices": list(indices),
            "equal": equal,
            "words": {row.value: w for row, w in zip(game.rows, words)},
        }
        print(dumps_record(record))
    elif equal:
        print(f"true {words[0]}")
    else:
        print("false " + " ".join(words))
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    system = _load(args.file)
    game = Game.from_code(args.game)
    bounds = _bounds(args)
    if game.is_pair:
        outcome = search_pair(project(system, game), bounds)
    else:
        outcome = search_triple(system, bounds)
    if args.format == "records":
        print(dumps_record({"type": "solve", "game": game.code, **outcome_to_obj(outcome)}))
        return 0
    if isinstance(outcome, Found):
        print("found " + ",".join(str(i) for i in outcome.match))
    elif isinstance(outcome, CertifiedNo):
        cert = outcome.certificate
        line = f"certified-no {certificate_kind(cert)}"
        if isinstance(cert, ClosedStateGraph):
            line += f" states={cert.states_explored} depth={cert.depth_reached}"
        print(line)
    else:
        print(
            f"unknown {outcome.reason} bound hit"
            f" (states={outcome.stats.states_explored}, depth={outcome.stats.depth_reached})"
        )
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    system = _load(args.file)
    report = analyze(system, _bounds(args))
    if args.format == "records":
        print(dumps_record({"type": "analyze", **report_to_obj(report)}))
        return 0
    for game, status in report.statuses.items():
        if isinstance(status, DecidedYes):
            match = ",".join(str(i) for i in status.match)
            print(f"{game.code}: yes [{match}] ({status.via})")
        elif isinstance(status, DecidedNo):
            print(f"{game.code}: no {certificate_kind(status.certificate)} ({status.via})")
        else:
            print(f"{game.code}: unknown ({status.reason})")
    print(f"conjecture witnessed: {str(report.conjecture_witnessed).lower()}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    if (args.enumerate_params is None) == (args.random_params is None):
        raise _UsageError("exactly one of --enumerate or --random is required")
    if args.enumerate_params is not None:
        n, length, k = _parse_int_list(args.enumerate_params, 3, "--enumerate")
        try:
            params = EnumParams(n, length, k)
        except ValueError as e:
            raise _UsageError(str(e)) from None
        source = enumerate_systems(params)
    else:
        count, seed, n, length, k = _parse_int_list(args.random_params, 5, "--random")
        if count < 1:
            raise _UsageError("--random count must be strictly positive")
        try:
            params = EnumParams(n, length, k)
        except ValueError as e:
            raise _UsageError(str(e)) from None
        source = (random_instance(seed + i, params) for i in range(count))

    result = sweep(source, _bounds(args))
    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        for record in result.records:
            f.write(dumps_record(sweep_record_to_obj(record)) + "\n")
        f.write(dumps_record(summary_to_obj(result.summary)) + "\n")

    summary = result.summary
    fraction = summary.witnessed_fraction
    print(f"instances: {summary.instances}  errors: {summary.errors}")
    for game, counts in summary.by_game.items():
        print(f"{game.code}: yes={counts['yes']} no={counts['no']} unknown={counts['unknown']}")
    print(f"conjecture witnessed: {summary.witnessed}/{summary.instances}"
          f" ({fraction.numerator}/{fraction.denominator})")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    store = SessionStore(ttl=args.session_ttl, move_limit=args.move_limit, bounds=_bounds(args))
    server = make_server(args.host, args.port, store)
    host, port = server.server_address[:2]
    print(f"serving on {host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
        server.server_close()
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (IndexOutOfRange, EmptyIndexSequence, InvalidCut, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (InstanceFormatError, InvalidSystem) as e:
        print(f"instance error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"instance error: {e}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
