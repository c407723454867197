"""Command-line front end.

    emenum census --states 5 --alphabet 2 [--emit jsonl --out machines.jsonl]
    emenum verify --table 1 --max-states 6
    emenum rank --states 3 --alphabet 3 -- -1,1,0,2,0,1,1,-1,0
    emenum unrank --states 3 --alphabet 3 18977
    emenum inspect --states 3 --alphabet 3 -- 1,2,0,0,-1,2,-1,0,2

Exit status: 0 on success, 1 on a usage error, 2 on a verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .analysis import relabel_from
from .census import run_census
from .core import EnumError, MachineParams, check_string, format_string, parse_ints
from .filter import canonical_index, test_topological_emachine
from .ranking import string_index, total_count, unrank
from .tables import verify_tables

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("-n", "--states", type=int, required=True)
    p.add_argument("-k", "--alphabet", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="emenum", description="Enumerate topological epsilon-machines.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("census", help="count (and optionally list) machines")
    _add_params(p)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--shard-id", type=int, default=0)
    p.add_argument("--checkpoint", metavar="PATH")
    p.add_argument("--emit", choices=("none", "jsonl", "dot"), default="none")
    p.add_argument("--out", metavar="PATH", default="-", help="record output, '-' for stdout")
    p.add_argument("--full-alphabet-only", action="store_true",
                   help="emit only machines that use every letter")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--engine", choices=("auto", "kernel", "python"), default="auto")
    p.add_argument("--json", action="store_true", help="print the summary as JSON")

    p = sub.add_parser("verify", help="recompute published census cells")
    p.add_argument("--table", type=int, action="append", choices=(1, 2, 3))
    p.add_argument("--max-states", type=int, default=6)
    p.add_argument("--budget-seconds", type=float, default=120.0)

    p = sub.add_parser("rank", help="index of an accessible-form string")
    _add_params(p)
    p.add_argument("string")

    p = sub.add_parser("unrank", help="string at an index")
    _add_params(p)
    p.add_argument("index", type=int)

    p = sub.add_parser("inspect", help="run the filter on one string and show every relabeling")
    _add_params(p)
    p.add_argument("string")
    return parser


def _params(args) -> MachineParams:
    return MachineParams(args.states, args.alphabet)


def cmd_census(args) -> int:
    params = _params(args)
    emit = None if args.emit == "none" else args.emit
    to_stdout = emit is not None and args.out == "-"
    out = sys.stdout if to_stdout else args.out
    if args.checkpoint and to_stdout:
        raise UsageError("--checkpoint with --emit needs --out PATH")
    summary = run_census(
        params,
        shards=args.shards,
        shard_id=args.shard_id,
        checkpoint=args.checkpoint,
        emit=emit,
        out=out,
        full_alphabet_only=args.full_alphabet_only,
        engine=args.engine,
        workers=args.workers,
    )
    report = sys.stderr if to_stdout else sys.stdout
    if args.json:
        data = summary.counts()
        data.update(B1=str(summary.B1), ratio=summary.ratio, elapsed=summary.elapsed)
        print(json.dumps(data), file=report)
    else:
        print(summary.format(), file=report)
    return EXIT_OK


def cmd_verify(args) -> int:
    failed = False
    for result in verify_tables(tuple(args.table or (1, 2, 3)), args.max_states,
                                args.budget_seconds):
        print(result.line(), flush=True)
        failed |= result.status == "fail"
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_rank(args) -> int:
    params = _params(args)
    print(string_index(parse_ints(args.string), params))
    return EXIT_OK


def cmd_unrank(args) -> int:
    params = _params(args)
    print(format_string(unrank(args.index, params)))
    return EXIT_OK


def cmd_inspect(args) -> int:
    params = _params(args)
    s = check_string(parse_ints(args.string), params)
    index = string_index(s, params)
    print(f"string  {format_string(s)}")
    print(f"index   {index}")
    print(f"verdict {test_topological_emachine(s, index, params).name}")
    connected = True
    for q0 in range(params.n):
        r = relabel_from(s, q0, params)
        if r is None:
            connected = False
            print(f"  q0={q0}: not every state is reachable")
        else:
            print(f"  q0={q0}: {format_string(r)}  index {string_index(r, params)}")
    if connected:
        best, rep = canonical_index(s, params)
        print(f"canonical {format_string(rep)}  index {best}")
    return EXIT_OK


COMMANDS = {
    "census": cmd_census,
    "verify": cmd_verify,
    "rank": cmd_rank,
    "unrank": cmd_unrank,
    "inspect": cmd_inspect,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (EnumError, UsageError, OSError) as exc:
        print(f"emenum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
