"""Command-line entry points.

  engine parse --dump-tree "sentence"   print the dependency-style tree
  engine parse --dump-s2 "sentence"     print the semantic graph
  engine run --scenario F --ticks N --trace OUT
  engine serve --port P --seed S
"""

from __future__ import annotations

import argparse
import sys

from .grammar.parser import parse_sentence
from .grammar.parse_tree import dump_tree
from .grammar.tokenizer import split_sentences, tokenize
from .semantics.builder import build_command
from .semantics.formatter import format_s2
from .semantics.s2 import reset_ids


def dump_s2_text(text: str) -> str:
    """Parse one or more sentences and render the semantic graph."""
    reset_ids()
    parses = [parse_sentence(s) for s in split_sentences(tokenize(text))]
    return format_s2(build_command(parses))


def dump_tree_text(text: str) -> str:
    return "\n".join(dump_tree(parse_sentence(s))
                     for s in split_sentences(tokenize(text)))


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p_parse = sub.add_parser("parse", help="parse a sentence")
    p_parse.add_argument("sentence")
    group = p_parse.add_mutually_exclusive_group()
    group.add_argument("--dump-tree", action="store_true")
    group.add_argument("--dump-s2", action="store_true")

    p_run = sub.add_parser("run", help="run a scenario headless")
    p_run.add_argument("--scenario", required=True)
    p_run.add_argument("--ticks", type=int, required=True)
    p_run.add_argument("--trace", required=True)
    p_run.add_argument("--save-world", help="write the final world document")

    p_serve = sub.add_parser("serve", help="serve the websocket protocol")
    p_serve.add_argument("--port", type=int, default=8765)
    p_serve.add_argument("--seed", type=int, default=0)
    p_serve.add_argument("--host", default="127.0.0.1")

    args = parser.parse_args(argv)

    if args.command == "parse":
        try:
            if args.dump_s2:
                print(dump_s2_text(args.sentence))
            else:
                print(dump_tree_text(args.sentence))
        except Exception as e:
            print(f"error: {e}", file=sys.stderr)
            return 1
        return 0

    if args.command == "run":
        import json

        from .session.scenario import (build_session, load_scenario,
                                       save_world, write_trace)
        from .session.protocol import apply_message
        scenario = load_scenario(args.scenario)
        host, session = build_session(scenario)
        schedule = list(scenario.schedule)
        cursor = 0
        for step in range(args.ticks):
            while cursor < len(schedule) and schedule[cursor]["step"] <= step:
                apply_message(session, schedule[cursor]["message"])
                cursor += 1
            host.tick()
        write_trace(args.trace, host)
        if args.save_world:
            with open(args.save_world, "w", encoding="utf-8") as f:
                json.dump(save_world(host), f, indent=1)
        return 0

    if args.command == "serve":
        from .session.server import serve
        serve(args.port, seed=args.seed, host_addr=args.host)
        return 0

    return 2


if __name__ == "__main__":
    raise SystemExit(main())
