"""Command line front end: parse, analyze, and solve programs."""

from __future__ import annotations

import argparse
import sys

from .syntax import (
    ParseError,
    Program,
    format_literal_set,
    literal_key,
    parse_literals,
    parse_program,
    render,
)
from .semantics import (
    CapacityError,
    enumerate_answer_sets_bruteforce,
    is_consistent,
    minimal_closed_set,
    reduct,
)
from .completion import completion, render_completion
from .sat import answer_sets_via_completion, clausify, to_dimacs
from .tightness import (
    is_absolutely_tight,
    lambda_witness,
    parent_graph,
    positive_dependency_graph,
)
from .generators import (
    BlocksSpec,
    QueensSpec,
    blocksworld_program,
    queens_program,
)
from .transitive_closure import DefSpec, def_rules
from .syntax import eliminate_classical_negation, is_normal


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1 instead of argparse's 2
        raise _UsageError(message)


def _read_program(path: str) -> Program:
    text = sys.stdin.read() if path == "-" else open(path).read()
    return parse_program(text)


def _print_sets(sets) -> None:
    for x in sets:
        print(format_literal_set(x))


def _format_cycle(cycle) -> str:
    return " -> ".join(str(l) for l in cycle)


def _format_witness(witness) -> str:
    items = sorted(witness.items(), key=lambda kv: literal_key(kv[0]))
    return "lambda: " + ", ".join("%s=%d" % (l, d) for l, d in items)


def _cmd_parse(args) -> int:
    print(render(_read_program(args.program)))
    return 0


def _cmd_complete(args) -> int:
    print(render_completion(completion(_read_program(args.program))))
    return 0


def _cmd_tight(args) -> int:
    program = _read_program(args.program)
    if args.on is None:
        graph = positive_dependency_graph(program)
        cycle = graph.find_cycle()
        if cycle is None:
            print("absolutely tight")
            if graph.vertices:
                print(_format_witness(graph.longest_path_depths()))
            return 0
        print("not absolutely tight; cycle: %s" % _format_cycle(cycle))
        return 0
    x = parse_literals(args.on)
    if not is_consistent(x):
        raise ValueError("--on set must be consistent")
    shown = format_literal_set(x)
    cycle = parent_graph(program, x).find_cycle()
    if cycle is None:
        print("tight on %s" % shown)
        witness = lambda_witness(program, x)
        if witness:
            print(_format_witness(witness))
        return 0
    print("not tight on %s; cycle: %s" % (shown, _format_cycle(cycle)))
    return 0


def _cmd_solve(args) -> int:
    program = _read_program(args.program)
    result = answer_sets_via_completion(program, max_models=args.max_models)
    if args.trace:
        print(
            "trace: %d completion model(s), stats: %d decisions, "
            "%d propagations, %d conflicts"
            % (
                len(result.completion_models),
                result.stats.decisions,
                result.stats.propagations,
                result.stats.conflicts,
            ),
            file=sys.stderr,
        )
        for x, tag in zip(result.answer_sets, result.tags):
            print("trace: %s accepted [%s]" % (format_literal_set(x), tag), file=sys.stderr)
        for x in result.dropped:
            fixpoint = _reduct_fixpoint_note(program, x)
            print(
                "trace: %s dropped (not an answer set%s)"
                % (format_literal_set(x), fixpoint),
                file=sys.stderr,
            )
    _print_sets(result.answer_sets)
    return 0


def _reduct_fixpoint_note(program, x) -> str:
    fix = minimal_closed_set(reduct(program, x))
    if fix is None:
        return "; reduct has no consistent closed set"
    return "; reduct fixpoint is %s" % format_literal_set(fix)


def _cmd_enumerate(args) -> int:
    program = _read_program(args.program)
    _print_sets(enumerate_answer_sets_bruteforce(program, bound=args.brute_bound))
    return 0


def _cmd_dimacs(args) -> int:
    program = _read_program(args.program)
    if not is_normal(program):
        program, _ = eliminate_classical_negation(program)
    text = to_dimacs(clausify(completion(program)))
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_gen_queens(args) -> int:
    print(render(queens_program(QueensSpec(args.n))))
    return 0


def _cmd_gen_blocks(args) -> int:
    if args.names:
        names = tuple(n.strip() for n in args.names.split(",") if n.strip())
    else:
        names = tuple("b%d" % (i + 1) for i in range(args.blocks))
    print(render(blocksworld_program(BlocksSpec(names, args.horizon))))
    return 0


def _cmd_gen_tc(args) -> int:
    parts = [c.strip() for chunk in args.constants for c in chunk.split(",")]
    constants = tuple(int(c) if c.isdigit() else c for c in parts if c)
    spec = DefSpec(constants=constants, p_name=args.p_name, tc_name=args.tc_name)
    print(render(def_rules(spec)))
    return 0


def build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="tightlp",
        description="Tightness analysis and answer set solving for logic "
        "programs with nested expressions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_program_cmd(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("program", help="program file, or - for stdin")
        p.set_defaults(func=func)
        return p

    add_program_cmd("parse", _cmd_parse, "echo the program in canonical form")
    add_program_cmd("complete", _cmd_complete, "print the completion")
    p = add_program_cmd("tight", _cmd_tight, "tightness verdict")
    p.add_argument("--on", help="comma-separated literals; check tightness on this set")
    p = add_program_cmd("solve", _cmd_solve, "answer sets via completion and SAT")
    p.add_argument("--max-models", type=int, default=10000)
    p.add_argument("--trace", action="store_true", help="log acceptance details to stderr")
    p = add_program_cmd("enumerate", _cmd_enumerate, "answer sets by brute force")
    p.add_argument("--brute-bound", type=int, default=24)
    p = add_program_cmd("dimacs", _cmd_dimacs, "export the completion as DIMACS CNF")
    p.add_argument("-o", "--output", help="output file (default stdout)")

    p = sub.add_parser("gen-queens", help="emit the n-queens program")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_gen_queens)
    p = sub.add_parser("gen-blocks", help="emit a blocks world program")
    p.add_argument("blocks", type=int, help="number of blocks (named b1, b2, ...)")
    p.add_argument("horizon", type=int, help="number of time steps")
    p.add_argument("--names", help="comma-separated block names overriding the count")
    p.set_defaults(func=_cmd_gen_blocks)
    p = sub.add_parser("gen-tc", help="emit ground transitive closure rules")
    p.add_argument("constants", nargs="+", help="constants (space or comma separated)")
    p.add_argument("--p-name", default="p")
    p.add_argument("--tc-name", default="tc")
    p.set_defaults(func=_cmd_gen_tc)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except ParseError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 1
    except (ValueError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except CapacityError as e:
        print("resource cap exceeded: %s" % e, file=sys.stderr)
        return 2


def main(argv=None) -> None:
    sys.exit(run(argv))
