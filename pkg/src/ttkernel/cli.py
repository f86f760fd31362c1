"""``tt``: check files, print normal forms, evaluate booleans, decide conversion.

Exit codes: 0 success, 1 semantic failure (type error, not convertible, not a
boolean), 2 usage, I/O or parse error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence, TextIO

from ttkernel.canonicity import bool_witness
from ttkernel.checker import CheckedDecl, TypeCheckError, check_program
from ttkernel.core import DEFAULT_MAX_UNIVERSE
from ttkernel.semantics import reify, reify_type
from ttkernel.surface import ParseError, Program, ScopeError, elaborate, parse, pretty

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse's exit code, but route through run()
        raise _Usage(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--max-universe", type=int, default=argparse.SUPPRESS, metavar="N",
        help=f"highest universe level allowed (default {DEFAULT_MAX_UNIVERSE})",
    )
    common.add_argument(
        "--quiet", action="store_true", default=argparse.SUPPRESS,
        help="print nothing on stdout; report through the exit code",
    )

    parser = _ArgumentParser(
        prog="tt",
        description="Check files, print normal forms, evaluate booleans, decide conversion.",
        epilog="exit codes: 0 success, 1 semantic failure, 2 usage, I/O or parse error",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgumentParser)
    sub.required = True
    p = sub.add_parser("check", parents=[common], help="type-check every definition")
    p.add_argument("file", metavar="FILE")
    p = sub.add_parser("norm", parents=[common], help="print a definition's normal form and type")
    p.add_argument("file", metavar="FILE")
    p.add_argument("name", metavar="NAME")
    p = sub.add_parser("eval", parents=[common], help="print the value (0 or 1) of a boolean")
    p.add_argument("file", metavar="FILE")
    p.add_argument("name", metavar="NAME")
    p = sub.add_parser("conv", parents=[common], help="decide whether two definitions are convertible")
    p.add_argument("file", metavar="FILE")
    p.add_argument("name_a", metavar="NAME_A")
    p.add_argument("name_b", metavar="NAME_B")
    return parser


def _load(path: str, max_universe: int) -> Program:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as err:
        raise _Usage(f"error: cannot read {path}: {err}") from err
    try:
        program = parse(text, max_universe)
    except ParseError as err:
        raise _Usage(f"error: {path}:{err}") from err
    return program


def _lookup(checked: Sequence[CheckedDecl], name: str) -> CheckedDecl:
    for d in checked:
        if d.name == name:
            return d
    raise _Usage(f"error: no definition named '{name}'")


def run(argv: Sequence[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
    except _Usage as e:
        print(str(e), file=err)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    max_universe = getattr(args, "max_universe", DEFAULT_MAX_UNIVERSE)
    quiet = getattr(args, "quiet", False)

    def say(line: str) -> None:
        if not quiet:
            out.write(line + "\n")

    try:
        program = _load(args.file, max_universe)
        decls = elaborate(program)
        checked = check_program(decls, max_universe)
        by_name = {d.name: d for d in decls}

        if args.command == "check":
            n = len(checked)
            say(f"ok: {n} definition{'' if n == 1 else 's'}")
            return EXIT_OK

        if args.command == "norm":
            d = _lookup(checked, args.name)
            say(pretty(d.term_normal))
            say(f": {pretty(d.type_normal)}")
            return EXIT_OK

        if args.command == "eval":
            _lookup(checked, args.name)
            try:
                witness = bool_witness(by_name[args.name].body, max_universe)
            except TypeCheckError:
                print(f"error: '{args.name}' is not of type N2", file=err)
                return EXIT_FAIL
            say(str(witness))
            return EXIT_OK

        a = _lookup(checked, args.name_a)
        b = _lookup(checked, args.name_b)
        if reify_type(0, a.type_value) != reify_type(0, b.type_value):
            say("not convertible: the types differ")
            say(f"  {args.name_a} : {pretty(a.type_normal)}")
            say(f"  {args.name_b} : {pretty(b.type_normal)}")
            return EXIT_FAIL
        nf_a = reify(0, a.type_value, a.value)
        nf_b = reify(0, a.type_value, b.value)
        if nf_a == nf_b:
            say("convertible")
            return EXIT_OK
        say("not convertible")
        say(f"  {args.name_a} = {pretty(nf_a)}")
        say(f"  {args.name_b} = {pretty(nf_b)}")
        return EXIT_FAIL
    except _Usage as e:
        print(str(e), file=err)
        return EXIT_USAGE
    except ScopeError as e:
        print(f"error: {args.file}:{e}", file=err)
        return EXIT_FAIL
    except TypeCheckError as e:
        print(f"error: {args.file}:{e}", file=err)
        return EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
