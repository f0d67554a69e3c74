"""Command-line front end.

Every command is a thin wrapper over the library.  Results go to stdout;
errors go to stderr as one line ``<CODE>: <message>`` with exit status 1
(user error) or 2 (internal invariant failure).
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Callable, Sequence, TextIO

from . import analysis, core
from .basis import (
    UnitSystem,
    define_derived,
    load_system,
    propose_basis_change,
    rebase,
    system_from_dict,
    system_to_dict,
)
from .core import Quantity
from .errors import (
    DuplicateSymbolError,
    InternalInvariantError,
    QuantityError,
    SchemaError,
)
from .expr import evaluate, format_quantity, parse, unit_string

EXIT_OK = 0
EXIT_USER = 1
EXIT_INTERNAL = 2


def default_system() -> UnitSystem:
    text = resources.files("quantspace").joinpath("data/si.json").read_text(encoding="utf-8")
    return system_from_dict(json.loads(text))


def _load(path: str | None) -> UnitSystem:
    if path is None:
        return default_system()
    try:
        return load_system(path)
    except OSError as exc:
        raise SchemaError(f"cannot read unit-system file {path!r}: {exc.strerror}") from exc


class Session:
    """A unit system plus output options and REPL bindings."""

    def __init__(self, system: UnitSystem, substitute: bool = False, out: TextIO = sys.stdout):
        self.system = system
        self.substitute = substitute
        self.bindings: dict[str, Quantity] = {}
        self.out = out

    def eval(self, text: str) -> Quantity:
        return evaluate(parse(text), self.system, self.bindings)

    def fmt(self, q: Quantity, system: UnitSystem | None = None) -> str:
        return format_quantity(q, system or self.system, self.substitute)

    def print(self, *lines: str) -> None:
        for line in lines:
            print(line, file=self.out)


def cmd_eval(s: Session, args: argparse.Namespace) -> None:
    s.print(s.fmt(s.eval(" ".join(args.expr))))


def _describe_dim(q: Quantity, system: UnitSystem) -> str:
    return unit_string(q.exponents, system.base_units) or "[1]"


def cmd_check(s: Session, args: argparse.Namespace) -> None:
    text = " ".join(args.expr)
    if text.count("=") != 1:
        raise SchemaError("check expects exactly one '=' between two expressions")
    lhs_text, rhs_text = text.split("=")
    lhs, rhs = s.eval(lhs_text), s.eval(rhs_text)
    report = analysis.check_homogeneous([lhs, rhs])
    s.print(f"left:  {s.fmt(lhs)}", f"right: {s.fmt(rhs)}")
    if report.homogeneous:
        s.print(f"homogeneous: yes [{_describe_dim(lhs, s.system)}]")
    else:
        s.print(
            f"homogeneous: no [{_describe_dim(lhs, s.system)}] vs "
            f"[{_describe_dim(rhs, s.system)}]"
        )
    s.print(f"equal: {'yes' if lhs == rhs else 'no'}")


def cmd_convert(s: Session, args: argparse.Namespace) -> None:
    words = " ".join(args.expr).split()
    if "to" not in words:
        raise SchemaError("convert expects '<expr> to <unit-expr>'")
    cut = len(words) - 1 - words[::-1].index("to")
    src, unit = " ".join(words[:cut]), " ".join(words[cut + 1 :])
    kappa = analysis.convert(s.eval(src), s.eval(unit))
    s.print(f"{kappa} {unit.strip()}")


def cmd_rebase(s: Session, args: argparse.Namespace) -> None:
    if args.target_system:
        target = _load(args.target_system).with_scalars(s.system.scalars)
        symbols = list(target.base_units)
    elif args.to:
        target = None
        symbols = [t.strip() for t in args.to.split(",") if t.strip()]
    else:
        raise SchemaError("rebase needs --system <file> or --to <unit,unit,...>")
    new_units = [(sym, s.system.resolve(sym)) for sym in symbols]
    change = propose_basis_change(s.system, new_units, target)
    q = rebase(s.eval(" ".join(args.expr)), change)
    s.print(s.fmt(q, change.target))


def cmd_pi(s: Session, args: argparse.Namespace) -> None:
    qs = [s.eval(text) for text in args.expr]
    gens = analysis.dimensionless_products([q.dim for q in qs])
    if not gens:
        s.print("no dimensionless products")
        return
    for e in gens:
        factors = " · ".join(f"({t})^{k}" for t, k in zip(args.expr, e) if k)
        value = core.product(qs, e)
        s.print(f"{list(e)}  {factors} = {s.fmt(value)}")


def cmd_units(s: Session, args: argparse.Namespace) -> None:
    if args.action == "list":
        s.print(f"system {s.system.id} over {s.system.scalars}")
        for sym in s.system.base_units:
            s.print(f"  {sym}  (base)")
        for sym, q in s.system.derived_units.items():
            s.print(f"  {sym} = {format_quantity(q, s.system)}")
        return
    if not args.symbol or not args.expr:
        raise SchemaError("usage: units add <symbol> <expr>")
    system = define_derived(s.system, args.symbol, s.eval(" ".join(args.expr)))
    doc = json.dumps(system_to_dict(system), indent=2, ensure_ascii=False)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(doc + "\n")
    else:
        s.print(doc)


REPL_HELP = """\
<expr>            evaluate an expression
let <name> = <expr>  bind a name to a quantity
units             list units
quit              leave"""


def run_repl(s: Session, stdin: TextIO, err: TextIO) -> int:
    interactive = stdin.isatty()
    status = EXIT_OK
    while True:
        if interactive:
            print("> ", end="", file=s.out, flush=True)
        line = stdin.readline()
        if not line:
            return status
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit"):
            return status
        try:
            if line == "help":
                s.print(REPL_HELP)
            elif line == "units":
                cmd_units(s, argparse.Namespace(action="list"))
            elif line.startswith("let "):
                name, sep, text = line[4:].partition("=")
                name = name.strip()
                if not sep or not name.isidentifier():
                    raise SchemaError("usage: let <name> = <expr>")
                if name in s.system:
                    raise DuplicateSymbolError(f"{name!r} is a unit of {s.system.id!r}")
                s.bindings[name] = s.eval(text)
                s.print(f"{name} = {s.fmt(s.bindings[name])}")
            else:
                s.print(s.fmt(s.eval(line)))
        except QuantityError as exc:
            print(f"{exc.code}: {exc}", file=err)
            status = EXIT_USER


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        # usage mistakes are user errors: exit 1 with a coded line, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USER, f"E_USAGE: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="quantspace", description="Exact quantity calculator.")
    p.add_argument("--system", help="unit-system JSON file (default: built-in SI m, kg, s)")
    backend = p.add_mutually_exclusive_group()
    backend.add_argument("--exact", dest="backend", action="store_const", const="exact")
    backend.add_argument("--float", dest="backend", action="store_const", const="float")
    p.add_argument(
        "--substitute-derived",
        action="store_true",
        help="print a derived-unit symbol when one matches exactly",
    )
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate an expression")
    e.add_argument("expr", nargs="+")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check", help="compare two expressions: <expr> = <expr>")
    c.add_argument("expr", nargs="+")
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("convert", help="<expr> to <unit-expr>")
    v.add_argument("expr", nargs="+")
    v.set_defaults(func=cmd_convert)

    r = sub.add_parser("rebase", help="express a quantity over another basis")
    r.add_argument("expr", nargs="+")
    r.add_argument("--system", dest="target_system", help="target unit-system file")
    r.add_argument("--to", help="comma-separated new base units, e.g. km,kg,h")
    r.set_defaults(func=cmd_rebase)

    pi = sub.add_parser("pi", help="dimensionless products of the given quantities")
    pi.add_argument("expr", nargs="+")
    pi.set_defaults(func=cmd_pi)

    u = sub.add_parser("units", help="list or add units")
    u.add_argument("action", choices=["list", "add"])
    u.add_argument("symbol", nargs="?")
    u.add_argument("expr", nargs="*")
    u.add_argument("-o", "--output", help="write the extended system to this file")
    u.set_defaults(func=cmd_units)

    sub.add_parser("repl", help="interactive session").set_defaults(func=None)
    return p


def main(
    argv: Sequence[str] | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
    stdin: TextIO | None = None,
) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        system = _load(args.system)
        if args.backend == "exact":
            system = system.with_scalars(system.scalars.exact_variant)
        elif args.backend == "float":
            system = system.with_scalars(system.scalars.float_variant)
        session = Session(system, args.substitute_derived, out)
        if args.command == "repl":
            return run_repl(session, stdin or sys.stdin, err)
        handler: Callable[[Session, argparse.Namespace], None] = args.func
        handler(session, args)
    except InternalInvariantError as exc:
        print(f"{exc.code}: {exc}", file=err)
        return EXIT_INTERNAL
    except QuantityError as exc:
        print(f"{exc.code}: {exc}", file=err)
        return EXIT_USER
    except Exception as exc:  # noqa: BLE001
        print(f"E_INTERNAL: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
