"""Command-line interface: `mgtc <command> ...`.

Exit codes: 0 positive verdict, 1 negative verdict, 2 inapplicable,
3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__, fol
from .check import (
    Domain,
    check_equivalence,
    io_models,
    io_universe,
    program_for_input,
    verify_main_lemma,
    verify_theorem1,
    verify_theorem2,
)
from .graphs import CycleFound, TightShortcut, atom_graph, find_cycle, is_locally_tight, pred_graph, to_dot
from .ground import Universe, default_universe, tau_program
from .parser import ParseError, parse_input, parse_program, parse_term, parse_theory
from .printer import format_atoms
from .stable import EnumerationLimitError, stable_models
from .suites import SUITES
from .syntax import (
    Input,
    IoProgram,
    Num,
    Sym,
    SyntaxValidationError,
    constants,
    format_symbol,
    io_program_to_json,
    sorted_atoms,
)
from .values import eval_term, format_values

EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class CliConfig:
    command: str
    paths: list = field(default_factory=list)
    int_min: Optional[int] = None
    int_max: Optional[int] = None
    margin: int = 1
    consts: tuple = ()
    fmt: str = "text"
    limit: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.margin < 0:
            raise UsageError("--margin must be nonnegative")
        if self.limit is not None and self.limit <= 0:
            raise UsageError("--limit must be positive")
        if self.int_min is not None and self.int_max is not None and self.int_min > self.int_max:
            raise UsageError("--int-min exceeds --int-max")


def _config(args) -> CliConfig:
    consts = tuple(c for part in (getattr(args, "const", None) or []) for c in part.split(",") if c)
    return CliConfig(
        command=args.command,
        paths=[p for p in (getattr(args, "file", None), getattr(args, "input", None)) if p],
        int_min=getattr(args, "int_min", None),
        int_max=getattr(args, "int_max", None),
        margin=getattr(args, "margin", 1),
        consts=consts,
        fmt=getattr(args, "format", "text"),
        limit=getattr(args, "limit", None),
        seed=getattr(args, "seed", 0) or 0,
    )


# -- helpers -------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load_program(path: str) -> IoProgram:
    return parse_program(_read(path), path)


def _load_input(path: Optional[str], io: Optional[IoProgram]) -> Input:
    if path is None:
        return Input()
    return parse_input(_read(path), io, path)


def _universe(cfg: CliConfig, base: Universe, numerals=()) -> Universe:
    lo = base.lo if cfg.int_min is None else cfg.int_min
    hi = base.hi if cfg.int_max is None else cfg.int_max
    if lo > hi:
        raise UsageError(f"empty integer range [{lo}, {hi}]")
    u = Universe(base.symbols | frozenset(cfg.consts), lo, hi)
    outside = sorted({n for n in numerals if not lo <= n <= hi})
    if outside:
        shown = ", ".join(str(n) for n in outside)
        print(f"warning: numerals {shown} lie outside the universe {u}; results are bounded by it", file=sys.stderr)
    return u


def _numerals(*things) -> set:
    out = set()
    for x in things:
        out |= {c.value for c in constants(x) if isinstance(c, Num)}
    return out


def _program_universe(cfg: CliConfig, io: IoProgram, inp: Input) -> Universe:
    base = default_universe(io.program, inp, cfg.margin, io.placeholders)
    return _universe(cfg, base, _numerals(io.program, inp.atoms) | {v.value for v in inp.valuation.values() if isinstance(v, Num)})


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _emit_report(report, args) -> int:
    print(_dump(report.to_json(timings=args.timings)))
    return report.exit_code


def _models_text(models) -> str:
    if not models:
        return "UNSATISFIABLE"
    lines = []
    for i, m in enumerate(models, 1):
        lines.append(f"Answer {i}: {format_atoms(m)}")
    return "\n".join(lines)


def _cycle_text(cycle, label=str) -> str:
    nodes = [label(cycle[0][0])] + [label(b) for _, b in cycle]
    return " -> ".join(nodes)


# -- commands ---------------------------------------------------------------------


def cmd_eval(args, cfg) -> int:
    t = parse_term(args.term)
    print(format_values(eval_term(t)))
    return 0


def cmd_parse(args, cfg) -> int:
    print(_dump(io_program_to_json(_load_program(args.file))))
    return 0


def cmd_ground(args, cfg) -> int:
    io = _load_program(args.file)
    inp = _load_input(args.input, io)
    u = _program_universe(cfg, io, inp)
    fs = tau_program(program_for_input(io, inp), u, clip=args.clip)
    if cfg.fmt == "json":
        print(_dump({"universe": u.to_json(), "formulas": [str(f) for f in fs]}))
    else:
        print(f"% universe {u}")
        for f in fs:
            print(f)
    return 0


def cmd_stable(args, cfg) -> int:
    io = _load_program(args.file)
    inp = _load_input(args.input, io)
    u = _program_universe(cfg, io, inp)
    kwargs = {} if cfg.limit is None else {"limit": cfg.limit}
    models = stable_models(tau_program(program_for_input(io, inp), u), **kwargs)
    _print_models(models, u, cfg)
    return 0


def cmd_iomodels(args, cfg) -> int:
    io = _load_program(args.file)
    inp = _load_input(args.input, io)
    u = _program_universe(cfg, io, inp)
    _print_models(io_models(io, inp, u, cfg.limit), u, cfg)
    return 0


def _print_models(models, u, cfg) -> None:
    if cfg.fmt == "json":
        print(_dump({"universe": u.to_json(), "models": [[str(a) for a in sorted_atoms(m)] for m in models]}))
    else:
        print(_models_text(models))


def cmd_translate(args, cfg) -> int:
    io = _load_program(args.file)
    gamma = fol.tau_star(io.program)
    if cfg.fmt == "json":
        print(_dump(fol.to_json(gamma)))
    else:
        for s in gamma.sentences:
            print(fol.format_formula(s, ascii=args.ascii))
    return 0


def cmd_complete(args, cfg) -> int:
    io = _load_program(args.file)
    comp = fol.complete_io(io)
    if cfg.fmt == "json":
        print(_dump(fol.to_json(comp)))
    else:
        print(fol.format_so(comp, ascii=args.ascii))
    return 0


def cmd_tight(args, cfg) -> int:
    io = _load_program(args.file)
    g = pred_graph(io.program)
    if cfg.fmt == "dot":
        print(to_dot(g, "predicates"), end="")
        return 0 if find_cycle(g) is None else 1
    cycle = find_cycle(g)
    if cycle is None:
        print("TIGHT")
        return 0
    print(f"NOT TIGHT: cycle {_cycle_text(cycle, format_symbol)}")
    return 1


def cmd_locally_tight(args, cfg) -> int:
    io = _load_program(args.file)
    inp = _load_input(args.input, io)
    u = _program_universe(cfg, io, inp)
    if cfg.fmt == "dot":
        verdict = is_locally_tight(io, inp, u)
        print(to_dot(atom_graph(io, inp, u), "atoms"), end="")
        return 0 if verdict.ok else 1
    verdict = is_locally_tight(io, inp, u)
    if isinstance(verdict, TightShortcut):
        print("LOCALLY TIGHT (program is tight)")
        return 0
    if isinstance(verdict, CycleFound):
        print(f"NOT LOCALLY TIGHT: cycle {_cycle_text(verdict.cycle)}")
        for rule in verdict.provenance:
            print(f"  via {rule}")
        return 1
    print(f"LOCALLY TIGHT over {u}")
    return 0


# -- verify ------------------------------------------------------------------------


def _random_suite(name: str, args) -> int:
    suite = SUITES[name]
    report = suite(args.random, args.seed) if args.random else suite(seed=args.seed)
    return _emit_report(report, args)


def cmd_verify_thm1(args, cfg) -> int:
    if args.random is not None or args.file is None:
        if args.file is not None:
            raise UsageError("give either FILE or --random, not both")
        return _random_suite("thm1", args)
    io = _load_program(args.file)
    if io.placeholders:
        raise UsageError("theorem 1 needs a program without placeholders")
    u = _universe(cfg, default_universe(io.program, None, cfg.margin), _numerals(io.program))
    return _emit_report(verify_theorem1(io.program, u, clip=not args.no_clip), args)


def cmd_verify_thm2(args, cfg) -> int:
    if args.random is not None:
        return _random_suite("thm2", args)
    if args.file is None or args.input is None or args.public is None:
        raise UsageError("verify thm2 needs FILE, --input and --public (or --random)")
    io = _load_program(args.file)
    inp = _load_input(args.input, io)
    public = parse_input(_read(args.public), None, args.public).atoms
    u = _program_universe(cfg, io, inp)
    witness = None
    if args.witness:
        witness = _load_witness(args.witness)
    return _emit_report(verify_theorem2(io, inp, public, u, witness), args)


def _load_witness(path: str) -> dict:
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON: {e}") from None
    out = {}
    for name, tuples in data.items():
        rows = []
        for row in tuples:
            items = row if isinstance(row, list) else [row]
            rows.append(tuple(parse_term(str(x)) for x in items))
        out[name] = rows
    return out


def _symbols_arg(text: Optional[str]) -> Optional[frozenset]:
    if not text:
        return None
    out = set()
    for part in text.split(","):
        name, _, arity = part.strip().partition("/")
        if not name or not arity.isdigit():
            raise UsageError(f"bad predicate symbol {part!r}; expected name/arity")
        out.add((name, int(arity)))
    return frozenset(out)


def cmd_verify_main_lemma(args, cfg) -> int:
    if args.random is not None:
        return _random_suite("main-lemma", args)
    if args.file is None or args.interp is None:
        raise UsageError("verify main-lemma needs THEORY and --interp (or --random)")
    sentences = parse_theory(_read(args.file), args.file)
    intensional = _symbols_arg(args.intensional)
    if intensional is None:
        intensional = frozenset(
            fol.split_completable(s)[2].symbol
            for s in sentences
            if isinstance(fol.split_completable(s)[2], fol.PredAtom)
        )
    gamma = fol.CompletableSet(tuple(sentences), intensional)
    interp = parse_input(_read(args.interp), None, args.interp)
    j = frozenset(a for a in interp.atoms if a.symbol in intensional)
    ext = frozenset(a for a in interp.atoms if a.symbol not in intensional)
    valued = fol.substitute_constants(gamma, interp.valuation) if interp.valuation else gamma
    consts = fol.formula_constants(fol.conj(valued.sentences))
    base = default_universe(None, Input({}, interp.atoms), cfg.margin)
    syms = {c.name for c in consts if isinstance(c, Sym)} - set(interp.valuation)
    nums = {c.value for c in consts if isinstance(c, Num)}
    if nums:
        base = Universe(base.symbols, min(base.lo, min(nums) - cfg.margin), max(base.hi, max(nums) + cfg.margin))
    u = _universe(cfg, Universe(base.symbols | frozenset(syms), base.lo, base.hi))
    return _emit_report(verify_main_lemma(gamma, j, u, interp.valuation, ext), args)


def cmd_verify_equiv(args, cfg) -> int:
    io1, io2 = _load_program(args.file), _load_program(args.file2)
    assumption = fol.conj(parse_theory(_read(args.assume), args.assume)) if args.assume else fol.TOP
    if args.domain is None:
        raise UsageError("verify equiv needs --domain")
    try:
        data = json.loads(_read(args.domain))
    except json.JSONDecodeError as e:
        raise UsageError(f"{args.domain}: invalid JSON: {e}") from None
    dom = Domain.from_json(data, io1)
    u = None
    if cfg.int_min is not None or cfg.int_max is not None or cfg.consts:
        inputs = list(dom.inputs())
        base = default_universe(io1.program | io2.program, inputs[-1] if inputs else None, cfg.margin, io1.placeholders)
        u = _universe(cfg, base)
    report = check_equivalence(
        io1, io2, assumption, dom, u, max_inputs=args.max_inputs, stop_at_first=not args.all_counterexamples
    )
    return _emit_report(report, args)


def cmd_verify_suite(args, cfg) -> int:
    return _random_suite(args.suite, args)


# -- argument parsing ---------------------------------------------------------------


def _universe_options(p):
    g = p.add_argument_group("universe")
    g.add_argument("--int-min", type=int, help="smallest integer of the universe")
    g.add_argument("--int-max", type=int, help="largest integer of the universe")
    g.add_argument("--margin", type=int, default=1, help="integers added beyond the extreme numerals (default 1)")
    g.add_argument("--const", action="append", metavar="A,B,...", help="extra symbolic constants")


def _report_options(p):
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="mgtc", description="Mini-gringo programs: grounding, stable models, completion, tightness.")
    top.add_argument("--version", action="version", version=f"mgtc {__version__}")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="value set of a ground term")
    p.add_argument("term")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("parse", help="abstract syntax tree as JSON")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    for name, func, needs_input, help_text in (
        ("ground", cmd_ground, False, "propositional image of the program"),
        ("stable", cmd_stable, False, "stable models"),
        ("iomodels", cmd_iomodels, True, "io-models for an input"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--input", required=needs_input, help="input file (.in)")
        p.add_argument("--format", choices=["text", "json"], default="text")
        if name == "ground":
            p.add_argument("--clip", action="store_true", help="clip value sets to the universe")
        else:
            p.add_argument("--limit", type=int, help="maximum number of undetermined atoms to enumerate")
        _universe_options(p)
        p.set_defaults(func=func)

    for name, func, help_text in (
        ("translate", cmd_translate, "first-order translation of each rule"),
        ("complete", cmd_complete, "second-order completion of the io-program"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--ascii", action="store_true", help="ASCII connectives instead of UTF-8")
        _universe_options(p)
        p.set_defaults(func=func)

    p = sub.add_parser("tight", help="tightness of the predicate dependency graph")
    p.add_argument("file")
    p.add_argument("--format", choices=["text", "dot"], default="text")
    _universe_options(p)
    p.set_defaults(func=cmd_tight)

    p = sub.add_parser("locally-tight", help="local tightness for an input")
    p.add_argument("file")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["text", "dot"], default="text")
    _universe_options(p)
    p.set_defaults(func=cmd_locally_tight)

    p = sub.add_parser("verify", help="check a theorem instance and print a JSON report")
    vsub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)

    q = vsub.add_parser("thm1", help="stable models via τ versus τ*")
    q.add_argument("file", nargs="?")
    q.add_argument("--no-clip", action="store_true", help="do not clip value sets to the universe")
    q.add_argument("--random", type=int, metavar="N", help="run N random programs instead")
    q.add_argument("--seed", type=int, default=0)
    _universe_options(q)
    _report_options(q)
    q.set_defaults(func=cmd_verify_thm1)

    q = vsub.add_parser("thm2", help="io-model versus completion for a public set")
    q.add_argument("file", nargs="?")
    q.add_argument("--input")
    q.add_argument("--public", help="file with the public atoms as facts")
    q.add_argument("--witness", help="JSON object mapping predicate variables to tuples")
    q.add_argument("--random", type=int, metavar="N", help="run N random io-programs instead")
    q.add_argument("--seed", type=int, default=0)
    _universe_options(q)
    _report_options(q)
    q.set_defaults(func=cmd_verify_thm2)

    q = vsub.add_parser("main-lemma", help="stable versus completion for a completable theory")
    q.add_argument("file", nargs="?", help="theory file (.fo)")
    q.add_argument("--interp", help="interpretation file (.in); #let fixes object constants")
    q.add_argument("--intensional", help="intensional symbols, e.g. p/1,q/2 (default: defined symbols)")
    q.add_argument("--random", type=int, metavar="N", help="run N random ground completable sets instead")
    q.add_argument("--seed", type=int, default=0)
    _universe_options(q)
    _report_options(q)
    q.set_defaults(func=cmd_verify_main_lemma)

    q = vsub.add_parser("equiv", help="io-model equivalence on a finite input domain")
    q.add_argument("file")
    q.add_argument("file2")
    q.add_argument("--assume", help="assumption theory (.fo) over input symbols")
    q.add_argument("--domain", help="domain JSON: valuations and an input-atom base")
    q.add_argument("--max-inputs", type=int, default=4096, help="cap on the domain size (default 4096)")
    q.add_argument("--all-counterexamples", action="store_true", help="do not stop at the first difference")
    _universe_options(q)
    _report_options(q)
    q.set_defaults(func=cmd_verify_equiv)

    q = vsub.add_parser("suite", help="a named randomized suite")
    q.add_argument("suite", choices=sorted(SUITES))
    q.add_argument("--random", type=int, metavar="N", help="number of cases (suite default otherwise)")
    q.add_argument("--seed", type=int, default=0)
    _universe_options(q)
    _report_options(q)
    q.set_defaults(func=cmd_verify_suite)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # a term such as -7/2 is not an option
    if len(argv) == 2 and argv[0] == "eval" and argv[1].startswith("-") and argv[1] not in ("-h", "--help"):
        argv.insert(1, "--")
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
    except (UsageError, SyntaxValidationError, EnumerationLimitError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
