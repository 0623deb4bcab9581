"""``ifg``: command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import algebra as alg
from .calculator import CalcError, evaluate_expression
from .enumeration import SizeGuardError, count_table, dsuit_carrier
from .model import StructureError, make_structure, space
from .semantics import (
    DEFAULT_EVAL_GUARD, DEFAULT_MEANING_GUARD, Evaluator, ResourceGuardError, meaning, sentence_status,
)
from .syntax import ParseError, SymbolError, is_core, parse, pretty
from .theorems import SUITES, run_suites
from .ualg import (
    FiniteAlgebra, NotClosedError, enumerate_subuniverses, generate_subuniverse, principal_congruence,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _formula_text(args) -> str:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return fh.read().strip()
    if args.formula is None:
        raise UsageError("a formula argument or --file is required")
    return args.formula


def _formula(args):
    phi = parse(_formula_text(args))
    if args.vars is not None:
        if args.vars < phi.nvars:
            raise UsageError(f"--vars {args.vars} is smaller than the {phi.nvars} variables the formula uses")
        phi = parse(_formula_text(args), args.vars)
    return phi


def _element_data(x: alg.Element) -> dict:
    sp = x.space
    return {
        "label": alg.element_label(x),
        "element": alg.format_element(x),
        "max_trumps": [sp.format_team(t) for t in sp.maximal_teams(x.plus)],
        "max_cotrumps": [sp.format_team(t) for t in sp.maximal_teams(x.minus)],
    }


def cmd_parse(args) -> int:
    phi = _formula(args)
    text = pretty(phi)
    _emit(args, f"{text}\nN = {phi.nvars}", {"formula": text, "nvars": phi.nvars, "core": is_core(phi.body)})
    return EXIT_OK


def cmd_eval(args) -> int:
    st = make_structure(args.structure)
    phi = _formula(args)
    if args.team is None:
        raise UsageError("eval needs --team")
    ev = Evaluator(st, phi, args.guard or DEFAULT_EVAL_GUARD)
    try:
        team = ev.space.parse_team(args.team)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    plus, minus = ev.plus(team), ev.minus(team)
    _emit(args, f"trump: {str(plus).lower()}\ncotrump: {str(minus).lower()}",
          {"team": ev.space.format_team(team), "trump": plus, "cotrump": minus})
    return EXIT_OK


def cmd_meaning(args) -> int:
    st = make_structure(args.structure)
    phi = _formula(args)
    x = meaning(st, phi, args.guard or DEFAULT_MEANING_GUARD)
    d = _element_data(x)
    text = "\n".join([
        "max trumps: {" + ", ".join(d["max_trumps"]) + "}",
        "max cotrumps: {" + ", ".join(d["max_cotrumps"]) + "}",
        f"element: {d['label']}",
    ])
    _emit(args, text, d)
    return EXIT_OK


def cmd_status(args) -> int:
    st = make_structure(args.structure)
    phi = _formula(args)
    status = sentence_status(st, phi, args.guard or DEFAULT_EVAL_GUARD)
    _emit(args, str(status), {"status": str(status)})
    return EXIT_OK


def _dims(args) -> tuple[int, int]:
    m = args.base if args.base is not None else make_structure(args.structure).universe_size
    return m, args.vars or 1


def cmd_algebra(args) -> int:
    m, nvars = _dims(args)
    st = make_structure(args.structure) if args.base is None else make_structure(str(m))
    x = evaluate_expression(_formula_text(args), m, nvars, st, args.guard or DEFAULT_MEANING_GUARD)
    d = _element_data(x)
    _emit(args, d["label"], d)
    return EXIT_OK


def cmd_count_suits(args) -> int:
    rows = count_table(args.max_m)
    widths = [max(len(h), *(len(str(r[k])) for r in rows)) for k, h in enumerate(("m", "2^m", "f(m)", "g(m)"))]
    lines = ["  ".join(h.rjust(w) for h, w in zip(("m", "2^m", "f(m)", "g(m)"), widths))]
    lines += ["  ".join(str(v).rjust(w) for v, w in zip(r, widths)) for r in rows]
    _emit(args, "\n".join(lines), [dict(zip(("m", "2^m", "f", "g"), r)) for r in rows])
    return EXIT_OK


def _full_algebra(args) -> FiniteAlgebra:
    m, nvars = _dims(args)
    return FiniteAlgebra(dsuit_carrier(m, nvars))


def cmd_subalgebras(args) -> int:
    full = _full_algebra(args)
    labels = full.labels()
    subs = enumerate_subuniverses(full)
    blocks = [[labels[i] for i in sorted(s)] for s in subs]
    text = "\n".join("{" + ", ".join(b) + "}" for b in blocks) + f"\n{len(subs)} subuniverses"
    _emit(args, text, {"count": len(subs), "subuniverses": blocks})
    return EXIT_OK


def cmd_congruence(args) -> int:
    m, nvars = _dims(args)
    if len(args.elements) != 2:
        raise UsageError("congruence needs exactly two element expressions")
    x, y = (evaluate_expression(e, m, nvars) for e in args.elements)
    if args.within:
        gens = [evaluate_expression(e, m, nvars) for e in args.within.split(",")]
        algebra = generate_subuniverse(gens + [x, y])
    else:
        algebra = _full_algebra(args)
    if x not in algebra or y not in algebra:
        raise UsageError("both elements must lie in the algebra")
    cg = principal_congruence(algebra, x, y)
    text = cg.format(algebra) + ("\ntotal" if cg.is_total else "\nnot total")
    labels = algebra.labels()
    _emit(args, text, {"blocks": [[labels[i] for i in b] for b in cg.blocks], "total": cg.is_total})
    return EXIT_OK


def cmd_verify(args) -> int:
    names = args.suites or ["all"]
    try:
        reports = run_suites(names, seed=args.seed)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    ok = all(r.passed for r in reports)
    if args.format == "json":
        print(json.dumps({"passed": ok, "seed": args.seed, "suites": [r.to_dict() for r in reports]}, indent=2))
    else:
        print("\n".join(r.to_text() for r in reports))
        print(f"overall: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--structure", default="2", help="builtin size (e.g. 2) or JSON file/text")
    common.add_argument("--vars", type=int, default=None, help="number of variables N")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--guard", type=int, default=None, help="largest m^N to enumerate")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="ifg", description="IFG logic and IFG-cylindric algebra toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def formula_cmd(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("formula", nargs="?")
        sp.add_argument("--file", help="read the formula from a UTF-8 file")
        sp.set_defaults(fn=fn)
        return sp

    formula_cmd("parse", cmd_parse, "parse and pretty-print a formula")
    formula_cmd("eval", cmd_eval, "decide trump/cotrump for a team").add_argument("--team")
    formula_cmd("meaning", cmd_meaning, "maximal trumps and cotrumps of a formula")
    formula_cmd("status", cmd_status, "truth value of a sentence")
    a = formula_cmd("algebra", cmd_algebra, "evaluate an algebra expression")
    a.add_argument("--base", type=int, help="universe size m (overrides --structure)")

    c = sub.add_parser("count-suits", parents=[common], help="count suits and double suits")
    c.add_argument("--max-m", type=int, default=5)
    c.set_defaults(fn=cmd_count_suits)

    s = sub.add_parser("subalgebras", parents=[common], help="list subuniverses of the double-suit algebra")
    s.add_argument("--base", type=int)
    s.set_defaults(fn=cmd_subalgebras)

    g = sub.add_parser("congruence", parents=[common], help="principal congruence Cg(X, Y)")
    g.add_argument("elements", nargs="+")
    g.add_argument("--base", type=int)
    g.add_argument("--within", help="comma-separated generators of the subalgebra to work in")
    g.set_defaults(fn=cmd_congruence)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suites", nargs="*", help=f"'all' or any of: {', '.join(SUITES)}")
    v.set_defaults(fn=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except (ResourceGuardError, SizeGuardError, NotClosedError) as exc:
        print(f"ifg: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ParseError, SymbolError, StructureError, CalcError, alg.DimensionError,
            FileNotFoundError, ValueError) as exc:
        print(f"ifg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
