"""``lambdamatch`` command line.

Exit codes: 0 success or Found, 1 semantic failure (type error, failed
verification), 2 input error (unreadable file, parse error, wrong calculus),
3 fuel exhausted, 4 bound exhausted without a witness.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import List, Optional

from . import __version__
from .compile import compile_prf
from .normalize import DEFAULT_FUEL, FuelExhausted, normalize
from .prf import ArityError, PrfError, eval_prf, format_prf, parse_prf
from .reduction import (
    MatchingProblem, Polynomial, WitnessTypeError, gen_matching, hilbert_to_prf,
    solve_bounded, to_one_variable, verify_solution,
)
from .surface import ParseError, parse_context, parse_term, print_term
from .system_f import typecheck_f
from .system_t import typecheck_t
from .terms import Context, IllTyped, SystemTag, WrongCalculusError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_FUEL, EXIT_BOUND = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


class _Run:
    """Collects what was read and what was computed for one invocation."""

    def __init__(self, args):
        self.args = args
        self.inputs = []
        self.steps = 0
        self.started = time.perf_counter()

    @property
    def system(self) -> SystemTag:
        return SystemTag.coerce(self.args.system or "f")

    def read(self, path: str) -> str:
        try:
            if path == "-":
                text = sys.stdin.read()
            else:
                with open(path, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from exc
        self.inputs.append(text)
        return text

    def digest(self, argv: List[str]) -> str:
        blob = json.dumps({"argv": argv, "inputs": self.inputs}, sort_keys=True)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _term_source(run: _Run, args) -> str:
    if args.expr is not None:
        return args.expr
    if args.file is None:
        raise InputError("give a term file, '-' for stdin, or -e TERM")
    return run.read(args.file)


def _context(run: _Run, args) -> Context:
    return parse_context(args.context or "[]", run.system)


def _typecheck(g: Context, t, system: SystemTag):
    return typecheck_t(g, t) if system is SystemTag.T else typecheck_f(g, t)


def _load_problem(run: _Run, path: str) -> MatchingProblem:
    text = run.read(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not JSON: {exc}") from exc
    problem = MatchingProblem.from_json(data)
    if run.args.system is not None and SystemTag.coerce(run.args.system) is not problem.system:
        raise InputError(f"problem is for system {problem.system.value}, "
                         f"but --system {run.args.system} was given")
    return problem


def _load_polynomial(run: _Run, path: str) -> Polynomial:
    text = run.read(path).strip()
    if text.startswith("{"):
        return Polynomial.from_json(json.loads(text))
    return Polynomial.parse(text)


def _widen(p: Polynomial, nvars: int) -> Polynomial:
    # constants read from text have no variables; pad to the common width
    if p.nvars == nvars or p.nvars > 0:
        return p
    return Polynomial(nvars, tuple((m.coeff, tuple(m.exps) + (0,) * (nvars - p.nvars))
                                   for m in p.monomials))


# -- commands ---------------------------------------------------------------


def cmd_check(run: _Run, args):
    g = _context(run, args)
    t = parse_term(_term_source(run, args), run.system, g)
    ty = _typecheck(g, t, run.system)
    return EXIT_OK, {"type": print_term(ty, g)}, print_term(ty, g)


def cmd_norm(run: _Run, args):
    g = _context(run, args)
    t = parse_term(_term_source(run, args), run.system, g)
    r = normalize(t, run.system, args.fuel, eta=args.eta)
    run.steps = r.steps
    shown = print_term(r.term, g)
    return EXIT_OK, {"normal_form": shown, "steps": r.steps}, f"{shown}\nsteps: {r.steps}"


def cmd_prf(run: _Run, args):
    f = parse_prf(args.expr)
    if args.compile:
        c = compile_prf(f, args.compile)
        shown = print_term(c.term)
        return EXIT_OK, {"system": c.system.value, "term": shown,
                         "type": print_term(c.type)}, shown
    if args.eval is None:
        return EXIT_OK, {"expr": format_prf(f), "arity": f.arity}, \
            f"{format_prf(f)} : arity {f.arity}"
    value = eval_prf(f, args.eval, jets=not args.pure)
    return EXIT_OK, {"value": value}, str(value)


def cmd_gen(run: _Run, args):
    if args.prf is not None:
        if args.poly_p or args.poly_q:
            raise InputError("use either --prf or --poly-p/--poly-q")
        f = parse_prf(args.prf)
    else:
        if not (args.poly_p and args.poly_q):
            raise InputError("gen needs --prf EXPR or both --poly-p and --poly-q")
        p = _load_polynomial(run, args.poly_p)
        q = _load_polynomial(run, args.poly_q)
        width = max(p.nvars, q.nvars)
        f = hilbert_to_prf(_widen(p, width), _widen(q, width))
    if args.one_var:
        f = to_one_variable(f)
    problem = gen_matching(f, run.system)
    data = problem.to_json()
    text = json.dumps(data, indent=2)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc.strerror}") from exc
        return EXIT_OK, {"problem": data, "written": args.output}, f"wrote {args.output}"
    return EXIT_OK, {"problem": data}, text


def cmd_solve(run: _Run, args):
    problem = _load_problem(run, args.problem)
    verdict = solve_bounded(problem, args.bound, args.fuel, args.threads)
    run.steps = verdict.steps
    data = verdict.to_json()
    if verdict.status == "found":
        return EXIT_OK, data, f"Found {verdict.n}"
    return EXIT_BOUND, data, f"ExhaustedBound {verdict.bound}"


def cmd_verify(run: _Run, args):
    problem = _load_problem(run, args.problem)
    g = parse_context(args.context or "[]", problem.system)
    u = parse_term(args.witness, problem.system, g)
    ok = verify_solution(problem, g, u, args.fuel)
    return (EXIT_OK if ok else EXIT_FAIL), {"verified": ok}, "true" if ok else "false"


COMMANDS = {"check": cmd_check, "norm": cmd_norm, "prf": cmd_prf, "gen": cmd_gen,
            "solve": cmd_solve, "verify": cmd_verify}


# -- parser -------------------------------------------------------------------


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("expected a natural number")
    return value


def _global_flags(parser: argparse.ArgumentParser, top: bool) -> None:
    # on subcommands the defaults are suppressed so they don't clobber
    # values given before the subcommand name
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--system", choices=["f", "t"], default=d(None),
                        help="calculus (default f)")
    parser.add_argument("--fuel", type=_natural, default=d(DEFAULT_FUEL),
                        help="normalization step budget")
    parser.add_argument("--eta", action="store_true", default=d(False),
                        help="eta-contract normal forms")
    parser.add_argument("--json", action="store_true", default=d(False),
                        help="emit one JSON report")
    parser.add_argument("--threads", type=_natural, default=d(1),
                        help="worker processes for solve")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lambdamatch",
                                     description="Higher-order matching in System F and System T.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help):
        p = sub.add_parser(name, help=help)
        _global_flags(p, top=False)
        return p

    for name, help in (("check", "typecheck a term"), ("norm", "normalize a term")):
        p = command(name, help)
        p.add_argument("file", nargs="?", help="term file, or - for stdin")
        p.add_argument("-e", dest="expr", help="inline term")
        p.add_argument("--context", help="context such as [x:Nat; y:Nat]")

    p = command("prf", "evaluate or compile a primitive recursive expression")
    p.add_argument("expr")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--eval", nargs="*", type=_natural, metavar="N")
    mode.add_argument("--compile", choices=["f", "t"])
    p.add_argument("--pure", action="store_true", help="evaluate without native arithmetic")

    p = command("gen", "generate a matching problem")
    p.add_argument("--poly-p", help="left polynomial (JSON or text like 2*x1^2 + 3)")
    p.add_argument("--poly-q", help="right polynomial")
    p.add_argument("--prf", help="primitive recursive expression")
    p.add_argument("--one-var", action="store_true", help="pack variables with alpha")
    p.add_argument("-o", "--output")

    p = command("solve", "search numeral witnesses up to a bound")
    p.add_argument("problem")
    p.add_argument("--bound", type=_natural, required=True)

    p = command("verify", "check a proposed solution")
    p.add_argument("problem")
    p.add_argument("--witness", required=True)
    p.add_argument("--context")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    run = _Run(args)
    kind = None
    try:
        code, result, text = COMMANDS[args.command](run, args)
    except FuelExhausted as exc:
        code, kind, text = EXIT_FUEL, "fuel", str(exc)
        run.steps = exc.steps
    except (ParseError, WrongCalculusError, InputError, ArityError, PrfError,
            KeyError, ValueError) as exc:
        code, kind, text = EXIT_INPUT, "input", str(exc)
    except WitnessTypeError as exc:
        code, kind, text = EXIT_FAIL, "ill-typed witness", str(exc)
    except IllTyped as exc:
        code, kind, text = EXIT_FAIL, "type error", str(exc)
    if kind is not None:
        result = {"error": kind, "message": text}
        text = f"{kind}: {text}"

    if args.json:
        report = {
            "command": argv,
            "inputs_digest": run.digest(argv),
            "result": result,
            "exit_code": code,
            "steps": run.steps,
            "wall_time": round(time.perf_counter() - run.started, 6),
            "version": __version__,
        }
        print(json.dumps(report, sort_keys=True))
    else:
        print(text, file=sys.stderr if kind is not None else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
