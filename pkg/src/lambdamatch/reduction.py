"""From Diophantine equations to higher-order matching problems.

``hilbert_to_prf`` turns ``P = Q`` into ``equal(P, Q) = 0``; ``to_one_variable``
packs the unknowns into the prime exponents of a single number;
``gen_matching`` turns a unary ``f`` into the problem

    a = Pair (probe x) (t x)        (x : Nat free)
    b = Pair 0 0

where ``t`` represents ``f`` and ``probe x`` normalizes to ``0`` exactly when
``x`` is a numeral.  The problem is solvable iff ``f`` has a zero, so
``solve_bounded`` can only ever search a finite prefix of candidates.
"""

from __future__ import annotations

import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .compile import compile_prf, nat_type, numeral
from .normalize import DEFAULT_FUEL, FuelExhausted, normalize
from .prf import ALPHA, ADD, EQUAL, MULT, POW, ArityError, Comp, PrfExpr, const, proj
from .surface import parse_context, parse_term, print_context, print_term
from .system_f import context_error_f, probe_f, typecheck_f
from .system_t import TypeErrorT, probe_t, typecheck_t
from .terms import (
    Context, IllTyped, KernelError, SystemTag, Term, apply, substitute,
)


# ---------------------------------------------------------------------------
# Polynomials


@dataclass(frozen=True)
class Monomial:
    coeff: int
    exps: Tuple[int, ...]


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with natural coefficients in ``x1 .. x{nvars}``."""

    nvars: int
    monomials: Tuple[Monomial, ...] = ()

    def __post_init__(self):
        mons = tuple(m if isinstance(m, Monomial) else Monomial(int(m[0]), tuple(m[1]))
                     for m in self.monomials)
        mons = tuple(Monomial(m.coeff, tuple(m.exps)) for m in mons)
        for m in mons:
            if m.coeff < 0 or any(e < 0 for e in m.exps):
                raise ValueError("coefficients and exponents must be natural numbers")
            if len(m.exps) != self.nvars:
                raise ValueError(f"monomial {m} does not have {self.nvars} exponents")
        object.__setattr__(self, "monomials", mons)

    def evaluate(self, xs: Sequence[int]) -> int:
        if len(xs) != self.nvars:
            raise ArityError(f"polynomial in {self.nvars} variables got {len(xs)} values")
        total = 0
        for m in self.monomials:
            term = m.coeff
            for x, e in zip(xs, m.exps):
                term *= x ** e
            total += term
        return total

    def to_prf(self) -> PrfExpr:
        """Sum of products built from ``add``, ``mult`` and ``pow``."""
        n = self.nvars
        total: Optional[PrfExpr] = None
        for m in self.monomials:
            factors: List[PrfExpr] = []
            if m.coeff != 1 or not any(m.exps):
                factors.append(const(m.coeff, n))
            for i, e in enumerate(m.exps, start=1):
                if e == 1:
                    factors.append(proj(i, n))
                elif e > 1:
                    factors.append(Comp(POW, (proj(i, n), const(e, n))))
            product = factors[0]
            for fac in factors[1:]:
                product = Comp(MULT, (product, fac))
            total = product if total is None else Comp(ADD, (total, product))
        return total if total is not None else const(0, n)

    def to_json(self) -> dict:
        return {"nvars": self.nvars,
                "monomials": [{"coeff": m.coeff, "exps": list(m.exps)} for m in self.monomials]}

    @classmethod
    def from_json(cls, data) -> "Polynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["nvars"]),
                   tuple(Monomial(int(m["coeff"]), tuple(int(e) for e in m["exps"]))
                         for m in data.get("monomials", [])))

    @classmethod
    def parse(cls, source: str, nvars: Optional[int] = None) -> "Polynomial":
        """Read sums of products like ``2*x1^2*x2 + x1 + 3``."""
        raw = []
        for chunk in source.replace(" ", "").split("+"):
            if not chunk:
                raise ValueError(f"empty term in {source!r}")
            coeff, powers = 1, {}
            for factor in chunk.split("*"):
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
                if m:
                    i = int(m.group(1))
                    if i < 1:
                        raise ValueError("variables are numbered from x1")
                    powers[i] = powers.get(i, 0) + int(m.group(2) or 1)
                elif factor.isdigit():
                    coeff *= int(factor)
                else:
                    raise ValueError(f"cannot read factor {factor!r}")
            raw.append((coeff, powers))
        width = max([max(p, default=0) for _, p in raw] + [nvars or 0])
        return cls(width, tuple(Monomial(c, tuple(p.get(i, 0) for i in range(1, width + 1)))
                                for c, p in raw))


def hilbert_to_prf(p: Polynomial, q: Polynomial) -> PrfExpr:
    """``f(xs) = equal(P(xs), Q(xs))``: zero exactly on solutions of P = Q."""
    if p.nvars != q.nvars:
        raise ArityError(f"polynomials have {p.nvars} and {q.nvars} variables")
    return Comp(EQUAL, (p.to_prf(), q.to_prf()))


def to_one_variable(f: PrfExpr) -> PrfExpr:
    """``g(x) = f(alpha(x, 1), ..., alpha(x, n))``."""
    n = f.arity
    if n < 1:
        raise ArityError("need a function of at least one argument")
    return Comp(f, tuple(Comp(ALPHA, (proj(1, 1), const(i, 1))) for i in range(1, n + 1)))


# ---------------------------------------------------------------------------
# Matching problems


class WitnessTypeError(IllTyped):
    """The proposed witness is not a well-typed natural in its context."""


_PAIR_SOURCE = "fun x:Nat. fun y:Nat. fun g:Nat -> Nat -> Nat. g x y"


def pair_term(system) -> Term:
    return parse_term(_PAIR_SOURCE, system)


def probe(t: Term, system) -> Term:
    return probe_t(t) if SystemTag.coerce(system) is SystemTag.T else probe_f(t)


@dataclass(frozen=True)
class MatchingProblem:
    """``a`` is typed in ``[x:Nat]``; ``b`` is closed."""

    system: SystemTag
    a: Term
    b: Term
    variable: str = "x"
    source: Optional[str] = None

    @property
    def context(self) -> Context:
        return Context(((self.variable, nat_type(self.system)),), self.system)

    def to_json(self) -> dict:
        data = {
            "system": self.system.value,
            "context": print_context(self.context),
            "a": print_term(self.a, self.context),
            "b": print_term(self.b),
        }
        if self.source is not None:
            data["source"] = self.source
        return data

    @classmethod
    def from_json(cls, data) -> "MatchingProblem":
        if isinstance(data, str):
            data = json.loads(data)
        system = SystemTag.coerce(data.get("system", "f"))
        ctx = parse_context(data.get("context", "[x:Nat]"), system)
        if len(ctx) != 1:
            raise ValueError("a matching problem has exactly one variable")
        a = parse_term(data["a"], system, ctx)
        b = parse_term(data["b"], system)
        return cls(system, a, b, ctx.entries[0][0], data.get("source"))


@dataclass(frozen=True)
class Solution:
    context: Context
    witness: Term


def gen_matching(f: PrfExpr, system=SystemTag.F) -> MatchingProblem:
    system = SystemTag.coerce(system)
    if f.arity != 1:
        raise ArityError(f"gen_matching needs a unary function, got arity {f.arity}")
    t = compile_prf(f, system).term
    x = parse_term("x", system, Context((("x", nat_type(system)),), system))
    pair = pair_term(system)
    zero = numeral(0, system)
    a = apply(pair, probe(x, system), apply(t, x))
    b = apply(pair, zero, zero)
    from .prf import format_prf

    return MatchingProblem(system, a, b, "x", format_prf(f))


def typecheck(g: Context, t: Term, system) -> Term:
    if SystemTag.coerce(system) is SystemTag.T:
        return typecheck_t(g, t)
    return typecheck_f(g, t)


def instantiate_problem(p: MatchingProblem, u: Term) -> Term:
    """``a[x <- u]``; ``u`` is scoped in whatever context it came from."""
    return substitute(p.a, 0, u)


def verify_solution(p: MatchingProblem, g: Context, u: Term,
                    fuel: int = DEFAULT_FUEL) -> bool:
    """Whether ``a[x <- u]`` and ``b`` have the same normal form in ``g``.

    Raises :class:`WitnessTypeError` if ``g`` is ill-formed or ``u`` is not
    of type ``Nat`` in ``g``.
    """
    g = Context(g.entries, p.system)
    if p.system is SystemTag.F:
        err = context_error_f(g)
        if err is not None:
            raise WitnessTypeError(str(err), rule="context")
    try:
        ty = typecheck(g, u, p.system)
    except IllTyped as exc:
        raise WitnessTypeError(f"witness is ill-typed: {exc}", u) from exc
    if ty != nat_type(p.system):
        raise WitnessTypeError(f"witness has type {print_term(ty, g)}, expected Nat", u)
    lhs = normalize(instantiate_problem(p, u), p.system, fuel).term
    rhs = normalize(p.b, p.system, fuel).term
    return lhs == rhs


# ---------------------------------------------------------------------------
# Bounded search


class SolverFuelError(FuelExhausted):
    def __init__(self, candidate: int, fuel: int, steps: int):
        self.candidate = candidate
        KernelError.__init__(
            self, f"candidate {candidate}: fuel exhausted after {steps} steps (budget {fuel})")
        self.fuel = fuel
        self.steps = steps


@dataclass
class SolverVerdict:
    bound: int
    steps: int = 0
    candidates: int = 0
    wall_time: float = 0.0

    status = "unknown"

    def stats(self) -> dict:
        return {"steps": self.steps, "candidates": self.candidates,
                "wall_time": round(self.wall_time, 6)}

    def to_json(self) -> dict:
        return {"status": self.status, "bound": self.bound, "stats": self.stats()}


@dataclass
class Found(SolverVerdict):
    n: int = 0
    solution: Optional[Solution] = None

    status = "found"

    def to_json(self) -> dict:
        data = super().to_json()
        data["witness"] = self.n
        if self.solution is not None:
            data["witness_term"] = print_term(self.solution.witness)
        return data


@dataclass
class ExhaustedBound(SolverVerdict):
    status = "exhausted"


def _check_candidate(p: MatchingProblem, n: int, target: Term, fuel: int) -> Tuple[bool, int]:
    try:
        r = normalize(instantiate_problem(p, numeral(n, p.system)), p.system, fuel)
    except FuelExhausted as exc:
        raise SolverFuelError(n, fuel, exc.steps) from None
    return r.term == target, r.steps


def _worker(payload):
    problem_json, n, fuel = payload
    p = MatchingProblem.from_json(problem_json)
    target = normalize(p.b, p.system, fuel).term
    try:
        return n, _check_candidate(p, n, target, fuel), None
    except SolverFuelError as exc:
        return n, None, (exc.fuel, exc.steps)


def solve_bounded(p: MatchingProblem, bound: int, fuel: int = DEFAULT_FUEL,
                  threads: int = 1) -> SolverVerdict:
    """Try the closed numerals ``0 .. bound`` in ascending order.

    Returns :class:`Found` with the least solving ``n`` or
    :class:`ExhaustedBound`.  The fuel budget is split evenly between
    candidates; running out aborts with :class:`SolverFuelError`.
    """
    if bound < 0:
        raise ValueError("bound must be a natural number")
    started = time.perf_counter()
    per_candidate = max(fuel // (bound + 1), 1)
    target = normalize(p.b, p.system, per_candidate).term
    total_steps = 0
    checked = 0

    def found(n):
        sol = Solution(Context(system=p.system), numeral(n, p.system))
        return Found(bound, total_steps, checked, time.perf_counter() - started, n, sol)

    if threads <= 1:
        for n in range(bound + 1):
            ok, steps = _check_candidate(p, n, target, per_candidate)
            total_steps += steps
            checked += 1
            if ok:
                return found(n)
    else:
        problem_json = json.dumps(p.to_json())
        payloads = [(problem_json, n, per_candidate) for n in range(bound + 1)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_worker, item) for item in payloads]
            try:
                # consume in ascending order so the least witness wins
                for fut in futures:
                    n, result, fuel_error = fut.result()
                    if fuel_error is not None:
                        raise SolverFuelError(n, *fuel_error)
                    ok, steps = result
                    total_steps += steps
                    checked += 1
                    if ok:
                        return found(n)
            finally:
                for fut in futures:
                    fut.cancel()
    return ExhaustedBound(bound, total_steps, checked, time.perf_counter() - started)


def verdict_from_json(data: Dict) -> SolverVerdict:
    stats = data.get("stats", {})
    common = (int(data["bound"]), int(stats.get("steps", 0)), int(stats.get("candidates", 0)),
              float(stats.get("wall_time", 0.0)))
    if data["status"] == "found":
        return Found(*common, n=int(data["witness"]))
    return ExhaustedBound(*common)


__all__ = [
    "ExhaustedBound", "Found", "MatchingProblem", "Monomial", "Polynomial", "Solution",
    "SolverFuelError", "SolverVerdict", "WitnessTypeError", "gen_matching", "hilbert_to_prf",
    "pair_term", "probe", "solve_bounded", "to_one_variable", "verify_solution",
]
