"""Compile primitive recursive functions into closed lambda terms.

System T maps primitive recursion straight onto ``Rec[Nat]``.  System F has
only Church iteration, so ``PrimRec(base, step)`` iterates over pairs
``(i, f(xs, i))`` and projects the second component at the end.  Every
compiled subterm is closed, so it can be dropped under binders unshifted.

No optimization is attempted; term size grows with the definition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List

from .prf import Comp, PrfExpr, PrimRec, Proj, Succ, Zero
from .surface import parse_term
from .system_f import church
from .system_t import t_numeral
from .terms import (
    CHURCH_NAT, NAT_T, SUCC, App, Lam, RecT, SystemTag, Term, Var, apply, arrow,
)


@dataclass(frozen=True)
class CompiledFn:
    source: PrfExpr
    system: SystemTag
    term: Term
    type: Term

    @property
    def arity(self) -> int:
        return self.source.arity


def nat_type(system) -> Term:
    return NAT_T if SystemTag.coerce(system) is SystemTag.T else CHURCH_NAT


def numeral(n: int, system) -> Term:
    return t_numeral(n) if SystemTag.coerce(system) is SystemTag.T else church(n)


def function_type(arity: int, system) -> Term:
    nat = nat_type(system)
    ty = nat
    for _ in range(arity):
        ty = arrow(nat, ty)
    return ty


def _f(source: str) -> Term:
    return parse_term(source, SystemTag.F)


# Church-encoded pairs of naturals, used only by the System F scheme.
_PAIR_TYPE = "Pi C:Prop. (Nat -> Nat -> C) -> C"
PAIR_TYPE_F = _f(_PAIR_TYPE)
MK_PAIR_F = _f("fun a:Nat. fun b:Nat. fun C:Prop. fun k:Nat -> Nat -> C. k a b")
FST_F = _f(f"fun p:{_PAIR_TYPE}. p Nat (fun a:Nat. fun b:Nat. a)")
SND_F = _f(f"fun p:{_PAIR_TYPE}. p Nat (fun a:Nat. fun b:Nat. b)")
SUCC_F = _f("fun n:Nat. fun P:Prop. fun x:P. fun f:P -> P. f (n P x f)")


def _lams(n: int, nat: Term, body: Term) -> Term:
    for i in range(n, 0, -1):
        body = Lam(f"x{i}", nat, body)
    return body


def _vars(n: int, depth: int) -> List[Term]:
    # x1..xn bound outermost, seen from `depth` binders deep
    return [Var(depth - i, f"x{i}") for i in range(1, n + 1)]


class _Compiler:
    def __init__(self, system: SystemTag):
        self.system = system
        self.nat = nat_type(system)
        self.cache: Dict[int, Term] = {}
        self._keep = []

    def compile(self, f: PrfExpr) -> Term:
        hit = self.cache.get(id(f))
        if hit is not None:
            return hit
        term = self._build(f)
        self.cache[id(f)] = term
        self._keep.append(f)
        return term

    def _build(self, f: PrfExpr) -> Term:
        nat = self.nat
        if isinstance(f, Zero):
            return numeral(0, self.system)
        if isinstance(f, Succ):
            return SUCC if self.system is SystemTag.T else SUCC_F
        if isinstance(f, Proj):
            return _lams(f.n, nat, Var(f.n - f.i, f"x{f.i}"))
        if isinstance(f, Comp):
            n = f.arity
            xs = _vars(n, n)
            outer = self.compile(f.outer)
            inners = [apply(self.compile(g), *xs) for g in f.inners]
            return _lams(n, nat, apply(outer, *inners))
        if isinstance(f, PrimRec):
            return self._primrec(f)
        raise TypeError(f"not a primitive recursive expression: {f!r}")

    def _primrec(self, f: PrimRec) -> Term:
        n = f.base.arity
        base = self.compile(f.base)
        step = self.compile(f.step)
        y = Var(0, "y")
        base_at_xs = apply(base, *_vars(n, n + 1))
        if self.system is SystemTag.T:
            # fun k r. step xs k r   (under x1..xn, y, k, r)
            step_fn = Lam("k", NAT_T, Lam("r", NAT_T, apply(
                step, *_vars(n, n + 3), Var(1, "k"), Var(0, "r"))))
            body = apply(RecT(NAT_T), base_at_xs, step_fn, y)
        else:
            # iterate p -> (S (fst p), step xs (fst p) (snd p)) from (0, base xs)
            p = Var(0, "p")
            fst_p, snd_p = App(FST_F, p), App(SND_F, p)
            next_pair = apply(MK_PAIR_F, App(SUCC_F, fst_p),
                              apply(step, *_vars(n, n + 2), fst_p, snd_p))
            step_fn = Lam("p", PAIR_TYPE_F, next_pair)
            start = apply(MK_PAIR_F, church(0), base_at_xs)
            body = App(SND_F, apply(y, PAIR_TYPE_F, start, step_fn))
        return _lams(n + 1, self.nat, body)


def compile_prf(f: PrfExpr, system) -> CompiledFn:
    system = SystemTag.coerce(system)
    term = _Compiler(system).compile(f)
    return CompiledFn(f, system, term, function_type(f.arity, system))


def compile_to_f(f: PrfExpr) -> CompiledFn:
    return compile_prf(f, SystemTag.F)


def compile_to_t(f: PrfExpr) -> CompiledFn:
    return compile_prf(f, SystemTag.T)


__all__ = [
    "CompiledFn", "compile_prf", "compile_to_f", "compile_to_t", "function_type",
    "nat_type", "numeral",
]
