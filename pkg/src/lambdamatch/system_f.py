"""System F in PTS presentation: one sort ``Prop``, products over terms and
over ``Prop``, Church numerals and their recognition."""

from __future__ import annotations

from typing import List, Optional

from .normalize import DEFAULT_FUEL, normalize, reduce_once
from .surface import print_term
from .terms import (
    CHURCH_NAT, PROP, App, Context, IllTyped, KernelError, Lam, Pi, RecT, Sort,
    SuccT, SystemTag, Term, Var, ZeroT, apply, arrow, check_system,
    instantiate, shift, spine,
)


class PreconditionError(KernelError):
    """An operation was called outside its stated precondition."""


class ContextError(IllTyped):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(message, rule="context")


def _nf(t: Term) -> Term:
    return normalize(t, SystemTag.F, DEFAULT_FUEL).term


def _show(t: Term, types: List[Term]) -> str:
    return print_term(t, Context(tuple(("?", ty) for ty in types)))


class _Checker:
    """Type inference over a stack of declared types (outermost first)."""

    def infer(self, types: List[Term], t: Term) -> Term:
        if isinstance(t, Sort):
            raise IllTyped("Prop has no type", t, "sort")
        if isinstance(t, Var):
            if t.index >= len(types):
                raise IllTyped(f"unbound variable #{t.index}", t, "var")
            return shift(types[-1 - t.index], t.index + 1)
        if isinstance(t, Pi):
            if not isinstance(t.dom, Sort):
                self.expect_prop(types, t.dom, "product")
            self.expect_prop(types + [t.dom], t.cod, "product")
            return PROP
        if isinstance(t, Lam):
            if not isinstance(t.ann, Sort):
                self.expect_prop(types, t.ann, "abstraction")
            inner = types + [t.ann]
            body_ty = self.infer(inner, t.body)
            self.expect_prop(inner, body_ty, "abstraction")
            return Pi(t.hint, t.ann, body_ty)
        if isinstance(t, App):
            fn_ty = _nf(self.infer(types, t.fn))
            if not isinstance(fn_ty, Pi):
                raise IllTyped(
                    f"function position has type {_show(fn_ty, types)}, not a product",
                    t, "application")
            arg_ty = self.infer(types, t.arg)
            # conversion: domain and argument type compared up to beta
            if _nf(arg_ty) != _nf(fn_ty.dom):
                raise IllTyped(
                    f"argument has type {_show(arg_ty, types)}, "
                    f"expected {_show(fn_ty.dom, types)}", t, "application")
            return _nf(instantiate(fn_ty.cod, t.arg))
        raise IllTyped(f"{type(t).__name__} is not a System F construct", t, "syntax")

    def expect_prop(self, types: List[Term], t: Term, rule: str) -> None:
        ty = _nf(self.infer(types, t))
        if not isinstance(ty, Sort):
            raise IllTyped(f"{_show(t, types)} is not a type (it has type {_show(ty, types)})",
                           t, rule)


def _check_context(g: Context) -> List[Term]:
    checker = _Checker()
    types: List[Term] = []
    for i, (name, ty) in enumerate(g.entries):
        try:
            check_system(ty, SystemTag.F)
            if not isinstance(ty, Sort):
                checker.expect_prop(types, ty, "context")
        except KernelError as exc:
            raise ContextError(f"entry {i} ({name}) is not well-formed: {exc}", i) from exc
        types.append(ty)
    return types


def check_context_f(g: Context) -> bool:
    """True iff ``g`` is built by the three context-formation rules."""
    return context_error_f(g) is None


def context_error_f(g: Context) -> Optional[ContextError]:
    """The error for the first offending entry, or ``None``."""
    try:
        _check_context(g)
    except ContextError as exc:
        return exc
    return None


def typecheck_f(g: Context, t: Term) -> Term:
    """The beta-normal type of ``t`` in ``g``; raises :class:`IllTyped`."""
    check_system(t, SystemTag.F)
    types = _check_context(g)
    return _nf(_Checker().infer(types, t))


# ---------------------------------------------------------------------------
# Numerals


def church(n: int) -> Term:
    """``fun P:Prop. fun x:P. fun f:P -> P. f (... (f x))`` with n f's."""
    if n < 0:
        raise ValueError("numerals are natural numbers")
    body: Term = Var(1, "x")
    for _ in range(n):
        body = App(Var(0, "f"), body)
    return Lam("P", PROP, Lam("x", Var(0, "P"), Lam("f", arrow(Var(1, "P"), Var(1, "P")), body)))


IDENTITY_NAT = Lam("y", CHURCH_NAT, Var(0, "y"))


def probe_f(t: Term) -> Term:
    """``t Nat 0 (fun y:Nat. y)``, unevaluated."""
    return apply(t, CHURCH_NAT, church(0), IDENTITY_NAT)


def _count_spine(u: Term) -> Optional[int]:
    # (f ... (f x)) with f = #0, x = #1
    n = 0
    while isinstance(u, App) and u.fn == Var(0):
        u = u.arg
        n += 1
    return n if u == Var(1) else None


def recognize_numeral_f(g: Context, t: Term, fuel: int = DEFAULT_FUEL) -> Optional[int]:
    """Count of ``f`` applications in the normal form of ``t P x f``.

    Requires ``t`` normal and of type ``Nat`` in ``g``; returns ``None`` when
    the normal form is not a spine ``f (... (f x))``.
    """
    if reduce_once(t, SystemTag.F) is not None:
        raise PreconditionError("recognize_numeral_f expects a normal term")
    try:
        ty = typecheck_f(g, t)
    except IllTyped as exc:
        raise PreconditionError(f"term is ill-typed: {exc}") from exc
    if ty != CHURCH_NAT:
        raise PreconditionError(f"term has type {print_term(ty, g)}, expected Nat")
    probe = apply(shift(t, 3), Var(2, "P"), Var(1, "x"), Var(0, "f"))
    u = normalize(probe, SystemTag.F, fuel).term
    return _count_spine(u)


# ---------------------------------------------------------------------------
# Shapes


def classify_shape(t: Term) -> str:
    """``abstraction``, ``product``, ``atomic`` or ``other`` for a normal term.

    Atomic means a spine whose head is a variable or a sort (or, in System T,
    one of the constants ``O``, ``S``, ``Rec[..]``).
    """
    if isinstance(t, Lam):
        return "abstraction"
    if isinstance(t, Pi):
        return "product"
    head, _ = spine(t)
    if isinstance(head, (Var, Sort, ZeroT, SuccT, RecT)):
        return "atomic"
    return "other"
