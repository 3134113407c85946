"""Goedel's System T: simple types over ``Nat`` with ``O``, ``S`` and ``Rec``."""

from __future__ import annotations

from typing import Optional

from .terms import (
    App, Context, IllTyped, KernelError, Lam, NAT_T, NatT, Pi, RecT, SUCC, SuccT,
    SystemTag, Term, Var, ZERO, ZeroT, apply, arrow, check_system,
    spine,
)
from .surface import print_term


class TypeErrorT(IllTyped):
    """Ill-typed System T term."""


def recursor_contract(motive: Term, base: Term, step: Term, n: Term) -> Optional[Term]:
    """Contract ``Rec[motive] base step n`` if ``n`` is ``O`` or ``S x``."""
    if isinstance(n, ZeroT):
        return base
    if isinstance(n, App) and isinstance(n.fn, SuccT):
        x = n.arg
        return apply(step, x, apply(RecT(motive), base, step, x))
    return None


def step_recursor(t: Term) -> Optional[Term]:
    """One recursor step at the root of ``t``, or ``None`` when stuck."""
    head, args = spine(t)
    if not isinstance(head, RecT) or len(args) < 3:
        return None
    contracted = recursor_contract(head.motive, args[0], args[1], args[2])
    if contracted is None:
        return None
    return apply(contracted, *args[3:])


def t_numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are natural numbers")
    t = ZERO
    for _ in range(n):
        t = App(SUCC, t)
    return t


def recognize_numeral_t(t: Term) -> Optional[int]:
    """``n`` if ``t`` is literally ``S (... (S O))``, else ``None``."""
    n = 0
    while isinstance(t, App) and isinstance(t.fn, SuccT):
        t = t.arg
        n += 1
    return n if isinstance(t, ZeroT) else None


def probe_t(t: Term) -> Term:
    """``Rec[Nat] O (fun y:Nat. fun z:Nat. z) t``, unevaluated."""
    keep_second = Lam("y", NAT_T, Lam("z", NAT_T, Var(0, "z")))
    return apply(RecT(NAT_T), ZERO, keep_second, t)


def recursor_type(motive: Term) -> Term:
    """``T -> (Nat -> T -> T) -> Nat -> T``."""
    return arrow(motive, arrow(arrow(NAT_T, arrow(motive, motive)), arrow(NAT_T, motive)))


def is_simple_type(t: Term) -> bool:
    """``Nat`` and arrows between simple types; these are always closed."""
    if isinstance(t, NatT):
        return True
    if isinstance(t, Pi):
        return t.cod.fvb == 0 and is_simple_type(t.dom) and is_simple_type(t.cod)
    return False


def _require_type(ty: Term, where: Term) -> None:
    if not is_simple_type(ty):
        raise TypeErrorT(f"{print_term(ty)} is not a simple type", where)


def check_context_t(g: Context) -> bool:
    """True iff every declared type is a simple type."""
    try:
        _check_context(g)
    except KernelError:
        return False
    return True


def _check_context(g: Context) -> None:
    for name, ty in g.entries:
        check_system(ty, SystemTag.T)
        if not is_simple_type(ty):
            raise TypeErrorT(f"declaration {name} has a non-simple type", ty)


def _infer(types, t: Term) -> Term:
    if isinstance(t, Var):
        if t.index >= len(types):
            raise TypeErrorT(f"unbound variable #{t.index}", t)
        return types[-1 - t.index]
    if isinstance(t, ZeroT):
        return NAT_T
    if isinstance(t, SuccT):
        return arrow(NAT_T, NAT_T)
    if isinstance(t, RecT):
        _require_type(t.motive, t)
        return recursor_type(t.motive)
    if isinstance(t, Lam):
        _require_type(t.ann, t)
        body_ty = _infer(types + [t.ann], t.body)
        return arrow(t.ann, body_ty)
    if isinstance(t, App):
        fn_ty = _infer(types, t.fn)
        if not isinstance(fn_ty, Pi):
            raise TypeErrorT(f"cannot apply a term of type {print_term(fn_ty)}", t)
        arg_ty = _infer(types, t.arg)
        if arg_ty != fn_ty.dom:
            raise TypeErrorT(
                f"argument has type {print_term(arg_ty)}, expected {print_term(fn_ty.dom)}", t)
        # closed codomain: the arrow binder is unused
        return fn_ty.cod
    raise TypeErrorT(f"{type(t).__name__} is a type, not a System T term", t)


def typecheck_t(g: Context, t: Term) -> Term:
    """Simple type of ``t`` in ``g``."""
    check_system(t, SystemTag.T)
    _check_context(g)
    return _infer([ty for _, ty in g.entries], t)


__all__ = [
    "TypeErrorT", "check_context_t", "is_simple_type", "probe_t",
    "recognize_numeral_t", "recursor_contract", "recursor_type",
    "step_recursor", "t_numeral", "typecheck_t",
]
