"""Fuel-bounded normalization for both calculi.

The default strategy is leftmost-outermost (normal order), implemented as
"weak-head reduce, then normalize the pieces left to right".  That performs
exactly the redexes a one-step leftmost-outermost reducer would, in the same
order, so step counts match :func:`reduce_once` iterated to a fixpoint.

For System T the recursor rules are interleaved with beta.  A saturated
``Rec[M] a b n`` is only a redex once ``n`` is ``O`` or ``S x``; while it is
not, the leftmost redexes live in ``M``, ``a`` and ``b``, which are therefore
normalized before ``n`` is touched.

The ``innermost`` strategy normalizes arguments before contracting (right
to left) and exists to cross-check confluence.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

from .system_t import recursor_contract
from .terms import (
    App, KernelError, Lam, Pi, RecT, SystemTag, Term, Var, apply,
    check_system, instantiate, occurs, shift, spine,
)

DEFAULT_FUEL = 10**6
_VAR0 = Var(0)
STRATEGIES = ("normal", "innermost")

if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


class FuelExhausted(KernelError):
    def __init__(self, fuel: int, steps: int):
        self.fuel = fuel
        self.steps = steps
        super().__init__(f"fuel exhausted after {steps} steps (budget {fuel})")


@dataclass(frozen=True)
class NormalForm:
    term: Term
    steps: int
    eta_applied: bool = False


class _Engine:
    def __init__(self, system: SystemTag, fuel: int):
        self.recursor = system is SystemTag.T
        self.fuel = fuel
        self.steps = 0
        # id -> term for results already known to be normal; the stored
        # reference keeps the id from being recycled.
        self.normal = {}

    def tick(self):
        if self.steps >= self.fuel:
            raise FuelExhausted(self.fuel, self.steps)
        self.steps += 1

    def _rec_parts(self, head, args):
        return self.recursor and isinstance(head, RecT) and len(args) >= 3

    # -- normal order -----------------------------------------------------

    def whnf(self, t: Term) -> Term:
        head, args = spine(t)
        # pending arguments, next one last, so a step never rebuilds the spine
        stack = args[::-1]
        changed = False
        while True:
            if isinstance(head, Lam) and stack:
                self.tick()
                head = instantiate(head.body, stack.pop())
            elif self._rec_parts(head, stack):
                a, b, n = stack[-1], stack[-2], stack[-3]
                # already a redex: it is the outermost one, fire it as is
                contracted = recursor_contract(head.motive, a, b, n)
                if contracted is None:
                    motive = self.nf(head.motive)
                    a, b = self.nf(a), self.nf(b)
                    n = self.whnf(n)
                    contracted = recursor_contract(motive, a, b, n)
                    if contracted is None:
                        stack[-3:] = [n, b, a]
                        return apply(RecT(motive), *reversed(stack))
                self.tick()
                del stack[-3:]
                head = contracted
            else:
                return apply(head, *reversed(stack)) if changed else t
            changed = True
            if isinstance(head, App):
                head, more = spine(head)
                stack.extend(reversed(more))

    def nf(self, t: Term) -> Term:
        if id(t) in self.normal:
            return t
        t = self.whnf(t)
        out = t
        if isinstance(t, Lam):
            ann = self.nf(t.ann)
            body = self.nf(t.body)
            if ann is not t.ann or body is not t.body:
                out = Lam(t.hint, ann, body)
        elif isinstance(t, Pi):
            dom = self.nf(t.dom)
            cod = self.nf(t.cod)
            if dom is not t.dom or cod is not t.cod:
                out = Pi(t.hint, dom, cod)
        elif isinstance(t, RecT):
            motive = self.nf(t.motive)
            if motive is not t.motive:
                out = RecT(motive)
        elif isinstance(t, App):
            head, args = spine(t)
            new_head = self.nf(head)
            new_args = [self.nf(a) for a in args]
            if new_head is not head or any(x is not y for x, y in zip(new_args, args)):
                out = apply(new_head, *new_args)
        self.normal[id(out)] = out
        return out

    # -- innermost ----------------------------------------------------------

    def nf_inner(self, t: Term) -> Term:
        if id(t) in self.normal:
            return t
        if isinstance(t, Lam):
            body = self.nf_inner(t.body)
            out = Lam(t.hint, self.nf_inner(t.ann), body)
        elif isinstance(t, Pi):
            cod = self.nf_inner(t.cod)
            out = Pi(t.hint, self.nf_inner(t.dom), cod)
        elif isinstance(t, RecT):
            out = RecT(self.nf_inner(t.motive))
        elif isinstance(t, App):
            arg = self.nf_inner(t.arg)
            fn = self.nf_inner(t.fn)
            if isinstance(fn, Lam):
                self.tick()
                return self.nf_inner(instantiate(fn.body, arg))
            if self.recursor:
                head, args = spine(fn)
                if isinstance(head, RecT) and len(args) == 2:
                    contracted = recursor_contract(head.motive, args[0], args[1], arg)
                    if contracted is not None:
                        self.tick()
                        return self.nf_inner(contracted)
            out = App(fn, arg)
        else:
            out = t
        self.normal[id(out)] = out
        return out


def eta_contract(t: Term) -> Term:
    """Bottom-up eta contraction ``fun x:A. f x  ~>  f`` (x not free in f)."""
    if isinstance(t, Lam):
        body = eta_contract(t.body)
        ann = eta_contract(t.ann)
        if isinstance(body, App) and body.arg == _VAR0 and not occurs(body.fn, 0):
            return shift(body.fn, -1)
        return Lam(t.hint, ann, body)
    if isinstance(t, Pi):
        return Pi(t.hint, eta_contract(t.dom), eta_contract(t.cod))
    if isinstance(t, App):
        return App(eta_contract(t.fn), eta_contract(t.arg))
    if isinstance(t, RecT):
        return RecT(eta_contract(t.motive))
    return t


def normalize(t: Term, system=SystemTag.F, fuel: int = DEFAULT_FUEL, eta: bool = False,
              strategy: str = "normal") -> NormalForm:
    """Reduce ``t`` to normal form, raising :class:`FuelExhausted` when the
    step budget runs out."""
    system = SystemTag.coerce(system)
    check_system(t, system)
    engine = _Engine(system, fuel)
    if strategy == "normal":
        out = engine.nf(t)
    elif strategy == "innermost":
        out = engine.nf_inner(t)
    else:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if eta:
        out = eta_contract(out)
    return NormalForm(out, engine.steps, eta)


def nf(t: Term, system=SystemTag.F, fuel: int = DEFAULT_FUEL) -> Term:
    return normalize(t, system, fuel).term


# ---------------------------------------------------------------------------
# One-step reference reducer


def reduce_once(t: Term, system=SystemTag.F) -> Optional[Term]:
    """Contract the leftmost-outermost redex of ``t``; ``None`` if normal.

    Quadratic when iterated, so only used for traces and as a test oracle for
    :func:`normalize`.
    """
    return _once(t, SystemTag.coerce(system) is SystemTag.T)


def _once(t: Term, recursor: bool) -> Optional[Term]:
    head, args = spine(t)
    if isinstance(head, Lam) and args:
        return apply(instantiate(head.body, args[0]), *args[1:])
    if recursor and isinstance(head, RecT) and len(args) >= 3:
        contracted = recursor_contract(head.motive, args[0], args[1], args[2])
        if contracted is not None:
            return apply(contracted, *args[3:])
    if args:
        r = _once(head, recursor)
        if r is not None:
            return apply(r, *args)
        for i, a in enumerate(args):
            r = _once(a, recursor)
            if r is not None:
                return apply(head, *args[:i], r, *args[i + 1:])
        return None
    if isinstance(t, Lam):
        r = _once(t.ann, recursor)
        if r is not None:
            return Lam(t.hint, r, t.body)
        r = _once(t.body, recursor)
        return None if r is None else Lam(t.hint, t.ann, r)
    if isinstance(t, Pi):
        r = _once(t.dom, recursor)
        if r is not None:
            return Pi(t.hint, r, t.cod)
        r = _once(t.cod, recursor)
        return None if r is None else Pi(t.hint, t.dom, r)
    if isinstance(t, RecT):
        r = _once(t.motive, recursor)
        return None if r is None else RecT(r)
    return None


def is_normal(t: Term, system=SystemTag.F) -> bool:
    return reduce_once(t, system) is None

