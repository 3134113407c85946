"""Nameless term representation shared by System F and System T.

Binders are de Bruijn indices; every binder keeps a name hint that is only
used for printing.  Name hints are excluded from ``==`` and ``hash``, so
structural equality of two terms *is* alpha-equivalence.

Each node caches ``fvb``, an upper bound on its free indices (all free
``Var(i)`` satisfy ``i < fvb``).  Shifting and substitution use it to skip
closed subterms, which keeps substitution of closed numerals O(1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple


class SystemTag(enum.Enum):
    F = "f"
    T = "t"

    @classmethod
    def coerce(cls, value) -> "SystemTag":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown system {value!r} (expected 'f' or 't')") from None


class KernelError(Exception):
    """Base class for all errors raised by the kernels."""


class WrongCalculusError(KernelError):
    pass


class IllTyped(KernelError):
    """Typing failure; ``subject`` is the offending subterm, ``rule`` the
    typing rule that could not be applied."""

    def __init__(self, message: str, subject=None, rule: str = ""):
        self.subject = subject
        self.rule = rule
        super().__init__(f"[{rule}] {message}" if rule else message)


class Term:
    __slots__ = ()
    fvb: int

    def __str__(self) -> str:
        from .surface import print_term

        return print_term(self)


def _set_fvb(node, value: int) -> None:
    object.__setattr__(node, "fvb", value)


@dataclass(frozen=True, slots=True)
class Sort(Term):
    """The sort ``Prop``."""

    fvb: int = field(default=0, init=False, repr=False, compare=False)


@dataclass(frozen=True, slots=True)
class Var(Term):
    index: int
    hint: str = field(default="x", compare=False)
    fvb: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("negative de Bruijn index")
        _set_fvb(self, self.index + 1)


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term
    fvb: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        _set_fvb(self, max(self.fn.fvb, self.arg.fvb))


@dataclass(frozen=True, slots=True)
class Lam(Term):
    hint: str = field(compare=False)
    ann: Term
    body: Term
    fvb: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        _set_fvb(self, max(self.ann.fvb, self.body.fvb - 1, 0))


@dataclass(frozen=True, slots=True)
class Pi(Term):
    hint: str = field(compare=False)
    dom: Term
    cod: Term
    fvb: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        _set_fvb(self, max(self.dom.fvb, self.cod.fvb - 1, 0))


@dataclass(frozen=True, slots=True)
class NatT(Term):
    """System T primitive type ``Nat``."""

    fvb: int = field(default=0, init=False, repr=False, compare=False)


@dataclass(frozen=True, slots=True)
class ZeroT(Term):
    fvb: int = field(default=0, init=False, repr=False, compare=False)


@dataclass(frozen=True, slots=True)
class SuccT(Term):
    fvb: int = field(default=0, init=False, repr=False, compare=False)


@dataclass(frozen=True, slots=True)
class RecT(Term):
    """The recursor ``Rec[motive]`` of type
    ``motive -> (Nat -> motive -> motive) -> Nat -> motive``."""

    motive: Term
    fvb: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        _set_fvb(self, self.motive.fvb)


PROP = Sort()
NAT_T = NatT()
ZERO = ZeroT()
SUCC = SuccT()

T_ONLY = (NatT, ZeroT, SuccT, RecT)

# Pi P:Prop. P -> (P -> P) -> P
CHURCH_NAT = Pi("P", PROP, Pi("_", Var(0), Pi("_", Pi("_", Var(1), Var(2)), Var(2))))


# ---------------------------------------------------------------------------
# Construction helpers


def arrow(dom: Term, cod: Term) -> Pi:
    """``dom -> cod``; ``cod`` is scoped outside the new binder."""
    return Pi("_", dom, shift(cod, 1))


def apply(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


def spine(t: Term) -> Tuple[Term, List[Term]]:
    """Split ``(h a1 ... an)`` into ``h`` and ``[a1, ..., an]``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def occurs(t: Term, index: int) -> bool:
    """Whether ``Var(index)`` occurs free in ``t``."""
    if t.fvb <= index:
        return False
    if isinstance(t, Var):
        return t.index == index
    if isinstance(t, App):
        return occurs(t.fn, index) or occurs(t.arg, index)
    if isinstance(t, Lam):
        return occurs(t.ann, index) or occurs(t.body, index + 1)
    if isinstance(t, Pi):
        return occurs(t.dom, index) or occurs(t.cod, index + 1)
    if isinstance(t, RecT):
        return occurs(t.motive, index)
    return False


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        yield from subterms(t.fn)
        yield from subterms(t.arg)
    elif isinstance(t, Lam):
        yield from subterms(t.ann)
        yield from subterms(t.body)
    elif isinstance(t, Pi):
        yield from subterms(t.dom)
        yield from subterms(t.cod)
    elif isinstance(t, RecT):
        yield from subterms(t.motive)


def size(t: Term) -> int:
    return sum(1 for _ in subterms(t))


# ---------------------------------------------------------------------------
# Shifting and substitution


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    """Add ``by`` to every free index ``>= cutoff``."""
    if by == 0 or t.fvb <= cutoff:
        return t
    if isinstance(t, Var):
        return Var(t.index + by, t.hint)
    if isinstance(t, App):
        return App(shift(t.fn, by, cutoff), shift(t.arg, by, cutoff))
    if isinstance(t, Lam):
        return Lam(t.hint, shift(t.ann, by, cutoff), shift(t.body, by, cutoff + 1))
    if isinstance(t, Pi):
        return Pi(t.hint, shift(t.dom, by, cutoff), shift(t.cod, by, cutoff + 1))
    if isinstance(t, RecT):
        return RecT(shift(t.motive, by, cutoff))
    return t


def _subst(t: Term, target: int, repl: Term) -> Term:
    # `repl` is scoped outside the removed binder, so it is shifted by the
    # number of binders between that binder and the occurrence (= target).
    if t.fvb <= target:
        return t
    if isinstance(t, Var):
        if t.index == target:
            return shift(repl, target)
        if t.index > target:
            return Var(t.index - 1, t.hint)
        return t
    if isinstance(t, App):
        return App(_subst(t.fn, target, repl), _subst(t.arg, target, repl))
    if isinstance(t, Lam):
        return Lam(t.hint, _subst(t.ann, target, repl),
                   _subst(t.body, target + 1, repl))
    if isinstance(t, Pi):
        return Pi(t.hint, _subst(t.dom, target, repl),
                  _subst(t.cod, target + 1, repl))
    if isinstance(t, RecT):
        return RecT(_subst(t.motive, target, repl))
    return t


def substitute(t: Term, target: int, replacement: Term) -> Term:
    """Capture-avoiding ``t[#target <- replacement]``.

    ``replacement`` is scoped in the context *outside* the binder being
    eliminated; free indices above ``target`` drop by one.
    """
    return _subst(t, target, replacement)


def instantiate(body: Term, arg: Term) -> Term:
    """Body of a binder with its bound variable replaced by ``arg``."""
    return _subst(body, 0, arg)


def alpha_equal(t1: Term, t2: Term) -> bool:
    return t1 == t2


# ---------------------------------------------------------------------------
# Contexts


@dataclass(frozen=True)
class Context:
    """Ordered declarations, outermost first.

    ``Var(0)`` refers to the *last* entry.  Each entry's type is scoped in
    the prefix before it.
    """

    entries: Tuple[Tuple[str, Term], ...] = ()
    system: SystemTag = SystemTag.F

    def __len__(self) -> int:
        return len(self.entries)

    def extend(self, name: str, ty: Term) -> "Context":
        return Context(self.entries + ((name, ty),), self.system)

    def lookup(self, index: int) -> Term:
        """Type of ``Var(index)``, shifted into the full context."""
        if not 0 <= index < len(self.entries):
            raise KernelError(f"unbound variable #{index}")
        return shift(self.entries[-1 - index][1], index + 1)

    def names(self) -> List[str]:
        return [n for n, _ in self.entries]

    @classmethod
    def of(cls, entries: Sequence[Tuple[str, Term]], system=SystemTag.F) -> "Context":
        return cls(tuple(entries), SystemTag.coerce(system))


def check_system(t: Term, system: SystemTag) -> None:
    """Reject constructors that do not belong to ``system``."""
    system = SystemTag.coerce(system)
    for s in subterms(t):
        if system is SystemTag.F and isinstance(s, T_ONLY):
            raise WrongCalculusError(f"{type(s).__name__} is a System T constructor")
        if system is SystemTag.T and isinstance(s, Sort):
            raise WrongCalculusError("Prop is a System F constructor")


def free_indices(t: Term, depth: int = 0) -> set:
    if t.fvb <= depth:
        return set()
    if isinstance(t, Var):
        return {t.index - depth}
    if isinstance(t, App):
        return free_indices(t.fn, depth) | free_indices(t.arg, depth)
    if isinstance(t, Lam):
        return free_indices(t.ann, depth) | free_indices(t.body, depth + 1)
    if isinstance(t, Pi):
        return free_indices(t.dom, depth) | free_indices(t.cod, depth + 1)
    if isinstance(t, RecT):
        return free_indices(t.motive, depth)
    return set()


def is_closed(t: Term) -> bool:
    return t.fvb == 0


def maybe_var(t: Term) -> Optional[int]:
    return t.index if isinstance(t, Var) else None
