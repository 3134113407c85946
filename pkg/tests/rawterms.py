"""Hypothesis strategies for well-scoped (not necessarily well-typed) terms,
and a named reference implementation of substitution."""

import itertools

from hypothesis import strategies as st

from lambdamatch.terms import (
    NAT_T, PROP, SUCC, ZERO, App, Lam, NatT, Pi, RecT, Sort, SuccT, Var, ZeroT,
)

HINTS = ["x", "y", "f", "P", "x1"]


@st.composite
def raw_terms(draw, scope: int, budget: int = 12, t_constants: bool = True, sorts: bool = True):
    """A term whose free indices are all below ``scope``."""
    leaves = []
    if scope:
        leaves.append(st.integers(0, scope - 1).map(lambda i: Var(i, "v")))
    if sorts:
        leaves.append(st.just(PROP))
    if t_constants:
        leaves += [st.just(NAT_T), st.just(ZERO), st.just(SUCC)]
    if not leaves:
        leaves.append(st.just(Lam("x", Var(0), Var(0))) if scope else st.just(Lam("x", PROP, Var(0))))
    if budget <= 1:
        return draw(st.one_of(leaves))
    kind = draw(st.sampled_from(["leaf", "app", "lam", "pi"] + (["rec"] if t_constants else [])))
    sub = lambda s, b: raw_terms(s, b, t_constants, sorts)
    if kind == "leaf":
        return draw(st.one_of(leaves))
    if kind == "app":
        return App(draw(sub(scope, budget // 2)), draw(sub(scope, budget // 2)))
    if kind == "rec":
        return RecT(draw(sub(scope, budget - 1)))
    hint = draw(st.sampled_from(HINTS))
    ann = draw(sub(scope, budget // 2))
    body = draw(sub(scope + 1, budget // 2))
    return (Lam if kind == "lam" else Pi)(hint, ann, body)


# -- named reference ----------------------------------------------------------
# Named terms are tuples: ("var", name), ("app", f, a), ("lam"/"pi", name, ann, body),
# ("rec", motive) or ("const", term) for closed leaves.

_fresh = itertools.count()


def fresh() -> str:
    return f"_n{next(_fresh)}"


def to_named(t, names):
    """``names[i]`` is the name of index ``i`` (innermost first)."""
    if isinstance(t, Var):
        return ("var", names[t.index])
    if isinstance(t, App):
        return ("app", to_named(t.fn, names), to_named(t.arg, names))
    if isinstance(t, (Lam, Pi)):
        n = fresh()
        ann = t.ann if isinstance(t, Lam) else t.dom
        body = t.body if isinstance(t, Lam) else t.cod
        return ("lam" if isinstance(t, Lam) else "pi", n, to_named(ann, names),
                to_named(body, [n] + names))
    if isinstance(t, RecT):
        return ("rec", to_named(t.motive, names))
    assert isinstance(t, (Sort, NatT, ZeroT, SuccT))
    return ("const", t)


def from_named(nt, names):
    tag = nt[0]
    if tag == "var":
        return Var(names.index(nt[1]))
    if tag == "app":
        return App(from_named(nt[1], names), from_named(nt[2], names))
    if tag in ("lam", "pi"):
        ann = from_named(nt[2], names)
        body = from_named(nt[3], [nt[1]] + names)
        return (Lam if tag == "lam" else Pi)(nt[1], ann, body)
    if tag == "rec":
        return RecT(from_named(nt[1], names))
    return nt[1]


def free_names(nt):
    tag = nt[0]
    if tag == "var":
        return {nt[1]}
    if tag == "app":
        return free_names(nt[1]) | free_names(nt[2])
    if tag in ("lam", "pi"):
        return free_names(nt[2]) | (free_names(nt[3]) - {nt[1]})
    if tag == "rec":
        return free_names(nt[1])
    return set()


def rename(nt, old, new):
    return named_subst(nt, old, ("var", new))


def named_subst(nt, x, u):
    """Textbook substitution that renames every binder it passes."""
    tag = nt[0]
    if tag == "var":
        return u if nt[1] == x else nt
    if tag == "app":
        return ("app", named_subst(nt[1], x, u), named_subst(nt[2], x, u))
    if tag in ("lam", "pi"):
        ann = named_subst(nt[2], x, u)
        if nt[1] == x:
            return (tag, nt[1], ann, nt[3])
        n = fresh()
        body = named_subst(rename(nt[3], nt[1], n), x, u)
        return (tag, n, ann, body)
    if tag == "rec":
        return ("rec", named_subst(nt[1], x, u))
    return nt
