"""Primitive recursive functions: syntax, exact evaluation, and a library.

Every library entry is built from the five constructors only.  Some entries
additionally carry a *jet*: a native implementation of exactly the same
function that the evaluator may use instead of unfolding the definition
(``eval_prf(..., jets=False)`` never does).  Jets are restricted to plain
arithmetic (add, mult, pow, ...) and to the early-exit form of bounded
minimization; prime search and prime-exponent extraction always run through
their primitive recursive definitions.

Conventions:

* ``PrimRec(base, step)`` recurses on its *last* argument::

      f(xs, 0)     = base(xs)
      f(xs, y + 1) = step(xs, y, f(xs, y))

* Predicates return 0 for "yes" (as ``equal`` does).
* Primes are 1-indexed: ``nth_prime(1) = 2``; ``nth_prime(0) = 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Optional, Sequence, Tuple


class PrfError(ValueError):
    pass


class ArityError(PrfError):
    pass


class PrfExpr:
    arity: int
    name: Optional[str]
    jet: Optional[Callable]

    def __str__(self) -> str:
        return format_prf(self)


def _meta():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Zero(PrfExpr):
    name: Optional[str] = _meta()
    jet: Optional[Callable] = _meta()

    @property
    def arity(self) -> int:
        return 0


@dataclass(frozen=True)
class Succ(PrfExpr):
    name: Optional[str] = _meta()
    jet: Optional[Callable] = _meta()

    @property
    def arity(self) -> int:
        return 1


@dataclass(frozen=True)
class Proj(PrfExpr):
    """``Proj(i, n)(x1, ..., xn) = xi``, 1-based."""

    i: int
    n: int
    name: Optional[str] = _meta()
    jet: Optional[Callable] = _meta()

    def __post_init__(self):
        if not 1 <= self.i <= self.n:
            raise ArityError(f"projection index {self.i} out of range 1..{self.n}")

    @property
    def arity(self) -> int:
        return self.n


@dataclass(frozen=True)
class Comp(PrfExpr):
    """``outer(inner_1(xs), ..., inner_k(xs))``.

    ``n`` is the common arity of the inners; it must be given when there are
    no inners.
    """

    outer: PrfExpr
    inners: Tuple[PrfExpr, ...]
    n: Optional[int] = None
    name: Optional[str] = _meta()
    jet: Optional[Callable] = _meta()

    def __post_init__(self):
        inners = tuple(self.inners)
        object.__setattr__(self, "inners", inners)
        if self.outer.arity != len(inners):
            raise ArityError(
                f"outer function has arity {self.outer.arity} but {len(inners)} inners were given")
        arities = {g.arity for g in inners}
        if self.n is None:
            if not inners:
                raise ArityError("composition with no inners needs an explicit arity")
            if len(arities) != 1:
                raise ArityError(f"inner functions disagree on arity: {sorted(arities)}")
            object.__setattr__(self, "n", arities.pop())
        elif arities - {self.n}:
            raise ArityError(f"inner functions must all have arity {self.n}")

    @property
    def arity(self) -> int:
        return self.n


@dataclass(frozen=True)
class PrimRec(PrfExpr):
    base: PrfExpr
    step: PrfExpr
    name: Optional[str] = _meta()
    jet: Optional[Callable] = _meta()

    def __post_init__(self):
        if self.step.arity != self.base.arity + 2:
            raise ArityError(
                f"step must have arity {self.base.arity + 2} (base has {self.base.arity}), "
                f"got {self.step.arity}")

    @property
    def arity(self) -> int:
        return self.base.arity + 1


def named(f: PrfExpr, name: str, jet: Optional[Callable] = None) -> PrfExpr:
    return replace(f, name=name, jet=jet)


# ---------------------------------------------------------------------------
# Evaluation


class Evaluator:
    """Exact evaluator; named nodes are memoized (they are pure)."""

    def __init__(self, jets: bool = True, memo_limit: int = 200_000):
        self.jets = jets
        self.memo: Dict[Tuple[int, Tuple[int, ...]], int] = {}
        self._keep: Dict[int, PrfExpr] = {}
        self.memo_limit = memo_limit

    def __call__(self, f: PrfExpr, args: Sequence[int]) -> int:
        args = tuple(int(a) for a in args)
        if any(a < 0 for a in args):
            raise PrfError("arguments must be natural numbers")
        if len(args) != f.arity:
            raise ArityError(f"function of arity {f.arity} applied to {len(args)} arguments")
        return self.eval(f, args)

    def eval(self, f: PrfExpr, args: Tuple[int, ...]) -> int:
        if f.name is not None:
            key = (id(f), args)
            hit = self.memo.get(key)
            if hit is not None:
                return hit
            if self.jets and f.jet is not None:
                value = f.jet(self, args)
            else:
                value = self._unfold(f, args)
            if len(self.memo) >= self.memo_limit:
                self.memo.clear()
            self._keep[id(f)] = f
            self.memo[key] = value
            return value
        return self._unfold(f, args)

    def _unfold(self, f: PrfExpr, args: Tuple[int, ...]) -> int:
        if isinstance(f, Zero):
            return 0
        if isinstance(f, Succ):
            return args[0] + 1
        if isinstance(f, Proj):
            return args[f.i - 1]
        if isinstance(f, Comp):
            return self.eval(f.outer, tuple(self.eval(g, args) for g in f.inners))
        if isinstance(f, PrimRec):
            xs, y = args[:-1], args[-1]
            acc = self.eval(f.base, xs)
            for i in range(y):
                acc = self.eval(f.step, xs + (i, acc))
            return acc
        raise PrfError(f"not a primitive recursive expression: {f!r}")


def eval_prf(f: PrfExpr, args: Sequence[int], jets: bool = True) -> int:
    return (_DEFAULT if jets else _PURE)(f, args)


_DEFAULT = Evaluator(jets=True)
_PURE = Evaluator(jets=False)


# ---------------------------------------------------------------------------
# Construction helpers


def format_prf(f: PrfExpr, expand: bool = False) -> str:
    """Text form; library nodes print by name unless ``expand``."""
    if f.name is not None and not expand:
        return f.name
    if isinstance(f, Zero):
        return "Z"
    if isinstance(f, Succ):
        return "S"
    if isinstance(f, Proj):
        return f"proj[{f.i}/{f.n}]"
    if isinstance(f, Comp):
        inner = ", ".join(format_prf(g, expand) for g in f.inners)
        if not f.inners:
            return f"comp[{f.n}]({format_prf(f.outer, expand)};)"
        return f"comp({format_prf(f.outer, expand)}; {inner})"
    if isinstance(f, PrimRec):
        return f"rec({format_prf(f.base, expand)}, {format_prf(f.step, expand)})"
    raise PrfError(f"not a primitive recursive expression: {f!r}")


ZERO = Zero()
SUCC = Succ()


def proj(i: int, n: int) -> Proj:
    return Proj(i, n)


def comp(outer: PrfExpr, *inners: PrfExpr, arity: Optional[int] = None) -> Comp:
    return Comp(outer, tuple(inners), arity)


def const(value: int, arity: int) -> PrfExpr:
    """The constant function ``value`` of the given arity."""
    f: PrfExpr = Comp(ZERO, (), arity) if arity else ZERO
    for _ in range(value):
        f = Comp(SUCC, (f,))
    return f


def _jet(fn):
    return lambda ev, args: fn(*args)


def bounded_mu(g: PrfExpr) -> PrfExpr:
    """``h(xs, b)`` = least ``z < b`` with ``g(xs, z) = 0``, or ``b`` if none.

    Realized by primitive recursion on ``b``::

        h(xs, 0)     = 0
        h(xs, b + 1) = h + sgn(g(xs, b)) * (1 - equal(h, b))     (h = h(xs, b))

    ``h(xs, b) < b`` exactly when a witness was already found.
    """
    if g.arity < 1:
        raise ArityError("bounded minimization needs a predicate of arity >= 1")
    n = g.arity - 1
    k = n + 2  # step arity: xs, b, prev
    prev, b = proj(k, k), proj(n + 1, k)
    g_at_b = comp(g, *[proj(i, k) for i in range(1, n + 2)])
    not_found = comp(MONUS, const(1, k), comp(EQUAL, prev, b))
    step = comp(ADD, prev, comp(MULT, comp(SGN, g_at_b), not_found))
    base = const(0, n)

    def jet(ev, args):
        xs, bound = args[:-1], args[-1]
        for z in range(bound):
            if ev.eval(g, xs + (z,)) == 0:
                return z
        return bound

    return named(PrimRec(base, step), f"mu({format_prf(g)})", jet)


PRED = named(PrimRec(ZERO, proj(1, 2)), "pred", _jet(lambda y: max(y - 1, 0)))
ADD = named(PrimRec(proj(1, 1), comp(SUCC, proj(3, 3))), "add", _jet(lambda x, y: x + y))
# mult(x, y+1) = add(mult(x, y), x): the inner addition recurses on x
MULT = named(PrimRec(const(0, 1), comp(ADD, proj(3, 3), proj(1, 3))), "mult",
             _jet(lambda x, y: x * y))
MONUS = named(PrimRec(proj(1, 1), comp(PRED, proj(3, 3))), "monus",
              _jet(lambda x, y: max(x - y, 0)))
SGN = named(PrimRec(ZERO, const(1, 2)), "sgn", _jet(lambda x: min(x, 1)))
EQUAL = named(comp(SGN, comp(ADD, comp(MONUS, proj(1, 2), proj(2, 2)),
                              comp(MONUS, proj(2, 2), proj(1, 2)))),
              "equal", _jet(lambda x, y: 0 if x == y else 1))
POW = named(PrimRec(const(1, 1), comp(MULT, proj(3, 3), proj(1, 3))), "pow",
            _jet(lambda x, y: x ** y))

# x mod d, recursing on x with d fixed; x mod 0 = x
_REM_BY = PrimRec(const(0, 1), comp(MULT, comp(SUCC, proj(3, 3)),
                                    comp(EQUAL, comp(SUCC, proj(3, 3)), proj(1, 3))))
REM = named(comp(_REM_BY, proj(2, 2), proj(1, 2)), "rem",
            _jet(lambda x, d: x % d if d else x))
# divides(d, x) = 0 iff d | x
DIVIDES = named(comp(SGN, comp(_REM_BY, proj(1, 2), proj(2, 2))), "divides",
                _jet(lambda d, x: (0 if x % d == 0 else 1) if d else min(x, 1)))

# number of divisors of z: sum over d <= z of [d | z]
_DIV_COUNT_BELOW = PrimRec(const(0, 1), comp(ADD, proj(3, 3),
                                             comp(MONUS, const(1, 3),
                                                  comp(DIVIDES, proj(2, 3), proj(1, 3)))))
NDIVISORS = named(comp(_DIV_COUNT_BELOW, proj(1, 1), comp(SUCC, proj(1, 1))), "ndivisors")
NOT_PRIME = named(comp(EQUAL, NDIVISORS, const(2, 1)), "not_prime")

# least prime in (m, 2m]; Bertrand's postulate makes the bound sufficient
_PRIME_ABOVE = comp(ADD, comp(NOT_PRIME, proj(2, 2)),
                    comp(MONUS, const(1, 2), comp(MONUS, proj(2, 2), proj(1, 2))))
NEXT_PRIME = named(comp(bounded_mu(_PRIME_ABOVE), proj(1, 1),
                        comp(SUCC, comp(ADD, proj(1, 1), proj(1, 1)))), "next_prime")
NTH_PRIME = named(PrimRec(const(1, 0), comp(NEXT_PRIME, proj(2, 2))), "nth_prime")

# exponent of p in x: least e < x with not (p^(e+1) | x)
_POWER_MISSES = comp(MONUS, const(1, 3),
                     comp(DIVIDES, comp(POW, proj(2, 3), comp(SUCC, proj(3, 3))), proj(1, 3)))
EXPONENT = named(comp(bounded_mu(_POWER_MISSES), proj(1, 2), proj(2, 2), proj(1, 2)),
                 "exponent")
ALPHA = named(comp(EXPONENT, proj(1, 2), comp(NTH_PRIME, proj(2, 2))), "alpha")


def stdlib() -> Dict[str, PrfExpr]:
    """Named library functions (bounded minimization is the schema
    :func:`bounded_mu`, written ``mu(g)`` in the text format)."""
    return dict(_LIBRARY)


_LIBRARY: Dict[str, PrfExpr] = {
    f.name: f for f in (PRED, MONUS, SGN, ADD, MULT, EQUAL, DIVIDES, NTH_PRIME, ALPHA, POW,
                        REM, NDIVISORS, NOT_PRIME, NEXT_PRIME, EXPONENT)
}
_ALIASES = {"Equal": "equal", "sub": "monus"}


# ---------------------------------------------------------------------------
# Sequence coding


def first_primes(k: int):
    primes = []
    candidate = 2
    while len(primes) < k:
        if all(candidate % p for p in primes if p * p <= candidate):
            primes.append(candidate)
        candidate += 1
    return primes


def encode_sequence(values: Sequence[int]) -> int:
    """``prod p_i ** a_i`` over 1-based primes; ``alpha(code, i) = a_i``."""
    code = 1
    for p, a in zip(first_primes(len(values)), values):
        if a < 0:
            raise PrfError("sequence entries must be natural numbers")
        code *= p ** a
    return code


# ---------------------------------------------------------------------------
# Text format


_PRF_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def parse_prf(source: str) -> PrfExpr:
    """Parse ``Z``, ``S``, ``proj[i/n]``, ``comp(f; g1, ..., gk)``,
    ``comp[n](f;)``, ``rec(base, step)``, ``mu(g)``, ``const[n](k)`` and
    library names."""
    tokens = []
    for m in _PRF_TOKEN.finditer(source):
        num, ident, punct = m.groups()
        if num is not None:
            tokens.append(("num", int(num), m.start(1)))
        elif ident is not None:
            tokens.append(("ident", ident, m.start(2)))
        elif punct is not None and not punct.isspace():
            tokens.append(("punct", punct, m.start(3)))
    tokens.append(("eof", None, len(source)))
    pos = 0

    def peek():
        return tokens[pos]

    def take(kind=None, value=None):
        nonlocal pos
        tok = tokens[pos]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise PrfError(f"col {tok[2] + 1}: expected {want!r}, found {tok[1]!r}")
        pos += 1
        return tok

    def bracket_int():
        take("punct", "[")
        v = take("num")[1]
        take("punct", "]")
        return v

    def expr() -> PrfExpr:
        tok = take("ident")
        word = tok[1]
        try:
            if word == "Z":
                return ZERO
            if word == "S":
                return SUCC
            if word == "proj":
                take("punct", "[")
                i = take("num")[1]
                take("punct", "/")
                n = take("num")[1]
                take("punct", "]")
                return Proj(i, n)
            if word == "comp":
                arity = bracket_int() if peek()[1] == "[" else None
                take("punct", "(")
                outer = expr()
                take("punct", ";")
                inners = []
                if peek()[1] != ")":
                    inners.append(expr())
                    while peek()[1] == ",":
                        take("punct", ",")
                        inners.append(expr())
                take("punct", ")")
                return Comp(outer, tuple(inners), arity)
            if word == "rec":
                take("punct", "(")
                base = expr()
                take("punct", ",")
                step = expr()
                take("punct", ")")
                return PrimRec(base, step)
            if word == "mu":
                take("punct", "(")
                g = expr()
                take("punct", ")")
                return bounded_mu(g)
            if word == "const":
                arity = bracket_int()
                take("punct", "(")
                value = take("num")[1]
                take("punct", ")")
                return const(value, arity)
        except ArityError as exc:
            raise PrfError(f"col {tok[2] + 1}: {exc}") from exc
        key = _ALIASES.get(word, word)
        if key in _LIBRARY:
            return _LIBRARY[key]
        raise PrfError(f"col {tok[2] + 1}: unknown function {word!r}")

    result = expr()
    if peek()[0] != "eof":
        raise PrfError(f"col {peek()[2] + 1}: trailing input {peek()[1]!r}")
    return result
