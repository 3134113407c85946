import itertools

import pytest

from lambdamatch.compile import compile_prf, compile_to_f, compile_to_t, function_type, numeral
from lambdamatch.normalize import normalize
from lambdamatch.prf import EQUAL, MULT, PRED, SUCC, ZERO, comp, const, eval_prf, proj, stdlib
from lambdamatch.surface import print_term
from lambdamatch.system_f import church, typecheck_f
from lambdamatch.system_t import t_numeral, typecheck_t
from lambdamatch.terms import Context, SystemTag, apply, is_closed

F, T = SystemTag.F, SystemTag.T

# largest argument tried per library entry; the prime machinery unfolds into
# millions of steps beyond these
CHEAP = ["pred", "monus", "sgn", "add", "mult", "equal", "pow", "rem", "divides",
         "ndivisors", "not_prime"]
LIMITED = {"exponent": 2, "next_prime": 1, "nth_prime": 1, "alpha": 1}


def run(c, args):
    return normalize(apply(c.term, *[numeral(a, c.system) for a in args]), c.system).term


def typecheck(system, t):
    return (typecheck_t if system is T else typecheck_f)(Context((), system), t)


def test_examples_f():
    assert normalize(compile_to_f(ZERO).term, F).term == church(0)
    assert run(compile_to_f(SUCC), [1]) == church(2)


def test_examples_t():
    assert run(compile_to_t(PRED), [0]) == t_numeral(0)
    assert run(compile_to_t(MULT), [3, 4]) == t_numeral(12)
    assert run(compile_to_t(EQUAL), [2, 2]) == t_numeral(0)


@pytest.mark.parametrize("system", [F, T])
@pytest.mark.parametrize("name", CHEAP + sorted(LIMITED))
def test_representation(system, name):
    f = stdlib()[name]
    c = compile_prf(f, system)
    assert is_closed(c.term)
    assert typecheck(system, c.term) == function_type(f.arity, system) == c.type
    top = LIMITED.get(name, 4)
    for args in itertools.product(range(top + 1), repeat=f.arity):
        assert run(c, args) == numeral(eval_prf(f, args), system), args


@pytest.mark.parametrize("system", [F, T])
def test_zero_arity_and_constants(system):
    c = compile_prf(const(3, 0), system)
    assert normalize(c.term, system).term == numeral(3, system)
    c2 = compile_prf(comp(ZERO, arity=2), system)
    assert run(c2, [5, 1]) == numeral(0, system)
    c3 = compile_prf(proj(2, 3), system)
    assert run(c3, [4, 5, 6]) == numeral(5, system)


@pytest.mark.parametrize("system", [F, T])
def test_compilation_is_deterministic(system):
    a = compile_prf(stdlib()["equal"], system).term
    b = compile_prf(stdlib()["equal"], system).term
    assert a == b
    assert print_term(a) == print_term(b)
