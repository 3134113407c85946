import itertools
import random

import pytest

from lambdamatch.prf import (
    ADD, ALPHA, DIVIDES, EQUAL, EXPONENT, MONUS, MULT, NTH_PRIME, POW, PRED, REM, SGN, SUCC,
    ZERO, ArityError, Comp, Evaluator, PrfError, PrimRec, Proj, bounded_mu, comp, const,
    Succ, Zero, encode_sequence, eval_prf, first_primes, format_prf, parse_prf, proj, stdlib,
)


# -- oracles ------------------------------------------------------------------

def primes_oracle(k):
    out, n = [], 1
    while len(out) < k:
        n += 1
        if all(n % d for d in range(2, n)):
            out.append(n)
    return out


def exponent_oracle(x, p):
    if x == 0:
        return 0
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def alpha_oracle(x, i):
    return exponent_oracle(x, primes_oracle(i)[-1])


class Budget(Exception):
    pass


def reference_eval(f, args, budget):
    """Recursive reading of the five schemas, no memo, no jets."""
    budget[0] -= 1
    if budget[0] < 0:
        raise Budget
    if isinstance(f, Zero):
        return 0
    if isinstance(f, Succ):
        return args[0] + 1
    if isinstance(f, Proj):
        return args[f.i - 1]
    if isinstance(f, Comp):
        return reference_eval(f.outer, [reference_eval(g, args, budget) for g in f.inners], budget)
    assert isinstance(f, PrimRec)
    *xs, y = args
    if y == 0:
        return reference_eval(f.base, xs, budget)
    prev = reference_eval(f, xs + [y - 1], budget)
    return reference_eval(f.step, xs + [y - 1, prev], budget)


def random_prf(rng, arity, depth):
    if depth == 0 or rng.random() < 0.25:
        if arity == 0:
            return rng.choice([ZERO, const(rng.randint(0, 2), 0)])
        return rng.choice([proj(rng.randint(1, arity), arity), const(rng.randint(0, 2), arity),
                           comp(SUCC, proj(rng.randint(1, arity), arity))])
    kind = rng.choice(["comp", "rec", "lib"])
    if kind == "rec" and arity >= 1:
        return PrimRec(random_prf(rng, arity - 1, depth - 1), random_prf(rng, arity + 1, depth - 1))
    if kind == "lib" and arity >= 1:
        outer = rng.choice([ADD, MULT, MONUS, EQUAL, PRED, SGN])
    else:
        outer = random_prf(rng, rng.randint(1, 2), depth - 1)
    inners = tuple(random_prf(rng, arity, depth - 1) for _ in range(outer.arity))
    return Comp(outer, inners, arity)


# -- examples -------------------------------------------------------------------

def test_examples():
    assert eval_prf(ADD, [2, 3]) == 5
    assert eval_prf(EQUAL, [3, 3]) == 0
    assert eval_prf(EQUAL, [3, 4]) == 1
    assert eval_prf(ALPHA, [12, 1]) == 2
    assert eval_prf(MULT, [4, 5]) == 20
    assert eval_prf(ALPHA, [360, 3]) == 1
    assert eval_prf(NTH_PRIME, [3]) == 5


def test_encode_sequence_examples():
    assert encode_sequence([2, 1]) == 12
    assert encode_sequence([]) == 1
    assert encode_sequence([2, 3]) == 108
    assert eval_prf(ALPHA, [108, 2]) == 3


def test_nth_prime_against_trial_division():
    expected = primes_oracle(15)
    assert [eval_prf(NTH_PRIME, [i]) for i in range(1, 16)] == expected
    assert first_primes(15) == expected
    assert eval_prf(NTH_PRIME, [0]) == 1


def test_alpha_against_trial_division():
    for x in range(1, 400):
        for i in range(1, 5):
            assert eval_prf(ALPHA, [x, i]) == alpha_oracle(x, i)


def test_arithmetic_against_native():
    for x, y in itertools.product(range(11), repeat=2):
        assert eval_prf(ADD, [x, y]) == x + y
        assert eval_prf(MULT, [x, y]) == x * y
        assert eval_prf(MONUS, [x, y]) == max(x - y, 0)
        assert eval_prf(POW, [x, y]) == x ** y
        assert eval_prf(EQUAL, [x, y]) == int(x != y)
        if y:
            assert eval_prf(REM, [x, y]) == x % y
        assert eval_prf(DIVIDES, [y, x]) == (0 if (x % y == 0 if y else x == 0) else 1)
        if y >= 2:
            assert eval_prf(EXPONENT, [x, y]) == exponent_oracle(x, y)
    for x in range(11):
        assert eval_prf(PRED, [x]) == max(x - 1, 0)
        assert eval_prf(SGN, [x]) == min(x, 1)


def test_equal_is_boolean_on_box():
    for x, y in itertools.product(range(13), repeat=2):
        v = eval_prf(EQUAL, [x, y])
        assert v in (0, 1) and (v == 0) == (x == y)


def test_big_integers_are_exact():
    big = 10 ** 30 + 7
    assert eval_prf(ADD, [big, big]) == 2 * big
    assert eval_prf(ALPHA, [2 ** 200 * 3, 1]) == 200


# -- native arithmetic agrees with the unfolded definitions -----------------------

@pytest.mark.parametrize("name", ["pred", "monus", "sgn", "add", "mult", "equal", "pow", "rem",
                                  "divides", "ndivisors", "not_prime", "next_prime",
                                  "nth_prime"])
def test_jets_match_pure_evaluation(name):
    f = stdlib()[name]
    top = 6 if f.arity == 2 else 9
    pure = Evaluator(jets=False)
    for args in itertools.product(range(top + 1), repeat=f.arity):
        assert pure(f, args) == eval_prf(f, args)


def test_alpha_and_exponent_pure_on_small_box():
    pure = Evaluator(jets=False)
    for x in range(9):
        for i in range(1, 3):
            assert pure(ALPHA, (x, i)) == alpha_oracle(x, i)
        assert pure(EXPONENT, (x, 3)) == exponent_oracle(x, 3)


def test_memo_is_only_a_cache():
    cold = Evaluator(jets=True, memo_limit=1)
    warm = Evaluator(jets=True)
    for x, i in itertools.product(range(1, 40), range(1, 4)):
        assert cold(ALPHA, (x, i)) == warm(ALPHA, (x, i)) == warm(ALPHA, (x, i))


def test_bounded_mu():
    # least z < b with z * z >= x, else b
    g = comp(MONUS, proj(1, 2), comp(MULT, proj(2, 2), proj(2, 2)))
    mu = bounded_mu(g)
    assert mu.arity == 2
    pure = Evaluator(jets=False)
    for x in range(12):
        for b in range(6):
            expected = next((z for z in range(b) if z * z >= x), b)
            assert eval_prf(mu, [x, b]) == expected
            assert pure(mu, (x, b)) == expected


# -- evaluator against the recursive reference ---------------------------------------

def test_evaluator_matches_reference_on_random_expressions():
    rng = random.Random(2024)
    checked = 0
    while checked < 300:
        arity = rng.randint(0, 3)
        f = random_prf(rng, arity, rng.randint(1, 4))
        args = [rng.randint(0, 3) for _ in range(arity)]
        try:
            expected = reference_eval(f, args, [20000])
        except Budget:
            continue
        assert eval_prf(f, args) == expected
        assert eval_prf(f, args, jets=False) == expected
        checked += 1


def test_deep_recursion_is_iterative():
    assert eval_prf(comp(PRED, PrimRec(ZERO, comp(SUCC, proj(2, 2)))), [100000]) == 99999


# -- construction and errors --------------------------------------------------------

def test_arity_checks():
    with pytest.raises(ArityError):
        Proj(0, 2)
    with pytest.raises(ArityError):
        Proj(3, 2)
    with pytest.raises(ArityError):
        Comp(ADD, (proj(1, 1),))
    with pytest.raises(ArityError):
        Comp(ADD, (proj(1, 1), proj(1, 2)))
    with pytest.raises(ArityError):
        PrimRec(ZERO, proj(1, 1))
    with pytest.raises(ArityError):
        eval_prf(ADD, [1])
    with pytest.raises(PrfError):
        eval_prf(ADD, [1, -1])
    with pytest.raises(ArityError):
        Comp(ZERO, ())


def test_text_format_round_trip():
    for name, f in stdlib().items():
        assert parse_prf(name) is f
        back = parse_prf(format_prf(f, expand=True))
        assert back == f
    assert parse_prf("Equal") is EQUAL
    src = "comp(equal; comp(add; proj[1/1], proj[1/1]), const[1](4))"
    f = parse_prf(src)
    assert f.arity == 1 and eval_prf(f, [2]) == 0 and eval_prf(f, [3]) == 1
    assert eval_prf(parse_prf("comp[2](Z;)"), [5, 6]) == 0
    assert eval_prf(parse_prf("rec(Z, proj[1/2])"), [7]) == 6
    assert eval_prf(parse_prf("rec(Z, proj[2/2])"), [7]) == 0
    with pytest.raises(PrfError):
        parse_prf("comp(add; Z)")
    with pytest.raises(PrfError):
        parse_prf("frobnicate")


def test_stdlib_is_built_from_the_five_schemas():
    kinds = set()

    def walk(f):
        kinds.add(type(f).__name__)
        for child in getattr(f, "inners", ()) + tuple(
                getattr(f, a) for a in ("outer", "base", "step") if hasattr(f, a)):
            walk(child)

    for f in stdlib().values():
        walk(f)
    assert kinds <= {"Zero", "Succ", "Proj", "Comp", "PrimRec"}
