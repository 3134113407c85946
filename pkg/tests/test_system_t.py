import pytest

from lambdamatch.normalize import normalize
from lambdamatch.surface import parse_context, parse_term, print_term
from lambdamatch.system_f import classify_shape
from lambdamatch.system_t import (
    TypeErrorT, check_context_t, probe_t, recognize_numeral_t, recursor_type, step_recursor,
    t_numeral, typecheck_t,
)
from lambdamatch.terms import (
    NAT_T, SUCC, ZERO, App, Context, IllTyped, RecT, SystemTag, Var, WrongCalculusError, apply,
)
from termgen import generate

T = SystemTag.T
EMPTY = Context((), T)


def test_recursor_type():
    assert print_term(typecheck_t(EMPTY, RecT(NAT_T))) == \
        "Nat -> (Nat -> Nat -> Nat) -> Nat -> Nat"
    fn = parse_term("Nat -> Nat", T)
    assert typecheck_t(EMPTY, RecT(fn)) == recursor_type(fn)


def test_numerals_and_errors():
    assert typecheck_t(EMPTY, t_numeral(3)) == NAT_T
    with pytest.raises(IllTyped):
        typecheck_t(EMPTY, App(ZERO, ZERO))
    with pytest.raises(TypeErrorT):
        typecheck_t(EMPTY, NAT_T)


def test_contexts_are_simple():
    assert check_context_t(parse_context("[y:Nat; h:Nat -> Nat]", T))
    with pytest.raises(WrongCalculusError):
        parse_context("[P:Prop]", T)
    assert not check_context_t(Context((("x", Var(0)),), T))


def test_step_recursor_rules():
    b = Var(0, "b")
    a = Var(1, "a")
    assert step_recursor(apply(RecT(NAT_T), ZERO, b, ZERO)) == ZERO
    assert step_recursor(apply(RecT(NAT_T), a, b, t_numeral(1))) == \
        apply(b, ZERO, apply(RecT(NAT_T), a, b, ZERO))
    assert step_recursor(apply(RecT(NAT_T), a, b, Var(2, "y"))) is None
    # partial applications are values
    assert step_recursor(apply(RecT(NAT_T), a, b)) is None


def test_numeral_recognition():
    assert t_numeral(4) == App(SUCC, App(SUCC, App(SUCC, App(SUCC, ZERO))))
    assert recognize_numeral_t(t_numeral(4)) == 4
    stuck = apply(RecT(NAT_T), ZERO, Var(0, "b"), Var(1, "y"))
    assert recognize_numeral_t(stuck) is None


def test_probe_examples():
    assert normalize(probe_t(t_numeral(2)), T).term == ZERO
    r = normalize(probe_t(t_numeral(0)), T)
    assert r.term == ZERO and r.steps == 1
    y = Var(0, "y")
    stuck = normalize(probe_t(y), T).term
    assert isinstance(stuck.fn.fn.fn, RecT)
    assert recognize_numeral_t(stuck) is None


def test_recursor_never_fires_on_open_scrutinee():
    g = parse_context("[y:Nat]", T)
    t = parse_term("Rec[Nat] (S O) (fun k:Nat. fun r:Nat. S r) (S (S y))", T, g)
    assert print_term(normalize(t, T).term, g) == \
        "S (S (Rec[Nat] (S O) (fun k:Nat. fun r:Nat. S r) y))"


def test_higher_type_recursor():
    # Rec at Nat -> Nat: iterate "add one" functions
    t = parse_term(
        "Rec[Nat -> Nat] (fun z:Nat. z) (fun k:Nat. fun r:Nat -> Nat. fun z:Nat. S (r z)) (S (S O)) O",
        T)
    assert typecheck_t(EMPTY, t) == NAT_T
    assert normalize(t, T).term == t_numeral(2)


def test_subject_reduction_and_shapes():
    for g, t, ty in generate(T, 200, seed=12):
        assert typecheck_t(g, t) == ty
        nf = normalize(t, T).term
        assert typecheck_t(g, nf) == ty
        assert classify_shape(nf) != "other"
