import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from stackcalc import constants as K
from stackcalc.gen import random_expr, size
from stackcalc.surface import ParseError, parse, parse_term, show
from stackcalc.syntax import NIL, Car, Cdr, Push, Var, VarName, alpha_eq, is_term

a = Var(VarName("a"))


def test_parse_true():
    assert parse("bd a. car(a) @ cdr^2(a)", "term") == K.T


def test_constants_need_hash():
    with pytest.raises(ParseError):
        parse("car(T :: nil)", "term")
    assert parse("car(#T :: nil)", "term") == Car(Push(K.T, NIL))


def test_unbalanced_reports_position():
    with pytest.raises(ParseError) as exc:
        parse("bd a. car(a", "term")
    assert exc.value.line == 1
    assert exc.value.col == 12
    assert ")" in exc.value.expected


def test_position_on_later_line():
    with pytest.raises(ParseError) as exc:
        parse("bd a.\n  car(a) @ @", "term")
    assert (exc.value.line, exc.value.col) == (2, 12)


def test_print_examples():
    assert show(K.T) == "bd a. car(a) @ cdr^2(a)"
    assert show(Push(Car(a), Cdr(a))) == "car(a) :: cdr(a)"


def test_permutator_constant():
    assert parse("#P2", "term") == K.permutator(2)


def test_abstraction_extends_right():
    t = parse_term("bd a. car(a) @ a @ b")
    assert show(t) == "bd a. car(a) @ a @ b"
    assert show(parse_term("(bd a. car(a) @ a) @ b")) == "(bd a. car(a) @ a) @ b"


def test_push_is_right_associative():
    s = parse("car(a) :: car(b) :: nil", "stack")
    assert isinstance(s.tail, Push)


@settings(max_examples=500, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_round_trip(seed):
    e = random_expr(random.Random(seed), 40)
    assume(size(e) <= 40)
    text = show(e)
    back = parse(text, "term" if is_term(e) else "stack")
    assert back == e
    assert show(back) == text
    assert alpha_eq(back, e)
