import random

from hypothesis import given, settings, strategies as st

from stackcalc import constants as K
from stackcalc.gen import random_expr, random_stack
from stackcalc.reduction import RuleSet, one_step_redexes
from stackcalc.surface import parse_stack, parse_term
from stackcalc.syntax import (
    NIL, Abs, App, Car, Cdr, FreshSession, Push, Var, VarName, alpha_eq,
    canonical_form, free_vars, is_original, substitute,
)

a, b, g = VarName("a"), VarName("b"), VarName("g")
seeds = st.integers(min_value=0, max_value=2 ** 32)


def names(*xs):
    return {VarName(x) for x in xs}


def test_free_vars_examples():
    assert free_vars(parse_term("bd a. car(a) @ a")) == set()
    assert free_vars(parse_term("car(b) @ a")) == names("a", "b")
    assert free_vars(parse_term("bd a. car(b) @ (car(a) :: g)")) == names("b", "g")


def test_substitute_plain():
    got = substitute(parse_term("car(a) @ a"), Push(K.T, NIL), a)
    assert got == App(Car(Push(K.T, NIL)), Push(K.T, NIL))


def test_substitute_renames_binder_deterministically():
    got = substitute(parse_term("bd b. car(a) @ b"), parse_stack("car(b) :: nil"), a)
    assert got == parse_term("bd b1. car(car(b) :: nil) @ b1")


def test_substitution_lemma_example():
    e = parse_term("car(a) @ b")
    pi, varpi = parse_stack("car(b) :: nil"), NIL
    lhs = substitute(substitute(e, pi, a), varpi, b)
    rhs = substitute(substitute(e, varpi, b), substitute(pi, varpi, b), a)
    assert alpha_eq(lhs, rhs)


def test_alpha_eq_examples():
    assert alpha_eq(parse_term("bd a. car(a)@a"), parse_term("bd b. car(b)@b"))
    assert not alpha_eq(parse_term("bd a. car(b)@a"), parse_term("bd a. car(c)@a"))
    assert alpha_eq(NIL, NIL)


def test_alpha_eq_binder_shadowing():
    assert alpha_eq(parse_term("bd a. bd a. car(a)@a"), parse_term("bd b. bd c. car(c)@c"))
    assert not alpha_eq(parse_term("bd a. bd b. car(a)@b"), parse_term("bd a. bd b. car(b)@b"))


def test_canonical_form_examples():
    assert canonical_form(Car(Push(K.T, NIL))) == K.T
    m, n = K.I, K.F
    assert canonical_form(Cdr(Push(m, Push(n, Var(a))))) == Push(n, Var(a))
    assert canonical_form(Car(Cdr(Push(K.T, Push(K.F, NIL))))) == K.F


def test_constants_shapes():
    c = K.constants()
    assert alpha_eq(c["T"], parse_term("bd a. car(a) @ cdr(cdr(a))"))
    assert alpha_eq(c["Tinf"], Abs(VarName("d"), App(c["Y"], Push(K.T, Var(VarName("d"))))))
    assert alpha_eq(c["Y"], parse_term("bd f. #U @ cdr(f)"))
    assert free_vars(c["wrapU"]) == names("a")
    assert free_vars(c["u"]) == names("f")


def test_fresh_session_smallest_index():
    s = FreshSession(reserved={VarName("b", 1)})
    assert s.fresh("b") == VarName("b", 2)
    assert s.fresh("b") == VarName("b", 3)
    assert s.fresh("x", avoid={VarName("x", 1)}) == VarName("x", 2)


def _fv_after(e, pi, alpha):
    rest = free_vars(e) - {alpha}
    return rest | free_vars(pi) if alpha in free_vars(e) else rest


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_substitute_free_variable_law(seed):
    rng = random.Random(seed)
    e, pi = random_expr(rng, 20), random_stack(rng, 6)
    alpha = rng.choice([a, b, g])
    assert free_vars(substitute(e, pi, alpha)) == _fv_after(e, pi, alpha)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_substitution_lemma(seed):
    rng = random.Random(seed)
    e = random_expr(rng, 20)
    pi, varpi = random_stack(rng, 6), random_stack(rng, 6)
    alpha, beta = rng.sample([a, b, g], 2)
    if alpha in free_vars(varpi):
        varpi = NIL
    lhs = substitute(substitute(e, pi, alpha), varpi, beta)
    rhs = substitute(substitute(e, varpi, beta), substitute(pi, varpi, beta), alpha)
    assert alpha_eq(lhs, rhs)


CAR_CDR = RuleSet(bd=False)


def _car_cdr_path(rng, e):
    while True:
        reds = one_step_redexes(e, CAR_CDR)
        if not reds:
            return e
        e = rng.choice(reds)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_canonical_form_idempotent_and_order_free(seed):
    rng = random.Random(seed)
    e = random_expr(rng, 30)
    c = canonical_form(e)
    assert canonical_form(c) == c
    assert alpha_eq(_car_cdr_path(rng, e), c)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_original_dialect_preserved(seed):
    from stackcalc.gen import original_context
    rng = random.Random(seed)
    ctx = original_context(rng)
    t = ctx.plug(K.T)
    assert is_original(t)
    assert is_original(canonical_form(t))
    assert is_original(substitute(t, parse_stack("#F :: cdr(a)"), a))
