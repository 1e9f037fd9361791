import random

from hypothesis import given, settings, strategies as st

from stackcalc import constants as K
from stackcalc.gen import random_expr, random_path
from stackcalc.reduction import (
    SIGMA, SIGMA_ETA, FuelExhausted, Normal, Verdict, convertible, joinable,
    one_step_redexes, reduce_normal, reduce_trace,
)
from stackcalc.surface import parse, parse_term
from stackcalc.syntax import NIL, App, Push, alpha_eq, canonical_form, is_term

seeds = st.integers(min_value=0, max_value=2 ** 32)
I_I_NIL = App(K.I, Push(K.I, NIL))
OMEGA_LOOP = App(K.omega, Push(K.omega, NIL))


def contains(reds, e):
    return any(alpha_eq(canonical_form(r), e) for r in reds)


def test_one_step_examples():
    # reducts are compared after car/cdr normalization
    assert contains(one_step_redexes(I_I_NIL, SIGMA), App(K.I, NIL))
    assert contains(one_step_redexes(OMEGA_LOOP, SIGMA), OMEGA_LOOP)
    assert contains(one_step_redexes(parse_term("bd a. car(nil) @ a"), SIGMA_ETA), parse_term("car(nil)"))


def test_eta0_respects_side_condition():
    assert not contains(one_step_redexes(parse_term("bd a. car(a) @ a"), SIGMA_ETA), parse_term("car(a)"))


def test_reduce_normal_examples():
    r = reduce_normal(I_I_NIL, SIGMA, 100)
    assert isinstance(r, Normal) and alpha_eq(r.expr, parse_term("car(nil) @ cdr(nil)"))
    r = reduce_normal(OMEGA_LOOP, SIGMA, 50)
    assert isinstance(r, FuelExhausted) and r.steps == 50
    r = reduce_normal(parse("car(x) :: cdr(x)", "stack"), SIGMA_ETA, 10)
    assert isinstance(r, Normal) and r.expr == parse("x", "stack")


def test_trace_chain():
    tr = reduce_trace(I_I_NIL)
    want = [I_I_NIL, App(K.I, NIL), parse_term("car(nil) @ cdr(nil)")]
    assert len(tr.chain) == 3
    assert all(alpha_eq(x, y) for x, y in zip(tr.chain, want))
    assert reduce_trace(OMEGA_LOOP, SIGMA, 3).loop_at == 1


def test_convertible_examples():
    assert convertible(I_I_NIL, I_I_NIL, SIGMA, 10) is Verdict.YES
    assert convertible(K.T, K.F, SIGMA, 100) is Verdict.NO
    assert convertible(parse_term("bd e. #T @ e"), K.T, SIGMA, 100) is Verdict.YES


def test_joinable_examples():
    e = parse_term("(bd a. car(#T :: a) @ a) @ (#F :: nil)")
    reds = one_step_redexes(e, SIGMA)
    assert len(reds) >= 2
    for x in reds:
        for y in reds:
            assert joinable(x, y, SIGMA, 200) is Verdict.YES
    assert joinable(e, e, SIGMA, 1) is Verdict.YES
    assert joinable(K.T, K.F, SIGMA, 100) is not Verdict.YES


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_sorts_preserved_and_normal_forms_stuck(seed):
    rng = random.Random(seed)
    e = random_expr(rng, 30)
    for r in one_step_redexes(e, SIGMA_ETA):
        assert is_term(r) == is_term(e)
    out = reduce_normal(e, SIGMA, 300)
    if isinstance(out, Normal):
        assert one_step_redexes(out.expr, SIGMA) == []


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_local_confluence(seed):
    rng = random.Random(seed)
    e = random_expr(rng, 30)
    reds = one_step_redexes(e, SIGMA)[:6]
    for x in reds:
        for y in reds:
            assert joinable(x, y, SIGMA, 200) is Verdict.YES


@settings(max_examples=100, deadline=None)
@given(seeds, st.sampled_from([SIGMA, SIGMA_ETA]))
def test_divergent_paths_rejoin(seed, rules):
    rng = random.Random(seed)
    e = random_expr(rng, 30)
    left, right = random_path(rng, e, rules), random_path(rng, e, rules)
    assert joinable(left, right, rules, 200) is Verdict.YES
