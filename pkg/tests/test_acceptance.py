"""Acceptance suite: one PASS/FAIL line per criterion, printed to the terminal."""

import random

import pytest

from stackcalc import constants as K
from stackcalc.bohm import Dissimilar, Unknown, bounded_metrics, node_at, sim_bounded, tree_nodes
from stackcalc.cli import run_command
from stackcalc.gen import normal_pairs, normal_term, original_context, random_expr, random_path, random_stack, random_term
from stackcalc.reduction import SIGMA, SIGMA_ETA, Verdict, joinable, one_step_redexes, reduce_trace
from stackcalc.separator import Separated, bohm_out_trace, separate, separate_general, separate_single
from stackcalc.strategies import Diverged, Found, head_normalize, head_step, outer_normalize
from stackcalc.surface import parse_term, show
from stackcalc.syntax import (
    NIL, App, Dialect, Push, Var, VarName, alpha_eq, canonical_form, free_vars,
    is_original, substitute,
)
from stackcalc.verify import status_flip_context, verify_certificate

FUEL = 10 ** 4


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def separated_pairs():
    """The 200 generated pairs with their separation results."""
    pairs = normal_pairs(random.Random(2024), 200, 3)
    return [(m, n, separate(m, n, 3, FUEL)) for m, n in pairs]


def test_criterion_1_worked_examples(report, capsys):
    code = run_command(["reduce", "#I @ (#I :: nil)", "--trace"])
    lines = capsys.readouterr().out.strip().splitlines()
    want = [
        "(bd a. car(a) @ cdr(a)) @ (bd a. car(a) @ cdr(a)) :: nil",
        "(bd a. car(a) @ cdr(a)) @ nil",
        "car(nil) @ cdr(nil)",
    ]
    loop = reduce_trace(App(K.omega, Push(K.omega, NIL)), SIGMA, 3)
    ok = code == 0 and lines == want and 0 < loop.loop_at <= 3
    report(1, ok, f"trace {len(lines)} entries golden={lines == want}; omega loop at step {loop.loop_at}")


@pytest.mark.parametrize("rules", [SIGMA, SIGMA_ETA], ids=["sigma", "sigmaeta"])
def test_criterion_2_church_rosser(report, rules):
    rng = random.Random(7 if rules is SIGMA else 8)
    yes = 0
    for _ in range(500):
        e = random_expr(rng, 30)
        left, right = random_path(rng, e, rules, 5), random_path(rng, e, rules, 5)
        yes += joinable(left, right, rules, 200) is Verdict.YES
    report(2, yes == 500, f"{rules.name}: {yes}/500 divergent path pairs rejoined")


def test_criterion_3_substitution_lemma(report):
    rng = random.Random(11)
    names = [VarName(x) for x in "abcg"]
    ok = 0
    for _ in range(500):
        e = random_expr(rng, 30)
        pi, varpi = random_stack(rng, 8), random_stack(rng, 8)
        alpha, beta = rng.sample(names, 2)
        while alpha in free_vars(varpi):
            varpi = random_stack(rng, 8)
        lhs = substitute(substitute(e, pi, alpha), varpi, beta)
        rhs = substitute(substitute(e, varpi, beta), substitute(pi, varpi, beta), alpha)
        ok += alpha_eq(lhs, rhs)
    report(3, ok == 500, f"{ok}/500 samples alpha-equal")


SINGLE_CASES = {
    "1": ("bd a. car(b)@a", "bd a. car(c)@a"),
    "2": ("bd a. car(b)@a", "bd a. car(cdr(b))@a"),
    "3.1.1": ("bd a. car(b)@g", "bd a. car(b)@h"),
    "3.1.2": ("bd a. car(b)@b", "bd a. car(b)@g"),
    "3.2.1": ("bd a. car(b)@g", "bd a. car(b)@(#T::g)"),
    "3.2.2": ("bd a. car(b)@(#T::b)", "bd a. car(b)@b"),
}
GENERAL_CASES = {
    "1": ("bd a1. bd a2. car(b)@a1@a2", "bd a1. bd a2. car(c)@a1@a2"),
    "2": ("#T", "#F"),
    "3": ("bd a. car(b)@a@a", "bd a. car(b)@a"),
    "4": ("bd a. car(b)@(#T::nil)@a", "bd a. car(b)@(#T::nil)@cdr(a)"),
    "5": ("bd a. car(b)@a", "bd a. bd c. car(b)@a@(#T::c)"),
}


def test_criterion_4_case_coverage(report):
    good = []
    for label, (x, y) in SINGLE_CASES.items():
        m, n = parse_term(x), parse_term(y)
        cert = separate_single(m, n, FUEL)
        first = [c for c in cert.case_path if c != "swap"][0] if cert else None
        good.append(cert is not None and first == label and cert.fuel_used <= FUEL
                    and verify_certificate(cert, m, n, FUEL))
    for label, (x, y) in GENERAL_CASES.items():
        m, n = parse_term(x), parse_term(y)
        cert = separate_general(m, n, FUEL)
        good.append(cert is not None and cert.case_path[0] == label and cert.fuel_used <= FUEL
                    and verify_certificate(cert, m, n, FUEL))
    report(4, all(good), f"{sum(good)}/11 case certificates verified")


def test_criterion_5_certificates_at_scale(report, separated_pairs):
    shapes = all(not one_step_redexes(t, SIGMA_ETA) and "nil" not in show(t)
                 for m, n, _ in separated_pairs for t in (m, n))
    distinct = all(not alpha_eq(m, n) for m, n, _ in separated_pairs)
    ok = sum(isinstance(r, Separated) and verify_certificate(r.certificate, m, n, FUEL)
             for m, n, r in separated_pairs)
    report(5, shapes and distinct and ok == 200,
           f"{ok}/200 separated and verified (normal nil-free inputs: {shapes}, distinct: {distinct})")


def test_criterion_6_bohm_out(report):
    rng = random.Random(31)
    ok = 0
    for _ in range(50):
        m = normal_term(rng, 3)
        sigma = rng.choice([p for p, _ in tree_nodes(m, 3)])
        met = bounded_metrics(m, len(sigma), FUEL)
        ext = bohm_out_trace(m, len(sigma), sigma, met.bounded_breadth, met.bounded_weight + 1, FUEL)
        node = node_at(m, sigma, FUEL)
        direct = node
        for alpha, pi in ext.substitutions:
            direct = substitute(direct, pi, alpha)
        plugged = ext.context.plug(m)
        same = joinable(plugged, direct, SIGMA, 500) is Verdict.YES
        status = isinstance(head_normalize(plugged, FUEL), Found) == isinstance(head_normalize(node, FUEL), Found)
        ok += same and status
    report(6, ok == 50, f"{ok}/50 extractions joinable with the substituted node, hnf status agreeing")


def test_criterion_7a_wrapper_not_separated(report):
    w_t, w_f = K.wrap(K.T), K.wrap(K.F)
    premises = (not alpha_eq(w_t, w_f) and is_original(w_t) and is_original(w_f)
                and not one_step_redexes(w_t, SIGMA_ETA) and not one_step_redexes(w_f, SIGMA_ETA))
    results = [separate(w_t, w_f, d, FUEL, Dialect.ORIGINAL) for d in range(5)]
    none = all(not isinstance(r, Separated) for r in results)
    report("7a", premises and none,
           f"original-dialect separation up to depth 4: {[type(r).__name__ for r in results]}")


def test_criterion_7b_wrapper_contexts_agree(report):
    rng = random.Random(47)
    w_t, w_f = K.wrap(K.T), K.wrap(K.F)
    agree = 0
    for _ in range(200):
        ctx = original_context(rng, 20)
        a, b = (outer_normalize(ctx.plug(w), FUEL) for w in (w_t, w_f))
        agree += isinstance(a, Found) == isinstance(b, Found)
    report("7b", agree == 200, f"{agree}/200 original contexts give equal proper-onf status")


def _head_reaches(start, goal, limit):
    t = canonical_form(start)
    for n in range(limit + 1):
        if alpha_eq(t, goal):
            return n
        t = head_step(t)
        if t is None:
            return None
    return None


def test_criterion_8_hp_witnesses(report, separated_pairs):
    tinf = head_normalize(K.Tinf, FUEL)
    rng = random.Random(53)
    g = Var(VarName("g"))
    quick = 0
    for _ in range(100):
        a = random_term(rng, 20)
        n = _head_reaches(App(K.I, Push(a, g)), canonical_form(App(a, g)), 3)
        quick += n is not None
    ident = head_normalize(App(K.I, Push(K.T, g)), 3)
    flips = 0
    for m, n, r in separated_pairs:
        cert = r.certificate
        flip = status_flip_context(cert.context, m, n)
        t_side, f_side = (m, n) if cert.left_target == "#T" else (n, m)
        flips += (isinstance(head_normalize(flip.plug(t_side), FUEL), Diverged)
                  and isinstance(head_normalize(flip.plug(f_side), FUEL), Found))
    ok = isinstance(tinf, Diverged) and quick == 100 and isinstance(ident, Found) and flips == 200
    report(8, ok, f"Tinf diverged={isinstance(tinf, Diverged)}; I@(A::g) unfolds in <=3 steps {quick}/100; "
                  f"status flipped {flips}/200")


def test_criterion_9_characterization_smoke(report, separated_pairs):
    match = 0
    for m, n, r in separated_pairs:
        v = sim_bounded(m, n, 3, FUEL)
        match += isinstance(v, Dissimilar) and v.path == r.certificate.path
    unknown = [sim_bounded(K.Omega, K.Tinf, d, FUEL) for d in range(5)]
    never = all(isinstance(v, Unknown) for v in unknown)
    report(9, match == 200 and never, f"witness path matches {match}/200; (Omega, Tinf) Unknown at depths 0-4: {never}")

