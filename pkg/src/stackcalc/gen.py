"""Seeded random generators for expressions, normal forms and head contexts."""

from __future__ import annotations

import random
from typing import Optional

from . import constants as K
from .context import ApplyStack, Bind, HeadContext
from .reduction import SIGMA, SIGMA_ETA, iter_reducts, one_step_redexes
from .syntax import NIL, Abs, App, Car, Cdr, Push, Term, Var, VarName, alpha_eq, cdr

NAMES = tuple(VarName(c) for c in "abcg")
_CLOSED = (K.I, K.T, K.F)


def size(e) -> int:
    if isinstance(e, (Car,)):
        return 1 + size(e.arg)
    if isinstance(e, Abs):
        return 1 + size(e.body)
    if isinstance(e, App):
        return 1 + size(e.fun) + size(e.arg)
    if isinstance(e, Cdr):
        return e.n + size(e.arg)
    if isinstance(e, Push):
        return 1 + size(e.head) + size(e.tail)
    return 1


def random_term(rng: random.Random, budget: int, names=NAMES) -> Term:
    """A term of at most ``budget`` nodes, biased towards redexes."""
    if budget <= 2:
        return Car(random_stack(rng, budget - 1, names))
    r = rng.random()
    if r < 0.1 and budget >= 6:
        return rng.choice(_CLOSED)
    if r < 0.3:
        return Car(random_stack(rng, budget - 1, names))
    if r < 0.55:
        return Abs(rng.choice(names), random_term(rng, budget - 1, names))
    left = rng.randint(1, budget - 2)
    if rng.random() < 0.6 and left >= 2:
        fun = Abs(rng.choice(names), random_term(rng, left - 1, names))
    else:
        fun = random_term(rng, left, names)
    return App(fun, random_stack(rng, budget - 1 - left, names))


def random_stack(rng: random.Random, budget: int, names=NAMES):
    if budget <= 1:
        return NIL if rng.random() < 0.2 else Var(rng.choice(names))
    r = rng.random()
    if r < 0.25:
        return Cdr(random_stack(rng, budget - 1, names))
    if r < 0.35:
        return Var(rng.choice(names))
    head = rng.randint(1, budget - 1)
    return Push(random_term(rng, head, names), random_stack(rng, budget - 1 - head, names))


def random_expr(rng: random.Random, max_size: int = 30, names=NAMES):
    budget = rng.randint(1, max_size)
    return random_term(rng, budget, names) if rng.random() < 0.7 else random_stack(rng, budget, names)


def random_path(rng: random.Random, e, rules=SIGMA, steps: int = 5):
    """Follow up to ``steps`` uniformly chosen one-step reductions."""
    for _ in range(steps):
        reds = one_step_redexes(e, rules)
        if not reds:
            break
        e = rng.choice(reds)
    return e


def has_redex(e, rules) -> bool:
    return next(iter_reducts(e, rules), None) is not None


# ---------------------------------------------------------------------------
# normal forms without nil


class _Namer:
    def __init__(self):
        self.n = 0

    def __call__(self) -> VarName:
        self.n += 1
        return VarName("a", self.n)


def _nf(rng, depth: int, scope: list, free, namer) -> Term:
    binders = [namer() for _ in range(rng.choice((0, 1, 1, 2)))]
    scope = scope + binders
    pool = scope + list(free)
    head = Car(cdr(Var(rng.choice(pool)), rng.choice((0, 0, 1, 2))))
    args = []
    for _ in range(rng.choice((0, 1, 1, 2))):
        items = [_nf(rng, depth - 1, scope, free, namer)
                 for _ in range(rng.randint(0, 2) if depth > 0 else 0)]
        s = cdr(Var(rng.choice(pool)), rng.choice((0, 0, 1)))
        for t in reversed(items):
            s = Push(t, s)
        args.append(s)
    t = head
    for s in args:
        t = App(t, s)
    for b in reversed(binders):
        t = Abs(b, t)
    return t


def normal_term(rng: random.Random, depth: int = 3, free=(VarName("x"), VarName("y")),
                tries: int = 1000) -> Term:
    """A sigma-eta-normal, nil-free term whose Böhm tree has depth <= ``depth``.

    Binder names are pairwise distinct and distinct from ``free``.
    """
    for _ in range(tries):
        t = _nf(rng, depth, [], free, _Namer())
        if not has_redex(t, SIGMA_ETA):
            return t
    raise RuntimeError("no normal form drawn")


def _subterm_slots(t, out, depth):
    """Positions of hnf-shaped subterms, as rebuild callbacks."""
    out.append((t, depth))
    body = t
    while isinstance(body, Abs):
        body = body.body
    while isinstance(body, App):
        s = body.arg
        while isinstance(s, Push):
            _subterm_slots(s.head, out, depth + 1)
            s = s.tail
        body = body.fun


def _replace(t, target, new):
    if t is target:
        return new
    if isinstance(t, Abs):
        return Abs(t.binder, _replace(t.body, target, new))
    if isinstance(t, App):
        return App(_replace(t.fun, target, new), _replace(t.arg, target, new))
    if isinstance(t, Push):
        return Push(_replace(t.head, target, new), _replace(t.tail, target, new))
    return t


def mutate(rng: random.Random, t: Term, depth: int = 3, free=(VarName("x"), VarName("y"))) -> Optional[Term]:
    """Replace one subterm by a fresh normal form of fitting depth."""
    slots = []
    _subterm_slots(t, slots, 0)
    target, d = rng.choice(slots)
    namer = _Namer()
    namer.n = 100 + rng.randint(0, 10 ** 6)
    # bound names visible at the slot are not tracked; fresh subterms use free names only
    new = _nf(rng, max(depth - d, 0), [], free, namer)
    out = _replace(t, target, new)
    if has_redex(out, SIGMA_ETA) or out == t:
        return None
    return out


def normal_pairs(rng: random.Random, count: int, depth: int = 3) -> list:
    """Distinct normal-form pairs, half drawn independently and half by mutation."""
    pairs = []
    while len(pairs) < count:
        m = normal_term(rng, depth)
        if len(pairs) % 2:
            n = mutate(rng, m, depth)
            if n is None:
                continue
        else:
            n = normal_term(rng, depth)
        if not alpha_eq(m, n):
            pairs.append((m, n))
    return pairs


# ---------------------------------------------------------------------------
# original-calculus head contexts

_ORIG_CLOSED = (K.T, K.F, K.I, K.omega)


def _orig_term(rng, budget: int, names) -> Term:
    r = rng.random()
    if budget < 4 or r < 0.4:
        if r < 0.25:
            return rng.choice(_ORIG_CLOSED)
        return Car(cdr(Var(rng.choice(names)), rng.randint(0, 1)))
    x = rng.choice(names)
    return Abs(x, App(_orig_term(rng, budget - 3, names), _orig_stack(rng, 2, names + [x])))


def _orig_stack(rng, budget: int, names):
    if budget <= 1 or rng.random() < 0.3:
        return cdr(Var(rng.choice(names)), rng.randint(0, 1))
    head_budget = rng.randint(1, budget - 1)
    return Push(_orig_term(rng, head_budget, names), _orig_stack(rng, budget - head_budget, names))


def context_size(ctx: HeadContext) -> int:
    """Frames plus stack nodes, counting a named constant as one node."""
    total = 0
    for fr in ctx.frames:
        total += 1 if isinstance(fr, Bind) else 1 + _tok(fr.pi)
    return total


def _tok(e) -> int:
    if any(e is c for c in _ORIG_CLOSED):
        return 1
    if isinstance(e, Car):
        return 1 + _tok(e.arg)
    if isinstance(e, Abs):
        return 1 + _tok(e.body)
    if isinstance(e, App):
        return 1 + _tok(e.fun) + _tok(e.arg)
    if isinstance(e, Cdr):
        return e.n + _tok(e.arg)
    if isinstance(e, Push):
        return 1 + _tok(e.head) + _tok(e.tail)
    return 1


def original_context(rng: random.Random, max_size: int = 20) -> HeadContext:
    """``bd a1. (bd a2. ([.] @ pi2)) @ pi1``-style contexts of bounded size."""
    while True:
        frames = []
        names = [VarName("z"), VarName("a"), VarName("g")]
        for _ in range(rng.randint(1, 3)):
            x = rng.choice(names)
            frames += [Bind(x), ApplyStack(_orig_stack(rng, rng.randint(1, 5), names))]
        ctx = HeadContext(tuple(frames))
        if context_size(ctx) <= max_size and ctx.is_original():
            return ctx


__all__ = [
    "random_term", "random_stack", "random_expr", "random_path", "normal_term",
    "mutate", "normal_pairs", "original_context", "context_size", "size",
]
