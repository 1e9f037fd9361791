"""sigma / sigma-eta reduction under the full contextual closure."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Union

from .syntax import (
    Abs, App, Car, Cdr, Expr, Push, Var, alpha_eq, alpha_key, canonical_form,
    cdr, substitute,
)


@dataclass(frozen=True)
class RuleSet:
    bd: bool = True
    car: bool = True
    cdr: bool = True
    eta0: bool = False
    eta1: bool = False

    @property
    def name(self) -> str:
        return "sigmaeta" if (self.eta0 or self.eta1) else "sigma"


SIGMA = RuleSet()
SIGMA_ETA = RuleSet(eta0=True, eta1=True)


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Normal:
    expr: Expr
    steps: int = 0


@dataclass(frozen=True)
class FuelExhausted:
    last: Expr
    steps: int


ReductOutcome = Union[Normal, FuelExhausted]


def _root(e: Expr, rules: RuleSet):
    """The contractum of ``e`` itself, if ``e`` is a redex."""
    if isinstance(e, App):
        if rules.bd and isinstance(e.fun, Abs):
            return substitute(e.fun.body, e.arg, e.fun.binder)
    elif isinstance(e, Car):
        if rules.car and isinstance(e.arg, Push):
            return e.arg.head
    elif isinstance(e, Cdr):
        if rules.cdr and isinstance(e.arg, Push):
            return cdr(e.arg.tail, e.n - 1)
    elif isinstance(e, Abs):
        body = e.body
        if (rules.eta0 and isinstance(body, App) and body.arg == Var(e.binder)
                and e.binder not in body.fun.fv):
            return body.fun
    elif isinstance(e, Push):
        if rules.eta1 and isinstance(e.head, Car) and isinstance(e.tail, Cdr):
            inner = cdr(e.tail.arg, e.tail.n - 1)
            if alpha_eq(e.head.arg, inner):
                return inner
    return None


def iter_reducts(e: Expr, rules: RuleSet) -> Iterator[Expr]:
    """One-step reducts, leftmost-outermost first (pre-order)."""
    r = _root(e, rules)
    if r is not None:
        yield r
    if isinstance(e, Cdr):
        for x in iter_reducts(e.arg, rules):
            yield cdr(x, e.n)
    elif isinstance(e, Push):
        for x in iter_reducts(e.head, rules):
            yield Push(x, e.tail)
        for x in iter_reducts(e.tail, rules):
            yield Push(e.head, x)
    elif isinstance(e, Car):
        for x in iter_reducts(e.arg, rules):
            yield Car(x)
    elif isinstance(e, Abs):
        for x in iter_reducts(e.body, rules):
            yield Abs(e.binder, x)
    elif isinstance(e, App):
        for x in iter_reducts(e.fun, rules):
            yield App(x, e.arg)
        for x in iter_reducts(e.arg, rules):
            yield App(e.fun, x)


def one_step_redexes(e: Expr, rules: RuleSet = SIGMA) -> list:
    return list(iter_reducts(e, rules))


def step(e: Expr, rules: RuleSet = SIGMA):
    """The leftmost-outermost reduct, or None for a normal form."""
    return next(iter_reducts(e, rules), None)


def reduce_normal(e: Expr, rules: RuleSet = SIGMA, fuel: int = 10000) -> ReductOutcome:
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    for n in range(fuel):
        nxt = step(e, rules)
        if nxt is None:
            return Normal(e, n)
        e = nxt
    if step(e, rules) is None:
        return Normal(e, fuel)
    return FuelExhausted(e, fuel)


@dataclass
class Trace:
    """A reduction chain read modulo car/cdr.

    Each entry is the canonical form reached by one bd/eta contraction (the
    leftmost one) followed by car/cdr normalization. ``loop_at`` is the index
    of the first entry alpha-equal to an earlier one, or -1.
    """

    chain: list
    outcome: ReductOutcome
    loop_at: int = -1


def reduce_trace(e: Expr, rules: RuleSet = SIGMA, fuel: int = 10000) -> Trace:
    c = canonical_form(e)
    chain = [c]
    seen = {alpha_key(c)}
    loop_at = -1
    for n in range(fuel):
        nxt = step(c, rules)
        if nxt is None:
            return Trace(chain, Normal(c, n), loop_at)
        c = canonical_form(nxt)
        chain.append(c)
        key = alpha_key(c)
        if key in seen and loop_at < 0:
            loop_at = len(chain) - 1
        seen.add(key)
    if step(c, rules) is None:
        return Trace(chain, Normal(c, fuel), loop_at)
    return Trace(chain, FuelExhausted(c, fuel), loop_at)


def joinable(e1: Expr, e2: Expr, rules: RuleSet = SIGMA, fuel: int = 200) -> Verdict:
    """Search for a common reduct; ``fuel`` bounds expansions per side.

    Two distinct normal forms answer NO (sound by confluence).
    """
    if alpha_eq(e1, e2):
        return Verdict.YES
    n1, n2 = reduce_normal(e1, rules, fuel), reduce_normal(e2, rules, fuel)
    if isinstance(n1, Normal) and isinstance(n2, Normal):
        return Verdict.YES if alpha_eq(n1.expr, n2.expr) else Verdict.NO
    sides = []
    for start, norm in ((e1, n1), (e2, n2)):
        seen = {alpha_key(start)}
        seen.add(alpha_key(norm.expr if isinstance(norm, Normal) else norm.last))
        sides.append((seen, deque([start])))
    if sides[0][0] & sides[1][0]:
        return Verdict.YES
    budget = fuel
    while budget > 0 and (sides[0][1] or sides[1][1]):
        budget -= 1
        for mine, other in ((sides[0], sides[1]), (sides[1], sides[0])):
            seen, frontier = mine
            if not frontier:
                continue
            for r in iter_reducts(frontier.popleft(), rules):
                k = alpha_key(r)
                if k in other[0]:
                    return Verdict.YES
                if k not in seen:
                    seen.add(k)
                    frontier.append(r)
    return Verdict.UNKNOWN


def convertible(e1: Expr, e2: Expr, rules: RuleSet = SIGMA, fuel: int = 10000) -> Verdict:
    """Normalize and compare, falling back to a bounded common-reduct search."""
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    n1, n2 = reduce_normal(e1, rules, fuel), reduce_normal(e2, rules, fuel)
    if isinstance(n1, Normal) and isinstance(n2, Normal):
        return Verdict.YES if alpha_eq(n1.expr, n2.expr) else Verdict.NO
    return joinable(e1, e2, rules, min(fuel, 500))
