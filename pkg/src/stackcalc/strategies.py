"""Deterministic head reduction (extended calculus) and outer reduction
(original calculus), with decomposition of their normal forms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .syntax import (
    NIL, Abs, App, Car, Cdr, Dialect, Nil, Push, Term, Var, VarName, abstract,
    apply, canonical_form, cdr, check_dialect, push_all, strip_abs,
    substitute, unspine,
)


@dataclass(frozen=True)
class ProperHead:
    var: VarName
    n: int


@dataclass(frozen=True)
class NilHead:
    n: int


Head = Union[ProperHead, NilHead]


def head_term(h: Head) -> Term:
    base = NIL if isinstance(h, NilHead) else Var(h.var)
    return Car(cdr(base, h.n))


def _read_head(t) -> Optional[Head]:
    if not isinstance(t, Car):
        return None
    s, n = t.arg, 0
    if isinstance(s, Cdr):
        s, n = s.arg, s.n
    if isinstance(s, Var):
        return ProperHead(s.name, n)
    if isinstance(s, Nil):
        return NilHead(n)
    return None


@dataclass(frozen=True)
class HnfView:
    binders: tuple
    head: Head
    args: tuple

    @property
    def proper(self) -> bool:
        return isinstance(self.head, ProperHead)

    def recompose(self) -> Term:
        return abstract(self.binders, apply(head_term(self.head), *self.args))


@dataclass(frozen=True)
class TailVar:
    var: VarName
    k: int


@dataclass(frozen=True)
class TailNil:
    k: int


@dataclass(frozen=True)
class OnfView:
    """``bd binder. H @ terms :: tail``; a bare ``car(..)`` has no binder and no tail."""

    binder: Optional[VarName]
    head: Head
    terms: tuple
    tail: Optional[Union[TailVar, TailNil]]

    @property
    def proper(self) -> bool:
        return isinstance(self.head, ProperHead)

    def recompose(self) -> Term:
        h = head_term(self.head)
        if self.binder is None:
            return h
        tail = self.tail
        base = cdr(Var(tail.var), tail.k) if isinstance(tail, TailVar) else cdr(NIL, tail.k)
        return Abs(self.binder, App(h, push_all(self.terms, base)))


@dataclass(frozen=True)
class Found:
    view: Union[HnfView, OnfView]
    steps: int = 0


@dataclass(frozen=True)
class Improper:
    view: Union[HnfView, OnfView]
    steps: int = 0


@dataclass(frozen=True)
class Diverged:
    steps: int


StrategyResult = Union[Found, Improper, Diverged]


# ---------------------------------------------------------------------------
# head reduction


def head_step(m: Term) -> Optional[Term]:
    """Contract the head redex of ``canonical_form(m)``; None if it is an hnf.

    The reduct is returned in canonical form.
    """
    binders, body = strip_abs(canonical_form(m))
    h, args = unspine(body)
    if not isinstance(h, Abs):
        return None
    reduct = apply(substitute(h.body, args[0], h.binder), *args[1:])
    return canonical_form(abstract(binders, reduct))


def decompose_hnf(m: Term) -> Optional[HnfView]:
    binders, body = strip_abs(canonical_form(m))
    h, args = unspine(body)
    head = _read_head(h)
    if head is None:
        return None
    return HnfView(tuple(binders), head, tuple(args))


def head_normalize(m: Term, fuel: int = 10000) -> StrategyResult:
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    steps = 0
    while True:
        view = decompose_hnf(m)
        if view is not None:
            return Found(view, steps) if view.proper else Improper(view, steps)
        if steps >= fuel:
            return Diverged(steps)
        m = head_step(m)
        steps += 1


def hnf(m: Term, fuel: int = 10000) -> Optional[Term]:
    """The head normal form of ``m``, or None (no hnf found within fuel)."""
    r = head_normalize(m, fuel)
    return None if isinstance(r, Diverged) else r.view.recompose()


# ---------------------------------------------------------------------------
# outer reduction (original calculus)


def outer_step(m: Term) -> Optional[Term]:
    check_dialect(m, Dialect.ORIGINAL)
    c = canonical_form(m)
    if not (isinstance(c, Abs) and isinstance(c.body, App) and isinstance(c.body.fun, Abs)):
        return None
    redex = c.body
    return canonical_form(Abs(c.binder, substitute(redex.fun.body, redex.arg, redex.fun.binder)))


def decompose_onf(m: Term) -> Optional[OnfView]:
    c = canonical_form(m)
    if isinstance(c, Car):
        head = _read_head(c)
        return OnfView(None, head, (), None) if head is not None else None
    if not (isinstance(c, Abs) and isinstance(c.body, App)):
        return None
    head = _read_head(c.body.fun)
    if head is None:
        return None
    s = c.body.arg
    terms = []
    while isinstance(s, Push):
        terms.append(s.head)
        s = s.tail
    k = 0
    if isinstance(s, Cdr):
        s, k = s.arg, s.n
    tail = TailVar(s.name, k) if isinstance(s, Var) else TailNil(k)
    return OnfView(c.binder, head, tuple(terms), tail)


def outer_normalize(m: Term, fuel: int = 10000) -> StrategyResult:
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    check_dialect(m, Dialect.ORIGINAL)
    steps = 0
    while True:
        view = decompose_onf(m)
        if view is not None:
            return Found(view, steps) if view.proper else Improper(view, steps)
        if steps >= fuel:
            return Diverged(steps)
        m = outer_step(m)
        steps += 1


def has_proper_hnf(m: Term, fuel: int = 10000) -> Optional[bool]:
    """True / False, or None when head reduction runs out of fuel."""
    r = head_normalize(m, fuel)
    if isinstance(r, Diverged):
        return None
    return isinstance(r, Found)
