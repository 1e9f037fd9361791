"""Abstract syntax of the (extended) stack calculus.

Two sorts: stacks (``Nil``, ``Var``, ``Cdr``, ``Push``) and terms (``Car``,
``Abs``, ``App``). Processes of the original calculus are the ``App`` terms.
Variables are named; capture avoidance goes through a :class:`FreshSession`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional, Union


class VarName(NamedTuple):
    base: str
    index: int = 0

    def __str__(self) -> str:
        return self.base if self.index == 0 else f"{self.base}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "VarName":
        """Split a trailing renaming suffix, so ``b12`` is ``("b", 12)``."""
        m = re.fullmatch(r"(.*?)([1-9][0-9]*)", text)
        if m and m.group(1):
            return cls(m.group(1), int(m.group(2)))
        return cls(text, 0)


def var(name: str) -> "Var":
    return Var(VarName.parse(name))


# ---------------------------------------------------------------------------
# stacks


@dataclass(frozen=True)
class Nil:
    def __repr__(self) -> str:
        return "Nil()"

    @cached_property
    def fv(self) -> frozenset:
        return frozenset()


@dataclass(frozen=True)
class Var:
    name: VarName

    @cached_property
    def fv(self) -> frozenset:
        return frozenset([self.name])


@dataclass(frozen=True)
class Cdr:
    """``cdr^n(arg)``; nested cdrs are collapsed into one node."""

    arg: "Stack"
    n: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cdr count must be positive")
        if isinstance(self.arg, Cdr):
            object.__setattr__(self, "n", self.n + self.arg.n)
            object.__setattr__(self, "arg", self.arg.arg)

    @cached_property
    def fv(self) -> frozenset:
        return self.arg.fv


@dataclass(frozen=True)
class Push:
    head: "Term"
    tail: "Stack"

    @cached_property
    def fv(self) -> frozenset:
        return self.head.fv | self.tail.fv


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Car:
    arg: "Stack"

    @cached_property
    def fv(self) -> frozenset:
        return self.arg.fv


@dataclass(frozen=True)
class Abs:
    binder: VarName
    body: "Term"

    @cached_property
    def fv(self) -> frozenset:
        return self.body.fv - {self.binder}


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Stack"

    @cached_property
    def fv(self) -> frozenset:
        return self.fun.fv | self.arg.fv


Stack = Union[Nil, Var, Cdr, Push]
Term = Union[Car, Abs, App]
Expr = Union[Stack, Term]

NIL = Nil()
STACK_TYPES = (Nil, Var, Cdr, Push)
TERM_TYPES = (Car, Abs, App)


def is_stack(e) -> bool:
    return isinstance(e, STACK_TYPES)


def is_term(e) -> bool:
    return isinstance(e, TERM_TYPES)


class Dialect(enum.Enum):
    ORIGINAL = "original"
    EXTENDED = "extended"


class InvalidDialect(ValueError):
    pass


# ---------------------------------------------------------------------------
# smart constructors


def cdr(s: Stack, n: int = 1) -> Stack:
    return s if n == 0 else Cdr(s, n)


def cadr(s: Stack, n: int = 0) -> Term:
    return Car(cdr(s, n))


def push_all(terms, tail: Stack) -> Stack:
    for t in reversed(list(terms)):
        tail = Push(t, tail)
    return tail


def repeat(term: Term, n: int, tail: Stack) -> Stack:
    """The stack ``term^n :: tail``."""
    return push_all([term] * n, tail)


def apply(fun: Term, *args: Stack) -> Term:
    for a in args:
        fun = App(fun, a)
    return fun


def abstract(binders, body: Term) -> Term:
    for b in reversed(list(binders)):
        body = Abs(b, body)
    return body


def strip_abs(t: Term):
    """Split ``bd a1..ak. body`` into ``([a1..ak], body)``."""
    binders = []
    while isinstance(t, Abs):
        binders.append(t.binder)
        t = t.body
    return binders, t


def unspine(t: Term):
    """Split ``H @ s1 @ .. @ sm`` into ``(H, [s1..sm])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


# ---------------------------------------------------------------------------
# variables and freshening


def free_vars(e: Expr) -> frozenset:
    return e.fv


def all_vars(e: Expr) -> set:
    """Every variable name occurring in ``e``, bound or free."""
    out = set()
    todo = [e]
    while todo:
        x = todo.pop()
        if isinstance(x, Var):
            out.add(x.name)
        elif isinstance(x, (Cdr, Car)):
            todo.append(x.arg)
        elif isinstance(x, Push):
            todo.extend((x.head, x.tail))
        elif isinstance(x, Abs):
            out.add(x.binder)
            todo.append(x.body)
        elif isinstance(x, App):
            todo.extend((x.fun, x.arg))
    return out


@dataclass
class FreshSession:
    """Issues names no earlier call has issued and no caller asked to avoid.

    A new name keeps the base of the name it replaces and takes the smallest
    index not in use, so output is reproducible for a given session history.
    """

    counter: int = 0
    reserved: set = field(default_factory=set)

    def reserve(self, names) -> None:
        self.reserved.update(names)

    def fresh(self, base: str, avoid=()) -> VarName:
        idx = 1
        while VarName(base, idx) in self.reserved or VarName(base, idx) in avoid:
            idx += 1
        name = VarName(base, idx)
        self.reserved.add(name)
        self.counter += 1
        return name


def rename(e: Expr, old: VarName, new: VarName) -> Expr:
    """Replace free ``old`` by ``new``; caller guarantees ``new`` is not captured."""
    return substitute(e, Var(new), old)


def substitute(e: Expr, pi: Stack, alpha: VarName, session: Optional[FreshSession] = None) -> Expr:
    """Capture-avoiding ``e[pi/alpha]``."""
    if alpha not in e.fv:
        return e
    if session is None:
        session = FreshSession()
    return _subst(e, pi, alpha, session)


def _subst(e, pi, alpha, session):
    if alpha not in e.fv:
        return e
    if isinstance(e, Var):
        return pi
    if isinstance(e, Cdr):
        return cdr(_subst(e.arg, pi, alpha, session), e.n)
    if isinstance(e, Push):
        return Push(_subst(e.head, pi, alpha, session), _subst(e.tail, pi, alpha, session))
    if isinstance(e, Car):
        return Car(_subst(e.arg, pi, alpha, session))
    if isinstance(e, App):
        return App(_subst(e.fun, pi, alpha, session), _subst(e.arg, pi, alpha, session))
    if isinstance(e, Abs):
        binder, body = e.binder, e.body
        if binder in pi.fv:
            avoid = pi.fv | all_vars(body) | {alpha}
            new = session.fresh(binder.base, avoid)
            body = _subst(body, Var(new), binder, session)
            binder = new
        return Abs(binder, _subst(body, pi, alpha, session))
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# alpha equivalence


def alpha_key(e: Expr, env=None):
    """A nameless rendering of ``e``: bound variables become binder depths."""
    return _key(e, env or {}, 0)


def _key(e, env, depth):
    if isinstance(e, Nil):
        return ("nil",)
    if isinstance(e, Var):
        if e.name in env:
            return ("bv", depth - env[e.name])
        return ("fv", e.name)
    if isinstance(e, Cdr):
        return ("cdr", e.n, _key(e.arg, env, depth))
    if isinstance(e, Push):
        return ("push", _key(e.head, env, depth), _key(e.tail, env, depth))
    if isinstance(e, Car):
        return ("car", _key(e.arg, env, depth))
    if isinstance(e, App):
        return ("app", _key(e.fun, env, depth), _key(e.arg, env, depth))
    if isinstance(e, Abs):
        inner = dict(env)
        inner[e.binder] = depth + 1
        return ("bd", _key(e.body, inner, depth + 1))
    raise TypeError(f"not an expression: {e!r}")


def alpha_eq(e1: Expr, e2: Expr) -> bool:
    if e1 is e2:
        return True
    if is_term(e1) != is_term(e2):
        return False
    return alpha_key(e1) == alpha_key(e2)


# ---------------------------------------------------------------------------
# canonical (car/cdr-normal) forms


def canonical_form(e: Expr) -> Expr:
    """Contract every ``car(M::pi)`` and ``cdr(M::pi)``, innermost first."""
    if isinstance(e, (Nil, Var)):
        return e
    if isinstance(e, Cdr):
        s = canonical_form(e.arg)
        n = e.n
        while n and isinstance(s, Push):
            s = s.tail
            n -= 1
        return cdr(s, n)
    if isinstance(e, Push):
        return Push(canonical_form(e.head), canonical_form(e.tail))
    if isinstance(e, Car):
        s = canonical_form(e.arg)
        return s.head if isinstance(s, Push) else Car(s)
    if isinstance(e, Abs):
        return Abs(e.binder, canonical_form(e.body))
    if isinstance(e, App):
        return App(canonical_form(e.fun), canonical_form(e.arg))
    raise TypeError(f"not an expression: {e!r}")


class Spine(NamedTuple):
    """A canonical stack ``items :: cdr^k(tail)``; ``tail`` is a name or None for nil."""

    items: tuple
    tail: Optional[VarName]
    k: int

    @property
    def offset(self) -> int:
        return self.k - len(self.items)


def spine(s: Stack) -> Spine:
    s = canonical_form(s)
    items = []
    while isinstance(s, Push):
        items.append(s.head)
        s = s.tail
    k = 0
    if isinstance(s, Cdr):
        k, s = s.n, s.arg
    return Spine(tuple(items), s.name if isinstance(s, Var) else None, k)


def unspine_stack(sp: Spine) -> Stack:
    base = NIL if sp.tail is None else Var(sp.tail)
    return push_all(sp.items, cdr(base, sp.k))


# ---------------------------------------------------------------------------
# dialect


def is_original(e: Expr) -> bool:
    """Original-calculus validity: abstraction bodies are processes ``M @ pi``."""
    if isinstance(e, (Nil, Var)):
        return True
    if isinstance(e, Cdr):
        return is_original(e.arg)
    if isinstance(e, Push):
        return is_original(e.head) and is_original(e.tail)
    if isinstance(e, Car):
        return is_original(e.arg)
    if isinstance(e, Abs):
        b = e.body
        return isinstance(b, App) and is_original(b.fun) and is_original(b.arg)
    return False


def check_dialect(e: Expr, dialect: Dialect) -> None:
    if dialect is Dialect.ORIGINAL and not is_original(e):
        raise InvalidDialect("expression is not in the original stack calculus")
