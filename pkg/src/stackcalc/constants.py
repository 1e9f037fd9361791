"""Named terms used throughout: booleans, identity, divergent terms, the
fixed-point witnesses and the operational-equivalence wrapper."""

from __future__ import annotations

from .syntax import (
    NIL, Abs, App, Car, Push, Term, Var, VarName, abstract, apply, cadr, cdr,
)

_a, _b, _d, _f, _g, _x = (VarName(c) for c in "abdfgx")
a, b, d, f, g, x = (Var(n) for n in (_a, _b, _d, _f, _g, _x))

I = Abs(_a, App(Car(a), cdr(a)))
T = Abs(_a, App(cadr(a, 0), cdr(a, 2)))
F = Abs(_a, App(cadr(a, 1), cdr(a, 2)))
omega = Abs(_a, App(Car(a), a))
Omega = Abs(_g, App(omega, Push(omega, g)))

# u and wrapU are open: f and a are bound by the enclosing Y / W
u = Abs(_x, App(cadr(f, 0), Push(Abs(_b, App(cadr(x, 0), Push(cadr(x, 0), b))), cdr(x, 1))))
U = Abs(_g, App(u, Push(u, g)))
Y = Abs(_f, App(U, cdr(f, 1)))
Tinf = Abs(_d, App(Y, Push(T, d)))
wrapU = Abs(_g, App(cadr(a, 0), a))


def wrap(m: Term) -> Term:
    """``bd a. car(a) @ ((bd b. car(a) @ (wrapU :: m :: a)) :: wrapU :: a)``."""
    inner = Abs(_b, App(cadr(a, 0), Push(wrapU, Push(m, a))))
    return Abs(_a, App(cadr(a, 0), Push(inner, Push(wrapU, a))))


def permutator(q: int) -> Term:
    """``bd e1 .. eq d. car(d) @ e1 @ .. @ eq``."""
    es = [VarName("e", i) for i in range(1, q + 1)]
    return abstract(es + [_d], apply(Car(d), *(Var(e) for e in es)))


def constants() -> dict:
    return {
        "T": T, "F": F, "I": I, "omega": omega, "Omega": Omega,
        "u": u, "U": U, "Y": Y, "Tinf": Tinf, "wrapU": wrapU,
    }


def lookup(name: str) -> Term:
    """Resolve a constant name, including ``P<q>`` permutators."""
    table = constants()
    if name in table:
        return table[name]
    if len(name) > 1 and name[0] == "P" and name[1:].isdigit():
        return permutator(int(name[1:]))
    raise KeyError(name)


__all__ = [
    "I", "T", "F", "omega", "Omega", "u", "U", "Y", "Tinf", "wrapU",
    "wrap", "permutator", "constants", "lookup", "NIL",
]
