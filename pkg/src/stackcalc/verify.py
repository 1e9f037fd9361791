"""Independent certificate checking: plug and reduce, nothing else."""

from __future__ import annotations

from .constants import F, I, Omega, T
from .context import HeadContext, Certificate
from .reduction import SIGMA, Verdict, convertible
from .strategies import has_proper_hnf
from .syntax import FreshSession, Push, Term, Var, all_vars

TARGET_TERMS = {"#T": T, "#F": F}


def _proper_status(t: Term, fuel: int) -> bool:
    return has_proper_hnf(t, fuel) is True


def verify_certificate(cert: Certificate, m: Term, n: Term, fuel: int = 10000) -> bool:
    """True iff the context sends ``m`` and ``n`` where the certificate claims.

    Separations need both plugged terms convertible to their boolean target.
    Distinguishing certificates need the proper-hnf status of the two plugged
    terms to differ in the claimed direction.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    ctx = cert.context
    try:
        left, right = ctx.plug(m), ctx.plug(n)
        if cert.distinguishing:
            want_left = cert.left_target == "proper"
            return (_proper_status(left, fuel) == want_left
                    and _proper_status(right, fuel) != want_left)
        targets = TARGET_TERMS[cert.left_target], TARGET_TERMS[cert.right_target]
        if targets[0] == targets[1]:
            return False
        return all(convertible(t, goal, SIGMA, fuel) is Verdict.YES
                   for t, goal in zip((left, right), targets))
    except (KeyError, RecursionError):
        return False


def status_flip_context(ctx: HeadContext, *avoid: Term) -> HeadContext:
    """``bd e. C[.] @ (Omega :: I :: e)``: turns a T/F separation into an hnf-status split."""
    used = set()
    for t in avoid:
        used |= all_vars(ctx.plug(t))
    e = FreshSession(reserved=used).fresh("e")
    return ctx.apply(Push(Omega, Push(I, Var(e)))).bind(e)
