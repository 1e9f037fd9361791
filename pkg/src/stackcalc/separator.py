"""Constructive separation of terms by head contexts.

The builders work on hnfs whose binders were renamed to shared fresh names,
so bound heads compare positionally. Symmetric cases are handled by
swapping the two sides and swapping the targets; the case log records it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .bohm import (
    UNKNOWN, Aligner, Dissimilar, Similar, Unknown, _child, bounded_metrics,
    check_path, compare_views, format_path, node_at, rename_binders,
    sim_bounded, stack_similar, virtual_child, walk,
)
from .constants import F, I, T, permutator
from .context import HOLE, Certificate, HeadContext
from .strategies import Found, HnfView, head_normalize
from .syntax import (
    Abs, App, Dialect, FreshSession, Push, Stack, Term, Var, VarName,
    abstract, all_vars, cadr, cdr, free_vars, push_all, repeat, spine,
)
from .verify import verify_certificate


class NotInShape(ValueError):
    pass


class NoProperHnf(ValueError):
    pass


class PathNotInDomain(ValueError):
    pass


class BoundsTooSmall(ValueError):
    pass


def perm_stack(eps: VarName, q: int, p: int) -> Stack:
    """``p`` copies of the arity-``q`` permutator pushed on ``eps``."""
    return repeat(permutator(q), p, Var(eps))


def _perm_stack_of(eps: VarName, arities) -> Stack:
    return push_all([permutator(q) for q in arities], Var(eps))


@dataclass
class _Build:
    ctx: HeadContext
    left: str = "#T"
    right: str = "#F"
    cases: list = field(default_factory=list)
    steps: int = 0

    def swapped(self) -> "_Build":
        return _Build(self.ctx, self.right, self.left, ["swap"] + self.cases, self.steps)

    def after(self, inner: HeadContext, cases) -> "_Build":
        """This build applied on top of ``inner``."""
        return _Build(self.ctx.of(inner), self.left, self.right, list(cases) + self.cases, self.steps)


def _session_for(*terms: Term) -> FreshSession:
    used = set()
    for t in terms:
        used |= all_vars(t)
    return FreshSession(reserved=used)


def _proper(t: Term, fuel: int, err=NoProperHnf):
    r = head_normalize(t, fuel)
    if not isinstance(r, Found):
        raise err("term has no proper hnf within fuel")
    return r


def _aligned(m: Term, n: Term, session: FreshSession, fuel: int, err=NoProperHnf):
    ra, rb = _proper(m, fuel, err), _proper(n, fuel, err)
    (a, b), shared = Aligner(session=session).align(ra.view, rb.view)
    return a, b, shared, ra.steps + rb.steps


def _eater(session: FreshSession, arity: int, target: Term) -> Term:
    return abstract([session.fresh("d") for _ in range(arity)], target)


# ---------------------------------------------------------------------------
# single-binder, single-stack terms


def _single_shape(v: HnfView) -> bool:
    return len(v.binders) == 1 and len(v.args) == 1


def _single(m: Term, n: Term, session: FreshSession, fuel: int, depth: int = 0) -> _Build:
    if depth > 4:
        raise NotInShape("case reductions did not converge")
    a, b, shared, steps = _aligned(m, n, session, fuel, NotInShape)
    if not (_single_shape(a) and _single_shape(b)):
        raise NotInShape("expected bd a. car(cdr^n(b)) @ pi on both sides")
    alpha = shared[0]
    (beta, nn), (beta2, nn2) = (a.head.var, a.head.n), (b.head.var, b.head.n)
    A, B = a.recompose(), b.recompose()
    eps = session.fresh("e")
    e = Var(eps)

    if beta != beta2:
        d1, d2 = session.fresh("d"), session.fresh("d")
        pi = repeat(I, nn, Push(Abs(d1, App(T, e)), e))
        pi2 = repeat(I, nn2, Push(Abs(d2, App(F, e)), e))
        ctx = HOLE.apply(Var(alpha)).bind(beta).apply(pi).bind(beta2).apply(pi2).bind(eps)
        return _Build(ctx, cases=["1"], steps=steps)

    if nn != nn2:
        if nn < nn2:
            return _single(n, m, session, fuel, depth + 1).swapped()
        d1, d2 = session.fresh("d"), session.fresh("d")
        tail = Push(Abs(d2, App(T, e)), e)
        pi = repeat(I, nn2, Push(Abs(d1, App(F, e)), repeat(I, nn - nn2 - 1, tail)))
        ctx = HOLE.apply(Var(alpha)).bind(beta).apply(pi).bind(eps)
        return _Build(ctx, cases=["2"], steps=steps)

    sa, sb = spine(a.args[0]), spine(b.args[0])
    if sa.tail is None or sb.tail is None:
        raise NotInShape("nil-tailed stacks are always similar")
    gamma, gamma2 = sa.tail, sb.tail

    def reenter(pre: HeadContext, label: str) -> _Build:
        sub = _single(pre.plug(A), pre.plug(B), session, fuel, depth + 1)
        return sub.after(pre, [label])

    if gamma != gamma2:
        if gamma != beta:
            if gamma2 == beta:
                return _single(n, m, session, fuel, depth + 1).after(HOLE, ["3.1.1"]).swapped()
            pre = HOLE.apply(Var(alpha)).bind(gamma).apply(Var(beta)).bind(alpha)
            return reenter(pre, "3.1.1")
        big = len(sa.items) + len(sb.items) + sa.k + 1
        pre = HOLE.apply(Var(alpha)).bind(gamma2).apply(cdr(Var(beta), big)).bind(alpha)
        return reenter(pre, "3.1.2")

    if sa.offset == sb.offset:
        raise NotInShape("terms are similar")
    if gamma != beta:
        pre = HOLE.apply(Var(alpha)).bind(gamma).apply(Var(beta)).bind(alpha)
        return reenter(pre, "3.2.1")

    m1, k1, m2, k2 = len(sa.items), sa.k, len(sb.items), sb.k
    if m1 < m2:
        return _single(n, m, session, fuel, depth + 1).swapped()
    dm, dk = m1 - m2, abs(k1 - k2)
    pick = 0 if k1 < k2 else min(dk, dm)
    d1, d2 = session.fresh("d"), session.fresh("d")
    X = Abs(d2, App(cadr(Var(d2), pick), cdr(e, 2)))
    block = repeat(cadr(e, 1), dm + max(k1, k2), Push(cadr(e, 0), e))
    pi = repeat(I, nn, Push(Abs(d1, App(X, cdr(Var(d1), nn + 1 + max(m1, m2)))), block))
    ctx = HOLE.apply(Var(alpha)).bind(beta).apply(pi).bind(eps)
    # the first side lands on T exactly when its selector index hits car(e)
    first_true = k1 >= k2 and dm < dk
    build = _Build(ctx, cases=["3.2.2"], steps=steps)
    return build if first_true else _Build(ctx, "#F", "#T", build.cases, steps)


# ---------------------------------------------------------------------------
# general proper hnfs


def _general(m: Term, n: Term, session: FreshSession, fuel: int) -> _Build:
    a, b, shared, steps = _aligned(m, n, session, fuel)
    if len(a.binders) > len(b.binders):
        return _general(n, m, session, fuel).swapped()
    reason = compare_views(a, b, shared)
    if reason is None:
        raise NotInShape("terms are similar")
    k, k2 = len(a.binders), len(b.binders)
    names = [Var(s) for s in shared]
    c0 = HOLE.apply(*names)
    args_a = a.args + tuple(names[k:k2])
    args_b = b.args
    (beta, nn), (beta2, nn2) = (a.head.var, a.head.n), (b.head.var, b.head.n)
    e = Var(session.fresh("e"))

    if beta != beta2:
        pi = repeat(I, nn, Push(_eater(session, len(args_a), T), e))
        pi2 = repeat(I, nn2, Push(_eater(session, len(args_b), F), e))
        return _Build(c0.bind(beta, beta2).apply(pi, pi2), cases=["1"], steps=steps)

    if nn != nn2:
        items = [I] * (max(nn, nn2) + 1)
        items[nn] = _eater(session, len(args_a), T)
        items[nn2] = _eater(session, len(args_b), F)
        return _Build(c0.bind(beta).apply(push_all(items, e)), cases=["2"], steps=steps)

    if len(args_a) != len(args_b):
        big = max(len(args_a), len(args_b))
        h = abs(len(args_a) - len(args_b))
        sel_names = [session.fresh("a") for _ in range(big + 1)]
        sel = abstract(sel_names, cadr(Var(sel_names[-1]), 0))
        delta = session.fresh("d")
        extra = [session.fresh("e") for _ in range(h)]
        inner = HOLE.apply(*names, Var(delta), *map(Var, extra)).bind(beta).apply(
            repeat(I, nn, Push(sel, e)))
        e2 = Var(session.fresh("e"))
        outer = HOLE.bind(delta, extra[-1]).apply(
            Push(abstract([session.fresh("a") for _ in range(h)], T), e2), Push(F, e2))
        build = _Build(outer.of(inner), cases=["3"], steps=steps)
        return build if len(args_a) > len(args_b) else _Build(build.ctx, "#F", "#T", ["3", "swap"], steps)

    for i, (s1, s2) in enumerate(zip(args_a, args_b)):
        if isinstance(stack_similar(s1, s2), Dissimilar):
            break
    else:
        raise NotInShape("terms are similar")
    label = "4" if i < min(len(a.args), len(b.args)) else "5"
    proj = [session.fresh("a") for _ in range(len(args_a))]
    b2 = session.fresh("b")
    X = abstract(proj + [b2], App(cadr(Var(b2), 0), Var(proj[i])))
    pre = c0.bind(beta).apply(repeat(I, nn, Push(X, e)))
    sub = _single(pre.plug(a.recompose()), pre.plug(b.recompose()), session, fuel)
    return sub.after(pre, [label])


def _certify(build: _Build, m: Term, n: Term, fuel: int) -> Certificate:
    cert = Certificate(build.ctx, build.left, build.right, build.steps, build.cases)
    cert.verified = verify_certificate(cert, m, n, fuel)
    return cert


def separate_single(m: Term, n: Term, fuel: int = 10000) -> Optional[Certificate]:
    """Separate two terms of shape ``bd a. car(cdr^n(b)) @ pi``; None if similar."""
    session = _session_for(m, n)
    a, b, shared, _ = _aligned(m, n, session, fuel, NotInShape)
    if not (_single_shape(a) and _single_shape(b)):
        raise NotInShape("expected bd a. car(cdr^n(b)) @ pi on both sides")
    if compare_views(a, b, shared) is None:
        return None
    return _certify(_single(m, n, session, fuel), m, n, fuel)


def separate_general(m: Term, n: Term, fuel: int = 10000) -> Optional[Certificate]:
    """Separate two dissimilar terms with proper hnfs; None if they are similar."""
    session = _session_for(m, n)
    a, b, shared, _ = _aligned(m, n, session, fuel)
    if compare_views(a, b, shared) is None:
        return None
    return _certify(_general(m, n, session, fuel), m, n, fuel)


# ---------------------------------------------------------------------------
# extraction of nodes along a path


@dataclass
class Extraction:
    context: HeadContext
    nodes: list
    substitutions: list  # (variable, stack) in the order they were made
    cases: list
    steps: int = 0


def _extract(terms, sigma, arities, p: int, session: FreshSession, fuel: int,
             lockstep: bool) -> Extraction:
    """Build ``C`` with ``C[t] ->> node(t)*`` for every term, one path step at a time.

    ``arities(var)`` gives the permutator arity for each of the ``p`` copies
    pushed in place of a head variable. With ``lockstep`` the binders of the
    current nodes are renamed to shared names and virtual children are allowed.
    """
    ctx = HOLE
    cur = list(terms)
    table: dict = {}
    subs, cases = [], []
    used = set()
    for t in terms:
        used |= free_vars(t)
    steps = 0
    aligner = Aligner(session=session)
    for j, jp in sigma:
        rs = [head_normalize(t, fuel) if t is not None else None for t in cur]
        if any(not isinstance(r, Found) for r in rs):
            raise PathNotInDomain(f"no proper hnf at step ({j},{jp})")
        steps += sum(r.steps for r in rs)
        views = [r.view for r in rs]
        if lockstep:
            views, shared = aligner.align(*views)
        else:
            v = views[0]
            if len(set(v.binders)) < len(v.binders) or used & set(v.binders):
                v = rename_binders(v, [session.fresh(x.base) for x in v.binders])
            views, shared = [v], list(v.binders)
        used |= set(shared)
        heads = {(v.head.var, v.head.n) for v in views}
        width = len(shared)
        margs = {len(v.args) + width - len(v.binders) for v in views}
        if len(heads) != 1 or len(margs) != 1:
            raise PathNotInDomain("nodes along the path are not similar")
        (beta, h), (margs,) = heads.pop(), margs
        stacks = [Var(s) for s in shared]
        if beta in table:
            c1 = HOLE.apply(*stacks)
            cases.append("substituted")
        else:
            eps = session.fresh("e")
            table[beta] = arities(beta)
            sps = _perm_stack_of(eps, table[beta])
            subs.append((beta, sps))
            used.add(eps)
            if beta in shared:
                stacks[shared.index(beta)] = sps
                c1 = HOLE.apply(*stacks)
                cases.append("bound")
            else:
                c1 = HOLE.apply(*stacks).bind(beta).apply(sps)
                cases.append("free")
        if h >= p:
            raise BoundsTooSmall(f"weight bound {p} must exceed head index {h}")
        q = table[beta][h]
        if q < margs or q < j:
            raise BoundsTooSmall(f"breadth bound {q} below {max(margs, j)}")
        fills = [Var(session.fresh("e")) for _ in range(q - margs)]
        sel_names = [session.fresh("a") for _ in range(q)]
        sel = abstract(sel_names, cadr(Var(sel_names[j - 1]), jp - 1))
        c2 = HOLE.apply(*fills, Push(sel, Var(session.fresh("e"))))
        ctx = c2.of(c1.of(ctx))
        if lockstep:
            cur = [virtual_child(v, shared, j, jp) for v in views]
        else:
            cur = [_child(views[0], j, jp)]
        if any(c is None for c in cur):
            raise PathNotInDomain(f"step ({j},{jp}) leaves the tree")
    return Extraction(ctx, cur, subs, cases, steps)


def bohm_out_trace(m: Term, n_bound: int, sigma, q: int, p: int, fuel: int = 10000) -> Extraction:
    """Böhm-out with explicit substitution record (variables and stacks)."""
    sigma = check_path(sigma)
    if len(sigma) > n_bound:
        raise PathNotInDomain("path longer than the depth bound")
    node = node_at(m, sigma, fuel)
    if node is None or node is UNKNOWN:
        raise PathNotInDomain(f"{format_path(sigma)} is not a node")
    met = bounded_metrics(m, n_bound, fuel)
    if q < met.bounded_breadth or p < met.bounded_weight:
        raise BoundsTooSmall(f"need q >= {met.bounded_breadth} and p >= {met.bounded_weight}")
    return _extract([m], sigma, lambda _v: [q] * p, p, _session_for(m), fuel, lockstep=False)


def bohm_out(m: Term, n_bound: int, sigma, q: int, p: int, fuel: int = 10000) -> HeadContext:
    return bohm_out_trace(m, n_bound, sigma, q, p, fuel).context


# ---------------------------------------------------------------------------
# top level


@dataclass
class Separated:
    certificate: Certificate


@dataclass
class Distinguished:
    """One side keeps a proper hnf under the context, the other does not."""

    certificate: Certificate


@dataclass
class NoneFound:
    reason: str


@dataclass
class Undecided:
    reason: str


SeparationResult = Union[Separated, Distinguished, NoneFound, Undecided]


def _bounds(steps) -> tuple:
    """Permutator arity base and copy count large enough for every node on the path."""
    width, weight, top_j = 0, 0, 0
    for st in steps:
        if st.views is None:
            continue
        for v in st.views:
            if v is None:
                continue
            width = max(width, len(v.binders) + len(v.args))
            weight = max(weight, v.head.n)
    for j, _ in steps[-1].path:
        top_j = max(top_j, j)
    return width + top_j + 1, weight + 1


def separate(m: Term, n: Term, depth: int, fuel: int = 10000,
             dialect: Dialect = Dialect.EXTENDED) -> SeparationResult:
    """Find a head context telling ``m`` and ``n`` apart.

    The minimal dissimilar virtual node pair is extracted by permutator
    substitutions; both nodes proper gives a T/F separation, exactly one
    proper gives a distinguishing context.
    """
    if depth < 0 or fuel <= 0:
        raise ValueError("depth must be >= 0 and fuel > 0")
    verdict = sim_bounded(m, n, depth, fuel)
    if isinstance(verdict, Similar):
        return NoneFound(f"no dissimilar node up to depth {depth}")
    if isinstance(verdict, Unknown):
        return Undecided(f"hnf search ran out of fuel at {format_path(verdict.path)}")
    if verdict.reason == "virt-domain":
        return Undecided(f"node {format_path(verdict.path)} exists on one side only")
    path = verdict.path
    steps = walk(m, n, path, fuel)
    base, p = _bounds(steps)
    session = _session_for(m, n)
    counter = iter(range(base, base + 10 ** 6))
    ext = _extract([m, n], path, lambda _v: [next(counter) for _ in range(p)], p,
                   session, fuel, lockstep=True)
    left, right = ext.context.plug(m), ext.context.plug(n)
    if verdict.reason == "proper-vs-improper":
        left_proper = isinstance(head_normalize(ext.nodes[0], fuel), Found)
        tl, tr = ("proper", "not-proper") if left_proper else ("not-proper", "proper")
        cert = Certificate(ext.context, tl, tr, ext.steps, ext.cases + ["distinguish"], path=path)
        kind = Distinguished
    else:
        build = _general(left, right, session, fuel).after(ext.context, ext.cases)
        cert = Certificate(build.ctx, build.left, build.right, ext.steps + build.steps,
                           build.cases, path=path)
        kind = Separated
    if dialect is Dialect.ORIGINAL and not cert.context.is_original():
        return NoneFound("the separating context leaves the original calculus")
    cert.verified = verify_certificate(cert, m, n, fuel)
    if not cert.verified:
        return Undecided(f"context built at {format_path(path)} did not verify")
    return kind(cert)
