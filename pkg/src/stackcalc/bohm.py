"""Böhm trees indexed by pair paths, virtual nodes and similarity."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Union

from .strategies import (
    Diverged, HnfView, Improper, decompose_hnf, head_normalize,
)
from .syntax import (
    FreshSession, Stack, Term, Var, all_vars, cadr, cdr, push_all, spine,
    substitute,
)

NodePath = tuple  # of (j, j') pairs, both >= 1


class _Unknown:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "UNKNOWN"

    def __bool__(self) -> bool:
        return False


UNKNOWN = _Unknown()


def check_path(sigma) -> NodePath:
    sigma = tuple(tuple(p) for p in sigma)
    for p in sigma:
        if len(p) != 2 or p[0] < 1 or p[1] < 1:
            raise ValueError(f"path components must be positive pairs: {p!r}")
    return sigma


def format_path(sigma) -> str:
    return "".join(f"({j},{jp})" for j, jp in sigma) or "()"


# ---------------------------------------------------------------------------
# real nodes


def _child(view: HnfView, j: int, jp: int) -> Optional[Term]:
    if j > len(view.args):
        return None
    sp = spine(view.args[j - 1])
    if jp > len(sp.items):
        return None
    return sp.items[jp - 1]


def node_at(m: Term, sigma, fuel: int = 10000):
    """The node ``m(sigma)``: a term, None when undefined, UNKNOWN on fuel exhaustion."""
    cur = m
    for j, jp in check_path(sigma):
        r = head_normalize(cur, fuel)
        if isinstance(r, Diverged):
            return UNKNOWN
        if isinstance(r, Improper):
            return None
        cur = _child(r.view, j, jp)
        if cur is None:
            return None
    return cur


@dataclass(frozen=True)
class TreeMetrics:
    bounded_breadth: int
    bounded_weight: int
    depth_bound: int
    fuel_used: int
    exact: bool


def bounded_metrics(m: Term, n: int, fuel: int = 10000) -> TreeMetrics:
    """Largest breadth (argument count) and weight (head index) over nodes of depth <= n."""
    breadth = weight = used = 0
    exact = True
    todo = deque([(m, 0)])
    while todo:
        t, d = todo.popleft()
        r = head_normalize(t, fuel)
        used += r.steps
        if isinstance(r, Diverged):
            exact = False
            continue
        if isinstance(r, Improper):
            continue
        v = r.view
        breadth = max(breadth, len(v.args))
        weight = max(weight, v.head.n)
        if d < n:
            for s in v.args:
                todo.extend((item, d + 1) for item in spine(s).items)
    return TreeMetrics(breadth, weight, n, used, exact)


def tree_nodes(m: Term, depth: int, fuel: int = 10000):
    """Yield ``(path, head_normalize result)`` for every node of depth <= ``depth``, breadth first."""
    todo = deque([((), m)])
    while todo:
        path, t = todo.popleft()
        r = head_normalize(t, fuel)
        yield path, r
        if len(path) >= depth or not hasattr(r, "view") or not r.view.proper:
            continue
        for j, s in enumerate(r.view.args, 1):
            for jp, item in enumerate(spine(s).items, 1):
                todo.append((path + ((j, jp),), item))


# ---------------------------------------------------------------------------
# path expansion and virtual nodes


def path_expand(m: Term, sigma, fuel: int = 10000, session: Optional[FreshSession] = None):
    """Eta-expand the hnf of ``m`` just enough to make ``sigma`` reachable."""
    sigma = check_path(sigma)
    if not sigma:
        return m
    r = head_normalize(m, fuel)
    if isinstance(r, Diverged):
        return UNKNOWN
    if isinstance(r, Improper):
        return None
    v = r.view
    if session is None:
        session = FreshSession(reserved=set(all_vars(m)))
    (j, jp), tau = sigma[0], sigma[1:]
    if j <= len(v.args):
        sp = spine(v.args[j - 1])
        if jp <= len(sp.items) or sp.tail is None:
            return None
        gamma = Var(sp.tail)
        extra = jp - len(sp.items)
        new = [cadr(gamma, sp.k + i) for i in range(extra)]
        last = path_expand(new[-1], tau, fuel, session)
        if last is None or last is UNKNOWN:
            return last
        new[-1] = last
        args = list(v.args)
        args[j - 1] = push_all(list(sp.items) + new, cdr(gamma, sp.k + extra))
        return HnfView(v.binders, v.head, tuple(args)).recompose()
    gs = [session.fresh("g") for _ in range(j - len(v.args))]
    g = Var(gs[-1])
    items = [cadr(g, i) for i in range(jp)]
    last = path_expand(items[-1], tau, fuel, session)
    if last is None or last is UNKNOWN:
        return last
    items[-1] = last
    args = v.args + tuple(Var(x) for x in gs[:-1]) + (push_all(items, cdr(g, jp)),)
    return HnfView(v.binders + tuple(gs), v.head, args).recompose()


def virtual_node(m: Term, sigma, fuel: int = 10000):
    sigma = check_path(sigma)
    i = 0
    node = m
    while i < len(sigma):
        nxt = node_at(node, sigma[i:i + 1], fuel)
        if nxt is UNKNOWN:
            return UNKNOWN
        if nxt is None:
            break
        node, i = nxt, i + 1
    if i == len(sigma):
        return node
    rest = sigma[i:]
    expanded = path_expand(node, rest, fuel)
    if expanded is None or expanded is UNKNOWN:
        return expanded
    return node_at(expanded, rest, fuel)


# ---------------------------------------------------------------------------
# similarity


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"


@dataclass(frozen=True)
class Similar:
    pass


@dataclass(frozen=True)
class Dissimilar:
    path: NodePath = ()
    reason: str = ""


@dataclass(frozen=True)
class Unknown:
    side: Side = Side.BOTH
    path: NodePath = ()


SimVerdict = Union[Similar, Dissimilar, Unknown]


def stack_similar(pi: Stack, varpi: Stack) -> SimVerdict:
    a, b = spine(pi), spine(varpi)
    if a.tail is None or b.tail is None:
        return Similar()
    if a.tail != b.tail:
        return Dissimilar((), "stack-tail")
    if a.offset != b.offset:
        return Dissimilar((), "stack-offset")
    return Similar()


def rename_binders(v: HnfView, names) -> HnfView:
    """Rename the binders of ``v`` to fresh ``names``; duplicates shadow correctly."""
    t = v.recompose()
    for new in names:
        t = substitute(t.body, Var(new), t.binder)
    inner = decompose_hnf(t)
    return HnfView(tuple(names), inner.head, inner.args)


class Aligner:
    """Renames binders of hnf pairs to shared fresh names, position by position."""

    def __init__(self, *terms: Term, session: Optional[FreshSession] = None):
        if session is None:
            session = FreshSession()
        for t in terms:
            session.reserve(all_vars(t))
        self.session = session

    def names(self, *views: HnfView) -> list:
        width = max(len(v.binders) for v in views)
        out = []
        for i in range(width):
            src = next(v.binders[i] for v in views if i < len(v.binders))
            out.append(self.session.fresh(src.base))
        return out

    def align(self, *views: HnfView):
        shared = self.names(*views)
        return [rename_binders(v, shared[:len(v.binders)]) for v in views], shared


def compare_views(a: HnfView, b: HnfView, shared) -> Optional[str]:
    """The first clause of proper-hnf similarity that fails, or None.

    Both views must already use the shared binder names.
    """
    if a.head.var != b.head.var:
        return "head-var"
    if a.head.n != b.head.n:
        return "head-index"
    k, m, k2, m2 = len(a.binders), len(a.args), len(b.binders), len(b.args)
    if k - m != k2 - m2:
        return "offset"
    for i in range(min(m, m2)):
        if not isinstance(stack_similar(a.args[i], b.args[i]), Similar):
            return f"stack:{i + 1}"
    longer, kmin = (b, k) if k2 >= k else (a, k2)
    mmin = min(m, m2)
    for j in range(1, abs(k2 - k) + 1):
        if not isinstance(stack_similar(longer.args[mmin + j - 1], Var(shared[kmin + j - 1])), Similar):
            return f"surplus:{j}"
    return None


def _classify(ra, rb, path) -> Optional[SimVerdict]:
    """Verdicts that do not need the aligned views; None when both are proper."""
    da, db = isinstance(ra, Diverged), isinstance(rb, Diverged)
    if da and db:
        return Unknown(Side.BOTH, path)
    if da or db:
        # a resolved improper side next to a diverging one stays undecided too
        return Unknown(Side.LEFT if da else Side.RIGHT, path)
    ia, ib = isinstance(ra, Improper), isinstance(rb, Improper)
    if ia and ib:
        return Similar()
    if ia or ib:
        return Dissimilar(path, "proper-vs-improper")
    return None


def term_similar(m: Term, n: Term, fuel: int = 10000) -> SimVerdict:
    ra, rb = head_normalize(m, fuel), head_normalize(n, fuel)
    v = _classify(ra, rb, ())
    if v is not None:
        return v
    (a, b), shared = Aligner(m, n).align(ra.view, rb.view)
    reason = compare_views(a, b, shared)
    return Similar() if reason is None else Dissimilar((), reason)


def virtual_child(view: HnfView, shared, j: int, jp: int) -> Optional[Term]:
    """Child ``(j, jp)`` of an aligned proper hnf, eta-expanding when needed.

    Positions past the arguments refer to the shared binder at the matching
    position, so the two sides of a similar pair expand with the same names.
    """
    k, m = len(view.binders), len(view.args)
    if j <= m:
        sp = spine(view.args[j - 1])
        if jp <= len(sp.items):
            return sp.items[jp - 1]
        if sp.tail is None:
            return None
        return cadr(Var(sp.tail), sp.k + jp - len(sp.items) - 1)
    pos = k + j - m
    if pos > len(shared):
        return None
    return cadr(Var(shared[pos - 1]), jp - 1)


def child_range(a: HnfView, b: HnfView):
    """Child coordinates worth visiting below a similar aligned pair.

    Beyond the longer argument list, or past the longer stack on var-tailed
    stacks, both sides expand to identical virtual subtrees.
    """
    for j in range(1, max(len(a.args), len(b.args)) + 1):
        lens, nil_tail = [], False
        for v in (a, b):
            if j <= len(v.args):
                sp = spine(v.args[j - 1])
                lens.append(len(sp.items))
                nil_tail |= sp.tail is None
            else:
                lens.append(0)
        top = max(lens) + (1 if nil_tail else 0)
        for jp in range(1, top + 1):
            yield j, jp


@dataclass
class PairStep:
    """One node pair on a lockstep walk, with aligned views when both are proper."""

    path: NodePath
    left: Optional[Term]
    right: Optional[Term]
    views: Optional[tuple] = None
    shared: list = field(default_factory=list)
    verdict: Optional[SimVerdict] = None
    steps: int = 0


def examine(left, right, path, aligner: Aligner, fuel: int) -> PairStep:
    st = PairStep(path, left, right)
    if left is None or right is None:
        if left is not None or right is not None:
            st.verdict = Dissimilar(path, "virt-domain")
        else:
            st.verdict = Similar()
        return st
    ra, rb = head_normalize(left, fuel), head_normalize(right, fuel)
    st.steps = ra.steps + rb.steps
    v = _classify(ra, rb, path)
    if v is not None:
        st.verdict = v
        if isinstance(v, Dissimilar):
            st.views = (ra.view, rb.view)
        return st
    (a, b), shared = aligner.align(ra.view, rb.view)
    st.views, st.shared = (a, b), shared
    reason = compare_views(a, b, shared)
    st.verdict = Similar() if reason is None else Dissimilar(path, reason)
    return st


def sim_bounded(m: Term, n: Term, depth: int, fuel: int = 10000) -> SimVerdict:
    """Compare virtual nodes of both trees breadth-first up to ``depth``.

    Returns the first dissimilar path in length-then-lexicographic order;
    Unknown if some pair could not be resolved and no dissimilarity was found.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    aligner = Aligner(m, n)
    todo = deque([((), m, n)])
    unknown = None
    while todo:
        path, a, b = todo.popleft()
        st = examine(a, b, path, aligner, fuel)
        v = st.verdict
        if isinstance(v, Dissimilar):
            return v
        if isinstance(v, Unknown):
            unknown = unknown or v
            continue
        if st.views is None or len(path) >= depth:
            continue
        va, vb = st.views
        for j, jp in child_range(va, vb):
            todo.append((path + ((j, jp),),
                         virtual_child(va, st.shared, j, jp),
                         virtual_child(vb, st.shared, j, jp)))
    return unknown if unknown is not None else Similar()


def walk(m: Term, n: Term, sigma, fuel: int = 10000, aligner: Optional[Aligner] = None) -> list:
    """The aligned node pairs along ``sigma`` (root first, target last)."""
    aligner = aligner or Aligner(m, n)
    steps = [examine(m, n, (), aligner, fuel)]
    sigma = check_path(sigma)
    for i, (j, jp) in enumerate(sigma):
        prev = steps[-1]
        if prev.views is None or not isinstance(prev.verdict, Similar):
            raise ValueError(f"path leaves the common similar part at {format_path(sigma[:i])}")
        va, vb = prev.views
        steps.append(examine(virtual_child(va, prev.shared, j, jp),
                             virtual_child(vb, prev.shared, j, jp),
                             sigma[:i + 1], aligner, fuel))
    return steps
