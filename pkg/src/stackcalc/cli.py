"""Command line entry point: ``stackcalc <command> ...``.

Exit codes: 0 success, 1 negative answer, 2 unknown (fuel ran out), 3 usage
or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .surface import ParseError, parse, show

OK, NEGATIVE, UNKNOWN_EXIT, USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _source(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def _term(arg: str):
    return parse(_source(arg), "term")


def _expr(arg: str):
    """A term if it parses as one, otherwise a stack."""
    text = _source(arg)
    try:
        return parse(text, "term")
    except ParseError as first:
        try:
            return parse(text, "stack")
        except ParseError:
            raise first from None


class _Out:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def emit(self, verdict: str, lines=(), steps: Optional[int] = None,
             fuel_used: Optional[int] = None, path=None, **extra):
        if self.fmt == "json":
            data = {"verdict": verdict}
            if path is not None:
                data["witnessPath"] = [list(p) for p in path]
            data["steps"] = steps if steps is not None else 0
            data["fuelUsed"] = fuel_used if fuel_used is not None else data["steps"]
            data.update(extra)
            print(json.dumps(data))
        else:
            for line in lines:
                print(line)


def _rules(name: str):
    from .reduction import SIGMA, SIGMA_ETA
    return SIGMA_ETA if name == "sigmaeta" else SIGMA


# ---------------------------------------------------------------------------
# commands


def cmd_canon(args, out: _Out) -> int:
    from .syntax import canonical_form
    e = canonical_form(_expr(args.expr))
    out.emit("normal", [show(e)], result=show(e))
    return OK


def cmd_reduce(args, out: _Out) -> int:
    from .reduction import Normal, reduce_trace
    tr = reduce_trace(_expr(args.expr), _rules(args.rules), args.fuel)
    done = isinstance(tr.outcome, Normal)
    lines = [show(e) for e in tr.chain] if args.trace else [show(tr.outcome.expr if done else tr.outcome.last)]
    if not done:
        lines.append(f"fuel exhausted after {tr.outcome.steps} steps")
    if tr.loop_at >= 0 and args.trace:
        lines.append(f"loop: entry {tr.loop_at} repeats an earlier one")
    extra = {"chain": [show(e) for e in tr.chain]} if args.trace else {}
    if tr.loop_at >= 0:
        extra["loopAt"] = tr.loop_at
    final = tr.outcome.expr if done else tr.outcome.last
    out.emit("normal" if done else "unknown", lines, tr.outcome.steps, tr.outcome.steps,
             result=show(final), **extra)
    return OK if done else UNKNOWN_EXIT


def cmd_hnf(args, out: _Out) -> int:
    from .strategies import Diverged, Found, head_normalize
    r = head_normalize(_term(args.term), args.fuel)
    if isinstance(r, Diverged):
        out.emit("unknown", [f"no hnf within {r.steps} steps"], r.steps)
        return UNKNOWN_EXIT
    kind = "proper" if isinstance(r, Found) else "improper"
    text = show(r.view.recompose())
    out.emit(kind, [f"{kind} hnf after {r.steps} steps", text], r.steps, result=text)
    return OK


def cmd_onf(args, out: _Out) -> int:
    from .strategies import Diverged, Found, outer_normalize
    from .syntax import is_original
    if args.dialect != "original":
        print("onf requires --dialect original", file=sys.stderr)
        return USAGE
    m = _term(args.term)
    if not is_original(m):
        print("term is outside the original calculus", file=sys.stderr)
        return USAGE
    r = outer_normalize(m, args.fuel)
    if isinstance(r, Diverged):
        out.emit("unknown", [f"no onf within {r.steps} steps"], r.steps)
        return UNKNOWN_EXIT
    kind = "proper" if isinstance(r, Found) else "improper"
    text = show(r.view.recompose())
    out.emit(kind, [f"{kind} onf after {r.steps} steps", text], r.steps, result=text)
    return OK


def cmd_tree(args, out: _Out) -> int:
    from .bohm import format_path, tree_nodes
    from .strategies import Diverged
    lines, nodes, steps, unknown = [], [], 0, False
    for path, r in tree_nodes(_term(args.term), args.depth, args.fuel):
        steps += r.steps
        pad = "  " * len(path)
        if isinstance(r, Diverged):
            unknown = True
            text = "?"
        else:
            text = show(r.view.recompose())
        lines.append(f"{pad}{format_path(path)} {text}")
        nodes.append({"path": [list(p) for p in path], "node": None if text == "?" else text})
    out.emit("unknown" if unknown else "complete", lines, steps, nodes=nodes)
    return UNKNOWN_EXIT if unknown else OK


def cmd_similar(args, out: _Out) -> int:
    from .bohm import Dissimilar, Similar, format_path, sim_bounded
    v = sim_bounded(_term(args.a), _term(args.b), args.depth, args.fuel)
    if isinstance(v, Similar):
        out.emit("similar", [f"similar up to depth {args.depth}"])
        return OK
    if isinstance(v, Dissimilar):
        out.emit("dissimilar", [f"dissimilar at {format_path(v.path)}: {v.reason}"],
                 path=v.path, reason=v.reason)
        return NEGATIVE
    out.emit("unknown", [f"unknown at {format_path(v.path)} ({v.side.value} side diverged)"],
             path=v.path, side=v.side.value)
    return UNKNOWN_EXIT


def cmd_separate(args, out: _Out) -> int:
    from . import certjson
    from .bohm import format_path
    from .separator import Distinguished, NoneFound, Separated, separate
    from .syntax import Dialect
    dialect = Dialect.ORIGINAL if args.dialect == "original" else Dialect.EXTENDED
    r = separate(_term(args.a), _term(args.b), args.depth, args.fuel, dialect)
    if isinstance(r, (Separated, Distinguished)):
        cert = r.certificate
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(certjson.dumps(cert) + "\n")
        kind = "separated" if isinstance(r, Separated) else "distinguished"
        lines = [f"{kind} at {format_path(cert.path)}: {cert.left_target} / {cert.right_target}",
                 "cases: " + " ".join(cert.case_path)]
        if not args.out:
            lines.append(certjson.dumps(cert))
        out.emit(kind, lines, cert.fuel_used, cert.fuel_used, path=cert.path,
                 certificate=certjson.to_dict(cert))
        return OK
    if isinstance(r, NoneFound):
        out.emit("not-separated", [r.reason], reason=r.reason)
        return NEGATIVE
    out.emit("unknown", [r.reason], reason=r.reason)
    return UNKNOWN_EXIT


def cmd_verify(args, out: _Out) -> int:
    # deliberately independent of the separation code
    from . import certjson
    from .verify import verify_certificate
    with open(args.cert, encoding="utf-8") as fh:
        cert = certjson.loads(fh.read())
    ok = verify_certificate(cert, _term(args.a), _term(args.b), args.fuel)
    out.emit("valid" if ok else "invalid", ["certificate verified" if ok else "certificate rejected"])
    return OK if ok else NEGATIVE


def cmd_eq(args, out: _Out) -> int:
    from .reduction import Verdict, convertible
    v = convertible(_expr(args.a), _expr(args.b), _rules(args.rules), args.fuel)
    out.emit(v.value, [v.value])
    return {Verdict.YES: OK, Verdict.NO: NEGATIVE}.get(v, UNKNOWN_EXIT)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=argparse.SUPPRESS,
                        help="step budget (default 10000)")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    p = _Parser(prog="stackcalc", description="Stack calculus toolkit.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text, *positional):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(func=fn)
        return sp

    add("canon", cmd_canon, "car/cdr normal form", "expr")
    sp = add("reduce", cmd_reduce, "normalize an expression", "expr")
    sp.add_argument("--rules", choices=("sigma", "sigmaeta"), default="sigma")
    sp.add_argument("--trace", action="store_true", help="print the chain modulo car/cdr")
    add("hnf", cmd_hnf, "head normal form", "term")
    sp = add("onf", cmd_onf, "outer normal form of an original-calculus term", "term")
    sp.add_argument("--dialect", choices=("original",), required=True)
    sp = add("tree", cmd_tree, "Böhm tree up to a depth", "term")
    sp.add_argument("--depth", type=int, required=True)
    sp = add("similar", cmd_similar, "bounded similarity of two terms", "a", "b")
    sp.add_argument("--depth", type=int, required=True)
    sp = add("separate", cmd_separate, "build a separating context", "a", "b")
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--out", help="write the certificate here")
    sp.add_argument("--dialect", choices=("extended", "original"), default="extended")
    add("verify", cmd_verify, "check a certificate against two terms", "cert", "a", "b")
    sp = add("eq", cmd_eq, "convertibility", "a", "b")
    sp.add_argument("--rules", choices=("sigma", "sigmaeta"), default="sigma")
    return p


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    args.fuel = getattr(args, "fuel", 10000)
    args.format = getattr(args, "format", "text")
    if args.fuel <= 0 or getattr(args, "depth", 0) < 0:
        print("fuel must be positive and depth non-negative", file=sys.stderr)
        return USAGE
    try:
        return args.func(args, _Out(args.format))
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return USAGE
    except (OSError, ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
