"""Head contexts and separation certificates.

Plugging is literal hole filling: binders of the context capture free
variables of the plugged term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .syntax import (
    Abs, App, Dialect, Stack, Term, VarName, is_original,
)


@dataclass(frozen=True)
class ApplyStack:
    pi: Stack


@dataclass(frozen=True)
class Bind:
    alpha: VarName


Frame = Union[ApplyStack, Bind]


@dataclass(frozen=True)
class HeadContext:
    """Frames listed outside-in: ``frames[0]`` is the outermost constructor."""

    frames: tuple = ()

    def plug(self, m: Term) -> Term:
        for fr in reversed(self.frames):
            m = App(m, fr.pi) if isinstance(fr, ApplyStack) else Abs(fr.alpha, m)
        return m

    def of(self, inner: "HeadContext") -> "HeadContext":
        """``self[inner[.]]``."""
        return HeadContext(self.frames + inner.frames)

    def apply(self, *stacks: Stack) -> "HeadContext":
        """``self[.] @ s1 @ .. @ sk``."""
        return HeadContext(tuple(ApplyStack(s) for s in reversed(stacks)) + self.frames)

    def bind(self, *names: VarName) -> "HeadContext":
        """``bd a1 .. ak. self[.]``."""
        return HeadContext(tuple(Bind(a) for a in names) + self.frames)

    def is_original(self) -> bool:
        """Shape ``bd a. C[.] @ pi`` repeated, with original-calculus stacks."""
        fr = self.frames
        if len(fr) % 2:
            return False
        for i in range(0, len(fr), 2):
            if not (isinstance(fr[i], Bind) and isinstance(fr[i + 1], ApplyStack)):
                return False
            if not is_original(fr[i + 1].pi):
                return False
        return True

    def __len__(self) -> int:
        return len(self.frames)


HOLE = HeadContext()


def plug(ctx: HeadContext, m: Term) -> Term:
    return ctx.plug(m)


# target markers for certificates
SEPARATION_TARGETS = ("#T", "#F")
DISTINGUISHING_TARGETS = ("proper", "not-proper")


@dataclass
class Certificate:
    """A head context with the targets it sends the left and right term to.

    Targets are ``#T``/``#F`` for a separation, or ``proper``/``not-proper``
    for a distinguishing context (hnf status differs).
    """

    context: HeadContext
    left_target: str = "#T"
    right_target: str = "#F"
    fuel_used: int = 0
    case_path: list = field(default_factory=list)
    verified: bool = False
    path: Optional[tuple] = None

    @property
    def distinguishing(self) -> bool:
        return self.left_target in DISTINGUISHING_TARGETS

    def swapped(self) -> "Certificate":
        return Certificate(self.context, self.right_target, self.left_target,
                           self.fuel_used, self.case_path + ["swap"], False, self.path)

    def dialect(self) -> Dialect:
        return Dialect.ORIGINAL if self.context.is_original() else Dialect.EXTENDED
