"""Exception types shared across the package."""

from __future__ import annotations


class NcInvError(Exception):
    """Base class for all library errors."""


class MixedRingKinds(NcInvError, TypeError):
    def __init__(self, left, right):
        super().__init__(f"cannot combine elements of {left} and {right}")
        self.left = left
        self.right = right


class NotInvertible(NcInvError, ArithmeticError):
    """An element required to be invertible is not.

    ``expression`` names the failing subexpression (``"a"``,
    ``"a - b d^-1 c"``, ``"ad - cb"``...), ``element`` holds its value when
    one was computed.
    """

    def __init__(self, expression: str, element=None, detail: str = ""):
        msg = f"not invertible: {expression}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.expression = expression
        self.element = element

    def renamed(self, expression: str) -> "NotInvertible":
        return NotInvertible(expression, self.element)


class SamplingExhausted(NcInvError, RuntimeError):
    pass


class BadDimension(NcInvError, ValueError):
    pass


class BadInput(NcInvError, ValueError):
    pass


class BlockSingular(NcInvError, ArithmeticError):
    """All swap variants failed at ``path``; ``blocked_at`` is the first sub-block that would not invert."""

    def __init__(
        self,
        depth: int,
        path: tuple[str, ...],
        cause: NotInvertible | None = None,
        blocked_at: tuple[str, ...] | None = None,
    ):
        msg = f"block inversion failed at depth {depth}, quadrant path {_fmt_path(path)}"
        if blocked_at is not None and blocked_at != path:
            msg += f" (first singular block {_fmt_path(blocked_at)})"
        if cause is not None:
            msg += f": {cause}"
        super().__init__(msg)
        self.depth = depth
        self.path = path
        self.cause = cause
        self.blocked_at = path if blocked_at is None else blocked_at


def _fmt_path(path: tuple[str, ...]) -> str:
    return " / ".join(f"[{p}]" for p in path) or "<root>"


class RegimeViolation(NcInvError, ValueError):
    pass


class ParseError(NcInvError, ValueError):
    pass
