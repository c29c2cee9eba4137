"""Recursive inversion of 2^n x 2^n matrices viewed as 2x2 matrices of blocks.

At every depth the quasideterminant entries are used with blocks in place of
ring elements::

    X11 = (A - B D^-1 C)^-1          X12 = -A^-1 B X22
    X21 = -D^-1 C X11                X22 = (D - C A^-1 B)^-1

The off-diagonal entries equal ``-(D B^-1 A - C)^-1`` and
``-(A C^-1 D - B)^-1`` whenever B and C are invertible, but do not need B or
C to be, so a block-diagonal matrix can be inverted.  If a required block
inverse does not exist the quadrants are swapped (block rows, block columns,
then both) and the swap is recorded in the pivot trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import RingContext, RingElement
from .errors import BadDimension, BadInput, BlockSingular, MixedRingKinds, NotInvertible


@dataclass(frozen=True)
class PivotStep:
    depth: int
    swap: str  # "rows" | "cols"

    def to_json(self) -> dict:
        return {"depth": self.depth, "swap": self.swap}


PivotTrace = list[PivotStep]


class BlockMatrix:
    """Complete quadtree: a leaf ring element at depth 0, four quadrants above."""

    __slots__ = ("depth", "leaf", "quads")

    def __init__(self, depth: int, leaf: RingElement | None = None, quads: tuple | None = None):
        if depth == 0:
            if leaf is None or quads is not None:
                raise BadInput("depth-0 block must be a single leaf")
        else:
            if quads is None or len(quads) != 4 or leaf is not None:
                raise BadInput("block of positive depth needs exactly four quadrants")
            if any(not isinstance(q, BlockMatrix) or q.depth != depth - 1 for q in quads):
                raise BadInput(f"quadrants of a depth-{depth} block must have depth {depth - 1}")
            ring = quads[0].ring
            for q in quads[1:]:
                if q.ring != ring:
                    raise MixedRingKinds(ring, q.ring)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "leaf", leaf)
        object.__setattr__(self, "quads", quads)

    def __setattr__(self, name, value):
        raise AttributeError("BlockMatrix is immutable")

    @classmethod
    def of_leaf(cls, x: RingElement) -> BlockMatrix:
        return cls(0, leaf=x)

    @classmethod
    def of_quads(cls, a: BlockMatrix, b: BlockMatrix, c: BlockMatrix, d: BlockMatrix) -> BlockMatrix:
        return cls(a.depth + 1, quads=(a, b, c, d))

    @classmethod
    def identity(cls, ring: RingContext, depth: int) -> BlockMatrix:
        if depth == 0:
            return cls.of_leaf(ring.one)
        i, z = cls.identity(ring, depth - 1), cls.zeros(ring, depth - 1)
        return cls.of_quads(i, z, z, i)

    @classmethod
    def zeros(cls, ring: RingContext, depth: int) -> BlockMatrix:
        if depth == 0:
            return cls.of_leaf(ring.zero)
        z = cls.zeros(ring, depth - 1)
        return cls.of_quads(z, z, z, z)

    @property
    def ring(self) -> RingContext:
        node = self
        while node.depth:
            node = node.quads[0]
        return node.leaf.ring

    @property
    def size(self) -> int:
        return 1 << self.depth

    def __add__(self, o: BlockMatrix) -> BlockMatrix:
        if self.depth == 0:
            return BlockMatrix.of_leaf(self.leaf + o.leaf)
        return BlockMatrix.of_quads(*(x + y for x, y in zip(self.quads, o.quads)))

    def __neg__(self) -> BlockMatrix:
        if self.depth == 0:
            return BlockMatrix.of_leaf(-self.leaf)
        return BlockMatrix.of_quads(*(-x for x in self.quads))

    def __sub__(self, o: BlockMatrix) -> BlockMatrix:
        return self + (-o)

    def __mul__(self, o: BlockMatrix) -> BlockMatrix:
        if self.depth != o.depth:
            raise BadDimension("block depths differ")
        if self.depth == 0:
            return BlockMatrix.of_leaf(self.leaf * o.leaf)
        a, b, c, d = self.quads
        e, f, g, h = o.quads
        return BlockMatrix.of_quads(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def is_zero(self) -> bool:
        if self.depth == 0:
            return self.leaf.is_zero()
        return all(q.is_zero() for q in self.quads)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockMatrix) or other.depth != self.depth:
            return False
        if self.depth == 0:
            return self.leaf == other.leaf
        return self.quads == other.quads

    def __hash__(self) -> int:
        return hash((self.depth, self.leaf, self.quads))

    def __repr__(self) -> str:
        return f"BlockMatrix(depth={self.depth}, flat={block_to_flat(self)!r})"


def _log2_exact(size: int) -> int:
    if size < 1 or size & (size - 1):
        raise BadDimension(f"size {size} is not a power of two")
    return size.bit_length() - 1


def block_from_flat(M: Sequence[Sequence[RingElement]], n: int | None = None) -> BlockMatrix:
    size = len(M)
    if any(len(r) != size for r in M):
        raise BadDimension("flat matrix must be square")
    depth = _log2_exact(size)
    if n is not None and n != depth:
        raise BadDimension(f"expected a {1 << n}x{1 << n} matrix, got {size}x{size}")
    return _split(M, 0, 0, size)


def _split(M, r0: int, c0: int, size: int) -> BlockMatrix:
    if size == 1:
        return BlockMatrix.of_leaf(M[r0][c0])
    h = size // 2
    return BlockMatrix.of_quads(
        _split(M, r0, c0, h),
        _split(M, r0, c0 + h, h),
        _split(M, r0 + h, c0, h),
        _split(M, r0 + h, c0 + h, h),
    )


def block_to_flat(B: BlockMatrix) -> list[list[RingElement]]:
    if B.depth == 0:
        return [[B.leaf]]
    a, b, c, d = (block_to_flat(q) for q in B.quads)
    return [ra + rb for ra, rb in zip(a, b)] + [rc + rd for rc, rd in zip(c, d)]


def flat_matmul(X, Y) -> list[list[RingElement]]:
    n = len(X)
    return [
        [_sum_products((X[i][k], Y[k][j]) for k in range(n)) for j in range(n)] for i in range(n)
    ]


def _sum_products(pairs):
    acc = None
    for x, y in pairs:
        t = x * y
        acc = t if acc is None else acc + t
    return acc


def flat_is_identity(M) -> bool:
    return all(
        (x.is_one() if i == j else x.is_zero()) for i, row in enumerate(M) for j, x in enumerate(row)
    )


_SWAPS: tuple[tuple[str, ...], ...] = ((), ("rows",), ("cols",), ("rows", "cols"))


def block_inverse(A: BlockMatrix) -> tuple[BlockMatrix, PivotTrace]:
    """Inverse of ``A`` and the list of block swaps used to obtain it."""
    if not isinstance(A, BlockMatrix):
        raise BadInput("block_inverse expects a BlockMatrix")
    trace: PivotTrace = []
    return _invert(A, (), trace), trace


def _invert(M: BlockMatrix, path: tuple[str, ...], trace: PivotTrace) -> BlockMatrix:
    if M.depth == 0:
        try:
            return BlockMatrix.of_leaf(M.leaf.inverse())
        except NotInvertible as exc:
            raise BlockSingular(0, path, exc) from exc
    first_failure: BlockSingular | None = None
    for swaps in _SWAPS:
        local: PivotTrace = []
        try:
            X = _unswap(_gelfand_step(_swap(M, swaps), path, local), swaps)
        except BlockSingular as exc:
            first_failure = first_failure or exc
            continue
        trace.extend(PivotStep(M.depth, s) for s in swaps)
        trace.extend(local)
        return X
    raise BlockSingular(
        M.depth, path, first_failure.cause, first_failure.blocked_at
    ) from first_failure


def _gelfand_step(M: BlockMatrix, path: tuple[str, ...], trace: PivotTrace) -> BlockMatrix:
    a, b, c, d = M.quads
    a_inv = _invert(a, path + ("a",), trace)
    d_inv = _invert(d, path + ("d",), trace)
    x11 = _invert(a - b * d_inv * c, path + ("a - b d^-1 c",), trace)
    x22 = _invert(d - c * a_inv * b, path + ("d - c a^-1 b",), trace)
    x12 = -(a_inv * b * x22)
    x21 = -(d_inv * c * x11)
    return BlockMatrix.of_quads(x11, x12, x21, x22)


def _swap(M: BlockMatrix, swaps: tuple[str, ...]) -> BlockMatrix:
    a, b, c, d = M.quads
    if "rows" in swaps:
        a, b, c, d = c, d, a, b
    if "cols" in swaps:
        a, b, c, d = b, a, d, c
    return BlockMatrix.of_quads(a, b, c, d)


def _unswap(Y: BlockMatrix, swaps: tuple[str, ...]) -> BlockMatrix:
    # (P M Q)^-1 = Q^-1 M^-1 P^-1, so M^-1 = Q Y P with P, Q the block swaps.
    # Right-multiplying by the row swap permutes Y's block columns; left-
    # multiplying by the column swap permutes its block rows.
    a, b, c, d = Y.quads
    if "rows" in swaps:
        a, b, c, d = b, a, d, c
    if "cols" in swaps:
        a, b, c, d = c, d, a, b
    return BlockMatrix.of_quads(a, b, c, d)


def flat_inverse(M: Sequence[Sequence[RingElement]]) -> tuple[list[list[RingElement]], PivotTrace]:
    X, trace = block_inverse(block_from_flat(M))
    return block_to_flat(X), trace
