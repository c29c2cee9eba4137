from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from gmpy2 import mpq

from ..errors import BadDimension, NotInvertible
from .base import RingContext, RingElement, as_rational, format_fraction, random_rational


class SquareMatrix(RingElement):
    """An N x N matrix of exact rationals, used as a ring element."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Sequence[Sequence]):
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise BadDimension("SquareMatrix needs N >= 1 rows of length N")
        object.__setattr__(self, "rows", tuple(tuple(as_rational(v) for v in r) for r in rows))
        object.__setattr__(self, "n", n)

    @classmethod
    def _raw(cls, rows: tuple[tuple[mpq, ...], ...]) -> SquareMatrix:
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "n", len(rows))
        return m

    @classmethod
    def identity(cls, n: int) -> SquareMatrix:
        one, zero = mpq(1), mpq(0)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    def __setattr__(self, name, value):
        raise AttributeError("SquareMatrix is immutable")

    @property
    def ring(self) -> MatrixRing:
        return _matrix_ring(self.n)

    def _compatible(self, other) -> bool:
        return other.n == self.n

    def __getitem__(self, ij: tuple[int, int]) -> mpq:
        i, j = ij
        return self.rows[i][j]

    def _add(self, o: SquareMatrix) -> SquareMatrix:
        return SquareMatrix._raw(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, o.rows))
        )

    def _mul(self, o: SquareMatrix) -> SquareMatrix:
        cols = tuple(zip(*o.rows))
        return SquareMatrix._raw(
            tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in self.rows)
        )

    def _scale(self, q: mpq) -> SquareMatrix:
        return SquareMatrix._raw(tuple(tuple(x * q for x in r) for r in self.rows))

    def __neg__(self) -> SquareMatrix:
        return SquareMatrix._raw(tuple(tuple(-x for x in r) for r in self.rows))

    def determinant(self) -> mpq:
        n = self.n
        m = [list(r) for r in self.rows]
        det = mpq(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
            if piv is None:
                return mpq(0)
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            p = m[col][col]
            det *= p
            for r in range(col + 1, n):
                f = m[r][col] / p
                if f:
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        return det

    def inverse(self) -> SquareMatrix:
        # Gauss-Jordan on [M | I]
        n = self.n
        aug = [list(r) + [mpq(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise NotInvertible("matrix", self, "singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            row = [x / p for x in aug[col]]
            aug[col] = row
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], row)]
        return SquareMatrix._raw(tuple(tuple(r[n:]) for r in aug))

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_scalar(self) -> bool:
        """True when this is a rational multiple of the identity (a central element)."""
        d = self.rows[0][0]
        return all(
            x == (d if i == j else 0) for i, r in enumerate(self.rows) for j, x in enumerate(r)
        )

    def to_json(self) -> list:
        return [[{"num": str(x.numerator), "den": str(x.denominator)} for x in r] for r in self.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, SquareMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(("matrix", self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_fraction(x) for x in r) for r in self.rows)
        return f"SquareMatrix([{body}])"

    __str__ = __repr__


@dataclass(frozen=True)
class MatrixRing(RingContext):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise BadDimension("matrix ring dimension must be >= 1")

    @property
    def descriptor(self) -> str:
        return f"matrix:{self.n}"

    @property
    def zero(self) -> SquareMatrix:
        z = mpq(0)
        return SquareMatrix._raw(tuple(tuple(z for _ in range(self.n)) for _ in range(self.n)))

    @property
    def one(self) -> SquareMatrix:
        return SquareMatrix.identity(self.n)

    def embed(self, q) -> SquareMatrix:
        return SquareMatrix.identity(self.n)._scale(as_rational(q))

    def random_element(self, rng: random.Random, bound: int) -> SquareMatrix:
        return SquareMatrix._raw(
            tuple(tuple(random_rational(rng, bound) for _ in range(self.n)) for _ in range(self.n))
        )


@lru_cache(maxsize=None)
def _matrix_ring(n: int) -> MatrixRing:
    return MatrixRing(n)
