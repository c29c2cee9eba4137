"""Fraction-free Gauss-Jordan (Bareiss) inverse over the rationals.

Used as an independent oracle for the block recursion: it shares no code
with it and works on integers until the single final division.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import BadDimension, NotInvertible


def bareiss_inverse(M: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    if n == 0 or any(len(r) != n for r in M):
        raise BadDimension("bareiss_inverse needs a non-empty square matrix")
    rows = [[Fraction(x) for x in r] for r in M]
    scale = lcm(*(x.denominator for r in rows for x in r))
    aug = [
        [int(x * scale) for x in r] + [int(i == j) for j in range(n)] for i, r in enumerate(rows)
    ]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if piv is None:
            raise NotInvertible("flat matrix", None, "singular")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        for i in range(n):
            if i == k:
                continue
            f = aug[i][k]
            row = aug[i]
            for j in range(2 * n):
                q, rem = divmod(pk * row[j] - f * aug[k][j], prev)
                assert rem == 0, "Bareiss division must be exact"
                row[j] = q
        prev = pk
    # every pivot now holds the (signed) determinant of the scaled matrix
    return [[Fraction(aug[i][n + j] * scale, aug[i][i]) for j in range(n)] for i in range(n)]
