"""Reference computations that share no code with the ncinv arithmetic.

Quaternion products go through sympy's own quaternion type, and 2x2
quaternion matrices are inverted through their real 8x8 representation
with sympy's exact linear algebra.
"""

import re
from fractions import Fraction

import sympy
from sympy.algebras.quaternion import Quaternion as SQ

from ncinv.algebra import Quaternion


def to_sympy(q: Quaternion) -> SQ:
    return SQ(*(sympy.Rational(int(v.numerator), int(v.denominator)) for v in q.components))


def from_sympy(q: SQ) -> Quaternion:
    return Quaternion(*(Fraction(int(sympy.numer(v)), int(sympy.denom(v))) for v in (q.a, q.b, q.c, q.d)))


def quat(s: str) -> Quaternion:
    """Parse a tiny literal such as "1", "i", "-k" or "1/2 - 1/2k"."""
    out = {"": Fraction(0), "i": Fraction(0), "j": Fraction(0), "k": Fraction(0)}
    for sign, coef, unit in re.findall(r"([+-]?)(\d+(?:/\d+)?)?([ijk]?)", s.replace(" ", "")):
        if not coef and not unit:
            continue
        val = Fraction(coef) if coef else Fraction(1)
        out[unit] += -val if sign == "-" else val
    return Quaternion(out[""], out["i"], out["j"], out["k"])


def _left_mult(q: SQ) -> sympy.Matrix:
    # columns are q*1, q*i, q*j, q*k
    basis = [SQ(1, 0, 0, 0), SQ(0, 1, 0, 0), SQ(0, 0, 1, 0), SQ(0, 0, 0, 1)]
    cols = [q * e for e in basis]
    return sympy.Matrix([[c.a, c.b, c.c, c.d] for c in cols]).T


def real_rep(rows) -> sympy.Matrix:
    """Real 4n x 4n matrix of an n x n quaternion matrix acting on H^n from the left."""
    n = len(rows)
    M = sympy.zeros(4 * n, 4 * n)
    for i in range(n):
        for j in range(n):
            M[4 * i:4 * i + 4, 4 * j:4 * j + 4] = _left_mult(to_sympy(rows[i][j]))
    return M


def quaternion_matrix_inverse(rows) -> list[list[Quaternion]]:
    n = len(rows)
    R = real_rep(rows).inv()
    # the image of 1 under L(q) is q itself, so column 4j of block (i,j) holds q
    return [
        [from_sympy(SQ(*(R[4 * i + t, 4 * j] for t in range(4)))) for j in range(n)]
        for i in range(n)
    ]


def rational_block_inverse(rows) -> list[list[sympy.Matrix]]:
    """Inverse of an n x n matrix whose entries are SquareMatrix values, via the flat matrix."""
    n, m = len(rows), rows[0][0].n
    F = sympy.zeros(n * m, n * m)
    for i in range(n):
        for j in range(n):
            for r in range(m):
                for c in range(m):
                    v = rows[i][j].rows[r][c]
                    F[i * m + r, j * m + c] = sympy.Rational(int(v.numerator), int(v.denominator))
    inv = F.inv()
    return [[inv[i * m:(i + 1) * m, j * m:(j + 1) * m] for j in range(n)] for i in range(n)]


def to_sympy_matrix(x) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(int(v.numerator), int(v.denominator)) for v in r] for r in x.rows])
