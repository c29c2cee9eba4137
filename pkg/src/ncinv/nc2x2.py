"""Inverses of 2x2 matrices whose entries do not commute.

A matrix ``A = [[a, b], [c, d]]`` is inverted by first forming a *commutative
inverse* (the textbook adjugate formula, with a chosen determinant ordering
and a chosen side for the determinant's inverse), measuring its defect from
the identity (the *residue*), and factoring that defect through ``A`` (the
*decomposition* ``T``).  The true inverse is then ``commutative_inverse - T``.

Two determinant orderings are supported, ``ad - cb`` (:attr:`Ordering.ACB`)
and ``ad - bc`` (:attr:`Ordering.ABC`); they are different ring elements in
general but lead to the same inverse.  The quasideterminant inverse with
entries ``(a - b d^-1 c)^-1`` etc. is available as the ``gelfand`` method.

Every closed form has its own invertibility demands.  They are checked up
front and a failure raises :class:`~ncinv.errors.NotInvertible` naming the
exact subexpression; no method silently falls back to another.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable

from .algebra import RingContext, RingElement, element_from_json, parse_ring
from .errors import BadInput, MixedRingKinds, NotInvertible, ParseError


class Ordering(str, Enum):
    ACB = "acb"  # ad - cb
    ABC = "abc"  # ad - bc

    @property
    def expression(self) -> str:
        return "ad - cb" if self is Ordering.ACB else "ad - bc"


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class Method(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    LEFT_PRIME = "left-prime"
    RIGHT_PRIME = "right-prime"
    GELFAND = "gelfand"
    TRIANGULAR = "triangular"

    @classmethod
    def residue(cls, side: Side, ordering: Ordering) -> Method:
        if side is Side.LEFT:
            return cls.LEFT if ordering is Ordering.ACB else cls.LEFT_PRIME
        return cls.RIGHT if ordering is Ordering.ACB else cls.RIGHT_PRIME

    @property
    def side(self) -> Side | None:
        return {
            Method.LEFT: Side.LEFT,
            Method.LEFT_PRIME: Side.LEFT,
            Method.RIGHT: Side.RIGHT,
            Method.RIGHT_PRIME: Side.RIGHT,
        }.get(self)

    @property
    def ordering(self) -> Ordering | None:
        if self in (Method.LEFT, Method.RIGHT):
            return Ordering.ACB
        if self in (Method.LEFT_PRIME, Method.RIGHT_PRIME):
            return Ordering.ABC
        return None


RESIDUE_METHODS = (Method.LEFT, Method.RIGHT, Method.LEFT_PRIME, Method.RIGHT_PRIME)
EQUIVALENT_METHODS = RESIDUE_METHODS + (Method.GELFAND,)


@dataclass(frozen=True)
class Matrix2:
    """``[[a, b], [c, d]]`` with entries in one ring."""

    a: RingElement
    b: RingElement
    c: RingElement
    d: RingElement

    def __post_init__(self):
        ring = self.a.ring
        for x in (self.b, self.c, self.d):
            if x.ring != ring:
                raise MixedRingKinds(ring, x.ring)

    @classmethod
    def from_rows(cls, rows) -> Matrix2:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls, ring: RingContext) -> Matrix2:
        return cls(ring.one, ring.zero, ring.zero, ring.one)

    @classmethod
    def zeros(cls, ring: RingContext) -> Matrix2:
        z = ring.zero
        return cls(z, z, z, z)

    @property
    def ring(self) -> RingContext:
        return self.a.ring

    @property
    def rows(self) -> tuple[tuple[RingElement, RingElement], tuple[RingElement, RingElement]]:
        return ((self.a, self.b), (self.c, self.d))

    def entries(self) -> tuple[RingElement, ...]:
        return (self.a, self.b, self.c, self.d)

    def map(self, f: Callable[[RingElement], RingElement]) -> Matrix2:
        return Matrix2(f(self.a), f(self.b), f(self.c), f(self.d))

    def __add__(self, o: Matrix2) -> Matrix2:
        return Matrix2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: Matrix2) -> Matrix2:
        return Matrix2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> Matrix2:
        return self.map(lambda x: -x)

    def __mul__(self, o: Matrix2) -> Matrix2:
        if not isinstance(o, Matrix2):
            return NotImplemented
        return Matrix2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def left_scale(self, x: RingElement) -> Matrix2:
        """x * M, entrywise from the left."""
        return self.map(lambda e: x * e)

    def right_scale(self, x: RingElement) -> Matrix2:
        """M * x, entrywise from the right."""
        return self.map(lambda e: e * x)

    def adjugate(self) -> Matrix2:
        return Matrix2(self.d, -self.b, -self.c, self.a)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries())

    def is_identity(self) -> bool:
        return self == Matrix2.identity(self.ring)

    def entries_commute(self) -> bool:
        es = self.entries()
        return all((x * y - y * x).is_zero() for i, x in enumerate(es) for y in es[i + 1:])

    def to_json(self) -> dict:
        return {
            "ring": self.ring.descriptor,
            "entries": [[self.a.to_json(), self.b.to_json()], [self.c.to_json(), self.d.to_json()]],
        }

    @classmethod
    def from_json(cls, doc) -> Matrix2:
        try:
            ring = parse_ring(doc["ring"]) if "ring" in doc else None
            rows = doc["entries"]
        except (TypeError, KeyError) as exc:
            raise ParseError(f"Matrix2 document needs 'entries': {exc}") from exc
        if len(rows) != 2 or any(not isinstance(r, list) or len(r) != 2 for r in rows):
            raise ParseError("Matrix2 entries must be a 2x2 nested list")
        try:
            return cls.from_rows([[element_from_json(x, ring) for x in r] for r in rows])
        except MixedRingKinds as exc:
            raise ParseError(str(exc)) from exc

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


@dataclass(frozen=True)
class ResidueMatrix:
    side: Side
    ordering: Ordering
    m: Matrix2


@dataclass(frozen=True)
class DecompositionMatrix:
    side: Side
    ordering: Ordering
    m: Matrix2


@dataclass(frozen=True)
class Inverse2:
    m: Matrix2
    method: Method


def _inv(x: RingElement, name: str) -> RingElement:
    try:
        return x.inverse()
    except NotInvertible as exc:
        raise NotInvertible(name, x) from exc


class _Pieces:
    """Lazily computed inverses that the closed forms need, each under the
    name used in error messages."""

    def __init__(self, A: Matrix2):
        self.A = A
        self.a, self.b, self.c, self.d = A.entries()

    def require(self, *names: str) -> None:
        for name in names:
            getattr(self, _ATTR[name])

    @cached_property
    def a_inv(self):
        return _inv(self.a, "a")

    @cached_property
    def b_inv(self):
        return _inv(self.b, "b")

    @cached_property
    def c_inv(self):
        return _inv(self.c, "c")

    @cached_property
    def d_inv(self):
        return _inv(self.d, "d")

    @cached_property
    def delta(self):
        return determinant(self.A, Ordering.ACB)

    @cached_property
    def delta_prime(self):
        return determinant(self.A, Ordering.ABC)

    @cached_property
    def delta_inv(self):
        return _inv(self.delta, Ordering.ACB.expression)

    @cached_property
    def delta_prime_inv(self):
        return _inv(self.delta_prime, Ordering.ABC.expression)

    # (a - b d^-1 c)^-1 and friends
    @cached_property
    def q_a(self):
        return _inv(self.a - self.b * self.d_inv * self.c, "a - b d^-1 c")

    @cached_property
    def q_dba(self):
        return _inv(self.d * self.b_inv * self.a - self.c, "d b^-1 a - c")

    @cached_property
    def q_acd(self):
        return _inv(self.a * self.c_inv * self.d - self.b, "a c^-1 d - b")

    @cached_property
    def q_d(self):
        return _inv(self.d - self.c * self.a_inv * self.b, "d - c a^-1 b")

    @cached_property
    def q_c(self):
        return _inv(self.c - self.d * self.b_inv * self.a, "c - d b^-1 a")

    @cached_property
    def q_b(self):
        return _inv(self.b - self.a * self.c_inv * self.d, "b - a c^-1 d")

    @cached_property
    def q_cab(self):
        return _inv(self.c * self.a_inv * self.b - self.d, "c a^-1 b - d")

    def inv_delta(self, ordering: Ordering):
        return self.delta_inv if ordering is Ordering.ACB else self.delta_prime_inv

    def det(self, ordering: Ordering):
        return self.delta if ordering is Ordering.ACB else self.delta_prime


_ATTR = {
    "a": "a_inv",
    "b": "b_inv",
    "c": "c_inv",
    "d": "d_inv",
    "ad - cb": "delta_inv",
    "ad - bc": "delta_prime_inv",
    "a - b d^-1 c": "q_a",
    "d b^-1 a - c": "q_dba",
    "a c^-1 d - b": "q_acd",
    "d - c a^-1 b": "q_d",
    "c - d b^-1 a": "q_c",
    "b - a c^-1 d": "q_b",
    "c a^-1 b - d": "q_cab",
}

# Invertibility demands of each closed form, in the order they are checked.
DECOMPOSITION_REQUIREMENTS: dict[tuple[Side, Ordering], tuple[str, ...]] = {
    (Side.LEFT, Ordering.ACB): ("ad - cb", "b", "d", "a - b d^-1 c", "c - d b^-1 a"),
    (Side.RIGHT, Ordering.ACB): (
        "ad - cb", "a", "b", "c", "d",
        "a - b d^-1 c", "c - d b^-1 a", "b - a c^-1 d", "d - c a^-1 b",
    ),
    (Side.RIGHT, Ordering.ABC): ("ad - bc", "a", "b", "d - c a^-1 b", "d b^-1 a - c", "c a^-1 b - d"),
    (Side.LEFT, Ordering.ABC): (
        "ad - bc", "a", "c", "d", "a - b d^-1 c", "a c^-1 d - b", "d - c a^-1 b",
    ),
}
GELFAND_REQUIREMENTS = (
    "a", "b", "c", "d", "a - b d^-1 c", "d b^-1 a - c", "a c^-1 d - b", "d - c a^-1 b",
)


def requirements(method: Method) -> tuple[str, ...]:
    if method is Method.GELFAND:
        return GELFAND_REQUIREMENTS
    if method is Method.TRIANGULAR:
        return ("a", "d")
    return DECOMPOSITION_REQUIREMENTS[(method.side, method.ordering)]


def check_preconditions(A: Matrix2, method: Method) -> None:
    """Raise NotInvertible for the first unmet demand of ``method``."""
    if method is Method.TRIANGULAR:
        _check_triangular(A)
    _Pieces(A).require(*requirements(method))


def determinant(A: Matrix2, ordering: Ordering) -> RingElement:
    """``ad - cb`` or ``ad - bc``, multiplied in exactly that order."""
    if ordering is Ordering.ACB:
        return A.a * A.d - A.c * A.b
    return A.a * A.d - A.b * A.c


def commutator(x: RingElement, y: RingElement) -> RingElement:
    return x * y - y * x


def commutative_inverse(A: Matrix2, side: Side, ordering: Ordering) -> Matrix2:
    """Adjugate formula with the determinant inverse on the given side of every entry."""
    p = _Pieces(A)
    p.require(ordering.expression)
    return _commutative_inverse(A, p, side, ordering)


def _commutative_inverse(A: Matrix2, p: _Pieces, side: Side, ordering: Ordering) -> Matrix2:
    di = p.inv_delta(ordering)
    adj = A.adjugate()
    return adj.left_scale(di) if side is Side.LEFT else adj.right_scale(di)


def residue(A: Matrix2, side: Side, ordering: Ordering) -> ResidueMatrix:
    """Defect of the commutative inverse, from the definition (no commutator shortcut)."""
    cinv = commutative_inverse(A, side, ordering)
    prod = cinv * A if side is Side.LEFT else A * cinv
    return ResidueMatrix(side, ordering, prod - Matrix2.identity(A.ring))


def residue_commutator_form(A: Matrix2, side: Side, ordering: Ordering) -> ResidueMatrix:
    """The same residue assembled from commutators of the entries."""
    p = _Pieces(A)
    p.require(ordering.expression)
    a, b, c, d = A.entries()
    C = commutator
    if ordering is Ordering.ACB:
        if side is Side.LEFT:
            m = Matrix2(C(d, a) - C(b, c), C(d, b), C(a, c), A.ring.zero).left_scale(p.delta_inv)
        else:
            m = Matrix2(C(c, b), C(b, a), C(c, d), C(d, a)).right_scale(p.delta_inv)
    else:
        if side is Side.LEFT:
            m = Matrix2(C(d, a), C(d, b), C(a, c), C(b, c)).left_scale(p.delta_prime_inv)
        else:
            m = Matrix2(A.ring.zero, C(b, a), C(c, d), C(d, a) - C(c, b)).right_scale(
                p.delta_prime_inv
            )
    return ResidueMatrix(side, ordering, m)


def decomposition(A: Matrix2, side: Side, ordering: Ordering) -> DecompositionMatrix:
    """Closed-form ``T`` with ``T A = B_L`` (left) or ``A T = B_R`` (right)."""
    p = _Pieces(A)
    p.require(*DECOMPOSITION_REQUIREMENTS[(side, ordering)])
    return DecompositionMatrix(side, ordering, _decomposition(A, p, side, ordering))


def _decomposition(A: Matrix2, p: _Pieces, side: Side, ordering: Ordering) -> Matrix2:
    a, b, c, d = A.entries()
    C = commutator
    if ordering is Ordering.ACB:
        D, Di = p.delta, p.delta_inv
        if side is Side.LEFT:
            ac = C(a, c)
            return Matrix2(
                d - D * p.q_a,
                -(b + D * p.q_c),
                ac * p.q_a,
                ac * p.q_c,
            ).left_scale(Di)
        return Matrix2(
            d - p.q_a * D,
            -b - p.q_c * D,
            -c - p.q_b * D,
            a - p.q_d * D,
        ).right_scale(Di)
    Dp, Dpi = p.delta_prime, p.delta_prime_inv
    if side is Side.RIGHT:
        return Matrix2(
            p.q_dba * C(d, c),
            p.q_dba * (C(a, d) + C(c, b) + d * p.b_inv * C(b, a)),
            p.q_d * C(c, d),
            p.q_cab * (C(a, d) + C(c, b) + c * p.a_inv * C(b, a)),
        ).right_scale(Dpi)
    return Matrix2(
        d - Dp * p.q_a,
        (C(d, b) - C(d, a) * p.a_inv * b) * p.q_d,
        -c + Dp * p.q_acd,
        (C(b, c) - C(a, c) * p.a_inv * b) * p.q_d,
    ).left_scale(Dpi)


def left_decomposition_commutator_form(A: Matrix2) -> DecompositionMatrix:
    """Left decomposition under ``ad - cb`` written with commutators only.

    Equal to ``decomposition(A, Side.LEFT, Ordering.ACB)``; kept separate so
    the two expressions can be checked against each other.
    """
    p = _Pieces(A)
    p.require(*DECOMPOSITION_REQUIREMENTS[(Side.LEFT, Ordering.ACB)])
    a, b, c, d = A.entries()
    C = commutator
    da_cb = C(d, a) + C(c, b)
    ac = C(a, c)
    m = Matrix2(
        (C(b, d) * p.d_inv * c + da_cb) * p.q_a,
        (da_cb + C(b, d) * p.b_inv * a) * p.q_c,
        ac * p.q_a,
        ac * p.q_c,
    ).left_scale(p.delta_inv)
    return DecompositionMatrix(Side.LEFT, Ordering.ACB, m)


def gelfand_inverse(A: Matrix2) -> Matrix2:
    p = _Pieces(A)
    p.require(*GELFAND_REQUIREMENTS)
    return Matrix2(p.q_a, -p.q_dba, -p.q_acd, p.q_d)


def inverse(A: Matrix2, method: Method | str = Method.GELFAND) -> Inverse2:
    method = Method(method)
    if method is Method.GELFAND:
        return Inverse2(gelfand_inverse(A), method)
    if method is Method.TRIANGULAR:
        return triangular_inverse(A)
    side, ordering = method.side, method.ordering
    p = _Pieces(A)
    p.require(*DECOMPOSITION_REQUIREMENTS[(side, ordering)])
    cinv = _commutative_inverse(A, p, side, ordering)
    return Inverse2(cinv - _decomposition(A, p, side, ordering), method)


def _check_triangular(A: Matrix2) -> None:
    if not (A.b.is_zero() or A.c.is_zero()):
        raise BadInput("triangular inverse needs b = 0 or c = 0")


def triangular_inverse(A: Matrix2) -> Inverse2:
    """Inverse of a triangular matrix (b = 0 or c = 0) from a^-1 and d^-1 alone."""
    _check_triangular(A)
    p = _Pieces(A)
    p.require("a", "d")
    ai, di = p.a_inv, p.d_inv
    zero = A.ring.zero
    if A.c.is_zero():
        m = Matrix2(ai, -(ai * A.b * di), zero, di)
    else:
        m = Matrix2(ai, zero, -(di * A.c * ai), di)
    return Inverse2(m, Method.TRIANGULAR)


def is_left_inverse(A: Matrix2, X: Matrix2) -> bool:
    return (X * A).is_identity()


def is_right_inverse(A: Matrix2, X: Matrix2) -> bool:
    return (A * X).is_identity()


def is_two_sided_inverse(A: Matrix2, X: Matrix2) -> bool:
    return is_left_inverse(A, X) and is_right_inverse(A, X)
