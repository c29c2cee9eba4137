"""Inversion order by order in a deformation parameter hbar.

Entries live in a truncated series ring ``R[hbar]/(hbar^{K+1})``.  When the
order-0 parts of the entries commute, every commutator is ``O(hbar)`` and so
is the residue ``B``; then ``I + B`` is inverted exactly by the finite sum
``sum_{j<=K} (-B)^j`` and the inverse is the commutative inverse dressed with
commutator corrections:

    left:   X = (sum_j (-B_L)^j) . cA_L
    right:  X = cA_R . (sum_j (-B_R)^j)
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (
    MatrixRing,
    Quaternion,
    RingContext,
    RingElement,
    Scalar,
    SeriesRing,
    SquareMatrix,
    TruncatedSeries,
)
from .algebra.base import random_rational
from .errors import BadInput, NotInvertible, RegimeViolation, SamplingExhausted
from .nc2x2 import (
    Inverse2,
    Matrix2,
    Method,
    Ordering,
    Side,
    commutative_inverse,
    determinant,
    inverse,
    residue,
)

DEFAULT_BASE = MatrixRing(2)


def is_central(x: RingElement) -> bool:
    """Whether ``x`` is a rational multiple of the unit (hence central)."""
    if isinstance(x, Scalar):
        return True
    if isinstance(x, Quaternion):
        return x.is_real()
    if isinstance(x, SquareMatrix):
        return x.is_scalar()
    raise BadInput(f"no centrality test for {type(x).__name__}")


@dataclass(frozen=True)
class DeformedMatrix2:
    m: Matrix2

    def __post_init__(self):
        if not isinstance(self.m.ring, SeriesRing):
            raise BadInput("DeformedMatrix2 entries must be truncated series")

    @classmethod
    def from_coefficients(cls, coeffs: list[Matrix2]) -> DeformedMatrix2:
        """Build from per-order matrices ``[M_0, M_1, ..., M_K]``."""
        order = len(coeffs) - 1
        fields = [[c.entries()[i] for c in coeffs] for i in range(4)]
        return cls(Matrix2(*(TruncatedSeries(f, order) for f in fields)))

    @property
    def ring(self) -> SeriesRing:
        return self.m.ring

    @property
    def order(self) -> int:
        return self.ring.order

    @property
    def base(self) -> RingContext:
        return self.ring.base

    def coefficient(self, k: int) -> Matrix2:
        return self.m.map(lambda s: s[k])

    @property
    def classical_part(self) -> Matrix2:
        return self.coefficient(0)

    def in_quantization_regime(self) -> bool:
        return all(is_central(x) for x in self.classical_part.entries())

    def to_json(self) -> dict:
        return self.m.to_json()

    @classmethod
    def from_json(cls, doc) -> DeformedMatrix2:
        return cls(Matrix2.from_json(doc))


@dataclass(frozen=True)
class OrderLedger:
    orders: tuple[Matrix2, ...]

    @classmethod
    def of(cls, X: Matrix2) -> OrderLedger:
        K = X.ring.order
        return cls(tuple(X.map(lambda s, k=k: s[k]) for k in range(K + 1)))

    def __getitem__(self, k: int) -> Matrix2:
        return self.orders[k]

    def __len__(self) -> int:
        return len(self.orders)

    def to_json(self) -> dict:
        return {"orders": [m.to_json() for m in self.orders]}


def _check_regime(A: DeformedMatrix2) -> None:
    es = A.classical_part.entries()
    names = "abcd"
    for i in range(4):
        for j in range(i + 1, 4):
            if not (es[i] * es[j] - es[j] * es[i]).is_zero():
                raise RegimeViolation(
                    f"order-0 commutator [{names[i]}, {names[j]}] is nonzero; "
                    "noncommutativity must start at order hbar"
                )


def _check_classical_determinant(A: DeformedMatrix2, ordering: Ordering) -> None:
    delta0 = determinant(A.classical_part, ordering)
    try:
        delta0.inverse()
    except NotInvertible as exc:
        raise NotInvertible(f"classical determinant {ordering.expression}", delta0) from exc


def classical_inverse(A: DeformedMatrix2) -> Matrix2:
    """Adjugate inverse of the order-0 matrix (its entries must commute)."""
    _check_regime(A)
    _check_classical_determinant(A, Ordering.ACB)
    return commutative_inverse(A.classical_part, Side.LEFT, Ordering.ACB)


def neumann_inverse(
    A: DeformedMatrix2, side: Side = Side.LEFT, ordering: Ordering = Ordering.ACB
) -> tuple[Inverse2, OrderLedger]:
    _check_regime(A)
    _check_classical_determinant(A, ordering)
    cinv = commutative_inverse(A.m, side, ordering)
    B = residue(A.m, side, ordering).m
    minus_B = -B
    identity = Matrix2.identity(A.ring)
    total, power = identity, identity
    for _ in range(A.order):
        power = power * minus_B
        total = total + power
    X = total * cinv if side is Side.LEFT else cinv * total
    return Inverse2(X, Method.residue(side, ordering)), OrderLedger.of(X)


def closed_form_inverse(A: DeformedMatrix2, method: Method | str = Method.GELFAND) -> Inverse2:
    """Closed-form inverse evaluated inside the series ring."""
    return inverse(A.m, method)


def residue_order(A: DeformedMatrix2, side: Side = Side.LEFT, ordering: Ordering = Ordering.ACB) -> int:
    """Lowest hbar power carrying a nonzero residue coefficient (order + 1 if none)."""
    _check_classical_determinant(A, ordering)
    B = residue(A.m, side, ordering).m
    return min(s.valuation() for s in B.entries())


def truncated_identity_holds(A: DeformedMatrix2, X: Matrix2) -> bool:
    return (A.m * X).is_identity() and (X * A.m).is_identity()


def random_deformed(
    rng: random.Random,
    order: int,
    base: RingContext = DEFAULT_BASE,
    bound: int = 5,
    central_classical: bool = True,
    retry_budget: int = 1000,
) -> DeformedMatrix2:
    """Random sample whose classical part has an invertible determinant.

    With ``central_classical`` the order-0 coefficients are nonzero rational
    multiples of the unit (the quantization regime); corrections at orders
    ``1..order`` are arbitrary base elements.
    """
    ring = SeriesRing(base, order)
    for _ in range(retry_budget):
        if central_classical:
            scalars = [random_rational(rng, bound) for _ in range(4)]
            if 0 in scalars or scalars[0] * scalars[3] == scalars[1] * scalars[2]:
                continue
            lead = [base.embed(q) for q in scalars]
        else:
            lead = [base.random_element(rng, bound) for _ in range(4)]
        entries = [
            TruncatedSeries([x] + [base.random_element(rng, bound) for _ in range(order)], order)
            for x in lead
        ]
        A = DeformedMatrix2(Matrix2(*entries))
        if not central_classical:
            try:
                _check_classical_determinant(A, Ordering.ACB)
            except NotInvertible:
                continue
        return A
    raise SamplingExhausted(f"no deformed sample over {ring} after {retry_budget} draws")
