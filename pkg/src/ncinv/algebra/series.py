"""Power series in a formal central parameter (hbar), truncated after hbar^K."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from ..errors import BadInput, NotInvertible
from .base import RingContext, RingElement


class TruncatedSeries(RingElement):
    """sum_{k=0}^{K} c_k hbar^k with coefficients in a single base ring."""

    __slots__ = ("coeffs", "_ring")

    def __init__(self, coeffs: Sequence[RingElement], order: int | None = None):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise BadInput("series needs at least the order-0 coefficient")
        base = coeffs[0].ring
        if isinstance(base, SeriesRing):
            raise BadInput("series coefficients may not themselves be series")
        if any(c.ring != base for c in coeffs):
            raise BadInput("series coefficients must share one base ring")
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise BadInput("series order must be >= 0")
        if len(coeffs) > order + 1:
            if any(not c.is_zero() for c in coeffs[order + 1:]):
                raise BadInput(f"coefficients beyond hbar^{order} must be zero")
            coeffs = coeffs[: order + 1]
        coeffs = coeffs + (base.zero,) * (order + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_ring", SeriesRing(base, order))

    @classmethod
    def _raw(cls, coeffs: tuple, ring: SeriesRing) -> TruncatedSeries:
        s = object.__new__(cls)
        object.__setattr__(s, "coeffs", coeffs)
        object.__setattr__(s, "_ring", ring)
        return s

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def ring(self) -> SeriesRing:
        return self._ring

    @property
    def order(self) -> int:
        return self._ring.order

    def __getitem__(self, k: int) -> RingElement:
        return self.coeffs[k]

    def valuation(self) -> int:
        """Lowest k with a nonzero coefficient; order + 1 for the zero series."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return self.order + 1

    def _compatible(self, other) -> bool:
        return other._ring == self._ring

    def _add(self, o: TruncatedSeries) -> TruncatedSeries:
        return TruncatedSeries._raw(tuple(x + y for x, y in zip(self.coeffs, o.coeffs)), self._ring)

    def _mul(self, o: TruncatedSeries) -> TruncatedSeries:
        K = self.order
        zero = self._ring.base.zero
        out = []
        for n in range(K + 1):
            acc = zero
            for k in range(n + 1):
                x = self.coeffs[k]
                y = o.coeffs[n - k]
                if x.is_zero() or y.is_zero():
                    continue
                acc = acc + x * y
            out.append(acc)
        return TruncatedSeries._raw(tuple(out), self._ring)

    def _scale(self, q: mpq) -> TruncatedSeries:
        return TruncatedSeries._raw(tuple(c * q for c in self.coeffs), self._ring)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries._raw(tuple(-c for c in self.coeffs), self._ring)

    def inverse(self) -> TruncatedSeries:
        # y_0 = x_0^-1, y_n = -x_0^-1 sum_{k>=1} x_k y_{n-k}
        try:
            lead_inv = self.coeffs[0].inverse()
        except NotInvertible as exc:
            raise NotInvertible("series order-0 coefficient", self, str(exc)) from exc
        ys = [lead_inv]
        zero = self._ring.base.zero
        for n in range(1, self.order + 1):
            acc = zero
            for k in range(1, n + 1):
                x = self.coeffs[k]
                if not x.is_zero():
                    acc = acc + x * ys[n - k]
            ys.append(-(lead_inv * acc))
        return TruncatedSeries._raw(tuple(ys), self._ring)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self._ring == other._ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(("series", self._ring, self.coeffs))

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r}, order={self.order})"

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            h = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
            parts.append(f"({c})" + (f"*{h}" if h else ""))
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class SeriesRing(RingContext):
    base: RingContext
    order: int

    @property
    def descriptor(self) -> str:
        return f"series:{self.order}:{self.base.descriptor}"

    @property
    def zero(self) -> TruncatedSeries:
        return TruncatedSeries._raw((self.base.zero,) * (self.order + 1), self)

    @property
    def one(self) -> TruncatedSeries:
        return self.lift(self.base.one)

    def lift(self, x: RingElement) -> TruncatedSeries:
        """Constant series x + 0 hbar + ..."""
        if x.ring != self.base:
            raise BadInput(f"cannot lift {x.ring} element into {self}")
        return TruncatedSeries._raw((x,) + (self.base.zero,) * self.order, self)

    def hbar(self) -> TruncatedSeries:
        """The deformation parameter itself (zero when order is 0)."""
        coeffs = [self.base.zero] * (self.order + 1)
        if self.order >= 1:
            coeffs[1] = self.base.one
        return TruncatedSeries._raw(tuple(coeffs), self)

    def embed(self, q) -> TruncatedSeries:
        return self.lift(self.base.embed(q))

    def random_element(self, rng: random.Random, bound: int) -> TruncatedSeries:
        return TruncatedSeries._raw(
            tuple(self.base.random_element(rng, bound) for _ in range(self.order + 1)), self
        )
