from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from ..errors import NotInvertible
from .base import RingContext, RingElement, as_rational, format_fraction, random_rational


class Scalar(RingElement):
    """An exact rational number."""

    __slots__ = ("_v",)

    def __init__(self, value=0):
        object.__setattr__(self, "_v", as_rational(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @property
    def value(self) -> mpq:
        return self._v

    @property
    def ring(self) -> ScalarRing:
        return SCALARS

    def _compatible(self, other) -> bool:
        return True

    def _add(self, other: Scalar) -> Scalar:
        return Scalar(self._v + other._v)

    def _mul(self, other: Scalar) -> Scalar:
        return Scalar(self._v * other._v)

    def _scale(self, q: mpq) -> Scalar:
        return Scalar(self._v * q)

    def __neg__(self) -> Scalar:
        return Scalar(-self._v)

    def inverse(self) -> Scalar:
        if self._v == 0:
            raise NotInvertible("scalar", self, "zero")
        return Scalar(1 / self._v)

    def is_zero(self) -> bool:
        return self._v == 0

    def to_json(self) -> dict:
        return {"num": str(self._v.numerator), "den": str(self._v.denominator)}

    def __eq__(self, other) -> bool:
        return isinstance(other, Scalar) and self._v == other._v

    def __hash__(self) -> int:
        return hash(("scalar", self._v))

    def __repr__(self) -> str:
        return f"Scalar({format_fraction(self._v)})"

    def __str__(self) -> str:
        return format_fraction(self._v)


@dataclass(frozen=True)
class ScalarRing(RingContext):
    @property
    def descriptor(self) -> str:
        return "scalar"

    @property
    def zero(self) -> Scalar:
        return Scalar(0)

    @property
    def one(self) -> Scalar:
        return Scalar(1)

    def embed(self, q) -> Scalar:
        return Scalar(q)

    def random_element(self, rng: random.Random, bound: int) -> Scalar:
        return Scalar(random_rational(rng, bound))


SCALARS = ScalarRing()
