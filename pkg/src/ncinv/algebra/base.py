"""Common machinery for ring elements and ring contexts."""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from ..errors import MixedRingKinds

MPQ = type(mpq())


def as_rational(value) -> mpq:
    """Exact rational (gmpy2 ``mpq``) from an int, Fraction, mpq or ``"p/q"`` string."""
    if isinstance(value, MPQ):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return mpq(value)
    if isinstance(value, str):
        return mpq(Fraction(value.strip()))
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def random_rational(rng: random.Random, bound: int) -> mpq:
    """p/q with |p| <= bound and 1 <= q <= bound."""
    return mpq(rng.randint(-bound, bound), rng.randint(1, bound))


def format_fraction(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class RingContext(ABC):
    """Describes one concrete ring: its kind, unit and zero."""

    @property
    @abstractmethod
    def descriptor(self) -> str: ...

    @property
    @abstractmethod
    def zero(self) -> RingElement: ...

    @property
    @abstractmethod
    def one(self) -> RingElement: ...

    @abstractmethod
    def embed(self, q) -> RingElement:
        """Image of the rational ``q`` under the unital embedding Q -> ring."""

    @abstractmethod
    def random_element(self, rng: random.Random, bound: int) -> RingElement: ...

    def __str__(self) -> str:
        return self.descriptor


class RingElement(ABC):
    """An element of an associative unital ring, not assumed commutative.

    Subclasses are immutable.  ``+``, ``-`` and ``*`` between elements of
    different rings raise :class:`MixedRingKinds`; ``*`` with a Python int,
    Fraction or mpq scales by that (central) rational.
    """

    __slots__ = ()

    @property
    @abstractmethod
    def ring(self) -> RingContext: ...

    @abstractmethod
    def _add(self, other): ...

    @abstractmethod
    def _mul(self, other): ...

    @abstractmethod
    def _scale(self, q: mpq): ...

    @abstractmethod
    def __neg__(self): ...

    @abstractmethod
    def inverse(self):
        """Two-sided inverse; raises NotInvertible."""

    @abstractmethod
    def is_zero(self) -> bool: ...

    @abstractmethod
    def to_json(self): ...

    def _compatible(self, other) -> bool:
        return other.ring == self.ring

    def _same_ring(self, other) -> None:
        if type(other) is not type(self) or not self._compatible(other):
            other_ring = other.ring if isinstance(other, RingElement) else type(other).__name__
            raise MixedRingKinds(self.ring, other_ring)

    def __add__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        self._same_ring(other)
        return self._add(other)

    def __sub__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        self._same_ring(other)
        return self._add(-other)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            self._same_ring(other)
            return self._mul(other)
        if isinstance(other, (int, Fraction, MPQ)):
            return self._scale(as_rational(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, MPQ)):
            return self._scale(as_rational(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_one(self) -> bool:
        return self == self.ring.one

    def commutator(self, other):
        return self * other - other * self
