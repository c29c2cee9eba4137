from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from ..errors import NotInvertible
from .base import RingContext, RingElement, as_rational, format_fraction, random_rational

_ZERO = mpq(0)
_ONE = mpq(1)


class Quaternion(RingElement):
    """w + x i + y j + z k with rational components (Hamilton product)."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0, x=0, y=0, z=0):
        set_ = object.__setattr__
        set_(self, "w", as_rational(w))
        set_(self, "x", as_rational(x))
        set_(self, "y", as_rational(y))
        set_(self, "z", as_rational(z))

    @classmethod
    def _raw(cls, w: mpq, x: mpq, y: mpq, z: mpq) -> Quaternion:
        q = object.__new__(cls)
        set_ = object.__setattr__
        set_(q, "w", w)
        set_(q, "x", x)
        set_(q, "y", y)
        set_(q, "z", z)
        return q

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    @property
    def ring(self) -> QuaternionRing:
        return QUATERNIONS

    @property
    def components(self) -> tuple[mpq, mpq, mpq, mpq]:
        return (self.w, self.x, self.y, self.z)

    def _compatible(self, other) -> bool:
        return True

    def _add(self, o: Quaternion) -> Quaternion:
        return Quaternion._raw(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    def _mul(self, o: Quaternion) -> Quaternion:
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = o.w, o.x, o.y, o.z
        return Quaternion._raw(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def _scale(self, q: mpq) -> Quaternion:
        return Quaternion._raw(self.w * q, self.x * q, self.y * q, self.z * q)

    def __neg__(self) -> Quaternion:
        return Quaternion._raw(-self.w, -self.x, -self.y, -self.z)

    def conjugate(self) -> Quaternion:
        return Quaternion._raw(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> mpq:
        """Squared Euclidean norm w^2 + x^2 + y^2 + z^2."""
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def inverse(self) -> Quaternion:
        n = self.norm()
        if n == 0:
            raise NotInvertible("quaternion", self, "zero norm")
        return Quaternion._raw(self.w / n, -self.x / n, -self.y / n, -self.z / n)

    def is_zero(self) -> bool:
        return not (self.w or self.x or self.y or self.z)

    def is_real(self) -> bool:
        return not (self.x or self.y or self.z)

    def to_json(self) -> dict:
        return {
            name: {"num": str(v.numerator), "den": str(v.denominator)}
            for name, v in zip("wxyz", self.components)
        }

    def __eq__(self, other) -> bool:
        return isinstance(other, Quaternion) and self.components == other.components

    def __hash__(self) -> int:
        return hash(("quaternion",) + self.components)

    def __repr__(self) -> str:
        return "Quaternion({})".format(", ".join(format_fraction(v) for v in self.components))

    def __str__(self) -> str:
        terms = []
        for v, unit in zip(self.components, ("", "i", "j", "k")):
            if v == 0:
                continue
            mag = format_fraction(abs(v))
            if unit and mag == "1":
                mag = ""
            sign = "-" if v < 0 else "+"
            terms.append((sign, mag + unit))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


@dataclass(frozen=True)
class QuaternionRing(RingContext):
    @property
    def descriptor(self) -> str:
        return "quaternion"

    @property
    def zero(self) -> Quaternion:
        return Quaternion._raw(_ZERO, _ZERO, _ZERO, _ZERO)

    @property
    def one(self) -> Quaternion:
        return Quaternion._raw(_ONE, _ZERO, _ZERO, _ZERO)

    def embed(self, q) -> Quaternion:
        return Quaternion(q)

    def random_element(self, rng: random.Random, bound: int) -> Quaternion:
        return Quaternion._raw(*(random_rational(rng, bound) for _ in range(4)))


QUATERNIONS = QuaternionRing()

I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)
