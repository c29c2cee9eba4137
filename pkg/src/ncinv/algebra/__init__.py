"""Exact noncommutative rings used as matrix entry domains."""

from __future__ import annotations

from .base import RingContext, RingElement
from .codec import element_from_json, element_to_json, parse_ring
from .matrix import MatrixRing, SquareMatrix
from .quaternion import QUATERNIONS, I, J, K, Quaternion, QuaternionRing
from .sampling import Policy, RandomSpec, derive_seed, draw, is_invertible, sample
from .scalar import SCALARS, Scalar, ScalarRing
from .series import SeriesRing, TruncatedSeries


def add(x: RingElement, y: RingElement) -> RingElement:
    return x + y


def mul(x: RingElement, y: RingElement) -> RingElement:
    return x * y


def invert(x: RingElement) -> RingElement:
    return x.inverse()


def commutator(x: RingElement, y: RingElement) -> RingElement:
    """[x, y] = xy - yx."""
    return x * y - y * x


__all__ = [
    "RingContext",
    "RingElement",
    "Scalar",
    "ScalarRing",
    "SCALARS",
    "Quaternion",
    "QuaternionRing",
    "QUATERNIONS",
    "I",
    "J",
    "K",
    "SquareMatrix",
    "MatrixRing",
    "TruncatedSeries",
    "SeriesRing",
    "RandomSpec",
    "Policy",
    "sample",
    "draw",
    "derive_seed",
    "is_invertible",
    "parse_ring",
    "element_from_json",
    "element_to_json",
    "add",
    "mul",
    "invert",
    "commutator",
]
