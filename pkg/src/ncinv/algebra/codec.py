"""JSON-compatible encoding of ring elements and ring descriptors.

Scalars are ``{"num": "p", "den": "q"}`` (integers as strings), quaternions
``{"w": s, "x": s, "y": s, "z": s}``, matrices row-major nested lists of
scalars, series ``{"order": K, "coeffs": [...]}``.  On input a scalar may also
be given as a bare string ``"p/q"`` or an int.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import BadDimension, BadInput, ParseError
from .base import RingContext, RingElement
from .matrix import MatrixRing, SquareMatrix
from .quaternion import QUATERNIONS, Quaternion
from .scalar import SCALARS, Scalar
from .series import SeriesRing, TruncatedSeries

DEFAULT_SERIES_BASE = MatrixRing(2)


def parse_ring(descriptor: str) -> RingContext:
    """``scalar``, ``quaternion``, ``matrix:N``, ``series:K`` or ``series:K:<base>``."""
    head, _, rest = descriptor.strip().partition(":")
    try:
        if head == "scalar" and not rest:
            return SCALARS
        if head == "quaternion" and not rest:
            return QUATERNIONS
        if head == "matrix":
            return MatrixRing(int(rest))
        if head == "series":
            order, _, base = rest.partition(":")
            base_ring = parse_ring(base) if base else DEFAULT_SERIES_BASE
            if isinstance(base_ring, SeriesRing):
                raise ParseError("nested series rings are not supported")
            if int(order) < 0:
                raise ParseError("series order must be >= 0")
            return SeriesRing(base_ring, int(order))
    except (ValueError, BadDimension) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad ring descriptor {descriptor!r}: {exc}") from exc
    raise ParseError(f"unknown ring descriptor {descriptor!r}")


def _fraction(tree) -> Fraction:
    try:
        if isinstance(tree, dict):
            if set(tree) != {"num", "den"}:
                raise ParseError(f"scalar object must have exactly num/den, got {sorted(tree)}")
            den = int(tree["den"])
            if den == 0:
                raise ParseError("zero denominator")
            return Fraction(int(tree["num"]), den)
        if isinstance(tree, bool):
            raise ParseError("booleans are not scalars")
        if isinstance(tree, int):
            return Fraction(tree)
        if isinstance(tree, str):
            return Fraction(tree.strip())
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad rational {tree!r}: {exc}") from exc
    raise ParseError(f"cannot read a rational from {tree!r}")


def _is_scalar_tree(tree) -> bool:
    return (isinstance(tree, dict) and set(tree) == {"num", "den"}) or (
        isinstance(tree, (int, str)) and not isinstance(tree, bool)
    )


def element_from_json(tree, ring: RingContext | None = None) -> RingElement:
    """Decode one element; the kind is inferred from the tree's shape unless
    ``ring`` is given, in which case the result is also checked against it."""
    if ring is not None:
        return _decode_as(tree, ring)
    if _is_scalar_tree(tree):
        return Scalar(_fraction(tree))
    if isinstance(tree, dict) and set(tree) == {"w", "x", "y", "z"}:
        return Quaternion(*(_fraction(tree[k]) for k in "wxyz"))
    if isinstance(tree, list):
        return _matrix(tree)
    if isinstance(tree, dict) and set(tree) == {"order", "coeffs"}:
        coeffs = [element_from_json(c) for c in tree["coeffs"]]
        return _series(coeffs, tree["order"])
    raise ParseError(f"unrecognised element encoding: {tree!r}")


def _matrix(tree) -> SquareMatrix:
    if not tree or not all(isinstance(r, list) for r in tree):
        raise ParseError("matrix must be a non-empty list of rows")
    try:
        return SquareMatrix([[_fraction(x) for x in r] for r in tree])
    except BadDimension as exc:
        raise ParseError(str(exc)) from exc


def _series(coeffs, order) -> TruncatedSeries:
    if not isinstance(order, int) or isinstance(order, bool):
        raise ParseError(f"series order must be an integer, got {order!r}")
    try:
        return TruncatedSeries(coeffs, order)
    except BadInput as exc:
        raise ParseError(str(exc)) from exc


def _decode_as(tree, ring: RingContext) -> RingElement:
    if ring == SCALARS:
        return Scalar(_fraction(tree))
    if ring == QUATERNIONS:
        if _is_scalar_tree(tree):
            return Quaternion(_fraction(tree))
        if isinstance(tree, dict) and set(tree) <= {"w", "x", "y", "z"}:
            return Quaternion(*(_fraction(tree.get(k, 0)) for k in "wxyz"))
        raise ParseError(f"not a quaternion: {tree!r}")
    if isinstance(ring, MatrixRing):
        m = _matrix(tree)
        if m.n != ring.n:
            raise ParseError(f"expected {ring.n}x{ring.n} matrix, got {m.n}x{m.n}")
        return m
    if isinstance(ring, SeriesRing):
        if isinstance(tree, dict) and set(tree) == {"order", "coeffs"}:
            coeffs = [_decode_as(c, ring.base) for c in tree["coeffs"]]
            s = _series(coeffs, tree["order"])
        else:
            s = ring.lift(_decode_as(tree, ring.base))
        if s.order != ring.order:
            raise ParseError(f"expected series order {ring.order}, got {s.order}")
        return s
    raise ParseError(f"cannot decode into ring {ring}")


def element_to_json(x: RingElement):
    return x.to_json()
