"""Exact inversion of 2x2 (and 2^n x 2^n block) matrices over noncommutative rings."""

from .blockinv import BlockMatrix, PivotStep, block_inverse, flat_inverse
from .errors import (
    BadDimension,
    BadInput,
    BlockSingular,
    MixedRingKinds,
    NcInvError,
    NotInvertible,
    ParseError,
    RegimeViolation,
    SamplingExhausted,
)
from .nc2x2 import Inverse2, Matrix2, Method, Ordering, Side, gelfand_inverse, inverse
from .perturb import DeformedMatrix2, OrderLedger, neumann_inverse

__all__ = [
    "BadDimension",
    "BadInput",
    "BlockMatrix",
    "BlockSingular",
    "DeformedMatrix2",
    "Inverse2",
    "Matrix2",
    "Method",
    "MixedRingKinds",
    "NcInvError",
    "NotInvertible",
    "Ordering",
    "OrderLedger",
    "ParseError",
    "PivotStep",
    "RegimeViolation",
    "SamplingExhausted",
    "Side",
    "block_inverse",
    "flat_inverse",
    "gelfand_inverse",
    "inverse",
    "neumann_inverse",
]
