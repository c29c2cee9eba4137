from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from enum import Enum

from ..errors import NotInvertible, SamplingExhausted
from .base import RingContext, RingElement

DEFAULT_RETRY_BUDGET = 1000


class Policy(str, Enum):
    ANY = "any"
    INVERTIBLE = "invertible"


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    bound: int
    ring: RingContext
    policy: Policy = Policy.ANY
    retry_budget: int = DEFAULT_RETRY_BUDGET

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("coefficient bound must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


def derive_seed(seed: int, *labels) -> int:
    """Deterministic 64-bit child seed; stable across processes and platforms."""
    text = repr((seed,) + labels).encode()
    return int.from_bytes(hashlib.sha256(text).digest()[:8], "big")


def is_invertible(x: RingElement) -> bool:
    try:
        x.inverse()
    except NotInvertible:
        return False
    return True


def draw(
    rng: random.Random,
    ring: RingContext,
    bound: int,
    policy: Policy = Policy.ANY,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> RingElement:
    """Draw from an existing generator; the building block behind :func:`sample`."""
    for _ in range(retry_budget):
        x = ring.random_element(rng, bound)
        if policy is Policy.ANY or is_invertible(x):
            return x
    raise SamplingExhausted(
        f"no {policy.value} element of {ring} after {retry_budget} draws (bound {bound})"
    )


def sample(spec: RandomSpec) -> RingElement:
    return draw(random.Random(spec.seed), spec.ring, spec.bound, spec.policy, spec.retry_budget)
