"""Seeded randomized verification of the inversion identities.

A campaign draws ``trials`` inputs, each from its own generator seeded by
``derive_seed(seed, trial_index)``, resamples an input whenever it misses a
precondition (counted as a rejection), and records every identity that fails.
Two campaigns with the same seed and bound see the same inputs.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import blockinv, nc2x2, perturb
from .algebra import (
    QUATERNIONS,
    SCALARS,
    MatrixRing,
    Policy,
    Quaternion,
    RingContext,
    Scalar,
    SeriesRing,
    SquareMatrix,
    derive_seed,
    draw,
)
from .algebra.base import random_rational
from .elimination import bareiss_inverse
from .errors import BadInput, BlockSingular, NotInvertible, RegimeViolation, SamplingExhausted
from .nc2x2 import EQUIVALENT_METHODS, Matrix2, Method, Ordering, Side

log = logging.getLogger(__name__)

ENTRY_NAMES = ("(1,1)", "(1,2)", "(2,1)", "(2,2)")
SIDES_ORDERINGS = [(s, o) for o in Ordering for s in Side]


@dataclass(frozen=True)
class CampaignSpec:
    identity_set: str
    ring: RingContext
    trials: int
    seed: int
    bound: int = 5
    size: int = 4
    fail_fast: bool = False
    retry_budget: int = 1000

    def __post_init__(self):
        if self.identity_set not in CAMPAIGNS:
            raise BadInput(
                f"unknown identity set {self.identity_set!r}; choose from {sorted(CAMPAIGNS)}"
            )
        if self.trials < 1:
            raise BadInput("trial count must be >= 1")
        if self.bound < 1:
            raise BadInput("bound must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise BadInput("seed must fit in 64 bits")
        CAMPAIGNS[self.identity_set].check_ring(self.ring)


@dataclass
class Failure:
    trial: int
    input: Any
    methods: tuple[str, ...]
    entry: str
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "input": self.input,
            "methods": list(self.methods),
            "entry": self.entry,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    campaign: str
    ring: str
    seed: int
    bound: int
    trials_requested: int
    trials_run: int = 0
    trials_rejected: int = 0
    failures: list[Failure] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)
    duration_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "campaign": self.campaign,
            "ring": self.ring,
            "seed": self.seed,
            "bound": self.bound,
            "trials_requested": self.trials_requested,
            "trials_run": self.trials_run,
            "trials_rejected": self.trials_rejected,
            "failures": [f.to_json() for f in sorted(self.failures, key=lambda f: f.trial)],
            "stats": self.stats,
            "ok": self.ok,
            "duration_seconds": round(self.duration_seconds, 3),
        }


# (methods, entry, detail) triples returned by the per-trial checks
Problem = tuple[tuple[str, ...], str, str]


def _diff(X: Matrix2, Y: Matrix2, methods: tuple[str, ...], what: str = "") -> list[Problem]:
    out = []
    for name, x, y in zip(ENTRY_NAMES, X.entries(), Y.entries()):
        if x != y:
            out.append((methods, name, what or f"{x} != {y}"))
    return out


class Campaign:
    name: str = ""
    rings: tuple[type, ...] = ()

    def check_ring(self, ring: RingContext) -> None:
        if not isinstance(ring, self.rings):
            raise BadInput(f"campaign {self.name!r} does not run over ring {ring}")

    def sample(self, rng: random.Random, spec: CampaignSpec):
        raise NotImplementedError

    def accept(self, x) -> None:
        """Raise NotInvertible (or BlockSingular) when ``x`` misses a precondition."""

    def check(self, x, spec: CampaignSpec, stats: dict) -> list[Problem]:
        raise NotImplementedError

    def encode(self, x):
        return x.to_json()

    def finish(self, spec: CampaignSpec, stats: dict) -> list[Problem]:
        return []


class _Matrix2Campaign(Campaign):
    rings = (type(QUATERNIONS), MatrixRing, type(SCALARS))
    required: tuple[Method, ...] = EQUIVALENT_METHODS

    def sample(self, rng, spec):
        return Matrix2(*(spec.ring.random_element(rng, spec.bound) for _ in range(4)))

    def accept(self, A):
        for m in self.required:
            nc2x2.check_preconditions(A, m)


class FiveWay(_Matrix2Campaign):
    name = "five-way"

    def check(self, A, spec, stats):
        ref = nc2x2.inverse(A, Method.GELFAND).m
        out = []
        for m in nc2x2.RESIDUE_METHODS:
            out += _diff(nc2x2.inverse(A, m).m, ref, (m.value, Method.GELFAND.value))
        return out


class TwoSided(_Matrix2Campaign):
    name = "two-sided"

    def check(self, A, spec, stats):
        out = []
        for m in EQUIVALENT_METHODS:
            X = nc2x2.inverse(A, m).m
            out += _diff(X * A, Matrix2.identity(A.ring), (m.value,), "X*A != I")
            out += _diff(A * X, Matrix2.identity(A.ring), (m.value,), "A*X != I")
        return out


class ResidueClosedForm(_Matrix2Campaign):
    name = "residue-closed-form"

    def accept(self, A):
        nc2x2.commutative_inverse(A, Side.LEFT, Ordering.ACB)
        nc2x2.commutative_inverse(A, Side.LEFT, Ordering.ABC)

    def check(self, A, spec, stats):
        out = []
        for side, ordering in SIDES_ORDERINGS:
            tag = f"{side.value}/{ordering.value}"
            direct = nc2x2.residue(A, side, ordering).m
            closed = nc2x2.residue_commutator_form(A, side, ordering).m
            out += _diff(direct, closed, ("residue", "commutator-form"), tag)
            if side is Side.LEFT and ordering is Ordering.ACB and not direct.d.is_zero():
                out.append((("residue",), "(2,2)", "left/acb structural zero violated"))
            if side is Side.RIGHT and ordering is Ordering.ABC and not direct.a.is_zero():
                out.append((("residue",), "(1,1)", "right/abc structural zero violated"))
        return out


class Factorization(_Matrix2Campaign):
    name = "factorization"

    def check(self, A, spec, stats):
        out = []
        G = nc2x2.gelfand_inverse(A)
        for side, ordering in SIDES_ORDERINGS:
            tag = f"{side.value}/{ordering.value}"
            T = nc2x2.decomposition(A, side, ordering).m
            B = nc2x2.residue(A, side, ordering).m
            prod = T * A if side is Side.LEFT else A * T
            out += _diff(prod, B, ("decomposition", "residue"), f"{tag}: factorization")
            cinv = nc2x2.commutative_inverse(A, side, ordering)
            out += _diff(T, cinv - G, ("decomposition", "gelfand"), f"{tag}: T != cA - A^-1")
        T1 = nc2x2.decomposition(A, Side.LEFT, Ordering.ACB).m
        T2 = nc2x2.left_decomposition_commutator_form(A).m
        out += _diff(T1, T2, ("decomposition", "commutator-form"), "left/acb printed forms")
        return out


class CommutativeCollapse(_Matrix2Campaign):
    """Entries are rationals embedded in the ring, so all of them commute."""

    name = "commutative-collapse"

    def sample(self, rng, spec):
        qs = [random_rational(rng, spec.bound) for _ in range(4)]
        return Matrix2(*(spec.ring.embed(q) for q in qs))

    def check(self, A, spec, stats):
        out = []
        for side, ordering in SIDES_ORDERINGS:
            tag = f"{side.value}/{ordering.value}"
            if not nc2x2.residue(A, side, ordering).m.is_zero():
                out.append((("residue",), "*", f"{tag}: nonzero residue"))
            if not nc2x2.decomposition(A, side, ordering).m.is_zero():
                out.append((("decomposition",), "*", f"{tag}: nonzero decomposition"))
        classical = _classical_adjugate_inverse(A)
        for m in EQUIVALENT_METHODS:
            out += _diff(nc2x2.inverse(A, m).m, classical, (m.value, "adjugate"))
        return out


def _classical_adjugate_inverse(A: Matrix2) -> Matrix2:
    ring = A.ring
    a, b, c, d = (_rational_of(x) for x in A.entries())
    det = a * d - b * c
    return Matrix2(ring.embed(d / det), ring.embed(-b / det), ring.embed(-c / det), ring.embed(a / det))


def _rational_of(x) -> Fraction:
    if isinstance(x, Scalar):
        return x.value
    if isinstance(x, Quaternion):
        return x.w
    if isinstance(x, SquareMatrix):
        return x.rows[0][0]
    raise BadInput(f"not an embedded rational: {x!r}")


class OrderingComparison(_Matrix2Campaign):
    name = "ordering"

    def check(self, A, spec, stats):
        out = []
        for side in Side:
            x = nc2x2.inverse(A, Method.residue(side, Ordering.ACB)).m
            y = nc2x2.inverse(A, Method.residue(side, Ordering.ABC)).m
            out += _diff(x, y, (f"{side.value}/acb", f"{side.value}/abc"))
            if nc2x2.residue(A, side, Ordering.ACB).m != nc2x2.residue(A, side, Ordering.ABC).m:
                stats["residues_differ"] = stats.get("residues_differ", 0) + 1
            if (
                nc2x2.decomposition(A, side, Ordering.ACB).m
                != nc2x2.decomposition(A, side, Ordering.ABC).m
            ):
                stats["decompositions_differ"] = stats.get("decompositions_differ", 0) + 1
        return out

    def finish(self, spec, stats):
        if isinstance(spec.ring, type(SCALARS)):
            return []
        if not stats.get("residues_differ") or not stats.get("decompositions_differ"):
            return [(("acb", "abc"), "*", "no sample separated the two orderings")]
        return []


class BlockCampaign(Campaign):
    """Flat ``size x size`` matrices with nonzero entries, inverted blockwise."""

    name = "block"
    rings = (type(QUATERNIONS), MatrixRing, type(SCALARS))

    def sample(self, rng, spec):
        blockinv.block_from_flat([[spec.ring.zero] * spec.size] * spec.size)  # size check
        return [
            [draw(rng, spec.ring, spec.bound, Policy.INVERTIBLE, spec.retry_budget) for _ in range(spec.size)]
            for _ in range(spec.size)
        ]

    def accept(self, M):
        if M[0][0].ring == SCALARS:
            bareiss_inverse([[x.value for x in r] for r in M])

    def encode(self, M):
        return [[x.to_json() for x in r] for r in M]

    def check(self, M, spec, stats):
        X, trace = blockinv.flat_inverse(M)
        out = []
        if not blockinv.flat_is_identity(blockinv.flat_matmul(X, M)):
            out.append((("block",), "*", "X*A != I"))
        if not blockinv.flat_is_identity(blockinv.flat_matmul(M, X)):
            out.append((("block",), "*", "A*X != I"))
        if M[0][0].ring == SCALARS:
            oracle = bareiss_inverse([[x.value for x in r] for r in M])
            if [[x.value for x in r] for r in X] != oracle:
                out.append((("block", "elimination"), "*", "differs from elimination oracle"))
        if trace:
            stats["pivoted_trials"] = stats.get("pivoted_trials", 0) + 1
            stats.setdefault("pivot_traces", []).append(
                {"trial": stats["_trial"], "trace": [s.to_json() for s in trace]}
            )
        return out


class PerturbCampaign(Campaign):
    name = "perturb"
    rings = (SeriesRing,)

    def sample(self, rng, spec):
        return perturb.random_deformed(
            rng, spec.ring.order, spec.ring.base, spec.bound, retry_budget=spec.retry_budget
        )

    def accept(self, A):
        for m in EQUIVALENT_METHODS:
            nc2x2.check_preconditions(A.m, m)

    def check(self, A, spec, stats):
        out = []
        K = A.order
        classical = perturb.classical_inverse(A)
        zero_power = Matrix2.zeros(A.ring)
        closed = {m: perturb.closed_form_inverse(A, m).m for m in EQUIVALENT_METHODS}
        for side, ordering in SIDES_ORDERINGS:
            tag = f"neumann-{side.value}/{ordering.value}"
            X, ledger = perturb.neumann_inverse(A, side, ordering)
            out += _diff(ledger[0], classical, (tag, "classical"), "order-0 slice")
            if not perturb.truncated_identity_holds(A, X.m):
                out.append(((tag,), "*", f"A*X != I mod hbar^{K + 1}"))
            for m, Y in closed.items():
                out += _diff(X.m, Y, (tag, m.value))
            r = perturb.residue_order(A, side, ordering)
            if r < 1:
                out.append(((tag,), "*", f"residue order {r} < 1"))
            B = nc2x2.residue(A.m, side, ordering).m
            if _matpow(-B, K + 1) != zero_power:
                out.append(((tag,), "*", f"(-B)^{K + 1} != 0 mod hbar^{K + 1}"))
        return out


def _matpow(M: Matrix2, n: int) -> Matrix2:
    out = Matrix2.identity(M.ring)
    for _ in range(n):
        out = out * M
    return out


CAMPAIGNS: dict[str, Campaign] = {
    c.name: c
    for c in (
        FiveWay(),
        TwoSided(),
        ResidueClosedForm(),
        Factorization(),
        CommutativeCollapse(),
        OrderingComparison(),
        BlockCampaign(),
        PerturbCampaign(),
    )
}


def run_campaign(spec: CampaignSpec, clock: Callable[[], float] = time.perf_counter) -> VerificationReport:
    campaign = CAMPAIGNS[spec.identity_set]
    report = VerificationReport(
        campaign=spec.identity_set,
        ring=spec.ring.descriptor,
        seed=spec.seed,
        bound=spec.bound,
        trials_requested=spec.trials,
    )
    if spec.identity_set == "block":
        report.stats["size"] = spec.size
    stats = report.stats
    start = clock()
    for i in range(spec.trials):
        rng = random.Random(derive_seed(spec.seed, i))
        for _ in range(spec.retry_budget):
            x = campaign.sample(rng, spec)
            try:
                campaign.accept(x)
                break
            except (NotInvertible, BlockSingular):
                report.trials_rejected += 1
        else:
            raise SamplingExhausted(
                f"campaign {spec.identity_set!r} over {spec.ring}: trial {i} found no input "
                f"meeting the preconditions in {spec.retry_budget} draws (bound {spec.bound})"
            )
        stats["_trial"] = i
        try:
            problems = campaign.check(x, spec, stats)
        except (NotInvertible, BlockSingular, RegimeViolation) as exc:
            problems = [((), "*", f"unexpected {type(exc).__name__}: {exc}")]
        report.trials_run += 1
        for methods, entry, detail in problems:
            report.failures.append(Failure(i, campaign.encode(x), methods, entry, detail))
        if problems:
            log.info("trial %d: %d failed identities", i, len(problems))
            if spec.fail_fast:
                break
    stats.pop("_trial", None)
    for methods, entry, detail in campaign.finish(spec, stats):
        report.failures.append(Failure(-1, None, methods, entry, detail))
    report.duration_seconds = clock() - start
    return report
