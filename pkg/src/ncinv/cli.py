"""Command line front end: ``ncinv invert | verify | expand``.

Exit status: 0 success, 1 an identity or ``--check`` failed, 2 bad usage or
unreadable input, 3 a required inverse does not exist.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import blockinv, nc2x2, perturb
from .algebra import RingContext, element_from_json, parse_ring
from .campaigns import CAMPAIGNS, CampaignSpec, run_campaign
from .errors import (
    BadDimension,
    BadInput,
    BlockSingular,
    NotInvertible,
    ParseError,
    RegimeViolation,
    SamplingExhausted,
)
from .nc2x2 import Matrix2, Method, Ordering, Side

log = logging.getLogger("ncinv")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3
METHOD_CHOICES = [m.value for m in Method] + ["block"]


class CheckFailed(Exception):
    pass


def _configure_logging() -> None:
    level = os.environ.get("NCINV_LOG", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(doc, out: str | None) -> None:
    text = dump(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_square(doc, ring_flag: str | None) -> tuple[RingContext | None, list[list]]:
    if not isinstance(doc, dict) or "entries" not in doc:
        raise ParseError("input must be an object with 'entries' (and optionally 'ring')")
    descriptor = doc.get("ring", ring_flag)
    ring = parse_ring(descriptor) if descriptor else None
    rows = doc["entries"]
    if not isinstance(rows, list) or not rows or any(not isinstance(r, list) for r in rows):
        raise ParseError("'entries' must be a non-empty list of rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise BadDimension("matrix must be square")
    M = [[element_from_json(x, ring) for x in r] for r in rows]
    ring = ring or M[0][0].ring
    if any(x.ring != ring for r in M for x in r):
        raise ParseError("all entries must belong to one ring")
    return ring, M


def _resolve_method(method: str | None, ordering: str | None, n: int) -> str:
    if n > 2:
        if method not in (None, "block"):
            raise BadDimension(f"method {method!r} handles 2x2 input only; use --method block")
        return "block"
    method = method or "gelfand"
    if ordering is not None and method in ("left", "right", "left-prime", "right-prime"):
        side = method.split("-")[0]
        implied = Ordering.ABC.value if method.endswith("prime") else Ordering.ACB.value
        if method.endswith("prime") and ordering != implied:
            raise BadInput(f"method {method!r} fixes ordering 'abc'")
        return nc2x2.Method.residue(Side(side), Ordering(ordering)).value
    return method


def cmd_invert(args) -> int:
    ring, M = _read_square(_read_json(args.input), args.ring)
    method = _resolve_method(args.method, args.ordering, len(M))
    doc: dict = {"ring": ring.descriptor, "method": method}
    if method == "block":
        X, trace = blockinv.flat_inverse(M)
        doc["inverse"] = [[x.to_json() for x in r] for r in X]
        doc["pivot_trace"] = [s.to_json() for s in trace]
        if args.check:
            ok = blockinv.flat_is_identity(blockinv.flat_matmul(X, M)) and blockinv.flat_is_identity(
                blockinv.flat_matmul(M, X)
            )
            if not ok:
                raise CheckFailed("X*A or A*X is not the identity")
            doc["checked"] = True
    else:
        A = Matrix2.from_rows(M)
        m = Method(method)
        inv = nc2x2.inverse(A, m)
        doc["inverse"] = inv.m.to_json()["entries"]
        if m.side is not None:
            doc["ordering"] = m.ordering.value
            doc["residue"] = nc2x2.residue(A, m.side, m.ordering).m.to_json()["entries"]
            doc["decomposition"] = nc2x2.decomposition(A, m.side, m.ordering).m.to_json()["entries"]
        if args.check:
            if not nc2x2.is_two_sided_inverse(A, inv.m):
                raise CheckFailed("X*A or A*X is not the identity")
            doc["checked"] = True
    _emit(doc, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = CampaignSpec(
        identity_set=args.identities,
        ring=parse_ring(args.ring),
        trials=args.trials,
        seed=args.seed,
        bound=args.bound,
        size=args.size,
        fail_fast=args.fail_fast,
    )
    log.info("running %s over %s: %d trials, seed %d", spec.identity_set, spec.ring, spec.trials, spec.seed)
    report = run_campaign(spec)
    _emit(report.to_json(), args.out)
    if args.out:
        status = "ok" if report.ok else f"{len(report.failures)} failures"
        print(
            f"{spec.identity_set}: {report.trials_run} trials, {report.trials_rejected} rejected, {status}",
            file=sys.stderr,
        )
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_expand(args) -> int:
    doc = _read_json(args.input)
    if isinstance(doc, dict) and "ring" not in doc and args.ring:
        doc = dict(doc, ring=args.ring)
    A = perturb.DeformedMatrix2.from_json(doc)
    if args.order is not None and A.order != args.order:
        raise ParseError(f"input has order {A.order}, expected {args.order}")
    side, ordering = Side(args.side), Ordering(args.ordering or "acb")
    inv, ledger = perturb.neumann_inverse(A, side, ordering)
    out = {
        "ring": A.ring.descriptor,
        "order": A.order,
        "side": side.value,
        "ordering": ordering.value,
        "residue_order": perturb.residue_order(A, side, ordering),
        "ledger": ledger.to_json(),
    }
    if args.check:
        if not perturb.truncated_identity_holds(A, inv.m):
            raise CheckFailed(f"A*X != I mod hbar^{A.order + 1}")
        out["checked"] = True
    _emit(out, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncinv", description="Exact inverses of matrices with noncommuting entries.")
    sub = p.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invert", help="invert a 2x2 or 2^n x 2^n matrix read from JSON")
    inv.add_argument("input", help="JSON file ({'ring': ..., 'entries': [[...]]}) or - for stdin")
    inv.add_argument("--method", choices=METHOD_CHOICES)
    inv.add_argument("--ordering", choices=[o.value for o in Ordering])
    inv.add_argument("--ring", help="ring descriptor when the file has none")
    inv.add_argument("--check", action="store_true", help="multiply back before writing")
    inv.add_argument("--out", help="output path (default stdout)")
    inv.set_defaults(func=cmd_invert)

    ver = sub.add_parser("verify", help="run a seeded randomized identity campaign")
    ver.add_argument("identities", choices=sorted(CAMPAIGNS), help="identity set to check")
    ver.add_argument("--ring", default="quaternion", help="scalar | quaternion | matrix:N | series:K[:base]")
    ver.add_argument("--trials", type=int, default=100)
    ver.add_argument("--seed", type=int, required=True)
    ver.add_argument("--bound", type=int, default=5, help="max |numerator| and denominator")
    ver.add_argument("--size", type=int, default=4, help="flat matrix size for the block campaign")
    ver.add_argument("--fail-fast", action="store_true")
    ver.add_argument("--out", help="report path (default stdout)")
    ver.set_defaults(func=cmd_verify)

    exp = sub.add_parser("expand", help="order-by-order inverse in the deformation parameter")
    exp.add_argument("input", help="JSON Matrix2 with series entries, or - for stdin")
    exp.add_argument("--order", type=int, help="expected truncation order K")
    exp.add_argument("--side", choices=[s.value for s in Side], default="left")
    exp.add_argument("--ordering", choices=[o.value for o in Ordering])
    exp.add_argument("--ring", help="ring descriptor when the file has none")
    exp.add_argument("--check", action="store_true")
    exp.add_argument("--out")
    exp.set_defaults(func=cmd_expand)
    return p


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CheckFailed as exc:
        print(f"error: check failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (NotInvertible, BlockSingular, RegimeViolation) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except SamplingExhausted as exc:
        print(f"error: SamplingExhausted: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (ParseError, BadDimension, BadInput) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
