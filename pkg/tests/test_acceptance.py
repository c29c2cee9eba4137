"""Acceptance criteria, one marked test (or parametrized group) per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints a
PASS/FAIL line for each criterion.
"""

import json
import subprocess
import sys

import pytest

from oracles import from_sympy, quat, to_sympy

from ncinv import nc2x2
from ncinv.algebra import parse_ring
from ncinv.campaigns import CampaignSpec, run_campaign
from ncinv.errors import NotInvertible
from ncinv.nc2x2 import Matrix2, Method, Ordering, Side

SEED = 42


def campaign(identity_set, ring, trials, seed=SEED, **kw):
    report = run_campaign(CampaignSpec(identity_set, parse_ring(ring), trials, seed, **kw))
    for f in report.failures[:5]:
        print("failure:", f.to_json())
    return report


def assert_clean(report, trials):
    assert report.trials_run == trials
    assert report.failures == []
    assert report.ok


@pytest.mark.criterion(1, "five-way equivalence, 1000 quaternion samples, < 60 s")
def test_five_way_equivalence():
    report = campaign("five-way", "quaternion", 1000)
    assert_clean(report, 1000)
    assert report.duration_seconds < 60


@pytest.mark.criterion(2, "two-sided identity X.A = A.X = I for every method, same 1000 samples")
def test_two_sided_identity():
    assert_clean(campaign("two-sided", "quaternion", 1000), 1000)


@pytest.mark.criterion(3, "residue closed forms and structural zeros, 500 quaternion samples")
def test_residue_closed_forms():
    assert_clean(campaign("residue-closed-form", "quaternion", 500), 500)


@pytest.mark.criterion(4, "decomposition factorization and the two left forms, 500 samples")
def test_decomposition_factorization():
    assert_clean(campaign("factorization", "quaternion", 500), 500)


@pytest.mark.criterion(5, "commutative collapse, 200 embedded-rational samples")
def test_commutative_collapse():
    assert_clean(campaign("commutative-collapse", "quaternion", 200), 200)


@pytest.mark.criterion(6, "criteria 1-4 over M_3(Q) entries, 200 trials")
@pytest.mark.parametrize("identity_set", ["five-way", "two-sided", "residue-closed-form", "factorization"])
def test_matrix_ring_entries(identity_set):
    assert_clean(campaign(identity_set, "matrix:3", 200), 200)


@pytest.mark.criterion(7, "block recursion vs elimination oracle at 4x4 and 8x8, <= 1% pivots, < 120 s")
@pytest.mark.parametrize("size", [4, 8])
def test_block_recursion(size):
    report = campaign("block", "scalar", 100, bound=100, size=size)
    assert_clean(report, 100)
    assert report.stats.get("pivoted_trials", 0) <= 1
    assert report.duration_seconds < 120


@pytest.mark.criterion(8, "perturbative regime, 200 samples with K = 4")
def test_perturbative_regime():
    report = campaign("perturb", "series:4:matrix:2", 200)
    assert_clean(report, 200)


@pytest.mark.criterion(9, "ordering inequivalence witness [[i,j],[k,1]]")
def test_ordering_witness():
    i, j, k = quat("i"), quat("j"), quat("k")
    A = Matrix2(i, j, k, quat("1"))
    # independent Hamilton products: ad - cb and ad - bc
    si, sj, sk = to_sympy(i), to_sympy(j), to_sympy(k)
    assert from_sympy(si - sk * sj) == quat("2i")
    assert from_sympy(si - sj * sk) == quat("0")
    assert nc2x2.determinant(A, Ordering.ACB) == quat("2i")
    assert nc2x2.determinant(A, Ordering.ABC).is_zero()
    nc2x2.commutative_inverse(A, Side.LEFT, Ordering.ACB)
    with pytest.raises(NotInvertible):
        nc2x2.commutative_inverse(A, Side.LEFT, Ordering.ABC)
    with pytest.raises(NotInvertible):
        nc2x2.inverse(A, Method.LEFT_PRIME)
    # where both orderings are defined the inverses coincide, while residues differ
    report = campaign("ordering", "quaternion", 200)
    assert_clean(report, 200)
    assert report.stats["residues_differ"] > 0


@pytest.mark.criterion(10, "CLI verify is byte-identical across runs (duration excluded)")
def test_cli_determinism(tmp_path):
    outputs = []
    for n in range(2):
        out = tmp_path / f"report{n}.json"
        subprocess.run(
            [sys.executable, "-m", "ncinv", "verify", "five-way", "--ring", "quaternion",
             "--trials", "50", "--seed", str(SEED), "--out", str(out)],
            check=True,
            capture_output=True,
        )
        outputs.append(out.read_text())
    docs = [json.loads(text) for text in outputs]
    for d in docs:
        d.pop("duration_seconds")
    assert docs[0] == docs[1]
    # byte identity after removing the duration line
    strip = ["\n".join(l for l in text.splitlines() if '"duration_seconds"' not in l) for text in outputs]
    assert strip[0] == strip[1]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
