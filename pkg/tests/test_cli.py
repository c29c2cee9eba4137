import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from oracles import quat

from ncinv.algebra import element_from_json, parse_ring
from ncinv.cli import main
from ncinv.elimination import bareiss_inverse
from ncinv.nc2x2 import Matrix2
from ncinv.perturb import random_deformed


def write(tmp_path, doc, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def entries(doc, ring):
    r = parse_ring(ring)
    return [[element_from_json(x, r) for x in row] for row in doc]


def test_invert_scalar_gelfand(tmp_path, capsys):
    src = write(tmp_path, {"ring": "scalar", "entries": [[1, 2], [3, 4]]})
    out = tmp_path / "out.json"
    code, _, _ = run(capsys, "invert", src, "--method", "gelfand", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    got = [[x.value for x in r] for r in entries(doc["inverse"], "scalar")]
    assert got == [[-2, 1], [Fraction(3, 2), Fraction(-1, 2)]]
    assert "residue" not in doc


def test_invert_quaternion_with_residue_method(tmp_path, capsys):
    src = write(tmp_path, {"ring": "quaternion", "entries": [[1, {"x": 1}], [{"y": 1}, 1]]})
    code, out, _ = run(capsys, "invert", src, "--method", "right", "--check")
    assert code == 0
    doc = json.loads(out)
    X = Matrix2.from_rows(entries(doc["inverse"], "quaternion"))
    assert X == Matrix2(quat("1/2 + 1/2k"), quat("-1/2i - 1/2j"), quat("-1/2i - 1/2j"), quat("1/2 - 1/2k"))
    assert doc["checked"] is True
    assert Matrix2.from_rows(entries(doc["residue"], "quaternion")) == Matrix2(
        quat("-1-k"), quat("0"), quat("0"), quat("0")
    )
    assert "decomposition" in doc and doc["ordering"] == "acb"


def test_left_with_abc_ordering_selects_prime_method(tmp_path, capsys):
    src = write(tmp_path, {"ring": "quaternion", "entries": [[1, {"x": 1}], [{"y": 1}, 1]]})
    code, out, _ = run(capsys, "invert", src, "--method", "left", "--ordering", "abc")
    assert code == 0
    assert json.loads(out)["method"] == "left-prime"


def test_invert_flat_4x4_uses_blocks(tmp_path, capsys):
    rng = random.Random(1)
    M = [[Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(4)] for _ in range(4)]
    src = write(tmp_path, {"ring": "scalar", "entries": [[f"{x.numerator}/{x.denominator}" for x in r] for r in M]})
    code, out, _ = run(capsys, "invert", src, "--check")
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "block" and doc["pivot_trace"] == []
    got = [[x.value for x in r] for r in entries(doc["inverse"], "scalar")]
    assert got == bareiss_inverse(M)


def test_invert_reports_pivots(tmp_path, capsys):
    src = write(tmp_path, {"ring": "scalar", "entries": [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]})
    code, out, _ = run(capsys, "invert", src)
    assert code == 0
    assert json.loads(out)["pivot_trace"] == [{"depth": 2, "swap": "rows"}]


def test_not_invertible_names_subexpression(tmp_path, capsys):
    src = write(tmp_path, {"ring": "quaternion", "entries": [[0, {"x": 1}], [{"y": 1}, 1]]})
    code, _, err = run(capsys, "invert", src, "--method", "gelfand")
    assert code == 3
    assert "not invertible: a" in err


def test_vanishing_determinant_is_named(tmp_path, capsys):
    src = write(tmp_path, {"ring": "quaternion", "entries": [[{"x": 1}, {"y": 1}], [{"z": 1}, 1]]})
    code, _, err = run(capsys, "invert", src, "--method", "left-prime")
    assert code == 3
    assert "ad - bc" in err


@pytest.mark.parametrize(
    "doc, code",
    [
        ({"ring": "scalar", "entries": [[1, 2, 3], [4, 5, 6], [7, 8, 10]]}, 2),
        ({"ring": "octonion", "entries": [[1]]}, 2),
        ({"entries": "nope"}, 2),
    ],
)
def test_bad_inputs(tmp_path, capsys, doc, code):
    assert run(capsys, "invert", write(tmp_path, doc))[0] == code


def test_unparsable_file(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "invert", str(p))
    assert code == 2 and "ParseError" in err


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "five-way", "--ring", "quaternion", "--trials", "20", "--seed", "42")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and doc["trials_run"] == 20 and doc["failures"] == []


def test_verify_rejects_zero_trials(capsys):
    code, _, err = run(capsys, "verify", "five-way", "--trials", "0", "--seed", "1")
    assert code == 2 and "trial count" in err


def test_verify_requires_seed(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "five-way", "--trials", "3"])
    assert exc.value.code == 2


def test_verify_rejects_wrong_ring_for_campaign(capsys):
    code, _, _ = run(capsys, "verify", "perturb", "--ring", "quaternion", "--trials", "1", "--seed", "1")
    assert code == 2


def test_verify_writes_report_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, err = run(
        capsys, "verify", "block", "--ring", "scalar", "--size", "4", "--trials", "5", "--seed", "3", "--out", str(out)
    )
    assert code == 0
    assert json.loads(out.read_text())["stats"]["size"] == 4
    assert "block" in err


def test_expand(tmp_path, capsys):
    A = random_deformed(random.Random(8), 3)
    src = write(tmp_path, A.to_json())
    code, out, _ = run(capsys, "expand", src, "--order", "3", "--check")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["ledger"]["orders"]) == 4
    assert doc["residue_order"] >= 1 and doc["checked"]


def test_expand_order_zero_commuting(tmp_path, capsys):
    doc = {
        "ring": "series:0:scalar",
        "entries": [[{"order": 0, "coeffs": [1]}, {"order": 0, "coeffs": [2]}], [{"order": 0, "coeffs": [3]}, {"order": 0, "coeffs": [4]}]],
    }
    code, out, _ = run(capsys, "expand", write(tmp_path, doc))
    assert code == 0
    (only,) = json.loads(out)["ledger"]["orders"]
    got = [[s.coeffs[0].value for s in r] for r in entries(only["entries"], "series:0:scalar")]
    assert got == [[-2, 1], [Fraction(3, 2), Fraction(-1, 2)]]


def test_expand_regime_violation(tmp_path, capsys):
    rng = random.Random(9)
    A = random_deformed(rng, 1, central_classical=False)
    code, _, err = run(capsys, "expand", write(tmp_path, A.to_json()))
    assert code == 3 and "RegimeViolation" in err


def test_expand_order_mismatch(tmp_path, capsys):
    A = random_deformed(random.Random(10), 2)
    assert run(capsys, "expand", write(tmp_path, A.to_json()), "--order", "3")[0] == 2


def test_expand_rejects_non_series(tmp_path, capsys):
    src = write(tmp_path, {"ring": "quaternion", "entries": [[1, 0], [0, 1]]})
    assert run(capsys, "expand", src)[0] == 2


def test_module_entry_point(tmp_path):
    src = write(tmp_path, {"ring": "scalar", "entries": [[2, 0], [0, 4]]})
    proc = subprocess.run(
        [sys.executable, "-m", "ncinv", "invert", src, "--method", "triangular"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["inverse"][1][1] == {"num": "1", "den": "4"}
