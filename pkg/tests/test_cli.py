import json
from pathlib import Path

import pytest

from filtered_cones.cli import EXIT_INVALID, EXIT_OK, EXIT_USAGE, main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", FIXTURES / "interval_1_4.json")
    assert code == EXIT_OK
    assert out.strip() == "sigma+ = -inf, sigma- = inf, rho = -inf, beta = 3"


def test_barcode_as_json(capsys):
    code, out, _ = run(capsys, "barcode", FIXTURES / "interval_1_4.json", "--out", "-")
    assert code == EXIT_OK
    assert json.loads(out) == {"name": "I(1,4)", "bars": [[1, 4]]}


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", FIXTURES / "interval_1_4.json")
    assert code == EXIT_OK
    assert "valid complex" in out

    code, _, err = run(capsys, "validate", FIXTURES / "bad_d2.json")
    assert code == EXIT_INVALID
    assert "d∘d ≠ 0 at z" in err

    code, out, _ = run(capsys, "validate", FIXTURES / "p1_to_p0.json")
    assert code == EXIT_OK
    assert "valid map" in out


def test_invalid_complex_is_refused(capsys):
    code, _, err = run(capsys, "invariants", FIXTURES / "bad_d2.json")
    assert code == EXIT_INVALID
    assert "not a valid complex" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "barcode", tmp_path / "missing.json")
    assert code == EXIT_INVALID
    assert "cannot read" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_USAGE
    capsys.readouterr()

    code, _, _ = run(capsys, "verify", "--suite", "cone", "--count", "0")
    assert code == EXIT_USAGE


def test_cone_of_fixture_map(capsys):
    code, out, _ = run(capsys, "cone", "--map", FIXTURES / "p1_to_p0.json", "--out", "-")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["barcode"] == [[0, 1]]
    assert [g["id"] for g in doc["complex"]["generators"]] == ["a/a", "g"]


def test_tensor(capsys):
    code, out, _ = run(capsys, "tensor", FIXTURES / "point_0.json", FIXTURES / "interval_1_4.json")
    assert code == EXIT_OK
    assert "bars: [1, 4)" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cone", "--count", "5", "--seed", "3")
    assert code == EXIT_OK
    assert out.startswith("cone: 7 instances")
    assert "0 failed" in out


def test_verify_homotopy_census(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "homotopy_diff", "--count", "5")
    assert code == EXIT_OK
    assert "literal min-form violations" in out


def test_demo(capsys):
    code, out, _ = run(capsys, "demo", "--k", "1", "--trials", "2")
    assert code == EXIT_OK
    assert "trials within the bound: 2/2" in out


def test_verify_keep_going(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oracle", "--count", "3", "--keep-going")
    assert code == EXIT_OK
    assert out.startswith("oracle: 7 instances")
