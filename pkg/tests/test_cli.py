import json
import subprocess
import sys

import pytest

from schur_autocorr.cli import run
from schur_autocorr.symfunc import SymmetricFunction, schur_to_monomial


def _json(capsys, argv):
    code = run(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_verify_json(capsys):
    code, rep = _json(capsys, ["verify", "--identity", "G3_C", "--m", "7"])
    assert code == 0
    assert rep["equal"] is True and rep["lhs_monomial_count"] == 16384
    assert rep["identity"] == {"tag": "G3_C", "m": 7}


def test_verify_all_identities_text(capsys):
    assert run(["verify", "--identity", "all", "--m", "3", "--threads", "2"]) == 0
    out = capsys.readouterr().out
    assert out.count("equal               True") == 16


def test_verify_failure_exit_code(capsys, monkeypatch):
    from schur_autocorr import identities

    real = identities._DEFS[identities.IdentityTag.G1_PLUS]
    monkeypatch.setitem(
        identities._DEFS,
        identities.IdentityTag.G1_PLUS,
        identities._Definition(real.cols, real.profiles, lambda lp: 2),
    )
    assert run(["verify", "--identity", "G1_PLUS", "--m", "2"]) == 1


def test_multiplicity(capsys):
    assert run(["multiplicity", "--group", "H3", "--lambda", "2,0,0"]) == 0
    assert capsys.readouterr().out.strip() == "1"
    code, rec = _json(capsys, ["multiplicity", "--group", "H34", "--lambda", "4,3,1"])
    assert code == 0
    assert set(rec) == {"group", "lambda_prime", "multiplicity", "oracle_multiplicity", "decomposition"}
    assert rec["decomposition"] == {"k": 0, "epsilon": 1, "z": 1, "b_prime": 2}


def test_multiplicity_length_error(capsys):
    assert run(["multiplicity", "--group", "H2", "--lambda", "1,1,1"]) == 2
    assert "--lambda" in capsys.readouterr().err


def test_tables_validate(capsys):
    assert run(["tables", "--validate", "--max-a", "60"]) == 0
    assert "pass" in capsys.readouterr().out
    assert run(["tables", "--validate", "--max-a", "3"]) == 2


def test_tables_dump(capsys):
    code, payload = _json(capsys, ["tables"])
    assert code == 0
    assert payload["tables"]["tau"][1] == [1, 0, -1, 0]


def test_kostka_and_dim(capsys):
    assert run(["kostka", "--shape", "2,1", "--content", "1,1,1"]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert run(["dim", "--shape", "2,2,2,2,1,1", "--vars", "10"]) == 0
    assert capsys.readouterr().out.strip() == "29700"
    code, payload = _json(capsys, ["dim", "--shape", "4,1", "--vars", "3"])
    assert code == 0 and payload["dimension"] == "24"


def test_expand_round_trips(capsys):
    code, payload = _json(capsys, ["expand", "--shape", "3,3,2,2,1", "--vars", "7"])
    assert code == 0
    assert payload["monomial_count"] == "1778"
    f = SymmetricFunction.from_dict(payload)
    assert f == schur_to_monomial((3, 3, 2, 2, 1), 7)


def test_mc(capsys):
    code, rep = _json(capsys, ["mc", "--group", "H2", "--x", "0.3,0.4", "--samples", "100000", "--seed", "42"])
    assert code == 0 and rep["pass"]
    assert rep["x"] == [0.3, 0.4] and rep["seed"] == 42
    code2, rep2 = _json(
        capsys, ["mc", "--group", "H2", "--x", "0.3,0.4", "--samples", "100000", "--seed", "42", "--threads", "3"]
    )
    assert rep2 == rep


def test_mc_complex_points(capsys):
    code, rep = _json(capsys, ["mc", "--group", "H24", "--x", "0.2i,-0.3", "--samples", "20000"])
    assert code == 0
    assert rep["x"] == [[0.0, 0.2], -0.3]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--identity", "NOPE", "--m", "3"],
        ["verify", "--identity", "G3_C"],
        ["verify", "--identity", "G3_C", "--m", "0"],
        ["mc", "--group", "H2", "--x", "0.3", "--bogus"],
        ["mc", "--group", "H9", "--x", "0.3"],
        ["mc", "--group", "H2", "--x", "2.0"],
        ["multiplicity", "--group", "H2", "--lambda", "1,2"],
        ["dim", "--shape", "a", "--vars", "3"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_unknown_flag_is_named(capsys):
    run(["kostka", "--shape", "1", "--content", "1", "--colour", "red"])
    assert "--colour" in capsys.readouterr().err


def test_threads_env_var(capsys, monkeypatch):
    monkeypatch.setenv("SCHUR_AUTOCORR_THREADS", "2")
    assert run(["verify", "--identity", "G2_ODD", "--m", "4"]) == 0
    monkeypatch.setenv("SCHUR_AUTOCORR_THREADS", "-1")
    assert run(["verify", "--identity", "G2_ODD", "--m", "4"]) == 2
    assert "SCHUR_AUTOCORR_THREADS" in capsys.readouterr().err


def test_all_is_deterministic(capsys):
    argv = ["all", "--max-m", "3", "--samples", "20000", "--seed", "1", "--threads", "2"]
    code, first = _json(capsys, argv)
    code2, second = _json(capsys, argv)
    assert code == code2 == 0
    assert first == second
    assert [c["name"] for c in first["checks"]] == [
        "identities",
        "tables",
        "dual_cauchy",
        "odd_degree_vanishing",
        "dimensions",
        "monte_carlo",
    ]


def test_console_script_module_entry():
    out = subprocess.run(
        [sys.executable, "-m", "schur_autocorr.cli", "kostka", "--shape", "3,2,1", "--content", "2,2,2"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert out.stdout.strip() == "2"
