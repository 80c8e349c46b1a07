import json
import os

import pytest

from polobstruct import cli
from polobstruct.intlinalg import matrix_from_json
from polobstruct.kergroup import twist_model
from polobstruct.twist import build_b, build_zeta


def _run(capsys, argv):
    rc = cli.main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


EXPECTED_CHECKS = [
    "zeta_minpoly_is_cyclotomic",
    "zeta_order_p",
    "shift_reduction_matches",
    "b_determinant_is_p",
    "b_positive_definite",
    "polarization_descends",
    "polarization_degree_p_squared",
    "rosati_inverts_zeta",
    "centralizer_rank",
    "centralizer_equals_zeta_powers",
    "degree_equals_norm_squared",
    "noncommuting_rejected",
    "filtration_dims",
    "composition_factors",
    "parity_odd",
]


def test_verify_p3_all_pass(capsys):
    rc, out, _ = _run(capsys, ["verify", "-p", "3"])
    assert rc == 0
    rep = json.loads(out)
    assert rep["ok"] is True
    assert rep["p"] == 3
    assert rep["seed"] == cli.DEFAULT_SEED
    assert [c["name"] for c in rep["checks"]] == EXPECTED_CHECKS
    assert all(c["passed"] for c in rep["checks"])


def test_verify_rejects_bad_prime(capsys):
    rc, _, err = _run(capsys, ["verify", "-p", "9"])
    assert rc == 2
    assert "odd prime" in err


def test_verify_deterministic(capsys):
    _, out1, _ = _run(capsys, ["verify", "-p", "5"])
    _, out2, _ = _run(capsys, ["verify", "-p", "5"])
    assert out1 == out2


def test_verify_failure_exit_code(capsys, monkeypatch):
    rep = cli.VerifyReport(3, 1)
    rep.record("broken", False)
    monkeypatch.setattr(cli, "run_verify_suite", lambda p, seed: rep)
    rc, out, _ = _run(capsys, ["verify", "-p", "3"])
    assert rc == 1
    assert json.loads(out)["ok"] is False


def test_seed_resolution(monkeypatch):
    assert cli._resolve_seed(None) == cli.DEFAULT_SEED
    monkeypatch.setenv("POLOBSTRUCT_SEED", "99")
    assert cli._resolve_seed(None) == 99
    assert cli._resolve_seed(5) == 5  # explicit flag wins over the environment
    monkeypatch.setenv("POLOBSTRUCT_SEED", "pear")
    with pytest.raises(SystemExit) as exc:
        cli._resolve_seed(None)
    assert exc.value.code == 2  # bad input, same contract as argument errors


def test_construct_writes_files(capsys, tmp_path):
    rc, out, _ = _run(capsys, ["construct", "-p", "5", "--out", str(tmp_path)])
    assert rc == 0
    zpath = tmp_path / "zeta.json"
    bpath = tmp_path / "b.json"
    assert str(zpath) in out and str(bpath) in out
    with open(zpath) as fh:
        assert matrix_from_json(json.load(fh)) == build_zeta(5)
    with open(bpath) as fh:
        assert matrix_from_json(json.load(fh)) == build_b(5)


def test_construct_stdout(capsys):
    rc, out, _ = _run(capsys, ["construct", "-p", "3"])
    assert rc == 0
    data = json.loads(out)
    assert matrix_from_json(data["zeta"]) == build_zeta(3)
    assert matrix_from_json(data["b"]) == build_b(3)


def test_parity_output(capsys):
    rc, out, _ = _run(capsys, ["parity", "-p", "5", "-n", "6"])
    assert rc == 0
    assert json.loads(out) == {"p": 5, "n": 6, "e_rank": 1, "parity": 1}
    rc, _, _ = _run(capsys, ["parity", "-p", "5", "-n", "0"])
    assert rc == 2
    rc, _, _ = _run(capsys, ["parity", "-p", "8", "-n", "1"])
    assert rc == 2


def test_norm_command(capsys):
    rc, out, _ = _run(capsys, ["norm", "3; 1, -1"])
    assert rc == 0 and out.strip() == "3"
    rc, out, _ = _run(capsys, ["norm", "5; 1, -1, 0, 0"])
    assert rc == 0 and out.strip() == "5"
    rc, _, err = _run(capsys, ["norm", "5: 1"])
    assert rc == 2 and "error" in err


def test_tp_command(capsys):
    # 2 + eta written in the power basis: 1 - z^2 - z^3
    rc, out, _ = _run(capsys, ["tp", "5; 1, 0, -1, -1"])
    assert rc == 0 and out.strip() == "totally positive"
    # eta itself has a negative embedding
    rc, out, _ = _run(capsys, ["tp", "5; -1, 0, -1, -1"])
    assert rc == 0 and out.strip() == "not totally positive"
    rc, _, err = _run(capsys, ["tp", "5; 2, 1, 0, 0"])
    assert rc == 2 and "conjugation" in err
    rc, _, _ = _run(capsys, ["tp", "5; 0, 0, 0, 0"])
    assert rc == 2


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(twist_model(5, samples=3).to_json())
    return str(path)


def test_bgroup_command(capsys, model_file):
    rc, out, _ = _run(capsys, ["bgroup", "--model", model_file])
    assert rc == 0
    data = json.loads(out)
    assert data["b1"] == "Z/2" and data["b2"] == "Z/2"
    assert data["b1_invariants"] == [2] and data["b2_invariants"] == [2]
    assert data["i_c_parity"] == 1
    assert data["phi_samples"] == 4
    assert data["phi_samples_used"] == 4


def test_bgroup_missing_model(capsys, tmp_path):
    rc, _, err = _run(capsys, ["bgroup", "--model", str(tmp_path / "nope.json")])
    assert rc == 2 and "cannot load model" in err


def test_attainable_command(capsys, model_file):
    rc, out, _ = _run(capsys, ["attainable", "--model", model_file, "--class", "0"])
    assert rc == 0 and out.strip() == "attainable: no (b2_image_not_in_s_c)"
    rc, out, _ = _run(capsys, ["attainable", "--model", model_file, "--class", "1"])
    assert rc == 0 and out.strip() == "attainable: yes (ok)"
    rc, out, _ = _run(capsys, ["attainable", "--model", model_file, "--class", "-1"])
    assert rc == 0 and out.strip() == "attainable: no (not_effective)"
    rc, _, err = _run(capsys, ["attainable", "--model", model_file, "--class", "x"])
    assert rc == 2
    rc, _, err = _run(capsys, ["attainable", "--model", model_file, "--class", "1,2"])
    assert rc == 2 and "coefficients" in err


def test_sweep_csv(capsys):
    rc, out, _ = _run(capsys, ["sweep", "--pmax", "7"])
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,det_b,pol_degree,centralizer_rank,filtration_length,i_c_parity"
    rows = [line.split(",") for line in lines[1:]]
    assert [r[0] for r in rows] == ["3", "5", "7"]
    for r in rows:
        p = int(r[0])
        assert r == [str(p), str(p), str(p * p), str(p - 1), str(p), "1"]
    rc, _, _ = _run(capsys, ["sweep", "--pmax", "2"])
    assert rc == 2


def test_sweep_deterministic(capsys):
    _, out1, _ = _run(capsys, ["sweep", "--pmax", "5"])
    _, out2, _ = _run(capsys, ["sweep", "--pmax", "5"])
    assert out1 == out2


def test_console_entry_rejects_no_command():
    with pytest.raises(SystemExit):
        cli.main([])
