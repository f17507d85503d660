"""End-to-end CLI checks against byte-frozen golden files.

The golden table contents were regenerated by the orbit-averaging oracle
in test_table before being frozen here; these tests pin the serialized
form and the exit-code contract.
"""

import json
import pathlib

import pytest

from superchar.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def _run_to_file(tmp_path, name, argv):
    out = tmp_path / name
    code = main(argv + ["--output", str(out)])
    return code, out.read_bytes()


# ----------------------------------------------------------------- table

def test_table_json_golden_bytes(tmp_path):
    code, got = _run_to_file(tmp_path, "t.json", ["table", "--n", "3", "--p", "2"])
    assert code == 0
    assert got == (GOLDEN / "u3f2_table.json").read_bytes()


def test_table_csv_golden_bytes(tmp_path):
    code, got = _run_to_file(
        tmp_path, "t.csv", ["table", "--n", "3", "--p", "2", "--format", "csv"])
    assert code == 0
    assert got == (GOLDEN / "u3f2_table.csv").read_bytes()


def test_table_json_golden_u2_f3(tmp_path):
    code, got = _run_to_file(tmp_path, "t.json", ["table", "--n", "2", "--p", "3"])
    assert code == 0
    assert got == (GOLDEN / "u2f3_table.json").read_bytes()


def test_table_deterministic_across_runs(tmp_path):
    argv = ["table", "--n", "3", "--p", "3", "--validate", "full"]
    _, first = _run_to_file(tmp_path, "a.json", argv)
    _, second = _run_to_file(tmp_path, "b.json", argv)
    assert first == second


def test_table_extension_field(tmp_path):
    code, got = _run_to_file(
        tmp_path, "t.json",
        ["table", "--n", "3", "--p", "2", "--degree", "2", "--validate", "full"])
    assert code == 0
    blob = json.loads(got)
    assert blob["group"]["q"] == 4
    assert blob["group"]["modulus"] == [1, 1, 1]
    assert len(blob["rows"]) == 19


def test_table_stdout(capsys):
    assert main(["table", "--n", "2", "--p", "2"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["group"] == {"n": 2, "p": 2, "m": 1, "q": 2,
                             "modulus": [0, 1], "order": 2}


# --------------------------------------------------------------- classify

def test_classify_superclass(capsys):
    code = main(["classify", "--n", "3", "--p", "2", "--matrix", "a12=1,a13=1"])
    assert code == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["label_text"] == "1,2/3 | 1,2=1"
    assert blob["orbit_size"] == 2
    assert blob["dual"] is False
    assert blob["label"]["blocks"] == [[1, 2], [3]]


def test_classify_dual(capsys):
    code = main(["classify", "--n", "3", "--p", "2", "--matrix", "a12=1,a13=1",
                 "--dual"])
    assert code == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["label_text"] == "1,3/2 | 1,3=1"
    assert blob["orbit_size"] == 4
    assert blob["dual"] is True


def test_classify_zero_matrix(capsys):
    code = main(["classify", "--n", "3", "--p", "5", "--matrix", ""])
    assert code == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["label_text"] == "1/2/3"
    assert blob["orbit_size"] == 1


def test_classify_bad_matrix_exits_2(capsys):
    assert main(["classify", "--n", "3", "--p", "2", "--matrix", "a21=1"]) == 2
    assert "error:" in capsys.readouterr().err


# ----------------------------------------------------------------- orbits

def test_orbits_dual_prediction_fields(capsys):
    code = main(["orbits", "--n", "4", "--p", "2", "--dual"])
    assert code == 0
    blob = json.loads(capsys.readouterr().out)
    rows = {r["label_text"]: r for r in blob["orbits"]}
    arc14 = rows["1,4/2/3 | 1,4=1"]
    assert arc14["size"] == 16
    assert arc14["r"] == 4
    assert arc14["size_predicted_by_r"] == 16
    assert arc14["prediction_matches"] is True
    assert all(r["prediction_matches"] for r in blob["orbits"])


def test_orbits_superclass_sizes(capsys):
    code = main(["orbits", "--n", "3", "--p", "2"])
    assert code == 0
    blob = json.loads(capsys.readouterr().out)
    assert [r["size"] for r in blob["orbits"]] == [1, 2, 2, 2, 1]
    assert sum(r["size"] for r in blob["orbits"]) == 8


# ----------------------------------------------------------------- verify

def test_verify_text_golden(tmp_path):
    code, got = _run_to_file(tmp_path, "v.txt", ["verify", "--n", "3", "--p", "2"])
    assert code == 0
    assert got == (GOLDEN / "u3f2_verify.txt").read_bytes()


def test_verify_json(capsys):
    code = main(["verify", "--n", "3", "--p", "3", "--format", "json"])
    assert code == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["all_passed"] is True
    assert len(blob["checks"]) == 8
    names = [c["check"] for c in blob["checks"]]
    assert "orthogonality" in names and "plancherel-identity" in names


# ------------------------------------------------------------- plancherel

def test_plancherel_weights(capsys):
    code = main(["plancherel", "--n", "3", "--p", "2"])
    assert code == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["identity_holds"] is True
    weights = dict(blob["weights"])
    assert weights["1/2/3"] == "1/8"
    assert weights["1,3/2 | 1,3=1"] == "1/2"


# ------------------------------------------------------------------ tower

def test_tower_convergence_json(capsys):
    code = main(["tower", "--n", "4", "--p", "2", "--degrees", "1,2",
                 "--mode", "convergence", "--pi", "1,4/2/3",
                 "--colours", "1,4=1", "--superclass", "1/2,3/4 | 2,3=1"])
    assert code == 0  # healthy decay: magnitude law held at every level
    blob = json.loads(capsys.readouterr().out)
    assert blob["verdict"] == "norm decays as q_m^-1"
    assert [lvl["abs2"] for lvl in blob["levels"]] == ["1/4", "1/16"]


def test_tower_convergence_stabilized_exit_0(capsys):
    code = main(["tower", "--n", "3", "--p", "2", "--degrees", "1,2",
                 "--mode", "convergence", "--pi", "1,3/2",
                 "--colours", "1,3=1", "--superclass", "1,3/2 | 1,3=1"])
    assert code == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["verdict"] == "stabilized at level 1"


def test_tower_fsc(capsys):
    code = main(["tower", "--n", "3", "--p", "2", "--degrees", "1,2",
                 "--mode", "fsc"])
    assert code == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["stable_superclasses_match_center"] is True
    assert blob["stable_dual_orbits_match_superdiagonal"] is True


def test_tower_plancherel_profile(capsys):
    code = main(["tower", "--n", "3", "--p", "2", "--degrees", "1,2",
                 "--mode", "plancherel"])
    assert code == 0
    blob = json.loads(capsys.readouterr().out)
    assert [e["weight"] for e in blob["profile"]] == ["5/8", "49/64"]
    assert blob["strictly_increasing"] is True


def test_tower_convergence_requires_label_flags(capsys):
    code = main(["tower", "--n", "3", "--p", "2", "--degrees", "1,2",
                 "--mode", "convergence"])
    assert code == 2


def test_tower_bad_degrees_exits_2(capsys):
    code = main(["tower", "--n", "3", "--p", "2", "--degrees", "2,3",
                 "--mode", "fsc"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


# ------------------------------------------------------------- exit codes

def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_cap_violation_reports_error(capsys):
    code = main(["table", "--n", "13", "--p", "2"])
    assert code == 2
    assert "error:" in capsys.readouterr().err
