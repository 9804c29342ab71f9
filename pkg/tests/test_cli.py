import json
import subprocess
import sys

import pytest

from liepseudo.cli import main

pytestmark = pytest.mark.cli


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_verify_sl2_passes(capsys):
    code, out = run_cli(["verify", "--alg", "sl2", "--trunc", "5"], capsys)
    assert code == 0
    assert "ok=True" in out


def test_verify_json_deterministic(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["verify", "--alg", "solv2", "--trunc", "5", "--out", str(out1)]) == 0
    assert main(["verify", "--alg", "solv2", "--trunc", "5", "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_singular_s_mode_dimension(tmp_path, capsys):
    out = tmp_path / "sing.json"
    code = main(["singular", "--alg", "abelian3", "--mode", "S", "--u", "omega:2",
                 "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    blob = json.loads(out.read_text())
    assert blob["sing_dim"] == 6
    assert blob["ok"]


def test_singular_w_mode_basis_serialized(tmp_path, capsys):
    out = tmp_path / "sing.json"
    code = main(["singular", "--alg", "abelian2", "--u", "omega:1", "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    blob = json.loads(out.read_text())
    assert blob["sing_dim"] == 3
    assert len(blob["basis"]) == 3


def test_classify_reducible(capsys):
    code, out = run_cli(
        ["classify", "--alg", "abelian2", "--u", "omega:1", "--mode", "W", "--json"], capsys
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["verdict"] == "reducible with unique submodule I^n"


def test_derham_solv2_twisted(capsys):
    code, out = run_cli(
        ["derham", "--alg", "solv2", "--pi", "line:1,0", "--fil", "3"], capsys
    )
    assert code == 0
    assert "ok=True" in out


def test_custom_algebra_json_with_chi(tmp_path, capsys):
    blob = {
        "dim": 3,
        "brackets": [[1, 2, 2, "1"]],
        "chi": "tr_ad",
    }
    path = tmp_path / "solv3.json"
    path.write_text(json.dumps(blob))
    code, out = run_cli(["verify", "--alg", str(path), "--trunc", "5"], capsys)
    assert code == 0
    code, out = run_cli(
        ["singular", "--alg", str(path), "--mode", "S", "--u", "omega:2",
         "--chi", "tr_ad", "--json"], capsys
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["ok"]


def test_config_error_exit_code(capsys, tmp_path):
    code = main(["verify", "--alg", str(tmp_path / "missing.json")])
    assert code == 2
    # invalid chi (not a trace form on solv2: chi(b_2) != 0 fails chi([d,d]) = 0)
    code = main(["singular", "--alg", "solv2", "--chi", "0,1", "--u", "trivial"])
    assert code == 2
    capsys.readouterr()


def test_report_merge(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["verify", "--alg", "abelian1", "--trunc", "4", "--out", str(a)]) == 0
    assert main(["singular", "--alg", "abelian2", "--u", "trivial", "--out", str(b)]) == 0
    merged = tmp_path / "m.json"
    code = main(["report-merge", str(a), str(b), "--out", str(merged)])
    capsys.readouterr()
    assert code == 0
    blob = json.loads(merged.read_text())
    assert blob["ok"] and len(blob["reports"]) == 2


def test_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "liepseudo.cli", "verify", "--alg", "abelian1",
         "--trunc", "4"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
