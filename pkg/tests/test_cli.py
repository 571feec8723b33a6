import json
import subprocess
import sys

import pytest

from penergy.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_energy_k5(capsys):
    code, out, _ = run(capsys, "energy", "--family", "K5", "--p", "4")
    (rec,) = json.loads(out)
    assert code == 0
    assert rec["e_pos"] == pytest.approx(256) and rec["e_neg"] == pytest.approx(4)
    assert (rec["n_pos"], rec["n_zero"], rec["n_neg"]) == (1, 0, 4)


def test_energy_p3_csv(capsys):
    code, out, _ = run(capsys, "energy", "--family", "P3", "--p", "4,2", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "graph,p,e_pos,e_neg,e_total,n_pos,n_zero,n_neg"
    assert lines[1] == "Bg,4,4,4,8,1,1,1"
    assert lines[2] == "Bg,2,2,2,4,1,1,1"


def test_energy_empty_g6_file(capsys, tmp_path):
    f = tmp_path / "empty.g6"
    f.write_text("")
    assert run(capsys, "energy", "--g6-file", str(f)) == (0, "", "")


def test_energy_g6_file_and_out(capsys, tmp_path):
    f = tmp_path / "g.g6"
    f.write_text("Bw\nBg\n")
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "energy", "--g6-file", str(f), "--p", "1", "--out", str(out))
    assert code == 0 and text == ""
    recs = json.loads(out.read_text())
    assert [r["graph"] for r in recs] == ["Bw", "Bg"]
    assert recs[0]["e_pos"] == pytest.approx(2)


def test_source_errors(capsys, tmp_path):
    assert run(capsys, "energy", "--p", "2")[0] == 2
    assert run(capsys, "energy", "--family", "P3", "--matrix", "x")[0] == 2
    assert run(capsys, "energy", "--family", "Q3")[0] == 2
    assert run(capsys, "energy", "--g6-file", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "energy", "--family", "P3", "--p", "0.5")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["energy", "--family", "P3", "--p", "x"])
    assert exc.value.code == 2


def test_spectrum_c4(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "C4")
    assert code == 0
    assert out.split() == ["2", "0", "0", "-2"]


def test_spectrum_matrix(capsys, tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("2\n1 2\n2 1\n")
    code, out, _ = run(capsys, "spectrum", "--matrix", str(f), "--format", "json")
    assert json.loads(out) == [{"graph": "m.txt", "eigenvalues": [3.0, -1.0]}]


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4")
    assert code == 0 and len(out.splitlines()) == 6
    code, out, _ = run(capsys, "enumerate", "--min-n", "1", "--max-n", "5", "--format", "csv")
    assert len(out.splitlines()) == 1 + 1 + 1 + 2 + 6 + 21
    assert run(capsys, "enumerate")[0] == 2


def test_pinch(capsys, tmp_path):
    f = tmp_path / "p3.txt"
    f.write_text("3\n0 1 0\n1 0 1\n0 1 0\n")
    code, out, _ = run(capsys, "pinch", "--matrix", str(f), "--blocks", "2,1", "--p", "2")
    rec = json.loads(out)
    assert code == 0
    assert rec["pinching"]["gap"] == pytest.approx(2)
    assert run(capsys, "pinch", "--matrix", str(f), "--blocks", "2,2")[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "neg4", "--max-n", "3")
    rec = json.loads(out)
    assert code == 0 and rec["graphs_checked"] == 1 and rec["status"] == "pass"
    assert rec["tolerance"] == 1e-8


def test_verify_violation_exit(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "dom4_n4", "--min-n", "4", "--max-n", "4",
                       "--format", "csv")
    assert code == 1
    assert out.splitlines()[1].startswith("dom4_n4,4,")


def test_verify_unknown(capsys):
    code, _, err = run(capsys, "verify", "--theorem", "nonsense")
    assert code == 2 and "nonsense" in err
    assert run(capsys, "verify", "--theorem", "neg4", "--min-n", "5", "--max-n", "3")[0] == 2
    assert run(capsys, "verify", "--theorem", "neg4", "--max-n", "12")[0] == 2


def test_verify_is_repeatable(capsys):
    args = ("verify", "--theorem", "neg4,upper2", "--max-n", "6", "--format", "csv")
    assert run(capsys, *args) == run(capsys, *args)


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--conjecture", "s_plus", "--min-n", "3", "--max-n", "3")
    rec = json.loads(out)
    assert code == 0 and rec["status"] == "no counterexample in range"
    assert rec["rows"][0]["min_value"] == pytest.approx(2)
    assert run(capsys, "scan", "--conjecture", "posp_path", "--p", "1.5")[0] == 2


def test_scan_counterexample_exit(capsys, monkeypatch):
    from penergy import verify

    monkeypatch.setitem(verify.CONJECTURES, "s_plus",
                        ("always false", lambda d, p: -1.0, verify.s_plus_value))
    code, out, _ = run(capsys, "scan", "--conjecture", "s_plus", "--max-n", "3")
    assert code == 3
    assert json.loads(out)["status"] == "counterexample found"


def test_fuzz(capsys):
    args = ("fuzz", "--trials", "50", "--max-n", "6", "--seed", "3", "--format", "csv")
    code, out, _ = run(capsys, *args)
    assert code == 0
    assert out == run(capsys, *args)[1]
    assert {ln.split(",")[0] for ln in out.splitlines()[1:]} == {
        "superadditivity:symmetric", "pinching:symmetric"}


def test_extremal(capsys):
    code, out, _ = run(capsys, "extremal", "--p", "4", "--side", "neg", "--min-n", "3", "--max-n", "3")
    (rec,) = json.loads(out)
    assert rec["min_energy"] == pytest.approx(4) and rec["graphs_compared"] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "penergy", "spectrum", "--family", "K3"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.split() == ["2", "-1", "-1"]
