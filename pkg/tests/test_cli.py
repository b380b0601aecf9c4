import json
import re
import subprocess
import sys

import pytest

from dirac_descent.adapted import adapted
from dirac_descent.cli import main
from dirac_descent.serialize import dumps, loads


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_text(capsys):
    code, out, _ = run(capsys, "build", "--dim", "2", "--format", "text")
    assert code == 0
    assert "g^0 = s3" in out and "g^1 = i s2" in out
    assert "[gamma^1]\n. +\n- ." in out


def test_build_json_parses_back(capsys):
    code, out, _ = run(capsys, "build", "--dim", "6", "--format", "json")
    assert code == 0 and loads(out) == adapted(6)
    assert json.loads(out)["metadata"]["construction"] == "adapted(6)"


@pytest.mark.parametrize("argv", [
    ["build", "--dim", "1"],
    ["build", "--dim", "17"],
    ["build"],
    ["render", "--dim", "4", "--palette", "purple"],
    ["render", "--dim", "4", "--cell-size", "0"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", "--format", "pdf", "--dim", "2"])
    assert exc.value.code == 2


def test_max_dim_override(capsys):
    code, out, _ = run(capsys, "verify", "--dim", "13", "--max-dim", "13")
    assert code == 0 and "pseudoscalar-class" in out


def test_render_svg_to_file(capsys, tmp_path):
    out = tmp_path / "g.svg"
    code, _, _ = run(capsys, "render", "--dim", "4", "--out", str(out), "--palette", "+1=black,-1=red")
    assert code == 0 and out.read_text().count('class="grid"') == 5


@pytest.mark.parametrize("d", [2, 5, 8])
def test_verify_dim(capsys, d):
    code, out, _ = run(capsys, "verify", "--dim", str(d))
    assert code == 0
    assert "FAIL" not in out
    for name in ("clifford", "hermiticity", "traceless"):
        assert f"PASS {name}" in out
    if d % 2 == 0:
        for name in ("chiral", "kappa", "commutant", "exchange-chiral"):
            assert f"PASS {name}" in out


def test_verify_three_reports_class(capsys):
    code, out, _ = run(capsys, "verify", "--dim", "3")
    assert code == 0 and "g^0...g^2 = -1 i^1 1" in out


def test_verify_flipped_sign(capsys, tmp_path):
    data = json.loads(dumps(adapted(4)))
    i, j, ph = data["matrices"][2][0]
    data["matrices"][2][0] = [i, j, (ph + 2) % 4]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--input", str(path))
    assert code == 1
    # the flipped entry sits in g^2, so the named pair involves index 2
    assert re.search(r"FAIL clifford: anticommutator of \((\d,2|2,\d)\)", out)


def test_verify_good_file(capsys, tmp_path):
    path = tmp_path / "ok.json"
    path.write_text(dumps(adapted(6)))
    code, out, _ = run(capsys, "verify", "--input", str(path))
    assert code == 0 and "exchange-chiral" not in out


def test_verify_unreadable_file(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{")
    assert run(capsys, "verify", "--input", str(path))[0] == 2
    assert run(capsys, "verify", "--input", str(tmp_path / "missing.json"))[0] == 2


def test_descend_six(capsys):
    code, out, _ = run(capsys, "descend", "--dim", "6", "--steps", "4")
    assert code == 0
    assert out.count("d=2 N=2") == 4
    assert "PASS diamond closes to adapted(4) at root" in out
    assert "class=+1" in out and "class=-1" in out


def test_descend_five_one_step(capsys):
    code, out, _ = run(capsys, "descend", "--dim", "5", "--steps", "1")
    assert code == 0
    assert out.splitlines()[1].strip().startswith("v d=4")


def test_descend_json(capsys):
    code, out, _ = run(capsys, "descend", "--dim", "4", "--steps", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["tree"]["dim"] == 4
    assert all(c["passed"] for c in data["checks"])


def test_descend_too_many_steps(capsys):
    assert run(capsys, "descend", "--dim", "4", "--steps", "3")[0] == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--dim", "5", "--characters")
    assert code == 0 and "PASS classify: inequivalent" in out
    assert "sum = 0" in out
    assert run(capsys, "classify", "--dim", "4")[0] == 2


def test_spectrum_decoupled(capsys):
    code, out, _ = run(capsys, "spectrum", "--dim", "4", "--mass", "1", "--p", "2,1,0.5,0")
    assert code == 0
    for name in ("dispersion", "determinant", "decoupling", "plus block", "minus block", "reflection"):
        assert f"PASS {name}" in out


def test_spectrum_on_shell(capsys):
    code, out, _ = run(capsys, "spectrum", "--dim", "4", "--mass", "0", "--p", "1,0.6,0.8,0")
    assert code == 0 and "kernel dimension 2" in out


def test_spectrum_descent_not_met(capsys):
    code, out, _ = run(capsys, "spectrum", "--dim", "4", "--mass", "1", "--p", "2,1,0.5,0.3")
    assert code == 0 and "descent condition not met; full operator analyzed" in out


def test_spectrum_odd_drop(capsys):
    code, out, _ = run(capsys, "spectrum", "--dim", "5", "--mass", "1", "--p", "2,1,0.5,0.1,0")
    assert code == 0 and "PASS odd-to-even" in out


@pytest.mark.parametrize("p", ["1,2,3", "a,b,c,d"])
def test_spectrum_bad_momentum(capsys, p):
    assert run(capsys, "spectrum", "--dim", "4", "--p", p)[0] == 2


def test_spectrum_seeded_sweep_is_deterministic(capsys):
    first = run(capsys, "spectrum", "--dim", "6", "--samples", "6", "--seed", "4")
    second = run(capsys, "spectrum", "--dim", "6", "--samples", "6", "--seed", "4")
    assert first == second and first[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dirac_descent", "verify", "--dim", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS kappa" in proc.stdout
