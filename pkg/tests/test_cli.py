import json

import pytest

from biattr.cli import main

STEP = {"type": "eventually-periodic", "left": "0", "center": "", "right": "1"}
FIB = {"type": "char-sturmian", "head": "", "tail": "01", "variant": "lower"}
PSI_FIB = {"type": "image", "inner": FIB, "phi": {"0": "01", "1": "00"}}
ORBIT = {"type": "orbit-point", "family": "sturmian", "head": "", "tail": "01"}


@pytest.fixture
def specs(tmp_path):
    out = {}
    for name, obj in [("step", STEP), ("fib", FIB), ("psi", PSI_FIB), ("orbit", ORBIT),
                      ("bad", {"type": "char-sturmian", "tail": "01"})]:
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(obj))
        out[name] = str(path)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_gen(specs, capsys):
    assert run(capsys, "gen", specs["fib"], "-4", "5", "--out", "text")[1] == \
        "offset -4: 0010100100\n"
    assert run(capsys, "gen", specs["step"], "-2", "1", "--out", "text")[1] == "offset -2: 0011\n"


def test_parse_error_names_field(specs, capsys):
    code, _, err = run(capsys, "gen", specs["bad"], "0", "1")
    assert code == 2 and "'head'" in err


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "gen", str(tmp_path / "nope.json"), "0", "1")[0] == 2


def test_check(specs, capsys):
    code, out, _ = run(capsys, "check", specs["step"], "--interval", "-1", "0", "--N", "50")
    assert code == 0 and json.loads(out)["verdict"] == "covered-up-to-50"
    code, out, _ = run(capsys, "check", specs["step"], "--set", "5", "--N", "2")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "uncovered" and d["witness"] == "0"
    code, out, _ = run(capsys, "check", specs["fib"], "--ap", "0", "3", "--N", "40")
    assert json.loads(out)["verdict"] == "covered-up-to-40"


def test_check_needs_one_position_set(specs, capsys):
    assert run(capsys, "check", specs["step"])[0] == 2


def test_classify(specs, capsys):
    d = json.loads(run(capsys, "classify", specs["step"])[1])
    assert d["kind"] == "BiEventuallyPeriodic" and d["span"]["span"] == 1
    d = json.loads(run(capsys, "classify", specs["psi"])[1])
    assert d["kind"] == "CharacteristicMorphicImage" and d["span"]["span"] == 2
    assert d["span"]["attractor"] == {"interval": [1, 3]}
    d = json.loads(run(capsys, "classify", specs["orbit"])[1])
    assert d["kind"] == "NoFiniteAttractor" and d["span"]["provenance"] == "theorem-derived"


def test_json_is_byte_stable(specs, capsys):
    a = run(capsys, "span", specs["fib"], "--N", "20")[1]
    b = run(capsys, "span", specs["fib"], "--N", "20")[1]
    assert a == b and json.loads(a)["span"] == 1


def test_other_commands(specs, capsys):
    assert json.loads(run(capsys, "complexity", specs["fib"], "--N", "5")[1])["profile"] == \
        [2, 3, 4, 5, 6]
    d = json.loads(run(capsys, "desub", specs["psi"])[1])
    assert d["extraction"]["w"] == "010" and d["desubstitution"]["passed"]
    d = json.loads(run(capsys, "modrec", specs["fib"], "--K", "3", "--N", "6")[1])
    assert d["passed"]
    d = json.loads(run(capsys, "sparse", specs["fib"], "--N", "8")[1])
    assert d["attractor"] == {"set": [-8, -2, -1]}
    d = json.loads(run(capsys, "ca", specs["psi"], "--w", "1", "--k", "2")[1])
    assert d["period"] == 2


def test_ceiling_exit_code(specs, capsys):
    assert run(capsys, "gen", specs["step"], "0", "5000", "--ceiling", "100")[0] == 3


def test_report(specs, capsys, tmp_path):
    code, out, _ = run(capsys, "report", specs["psi"], "--dir", str(tmp_path / "r"), "--N", "20")
    assert code == 0
    files = sorted(p.name for p in (tmp_path / "r").iterdir())
    assert files == ["report.json", "report_profile.csv", "report_profile.png"]
    rows = (tmp_path / "r" / "report_profile.csv").read_text().splitlines()
    assert rows[0] == "n,p,n_plus_span" and rows[5] == "5,7,7"
