import io
import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from morphic.cli import run
from morphic.construct import verify_sidecar
from morphic.core import parse_substitution

DATA = Path(__file__).parent / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    assert code == 0, err
    return json.loads(out)


def schema(name):
    return json.loads((resources.files("morphic") / "schemas" / f"{name}.json").read_text())


COMMANDS = [
    ("analyze", ["analyze", DATA / "fib.sub"]),
    ("analyze", ["analyze", DATA / "tau.sub"]),
    ("fixpoint", ["fixpoint", DATA / "fib.sub", "--length", 20]),
    ("returns", ["returns", DATA / "fib.sub", "--word", "ab"]),
    ("gaps", ["gaps", DATA / "fib.sub"]),
    ("periodicity", ["periodicity", DATA / "abb.sub"]),
    ("periodicity", ["periodicity", DATA / "fib.sub", "--max-pre", 8, "--max-per", 8]),
    ("decompose", ["decompose", DATA / "aa0.sub"]),
    ("good", ["good", DATA / "aa0.sub"]),
    ("good", ["good", DATA / "thue_morse.sub"]),
    ("construct-periodic", ["construct-periodic", "--sigma", DATA / "fib.sub", "--period", "12"]),
    ("construct-zeta", ["construct-zeta", "--sigma", DATA / "fib.sub", "--period", "12", "--prefix", "c"]),
    ("blocks", ["blocks", DATA / "fib.sub", "--n", 2, "--word", "ab"]),
    ("density", ["density", "--alpha", 2, "--beta", 3, "--eps", "0.05"]),
    ("density", ["density", "--alpha", "root:1,0,-2:1:2", "--beta", 1, "--eps", "0.02", "--mode", "log", "--target", "0.3"]),
    ("density", ["density", "--alpha", "root:1,0,-2:1:2", "--beta", 1, "--eps", "0.1", "--mode", "step"]),
    ("star", ["star", DATA / "tau.sub", "--letter", "c"]),
]


@pytest.mark.parametrize("name, argv", COMMANDS)
def test_json_validates_against_schema(name, argv):
    jsonschema.validate(call_json(*argv), schema(name))


def test_analyze_fibonacci():
    j = call_json("analyze", DATA / "fib.sub")
    assert j["growth"]["Theta"]["poly"] == [1, -1, -1]
    assert j["growth"]["Theta"]["display"] == "(1+√5)/2"
    assert j["primitive"] and j["good"]["good"]


def test_fixpoint_text():
    code, out, _ = call("fixpoint", DATA / "fib.sub", "--seed", "a", "--length", 8)
    assert code == 0 and out.strip() == "abaababa"


def test_good_message():
    code, out, _ = call("good", DATA / "aa0.sub")
    assert code == 0
    assert out.strip() == "not good: Θ=2 but sole main sub-substitution has eigenvalue (1+√5)/2"


def test_global_flags_anywhere():
    a = call("--json", "gaps", DATA / "fib.sub", "--horizon", 500)
    b = call("gaps", DATA / "fib.sub", "--json", "--horizon", 500)
    assert a == b and a[0] == 0
    assert json.loads(a[1])["horizon"] == 500


@pytest.mark.parametrize("argv", [
    ["analyze", DATA / "bounded.sub"],
    ["analyze", DATA / "missing.sub"],
    ["fixpoint", DATA / "fib.sub", "--seed", "b", "--length", 5],
    ["gaps", DATA / "abb.sub", "--word", "a"],
    ["returns", DATA / "abb.sub", "--word", "a"],
    ["construct-periodic", "--sigma", DATA / "tau.sub", "--period", "12"],
    ["density", "--alpha", 2, "--beta", 4, "--eps", "0.1"],
    ["density", "--alpha", 1, "--beta", 2, "--eps", "0.1", "--mode", "step"],
    ["density", "--alpha", 2, "--beta", 3, "--eps", 0],
    ["star", DATA / "abb.sub", "--letter", "a"],
])
def test_domain_errors_exit_1(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == ""
    assert err.startswith("error: ")


def test_bounded_diagnosis_names_invariant():
    _, _, err = call("analyze", DATA / "bounded.sub")
    assert "bounded" in err and "'a'" in err


@pytest.mark.parametrize("argv", [
    [],
    ["nosuchcommand"],
    ["fixpoint", DATA / "fib.sub"],
    ["fixpoint", DATA / "fib.sub", "--length", "-3"],
    ["density", "--alpha", "abc", "--beta", 3, "--eps", "0.1"],
    ["gaps", DATA / "fib.sub", "--horizon", "x"],
    ["density", "--alpha", 2, "--beta", 3, "--eps", "0.1", "--mode", "other"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _, _ = call(*argv)
    assert code == 2


def test_human_and_json_agree():
    j = call_json("decompose", DATA / "aa0.sub")
    _, text, _ = call("decompose", DATA / "aa0.sub")
    assert f"p = {j['p']}, q = {j['q']}, l = {j['l']}, Condition (C) from power {j['exponent_condition_c']}" in text
    j = call_json("gaps", DATA / "fib.sub")
    _, text, _ = call("gaps", DATA / "fib.sub")
    for row in j["gaps"]:
        assert f"{row['word']}: max gap {row['max_gap']}" in text
    j = call_json("density", "--alpha", 2, "--beta", 3, "--eps", "0.05")
    _, text, _ = call("density", "--alpha", 2, "--beta", 3, "--eps", "0.05")
    assert text.startswith(f"n = {j['n']}, m = {j['m']}:")
    assert j["exact"] == f"{2 ** j['n']}/{3 ** j['m']}"
    j = call_json("analyze", DATA / "tau.sub")
    _, text, _ = call("analyze", DATA / "tau.sub")
    assert text.startswith(f"Theta = {j['growth']['Theta']['display']}  (D = {j['growth']['D']})")
    for a, c in j["growth"]["c_estimates"].items():
        assert f"c = {c['value']}" in text
    j = call_json("returns", DATA / "fib.sub", "--word", "ab")
    _, text, _ = call("returns", DATA / "fib.sub", "--word", "ab")
    assert text.splitlines()[0] == "return words to ab: " + ", ".join(j["returns"])


@pytest.mark.parametrize("argv", [
    ["construct-periodic", "--sigma", DATA / "fib.sub", "--period", "123"],
    ["construct-zeta", "--sigma", DATA / "fib.sub", "--period", "12", "--prefix", "c"],
    ["construct-zeta", "--sigma", DATA / "thue_morse.sub", "--period", "1", "--prefix", "xyx"],
    ["blocks", DATA / "fib.sub", "--n", 3],
])
def test_written_systems_reverify(argv, tmp_path):
    out = tmp_path / "system"
    j = call_json(*argv, "--out", out)
    assert all(j["checks"].values())
    built = parse_substitution((tmp_path / "system.sub").read_text())
    sidecar = json.loads((tmp_path / "system.json").read_text())
    assert verify_sidecar(built, sidecar)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "morphic", "fixpoint", str(DATA / "fib.sub"), "--length", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "abaab"
    proc = subprocess.run([sys.executable, "-m", "morphic", "analyze"], capture_output=True, text=True)
    assert proc.returncode == 2
