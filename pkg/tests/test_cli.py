import json
import shutil
import subprocess
import sys

import pytest

from padic_wavelets import cli, suites
from padic_wavelets.serialize import dumps, function_to_json
from padic_wavelets.wavelet import WaveletIndex, make_psi_J, make_wavelet, omega


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(dumps(obj))
    return str(path)


@pytest.mark.parametrize(
    "args,count",
    [
        (["--p", "2", "--d", "1", "--gamma-min", "0", "--gamma-max", "0", "--max-digits", "0"], 1),
        (["--p", "2", "--d", "2", "--gamma-min", "0", "--gamma-max", "0", "--max-digits", "0"], 3),
        (["--p", "3", "--d", "1", "--gamma-min", "-1", "--gamma-max", "1", "--max-digits", "1"], 18),
    ],
)
def test_basis_counts(capsys, args, count):
    code, out, _ = run(capsys, "basis", *args)
    assert code == 0 and len(json.loads(out)) == count


def test_basis_entries_match_wavelets(capsys):
    code, out, _ = run(capsys, "basis", "--p", "3", "--gamma-min", "1", "--gamma-max", "1", "--max-digits", "0")
    data = json.loads(out)
    assert data[0]["index"] == {"gamma": 1, "n": [{"start": 0, "digits": []}], "J": [1]}
    assert data[0]["function"] == function_to_json(make_wavelet(WaveletIndex.make(3, 1, None, (1,))))


@pytest.mark.parametrize(
    "argv",
    [
        ["basis", "--p", "4"],
        ["basis", "--d", "0"],
        ["basis", "--gamma-min", "2", "--gamma-max", "1"],
        ["basis", "--max-digits", "-1"],
        ["verify", "--suite", "nonsense"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_argparse_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["frobnicate"])
    assert err.value.code == 1
    with pytest.raises(SystemExit) as err:
        cli.main(["basis", "--p", "two"])
    assert err.value.code == 1


def test_analyze_wavelet_file(capsys, tmp_path):
    path = write(tmp_path, "psi.json", function_to_json(make_psi_J(2, (1,))))
    code, out, _ = run(capsys, "analyze", path)
    data = json.loads(out)
    assert code == 0 and len(data["coefficients"]) == 1
    assert data["coefficients"][0]["gamma"] == 0 and data["parseval"]["equal"] is True


def test_analyze_rejects_unit_ball(capsys, tmp_path):
    path = write(tmp_path, "omega.json", function_to_json(omega(3, 2)))
    code, out, err = run(capsys, "analyze", path)
    assert code == 2 and "mean" in err
    assert json.loads(out)["integral"]["even"] == ["1"]


def test_parse_failures(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "analyze", str(bad))[0] == 1
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 1
    path = write(tmp_path, "odd.json", {"p": 2, "d": 1})
    assert run(capsys, "analyze", path)[0] == 1


def test_analyze_synthesize_round_trip(capsys, tmp_path):
    import random

    from padic_wavelets.sampling import random_function

    f = random_function(random.Random(3), 3, 2, mean_zero=True)
    src = write(tmp_path, "f.json", function_to_json(f))
    code, out, _ = run(capsys, "analyze", src)
    assert code == 0
    coeffs = tmp_path / "c.json"
    coeffs.write_text(out)
    code, out, _ = run(capsys, "synthesize", str(coeffs))
    assert code == 0 and out == dumps(function_to_json(f))
    bare = write(tmp_path, "bare.json", json.loads(coeffs.read_text())["coefficients"])
    code, out2, _ = run(capsys, "synthesize", "--p", "3", "--d", "2", bare)
    assert out2 == out


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "orthonormality", "--p", "2", "--d", "1")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(capsys, "verify", "--suite", "parseval", "--p", "3", "--d", "2", "--gamma-max", "2")
    assert code == 0 and json.loads(out)["closed_form"] == "80/81"
    code, out, _ = run(capsys, "verify", "--suite", "orbit", "--p", "2", "--d", "1", "--depth", "2")
    data = json.loads(out)
    assert code == 0 and data["reach"]["failures"] == 0 and data["reach"]["classes"] > 1


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "--suite", "oracle", "--p", "2", "--d", "2", "--seed", "5")
    second = run(capsys, "verify", "--suite", "oracle", "--p", "2", "--d", "2", "--seed", "5")
    assert first == second


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(suites, "run_suite", lambda *a, **k: {"suite": "x", "pass": False})
    assert run(capsys, "verify", "--suite", "meanzero")[0] == 3


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "basis.json"
    code, out, _ = run(capsys, "basis", "--max-digits", "0", "--out", str(target))
    assert code == 0 and out == ""
    assert len(json.loads(target.read_text())) == 3


def test_sphere_map(capsys):
    code, out, _ = run(capsys, "group", "sphere-map", "--p", "5", "--d", "2", "1", "0")
    assert code == 0 and json.loads(out)["m"] == [["1*5^0", "0*5^0"], ["0*5^0", "1*5^0"]]
    code, out, _ = run(capsys, "group", "sphere-map", "--p", "5", "--d", "2", "2", "5")
    assert json.loads(out)["m"] == [["2*5^0", "0*5^0"], ["1*5^1", "1*5^0"]]
    assert run(capsys, "group", "sphere-map", "--p", "5", "--d", "2", "5", "10")[0] == 2
    assert run(capsys, "group", "sphere-map", "--p", "5", "--d", "2", "1")[0] == 1


def test_classify(capsys, tmp_path):
    path = write(tmp_path, "psi.json", function_to_json(make_psi_J(3, (2, 1))))
    code, out, _ = run(capsys, "group", "classify", path)
    data = json.loads(out)
    assert code == 0 and data["in_orbit"] and data["ell"] == 0 and data["index"]["J"] == [2, 1]
    path = write(tmp_path, "omega.json", function_to_json(omega(3, 1)))
    assert json.loads(run(capsys, "group", "classify", path)[1]) == {"in_orbit": False}


def test_factorize(capsys, tmp_path):
    word = [
        {"kind": "dilate", "gamma": 1},
        {"kind": "translate", "b": ["1/3", "0"]},
        {"kind": "matrix", "m": [["0", "1"], ["1", "0"]]},
    ]
    path = write(tmp_path, "word.json", word)
    code, out, _ = run(capsys, "group", "factorize", "--p", "3", "--d", "2", path)
    data = json.loads(out)
    assert code == 0 and data["gamma"] == 1 and data["b"] == ["1*3^-1", "0*3^0"]
    bad = write(tmp_path, "bad.json", [{"kind": "matrix", "m": [["3", "0"], ["0", "1"]]}])
    assert run(capsys, "group", "factorize", "--p", "3", "--d", "2", bad)[0] == 2
    junk = write(tmp_path, "junk.json", [{"kind": "rotate"}])
    assert run(capsys, "group", "factorize", "--p", "3", "--d", "2", junk)[0] == 1


@pytest.mark.skipif(shutil.which("padic-wavelets") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(
        ["padic-wavelets", "basis", "--p", "2", "--d", "2", "--max-digits", "0", "--gamma-min", "0", "--gamma-max", "0"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and len(json.loads(res.stdout)) == 3
    res = subprocess.run([sys.executable, "-m", "padic_wavelets.cli", "basis", "--p", "9"], capture_output=True)
    assert res.returncode == 1
