import json
import subprocess
import sys

import pytest

from rswalk.cli import COMMANDS, build_parser, main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_moments_example(capsys):
    status, out, _ = run(capsys, "rs", "moments", "--k", "2", "--n", "2")
    doc = json.loads(out)
    assert status == 0
    assert (doc["k"], doc["n"], doc["value"]) == (2, 2, "5/16")
    assert doc["schema_version"] == 1 and doc["config"]["command"] == "rs moments"


def test_counterexample_preset(capsys):
    status, out, _ = run(capsys, "walk", "exact", "--group", "z2", "--preset", "paper-counterexample", "--k", "5")
    assert status == 0
    assert json.loads(out)["distribution"] == {"0": "5/8", "1": "3/8"}


def test_spec_radius_s1(capsys):
    status, out, _ = run(capsys, "spec", "radius", "--two-ell", "2")
    assert status == 0 and abs(json.loads(out)["spectral_radius"]) <= 1e-12


def test_csv_outputs(capsys):
    _, out, _ = run(capsys, "circle", "saffari", "--k", "6", "--N", "1024", "--format", "csv")
    assert out.splitlines()[0] == "bin_low,bin_high,mass"
    _, out, _ = run(capsys, "spec", "radius", "--two-ell", "3", "--lambda", "1", "--format", "csv")
    assert out.splitlines()[0] == "two_ell,lambda,dim,spectral_radius,margin"
    _, out, _ = run(capsys, "walk", "tv", "--preset", "paper-counterexample", "--k", "3", "--format", "csv")
    assert out.splitlines() == ["key,value", "k,3", "tv_distance,1/8"]


@pytest.mark.parametrize(
    "argv,status,reason",
    [
        (["rs", "moments", "--k", "-1", "--n", "2"], 1, "usage"),
        (["rs", "moments", "--k", "2"], 1, "usage"),
        (["rs", "gen", "--k", "40"], 3, "resource_limit"),
        (["spec", "radius", "--two-ell", "3"], 1, "invalid_argument"),
        (["circle", "saffari", "--k", "4", "--N", "100"], 1, "invalid_argument"),
        (["walk", "exact", "--k", "2"], 1, "usage"),
        (["walk", "exact", "--group", "z3", "--preset", "paper-counterexample", "--k", "2"], 1, "usage"),
        (["walk", "brute", "--preset", "paper-counterexample", "--k", "30"], 3, "resource_limit"),
        (["nonsense"], 1, "usage"),
    ],
)
def test_error_statuses(capsys, argv, status, reason):
    code, out, err = run(capsys, *argv)
    assert code == status and out == ""
    lines = err.strip().splitlines()
    assert len(lines) == 1 and json.loads(lines[0])["error"] == reason


def test_numerical_failure_status(capsys, monkeypatch):
    import numpy as np

    def broken(_):
        raise np.linalg.LinAlgError("did not converge")

    monkeypatch.setattr(np.linalg, "eigvals", broken)
    code, _, err = run(capsys, "spec", "radius", "--two-ell", "4")
    assert code == 2 and json.loads(err)["error"] == "numerical_failure"


def test_instance_file(tmp_path, capsys):
    doc = {"order": 3, "cayley": [[0, 1, 2], [1, 2, 0], [2, 0, 1]], "identity": 0,
           "labels": ["e", "r", "rr"], "resolution": 1, "table": [0, 1]}
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "walk", "exact", "--instance", str(path), "--k", "0")
    assert code == 0 and json.loads(out)["distribution"] == {"e": "1/2", "r": "1/2", "rr": "0/1"}
    path.write_text("{}")
    code, _, err = run(capsys, "walk", "exact", "--instance", str(path), "--k", "0")
    assert code == 1


def test_out_flag_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["walk", "mc", "--kind", "u2_G", "--k", "8", "--samples", "2000", "--seed", "4"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["config"]["seed"] == 4


def test_help_lists_every_command(capsys):
    text = build_parser().format_help()
    for group in ("rs", "circle", "rep", "spec", "walk", "acceptance"):
        assert group in text
    for group in ("rs", "circle", "rep", "spec", "walk"):
        with pytest.raises(SystemExit):
            build_parser().parse_args([group, "--help"])
        help_text = " ".join(capsys.readouterr().out.split())
        for (g, name), (_, desc) in COMMANDS.items():
            if g == group:
                assert name in help_text and " ".join(desc.split()) in help_text


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "rswalk", "rs", "gen", "--k", "2"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["q"] == [1, 1, -1, 1]


def test_acceptance_command(capsys):
    code, out, _ = run(capsys, "acceptance", "--level", "fast")
    assert code == 0 and out.count("[PASS]") == 8
    code, out, _ = run(capsys, "acceptance", "--level", "fast", "--inject-failure")
    assert code == 1 and "[FAIL] criterion 3" in out
