import csv
import io
import json

import pytest

from kplane import __version__
from kplane.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_constants_sharp_norm_row(capsys):
    code, out, _ = run(capsys, "constants", "--n", "2", "--k", "1", "--p", "2", "--mu", "1")
    assert code == 0
    row = next(line for line in out.splitlines() if line.startswith("norm forward-k"))
    assert "1.7724538509" in row


def test_constants_p1_norm_is_one(capsys):
    code, out, _ = run(capsys, "constants", "--n", "3", "--k", "1", "--p", "1", "--mu", "0")
    row = next(line for line in out.splitlines() if line.startswith("norm forward-k"))
    assert code == 0 and "1.0000000000" in row


def test_constants_inadmissible_is_a_verdict_row(capsys):
    code, out, _ = run(capsys, "constants", "--n", "2", "--k", "1", "--p", "2", "--mu", "0")
    row = next(line for line in out.splitlines() if line.startswith("norm forward-k"))
    assert code == 0 and "inadmissible: mu <= k - n/p" in row


def test_constants_header_echoes_version_and_seed(capsys):
    _, out, _ = run(capsys, "constants", "--seed", "5")
    head = out.splitlines()[0]
    assert head.startswith(f"# kplane {__version__} seed=5 config=")
    json.loads(head.split("config=", 1)[1])


def test_verify_identity_k(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "k", "--profile", "gaussian", "--n", "3", "--k", "1", "--mu", "1")
    assert code == 0 and out.count("PASS") == 2


def test_verify_jk_dual(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "jk-dual", "--n", "3", "--j", "1", "--k", "2",
                       "--mu", "-1", "--kappa", "1")
    assert code == 0 and "PASS" in out


def test_failed_check_exits_one_and_lists_ids(capsys):
    # a tolerance no quadrature can meet on a shell profile
    code, out, _ = run(capsys, "norm-sweep", "--n", "2", "--k", "1", "--p", "2", "--mu", "1", "--tol", "1e-9")
    assert code == 1 and "failed: norm_sweep-" in out


@pytest.mark.parametrize("argv", [
    ["constants", "--bogus"],
    ["verify"],
    [],
    ["divergence", "--case", "boundary", "--n", "2", "--k", "1", "--p", "2", "--delta", "0.2", "--mu", "0.3"],
    ["verify", "--identity", "k", "--n", "2", "--k", "2"],
    ["constants", "--config", "/nonexistent/file"],
])
def test_usage_and_admissibility_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_version_flag(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and __version__ in out


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nn = 3\nk = 1\np = 1\nmu = 0.5\n")
    _, out, _ = run(capsys, "constants", "--config", str(cfg))
    echo = json.loads(out.splitlines()[0].split("config=", 1)[1])
    assert (echo["n"], echo["p"], echo["mu"]) == (3, 1.0, 0.5)
    _, out, _ = run(capsys, "constants", "--config", str(cfg), "--mu", "0")
    echo = json.loads(out.splitlines()[0].split("config=", 1)[1])
    assert echo["mu"] == 0.0 and echo["n"] == 3


def test_json_report_schema(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "divergence", "--case", "boundary", "--n", "2", "--k", "1", "--p", "2",
                     "--delta", "0.2", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["version"] == __version__ and doc["seed"] == 0 and "config" in doc
    rep = doc["reports"][0]
    for key in ("id", "kind", "params", "values", "errors", "target", "rel_err", "pass", "seed", "version"):
        assert key in rep


def test_csv_sweep_report(tmp_path, capsys):
    path = tmp_path / "r.csv"
    code, _, _ = run(capsys, "norm-sweep", "--n", "2", "--k", "1", "--p", "2", "--mu", "1",
                     "--eps", "0.2,0.1,0.05,0.02,0.01", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0].startswith(f"# kplane {__version__}")
    rows = list(csv.DictReader(io.StringIO("\n".join(x for x in lines if not x.startswith("#")))))
    assert rows[0]["pass"] == "1"


def test_constants_csv_output(tmp_path, capsys):
    path = tmp_path / "c.csv"
    run(capsys, "constants", "--n", "4", "--k", "2", "--j", "1", "--mu", "0.5", "--out", str(path))
    text = path.read_text()
    assert "lambda_j_mu" in text and "norm dual-jk" in text


def test_identical_runs_give_identical_files(tmp_path, capsys):
    argv = ["verify", "--identity", "k-dual", "--n", "3", "--k", "1", "--mu", "-1.5", "--kappa", "1",
            "--method", "monte-carlo", "--samples", "4000", "--seed", "7"]
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    run(capsys, *argv, "--out", str(a))
    run(capsys, *argv, "--out", str(b))
    run(capsys, *argv, "--out", str(c), "--jobs", "2")
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_dual_jk_constant_audit_command(capsys):
    code, out, _ = run(capsys, "norm-sweep", "--audit", "dual-jk-constant", "--n", "4", "--j", "1", "--k", "2",
                       "--grid", "2:0")
    assert code == 0 and "duality" in out
