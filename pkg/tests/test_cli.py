"""Command-line interface: documents, exit codes, config, determinism."""

import json
import subprocess
import sys

import pytest

from momentcurve.cli import main
from momentcurve.weights import weights_from_spec


def run_json(tmp_path, argv, name="out.json"):
    out = tmp_path / name
    code = main(list(argv) + ["--output", str(out)])
    assert code == 0, f"exit {code} for {argv}"
    return json.loads(out.read_text())


def test_mean_value_document(tmp_path):
    doc = run_json(tmp_path, ["mean-value", "--k", "2", "--s", "3", "--N", "1"])
    assert doc["payload"]["raw_moment"] == "93"
    assert doc["payload"]["normalized"] == "31/9"
    assert doc["payload"]["distinct_keys"] == "10"
    assert doc["payload"]["strategy"] == "map"
    head = doc["header"]
    assert head["command"] == "mean-value"
    assert "wall_ms" in head and "generated_ms" in head
    assert head["options"]["n_max"] == "1"


def test_mean_value_csv_format(tmp_path, capsys):
    code = main(["mean-value", "--k", "2", "--s", "2", "--N", "1",
                 "--format", "csv"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("# header: ")
    assert "raw_moment,15" in lines
    assert "normalized,5/3" in lines


def test_parameter_error_exits_2(capsys):
    assert main(["mean-value", "--k", "2", "--s", "0", "--N", "1"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_resource_error_exits_3(capsys):
    code = main(["brute-check", "--k", "2", "--s", "2", "--N", "9",
                 "--cap", "10"])
    assert code == 3
    assert capsys.readouterr().err.startswith("error:")


def test_unknown_subcommand_exits_2(capsys):
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_version_exits_0(capsys):
    assert main(["--version"]) == 0
    assert "0.1.0" in capsys.readouterr().out


def test_dry_run_skips_handler(tmp_path):
    doc = run_json(tmp_path, ["mean-value", "--k", "2", "--s", "9",
                              "--N", "1000000000", "--dry-run"])
    assert doc["payload"] == {"dry_run": True}


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep defaults\ns = 2\nN = 1\n")
    doc = run_json(tmp_path, ["mean-value", "--k", "2",
                              "--config", str(cfg)])
    assert doc["payload"]["raw_moment"] == "15"


def test_explicit_flag_beats_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("s = 2\nN = 1\n")
    doc = run_json(tmp_path, ["mean-value", "--k", "2",
                              "--config", str(cfg), "--s", "3"])
    assert doc["payload"]["raw_moment"] == "93"


def test_malformed_config_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("s: 2\n")
    assert main(["mean-value", "--k", "2", "--config", str(cfg)]) == 2
    assert "expected 'key = value'" in capsys.readouterr().err


def test_threads_flag_never_changes_payload(tmp_path):
    a = run_json(tmp_path, ["exponent-fit", "--k", "2", "--s", "3",
                            "--N-list", "4,8,16", "--threads", "1"], "a.json")
    b = run_json(tmp_path, ["exponent-fit", "--k", "2", "--s", "3",
                            "--N-list", "4,8,16", "--threads", "8"], "b.json")
    assert a["payload"] == b["payload"]
    assert a["header"]["options"]["threads"] != b["header"]["options"]["threads"]


def test_save_weights_round_trip(tmp_path):
    wpath = tmp_path / "best.weights"
    doc = run_json(tmp_path, ["extremal-search", "--k", "2", "--s", "2",
                              "--N", "2", "--restarts", "1", "--iters", "1",
                              "--save-weights", str(wpath)])
    w = weights_from_spec(f"file:{wpath}", 2)
    assert w.n_max == 2
    assert doc["payload"]["objective"]


def test_primes_payload(tmp_path):
    doc = run_json(tmp_path, ["primes", "--X", "100", "--theta", "1/4",
                              "--k", "2"])
    p = doc["payload"]
    assert p["prime"] == "5"
    assert len(p["candidates"]) == 33
    assert p["exceeds_two_m"] is True


def test_circle_weyl_payload(tmp_path):
    doc = run_json(tmp_path, ["circle", "weyl", "--X", "10",
                              "--alpha", "1/3,1/5"])
    assert doc["payload"]["abs"] == pytest.approx(2.9356488190432284,
                                                  rel=1e-12)
    assert doc["header"]["command"] == "circle weyl"


def test_congruence_audit_classes(tmp_path):
    doc = run_json(tmp_path, ["congruence-audit", "classes", "--N", "6",
                              "--prime", "3", "--level", "1"])
    p = doc["payload"]
    assert p["rows"] == [["1", "4"], ["2", "4"], ["3", "5"]]
    assert p["total_energy"] == "13"


def test_console_script_entry_point(tmp_path):
    out = tmp_path / "sub.json"
    proc = subprocess.run(
        [sys.executable, "-m", "momentcurve", "mean-value", "--k", "2",
         "--s", "2", "--N", "1", "--output", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["payload"]["raw_moment"] == "15"
