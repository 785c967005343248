"""Command-line interface: reports, exit codes, fixture resolution."""

import json
import subprocess
import sys

import pytest

from weddle import fixtures
from weddle.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv, "--json")
    return code, json.loads(out), err


# ---- report shape and exit codes ----

def test_decompose_report_shape(capsys):
    code, report, _ = run_json(capsys, "decompose", "cyclic-dim2")
    assert code == 0
    assert report["command"] == "decompose"
    assert report["inputs"]["source"] == "fixture:cyclic-dim2"
    assert len(report["inputs"]["sha256"]) == 64
    assert report["certified"] is True
    assert report["outputs"]["parts_resum_to_input"] is True
    assert report["outputs"]["n1"]["dim"] == 2
    assert report["elapsed_s"] >= 0


def test_weddle_subcommand_prints_matrix_and_polynomial(capsys):
    code, out, _ = run_cli(capsys, "weddle", "ex-bpf-conics")
    assert code == 0
    assert "polynomial: x0*x1*x2" in out
    assert "degenerate: False" in out
    code, out, _ = run_cli(capsys, "weddle", "degenerate-conics")
    assert code == 0
    assert "degenerate: True" in out


def test_basepoints_subcommand_reports_rational_points(capsys):
    code, report, _ = run_json(capsys, "basepoints", "cyclic-dim2")
    assert code == 0
    assert report["outputs"]["count"] == 1
    assert report["outputs"]["jacobsthal_for_dim"] == 1
    clusters = report["outputs"]["solution_set"]["clusters"]
    assert clusters[0]["rational_match"] == ["2", "-1"]


def test_singular_subcommand_on_a_smooth_cubic(capsys):
    code, report, _ = run_json(capsys, "singular", "witness-C1")
    assert code == 0
    assert report["outputs"]["count"] == 0
    assert report["certified"] is True


def test_jinv_subcommand_exact_values(capsys):
    code, report, _ = run_json(capsys, "jinv", "witness-C2")
    assert code == 0
    assert report["outputs"]["exact"] is True
    assert report["outputs"]["a"] == "-1633/48"
    assert report["outputs"]["b"] == "61201/864"
    assert report["outputs"]["j"] == "4354703137/352512"


def test_certify_subcommand_text_and_exit(capsys):
    code, out, _ = run_cli(capsys, "certify", "weddle-6pts")
    assert code == 0
    assert "singular points: 6 < 10 => rank >= 6" in out
    code, out, _ = run_cli(capsys, "certify", "rank5-M")
    assert code == 0
    assert "inconclusive" in out


def test_unknown_fixture_exits_with_usage_error(capsys):
    code, _, err = run_cli(capsys, "weddle", "no-such-input")
    assert code == 2
    assert "no such file or fixture" in err


def test_kind_mismatch_exits_with_usage_error(capsys):
    code, _, err = run_cli(capsys, "weddle", "witness-C1")
    assert code == 2
    assert "quadric system is required" in err
    code, _, err = run_cli(capsys, "jinv", "rank5-M")
    assert code == 2


def test_uncertified_run_exits_nonzero(capsys):
    # every quadric of this net contains the line {x0 + x1 = 0, x2 = 0},
    # so the base locus is positive-dimensional and cannot certify
    code, report, _ = run_json(capsys, "basepoints", "degenerate-conics")
    assert code == 1
    assert report["certified"] is False


# ---- input resolution ----

def test_file_inputs_resolve_before_fixturenames(tmp_path, capsys):
    path = tmp_path / "system.json"
    path.write_text(fixtures.read_text("ex-bpf-conics"), encoding="utf-8")
    code, report, _ = run_json(capsys, "weddle", str(path))
    assert code == 0
    assert report["inputs"]["source"] == str(path)
    assert report["outputs"]["polynomial"] == "x0*x1*x2"


def test_poly_file_input(tmp_path, capsys):
    path = tmp_path / "curve.poly"
    path.write_text("x0^3 + x1^3 + x2^3\n", encoding="utf-8")
    code, report, _ = run_json(capsys, "jinv", str(path))
    assert code == 0
    assert report["outputs"]["j"] == "0"


def test_tensor_file_feeds_every_tensor_command(tmp_path, capsys):
    path = tmp_path / "tensor.json"
    path.write_text(fixtures.read_text("cyclic-dim2"), encoding="utf-8")
    for command in ("decompose", "weddle", "basepoints"):
        code, _, _ = run_json(capsys, command, str(path))
        assert code == 0


# ---- seeds and environment ----

def test_seed_flag_overrides_environment(capsys, monkeypatch):
    monkeypatch.setenv("WEDDLE_SEED", "7")
    code, report, _ = run_json(capsys, "basepoints", "cyclic-dim2")
    assert report["seed"] == 7
    code, report, _ = run_json(capsys, "basepoints", "cyclic-dim2", "--seed", "3")
    assert report["seed"] == 3


def test_reports_are_reproducible_for_a_fixed_seed(capsys):
    reports = []
    for _ in range(2):
        _, report, _ = run_json(capsys, "singular", "witness-C1", "--seed", "5")
        report.pop("elapsed_s")
        reports.append(report)
    assert reports[0] == reports[1]


def test_sweep_is_reproducible_and_tabulates_every_dim(capsys):
    outputs = []
    for _ in range(2):
        code, report, _ = run_json(
            capsys, "jacobsthal-sweep", "--dims", "2,3", "--trials", "3", "--seed", "11"
        )
        assert code == 0
        report.pop("elapsed_s")
        outputs.append(report)
    assert outputs[0] == outputs[1]
    table = outputs[0]["outputs"]["dims"]
    assert set(table) == {"2", "3"}
    assert table["2"]["expected"] == 1
    assert table["3"]["expected"] == 3
    assert table["3"]["matching"] == table["3"]["certified"]


def test_sweep_text_output_mentions_the_expected_counts(capsys):
    code, out, _ = run_cli(
        capsys, "jacobsthal-sweep", "--dims", "2..3", "--trials", "2", "--seed", "4"
    )
    assert code == 0
    assert "dim 2: J = 1" in out
    assert "dim 3: J = 3" in out


def test_sweep_rejects_out_of_range_dims(capsys):
    code, _, err = run_cli(capsys, "jacobsthal-sweep", "--dims", "5..9")
    assert code == 2
    assert "dims" in err


# ---- the installed console script ----

def test_console_script_runs_end_to_end():
    proc = subprocess.run(
        [sys.executable, "-m", "weddle.cli", "jinv", "witness-C1", "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["outputs"]["j"] == "1771561/612"


# ---- fixture integrity ----

def test_fixture_payloads_are_byte_identical_to_their_serializations():
    for name in fixtures.names():
        kind = fixtures.kind(name)
        text = fixtures.read_text(name)
        obj = fixtures.load(name)
        if kind == "system":
            assert fixtures.canonical_json(obj.to_json()) == text
        elif kind == "tensor":
            assert fixtures.canonical_json(obj.to_json()) == text
        elif kind == "poly":
            assert str(obj) + "\n" == text
        else:
            assert json.loads(text)  # matrix and point payloads stay raw JSON


def test_registry_known_names():
    assert set(fixtures.names()) >= {
        "ex-bpf-conics",
        "rank5-M",
        "weddle-6pts",
        "witness-C1",
        "witness-C2",
        "random-quartic-sys",
    }
    with pytest.raises(KeyError):
        fixtures.kind("missing-name")
