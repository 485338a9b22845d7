"""Command-line behavior: every subcommand, exit codes, determinism."""

import json

import pytest

from cliffordt.circuit import parse
from cliffordt.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def test_gen_adder_header(tmp_path, capsys):
    out = tmp_path / "out.qc"
    code, _, _ = run_cli(capsys, "gen", "adder", "4", str(out))
    assert code == 0
    text = out.read_text()
    assert text.startswith("qubits 9\n")
    parse(text)


def test_gen_multiplier_sizing(tmp_path, capsys):
    out = tmp_path / "mul.qc"
    code, _, _ = run_cli(capsys, "gen", "mul", "2", str(out))
    assert code == 0
    assert out.read_text().startswith("qubits 9\n")


def test_gen_taylor_round_trips(tmp_path, capsys):
    out = tmp_path / "taylor.qc"
    code, _, _ = run_cli(capsys, "gen", "taylor", "4", "--f", "5", "--fp", "3",
                         "--fpp", "1", "--c", "2", str(out))
    assert code == 0
    circ = parse(out.read_text())
    assert circ.n_qubits == 36


def test_gen_taylor_requires_constants(tmp_path, capsys):
    code, _, err = run_cli(capsys, "gen", "taylor", "4",
                           str(tmp_path / "x.qc"))
    assert code == 1
    assert "--f" in err


def test_gen_bad_width(tmp_path, capsys):
    code, _, err = run_cli(capsys, "gen", "adder", "0", str(tmp_path / "x.qc"))
    assert code == 1
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------

def test_metrics_single_toffoli(tmp_path, capsys):
    path = tmp_path / "ccx.qc"
    path.write_text("qubits 3\nccx 0 1 2\n")
    code, out, _ = run_cli(capsys, "metrics", str(path))
    assert code == 0
    assert "t_count: 7" in out


def test_metrics_empty_circuit(tmp_path, capsys):
    path = tmp_path / "empty.qc"
    path.write_text("qubits 1\n")
    code, out, _ = run_cli(capsys, "metrics", str(path))
    assert code == 0
    assert "t_count: 0" in out and "depth: 0" in out


def test_metrics_json(tmp_path, capsys):
    path = tmp_path / "ccx.qc"
    path.write_text("qubits 3\nccx 0 1 2\n")
    code, out, _ = run_cli(capsys, "metrics", str(path), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["t_count"] == 7
    assert payload["qubit_cost"] == 3


def test_metrics_parse_error_has_line(tmp_path, capsys):
    path = tmp_path / "bad.qc"
    path.write_text("qubits 2\ncnot 0 0\n")
    code, _, err = run_cli(capsys, "metrics", str(path))
    assert code == 1
    assert "line 2" in err


# ---------------------------------------------------------------------------
# sim
# ---------------------------------------------------------------------------

def test_sim_adder_decodes_registers(tmp_path, capsys):
    out = tmp_path / "adder.qc"
    run_cli(capsys, "gen", "adder", "4", str(out))
    # a=3 occupies qubits 4..7, b=5 occupies 0..3
    code, text, _ = run_cli(capsys, "sim", str(out), "--input",
                            str(5 | (3 << 4)))
    assert code == 0
    assert "b: 8" in text and "a: 3" in text and "z: 0" in text


def test_sim_bell_counts_only_00_and_11(tmp_path, capsys):
    path = tmp_path / "bell.qc"
    path.write_text("qubits 2\nh 0\ncnot 0 1\n")
    code, out, _ = run_cli(capsys, "sim", str(path), "--input", "0",
                           "--shots", "1000", "--seed", "5")
    assert code == 0
    observed = {int(line.split(":")[0]) for line in out.strip().splitlines()}
    assert observed <= {0, 3}


def test_sim_input_out_of_range(tmp_path, capsys):
    path = tmp_path / "bell.qc"
    path.write_text("qubits 2\nh 0\ncnot 0 1\n")
    code, _, err = run_cli(capsys, "sim", str(path), "--input", "4")
    assert code == 1
    assert "out of range" in err


def test_sim_superposition_prints_probabilities(tmp_path, capsys):
    path = tmp_path / "plus.qc"
    path.write_text("qubits 1\nh 0\n")
    code, out, _ = run_cli(capsys, "sim", str(path), "--input", "0")
    assert code == 0
    assert "0: 0.5" in out and "1: 0.5" in out


# ---------------------------------------------------------------------------
# uncompute
# ---------------------------------------------------------------------------

def test_uncompute_verb(tmp_path, capsys):
    src = tmp_path / "inner.qc"
    src.write_text("qubits 3\nccx 0 1 2\n")
    dst = tmp_path / "wrapped.qc"
    code, _, _ = run_cli(capsys, "uncompute", str(src), "--wires", "2",
                         "--out", str(dst))
    assert code == 0
    wrapped = parse(dst.read_text())
    assert wrapped.n_qubits == 4
    assert len(wrapped.ops) == 3


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_adder(capsys):
    code, out, _ = run_cli(capsys, "verify", "adder", "4")
    assert code == 0
    assert "passed: true" in out
    assert "total_inputs: 256" in out


def test_verify_multiplier_n3(capsys):
    code, out, _ = run_cli(capsys, "verify", "mul", "3")
    assert code == 0
    assert "total_inputs: 64" in out


def test_verify_taylor(capsys):
    code, out, _ = run_cli(capsys, "verify", "taylor", "3", "--f", "5",
                           "--fp", "3", "--fpp", "1", "--c", "2")
    assert code == 0
    assert "passed: true" in out


# ---------------------------------------------------------------------------
# rb
# ---------------------------------------------------------------------------

def test_rb_noiseless(capsys):
    code, out, _ = run_cli(capsys, "rb", "--d", "0", "--lengths", "1,4,8",
                           "--sequences", "10", "--shots", "20", "--seed", "3")
    assert code == 0
    assert "fit_p: 1.000000" in out


def test_rb_json_schema(capsys):
    code, out, _ = run_cli(capsys, "rb", "--d", "0.05", "--lengths", "1,5,9",
                           "--sequences", "10", "--shots", "20", "--seed", "3",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"lengths", "mean_fidelity", "fit_A", "fit_B",
                            "fit_p", "error_per_gate"}


# ---------------------------------------------------------------------------
# determinism
# ---------------------------------------------------------------------------

def test_identical_invocations_are_byte_identical(capsys):
    argv = ["rb", "--d", "0.02", "--lengths", "1,5,10", "--sequences", "15",
            "--shots", "30", "--seed", "21"]
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second


def test_seed_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CLIFFORDT_SEED", "99")
    # parser defaults are bound at construction, which reads the variable
    code, out1, _ = run_cli(capsys, "rb", "--d", "0.1", "--lengths", "1,3,5",
                            "--sequences", "5", "--shots", "10")
    code2, out2, _ = run_cli(capsys, "rb", "--d", "0.1", "--lengths", "1,3,5",
                             "--sequences", "5", "--shots", "10", "--seed",
                             "99")
    assert code == code2 == 0
    assert out1 == out2
